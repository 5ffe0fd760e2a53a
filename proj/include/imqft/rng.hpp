#ifndef IMQFT_RNG_HPP
#define IMQFT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace imqft {

// Counter-based stream: output i of stream (seed, stream) is a fixed mix of a
// 64-bit counter, so parallel chains give identical draws regardless of
// scheduling.  Mix function is splitmix64.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        key_ = mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL);
        ctr_ = 0;
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }
    result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++ctr_); }

    // Uniform on (0,1), never exactly 0.
    double uniform() {
        return (static_cast<double>((*this)() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    // Standard normal via Box-Muller; stateless across calls except the counter.
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Poisson by inversion/multiplication; intended for small means (lattice cells).
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 30.0) {
            double limit = std::exp(-mean);
            double prod = uniform();
            long k = 0;
            while (prod > limit) {
                prod *= uniform();
                ++k;
            }
            return k;
        }
        // Normal approximation fallback for large means.
        double g = normal();
        long k = static_cast<long>(std::llround(mean + std::sqrt(mean) * g));
        return k < 0 ? 0 : k;
    }

    // Index into a discrete distribution given cumulative weights (last == 1).
    int pick(const std::vector<double>& cdf) {
        double u = uniform();
        for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
            if (u <= cdf[i]) return static_cast<int>(i);
        return static_cast<int>(cdf.size()) - 1;
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace imqft

#endif
