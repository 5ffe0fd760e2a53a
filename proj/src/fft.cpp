#include "imqft/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace imqft {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

LatticeFft::LatticeFft(int d, int L) : d_(d), L_(L) {
    if (d < 1) throw std::invalid_argument("LatticeFft: dimension must be >= 1");
    if (!is_pow2(L)) throw std::invalid_argument("LatticeFft: extent must be a power of two");
    volume_ = 1;
    for (int i = 0; i < d; ++i) volume_ *= static_cast<std::size_t>(L);

    twiddle_.resize(L / 2);
    for (int j = 0; j < L / 2; ++j) {
        double phi = -2.0 * M_PI * j / L;
        twiddle_[j] = {std::cos(phi), std::sin(phi)};
    }
    bitrev_.resize(L);
    int logL = 0;
    while ((1 << logL) < L) ++logL;
    for (int i = 0; i < L; ++i) {
        int r = 0;
        for (int b = 0; b < logL; ++b)
            if (i & (1 << b)) r |= 1 << (logL - 1 - b);
        bitrev_[i] = r;
    }
}

void LatticeFft::fft1d(std::complex<double>* a) const {
    const int L = L_;
    for (int i = 0; i < L; ++i) {
        int j = bitrev_[i];
        if (j > i) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= L; len <<= 1) {
        int step = L / len;
        for (int start = 0; start < L; start += len) {
            for (int j = 0; j < len / 2; ++j) {
                std::complex<double> w = twiddle_[static_cast<std::size_t>(j) * step];
                std::complex<double> u = a[start + j];
                std::complex<double> v = a[start + j + len / 2] * w;
                a[start + j] = u + v;
                a[start + j + len / 2] = u - v;
            }
        }
    }
}

void LatticeFft::transform(std::vector<std::complex<double>>& data, int sign) const {
    if (data.size() != volume_) throw std::invalid_argument("LatticeFft: size mismatch");
    // sign=+1 via conjugation trick around the forward transform.
    if (sign == +1)
        for (auto& z : data) z = std::conj(z);

    std::vector<std::complex<double>> line(L_);
    // Transform along each axis in turn.  Axis mu has stride L^(d-1-mu).
    std::size_t stride = volume_ / L_;
    for (int mu = 0; mu < d_; ++mu) {
        std::size_t nlines = volume_ / L_;
        for (std::size_t li = 0; li < nlines; ++li) {
            // Decompose li into (outer, inner) around the transformed axis.
            std::size_t outer = li / stride;
            std::size_t inner = li % stride;
            std::size_t base = outer * stride * L_ + inner;
            for (int j = 0; j < L_; ++j) line[j] = data[base + static_cast<std::size_t>(j) * stride];
            fft1d(line.data());
            for (int j = 0; j < L_; ++j) data[base + static_cast<std::size_t>(j) * stride] = line[j];
        }
        stride /= L_;
    }

    if (sign == +1)
        for (auto& z : data) z = std::conj(z);
}

void LatticeFft::inverse(std::vector<std::complex<double>>& data) const {
    transform(data, +1);
    double invV = 1.0 / static_cast<double>(volume_);
    for (auto& z : data) z *= invV;
}

}  // namespace imqft
