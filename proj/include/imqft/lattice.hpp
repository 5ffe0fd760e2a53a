#ifndef IMQFT_LATTICE_HPP
#define IMQFT_LATTICE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "imqft/lattice_spec.hpp"
#include "imqft/model.hpp"

namespace imqft {

// Real N-component field on a lattice; component-major storage
// (values[c * V + site]).
struct FieldSample {
    LatticeSpec lat;
    int N = 1;
    std::vector<double> values;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    double at(int component, std::size_t site) const {
        return values[static_cast<std::size_t>(component) * lat.volume() + site];
    }
};

// Spectral Laplacian eigenvalue (4/a^2) sum_mu sin^2(k_mu a / 2) for momentum
// index vector n (entries in [0, L)).
double lattice_laplacian_eig(const std::vector<int>& nvec, const LatticeSpec& lat);

// Gauss-Poisson white noise plus the independent Gaussian field with spectral
// density sigma_bar^2 (p(lambda(k)) - 1), drawn from the (seed, stream) counter
// stream.
FieldSample sample_noise(const LatticeSpec& lat, const ValidatedModel& model,
                         std::uint64_t seed, std::uint64_t stream);

// phi_hat(k) = Dhat^{-1}(lambda(k)) eta_hat(k), inverse transformed.
FieldSample solve_spde(const FieldSample& noise, const ValidatedModel& model);

// Apply the forward lattice operator D to a field (spectral multiplication by
// the inverse symbol's inverse); used for round-trip checks.
FieldSample apply_forward_operator(const FieldSample& phi, const ValidatedModel& model);

struct ProbeTuple {
    std::vector<std::vector<int>> sites;  // lattice coordinates per leg
    std::vector<int> alphas;              // component per leg

    int order() const { return static_cast<int>(sites.size()); }
};

struct MomentEstimate {
    int order = 0;
    int probe_id = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    long count = 0;
};

struct EstimateOptions {
    long samples = 10000;
    std::uint64_t seed = 0;
    int threads = 1;
    int block = 100;   // jackknife block, in samples
    int chains = 16;   // fixed stream count, independent of threads
};

// Monte Carlo truncated moments at the probe tuples; error bars by block
// jackknife.  Deterministic for fixed (seed, lattice, model, samples)
// regardless of thread count.
std::vector<MomentEstimate> estimate_truncated_moments(const ValidatedModel& model,
                                                       const LatticeSpec& lat,
                                                       const std::vector<ProbeTuple>& probes,
                                                       const EstimateOptions& opts);

// Analytic truncated kernels computed with the lattice symbol, so that MC and
// analytic values share the discretization exactly.  Scalar models.
std::vector<double> lattice_analytic_kernel(const ValidatedModel& model, const LatticeSpec& lat,
                                            const std::vector<ProbeTuple>& probes);

}  // namespace imqft

#endif
