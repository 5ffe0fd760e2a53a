#ifndef IMQFT_SCATTERING_HPP
#define IMQFT_SCATTERING_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "imqft/model.hpp"
#include "imqft/polynomial.hpp"

namespace imqft {

// Asymptotic particle: positive-energy on-shell momentum with a mass-spectrum
// index and a spin/component index.
struct ParticleState {
    bool incoming = true;
    int l = 0;       // mass spectrum index
    int alpha = 0;   // component index
    Eigen::VectorXd kspace;  // spatial momentum, d-1 components
};

// Full positive-energy on-shell d-momentum for mass m.
Eigen::VectorXd onshell_momentum(double m, const Eigen::VectorXd& kspace);

struct AmplitudeResult {
    std::complex<double> value{0.0, 0.0};  // conservation-delta-stripped
    bool conserved = false;
    double gap = 0.0;  // |K_in - K_out|
};

// Model plus optional user-supplied Q^M polynomials per order.
struct ScatteringModel {
    ValidatedModel base;
    std::map<int, NPolynomial> custom_qM;

    explicit ScatteringModel(ValidatedModel m) : base(std::move(m)) {}
};

// Truncated scattering amplitude: -(2 pi) i Q^M(-k_in..., k_out...) times the
// shared coupling prefactor, when total momentum is conserved.
AmplitudeResult amplitude(const std::vector<ParticleState>& ins,
                          const std::vector<ParticleState>& outs, const ScatteringModel& model,
                          double conservation_tol = 1e-9);

struct DecayReport {
    bool feasible = false;
    double kmag = 0.0;                    // back-to-back momentum in the rest frame
    Eigen::VectorXd witness_out_k;        // spatial momentum of one decay product
    AmplitudeResult amp;
    bool amplitude_nonzero = false;
};

// Kinematic scan for the 1 -> 2 process heavy -> light + light; feasible iff
// m >= 2 mu, witness = rest-frame back-to-back configuration.
DecayReport decay_scan(double m, double mu, const ScatteringModel& model);

// Model variant whose amplitudes use the supplied Q^M_n polynomials.
ScatteringModel with_custom_qM(const ValidatedModel& model,
                               const std::map<int, NPolynomial>& polys, int degree_bound);

// Shared normalization: prod_j b_{l_j} over the external mass assignment.
double coupling_prefactor(const ValidatedModel& model, const std::vector<int>& mass_indices);

}  // namespace imqft

#endif
