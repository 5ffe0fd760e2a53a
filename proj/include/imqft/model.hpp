#ifndef IMQFT_MODEL_HPP
#define IMQFT_MODEL_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "imqft/polynomial.hpp"

namespace imqft {

struct MassEntry {
    double m = 1.0;  // mass, natural units
    int nu = 1;      // dipole degree
};

struct MassSpectrum {
    std::vector<MassEntry> entries;

    int size() const { return static_cast<int>(entries.size()); }
    bool no_dipole() const;
    double min_mass() const;
    // prod_l m_l^{2 nu_l}
    double mass_normalization() const;
};

struct JumpAtom {
    double w = 1.0;        // weight, sum over atoms = 1
    Eigen::VectorXd s;     // jump location in R^N, nonzero
};

struct LevySpec {
    Eigen::VectorXd a;      // drift
    Eigen::MatrixXd sigma2; // Gaussian covariance, PSD
    double z = 0.0;         // jump intensity
    std::vector<JumpAtom> atoms;

    // sigma2 + z sum_i w_i s_i s_i^T  (= -Hess psi at t=0)
    Eigen::MatrixXd sigma_bar2() const;
};

struct ModelSpec {
    int d = 2;
    int N = 1;
    MassSpectrum spectrum;
    LevySpec levy;
    MatrixPolynomial qE;      // single-argument matrix polynomial Q_E(k)
    Eigen::MatrixXd metric;   // invariant product on R^N, default identity
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// All invariant violations, each prefixed with the offending field path.
// Empty result means the spec is valid.
std::vector<std::string> model_errors(const ModelSpec& spec);

// Token handed to the numerical modules: a spec that passed validation.
class ValidatedModel {
public:
    static ValidatedModel make(const ModelSpec& spec);

    const ModelSpec& spec() const { return spec_; }
    const ModelSpec* operator->() const { return &spec_; }

private:
    explicit ValidatedModel(ModelSpec spec) : spec_(std::move(spec)) {}
    ModelSpec spec_;
};

// JSON schema: {d, N, masses:[{m,nu}], levy:{a, sigma2, z, atoms:[{w,s}]},
// qE (optional term table), metric (optional)}.
ModelSpec parse_model_config(const std::string& text);
std::string emit_model_config(const ModelSpec& spec);
ModelSpec load_model_file(const std::string& path);

}  // namespace imqft

#endif
