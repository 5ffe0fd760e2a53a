#ifndef IMQFT_WIGHTMAN_HPP
#define IMQFT_WIGHTMAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "imqft/model.hpp"
#include "imqft/testfunc.hpp"

namespace imqft {

class NearPoleError : public std::runtime_error {
public:
    explicit NearPoleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Momentum confined to the mass shell: k^0 = sign * omega(kspace), so
// (k^0)^2 - |kspace|^2 = m^2 holds by construction.
struct ShellMomentum {
    double mass = 1.0;
    int sign = +1;                // +1: forward cone, -1: backward cone
    Eigen::VectorXd kspace;       // spatial momentum, d-1 components

    double omega() const { return std::sqrt(kspace.squaredNorm() + mass * mass); }
    double k0() const { return sign * omega(); }
    Eigen::VectorXd full() const {
        Eigen::VectorXd k(kspace.size() + 1);
        k[0] = k0();
        k.tail(kspace.size()) = kspace;
        return k;
    }
};

// Minkowski square k^2 = (k^0)^2 - |vec k|^2 of a full d-vector.
double minkowski_square(const Eigen::VectorXd& k);

// One term of the momentum-space truncated Wightman distribution: slots below
// the pole slot sit on the backward shell, slots above on the forward shell.
struct WightmanTerm {
    int pole_slot = 0;  // 0-based
};

struct WightmanTermList {
    int n = 0;
    int d = 2;
    std::vector<int> mass_idx;    // spectrum index per slot
    std::vector<double> masses;   // resolved mass per slot
    double coupling = 1.0;        // prod_j b_{l_j} (n >= 3)
    bool two_point = false;       // closed-form two-point structure
    double prefactor = 1.0;       // (2 pi)^{d+1} / prod m^{2 nu} when two_point
    std::vector<double> shell_b;  // two_point: b_l per spectrum entry
    std::vector<WightmanTerm> terms;
};

// Replaces the cumulant-built Q^M_n; used by the custom-polynomial mechanism.
using VertexEval = std::function<std::complex<double>(const std::vector<Eigen::VectorXd>&,
                                                      const std::vector<int>&)>;

// k^0 -> i k^0 continuation of a covariant polynomial.
MatrixPolynomial continue_qM(const MatrixPolynomial& qE);

// Term list for Ŵ^T_n with the given mass assignment (spectrum indices, size
// n); n = 2 returns the closed shell form.  no-dipole spectra only.
WightmanTermList build_wightman_terms(int n, const std::vector<int>& assignment,
                                      const ValidatedModel& model);

// Conservation-delta-stripped density at a spatial-momentum configuration (one
// d-1 vector per slot; the pole slot's full momentum is fixed by conservation,
// its configured entry unused).  Throws NearPoleError within pole_eps of the
// shell.
std::complex<double> evaluate_onshell(const WightmanTermList& terms,
                                      const std::vector<Eigen::VectorXd>& config,
                                      const ValidatedModel& model,
                                      const std::vector<int>& alphas = {},
                                      double pole_eps = 1e-6,
                                      const VertexEval* custom_qM = nullptr);

struct FourierLaplaceResult {
    double lhs = 0.0;  // Euclidean truncated two-point kernel
    double rhs = 0.0;  // shell-integral Fourier-Laplace representation
    double gap = 0.0;  // relative
};

// Shell-integral cross-check of the Euclidean two-point kernel for scalar
// no-dipole models, d = 2 or 3.
FourierLaplaceResult fourier_laplace_check(const ValidatedModel& model, double tau,
                                           const Eigen::VectorXd& xspace);

struct SmearOptions {
    int gh_order = 24;
    double pole_eps = 1e-6;
};

// A smearing slot: test function plus an optional position-space translation.
struct SmearSlot {
    TestFunction fn;
    Eigen::VectorXd shift;  // empty = none

    std::complex<double> fhat(const Eigen::VectorXd& k) const;
};

// Smeared truncated Wightman function of order slots.size() (scalar models).
std::complex<double> wightman_truncated_smeared(const ValidatedModel& model,
                                                const std::vector<SmearSlot>& slots,
                                                const SmearOptions& opts = {});

// Full W_n via the partition sum over truncated blocks.
std::complex<double> wightman_full_smeared(const ValidatedModel& model,
                                           const std::vector<SmearSlot>& slots,
                                           const SmearOptions& opts = {});

struct HsscStats {
    int draws = 0;
    int failures = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::vector<double> ratios;
};

// Witness statistics for |W_{n+m}(f (x) h)| / (||f|| ||h||) over random span
// draws; bounded max across draws is the (non-proof) witness.
HsscStats hssc_witness(const ValidatedModel& model, int n, int m,
                       const TestFunctionFamily& family, int draws, std::uint64_t seed,
                       const SmearOptions& opts = {});

struct ClusterRow {
    double t = 0.0;
    std::complex<double> full;     // W_n(f (x) h_{ta})
    std::complex<double> product;  // W_{n1}(f) W_{n2}(h)
    double gap = 0.0;
};

// Decay of W_n(f (x) h_{ta}) - W_{n1}(f) W_{n2}(h) along a spacelike direction.
std::vector<ClusterRow> clustering_check(const ValidatedModel& model, int n, int split,
                                         const std::vector<double>& shifts,
                                         const SmearOptions& opts = {});

}  // namespace imqft

#endif
