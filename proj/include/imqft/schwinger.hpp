#ifndef IMQFT_SCHWINGER_HPP
#define IMQFT_SCHWINGER_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "imqft/lattice_spec.hpp"
#include "imqft/levy.hpp"
#include "imqft/model.hpp"

namespace imqft {

// The vertex polynomial Q_n built from the cumulant tensor and n copies of the
// covariant polynomial: Q_n(k_1..k_n)_{a_1..a_n} = C^{b_1..b_n}
// prod_l Q_{b_l, a_l}(k_l), with indices raised by the invariant metric.
// With minkowski = true the per-leg polynomial is the continued Q^M.
class CumulantVertex {
public:
    CumulantVertex(int order, const ValidatedModel& model, bool minkowski);

    std::complex<double> eval(const std::vector<Eigen::VectorXd>& ks,
                              const std::vector<int>& alphas) const;

    int order() const { return order_; }
    bool is_zero() const { return zero_; }
    int max_degree_per_argument() const { return q_.degree(); }

private:
    int order_;
    int N_;
    CumulantTensor c_raised_;  // indices raised with metric^{-1}
    MatrixPolynomial q_;
    bool zero_;
};

// Truncated two-point Schwinger kernel at separation x, evaluated in closed
// form.  Requires a constant Q_E; derivative couplings go through the
// lattice path.
double schwinger2_truncated(const Eigen::VectorXd& x, int alpha1, int alpha2,
                            const ValidatedModel& model);

// Truncated n-point kernel (n >= 3) evaluated by the vertex integral on a
// periodic lattice: per-leg kernel = IFFT[Q_E(k)/prod(|k|^2+m^2)^nu], vertex
// summed over the box.  Scalar models (N = 1).  Points are snapped to sites.
double schwingerN_truncated(const std::vector<Eigen::VectorXd>& points,
                            const std::vector<int>& alphas, const ValidatedModel& model,
                            const LatticeSpec& grid);

}  // namespace imqft

#endif
