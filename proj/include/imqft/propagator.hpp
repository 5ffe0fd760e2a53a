#ifndef IMQFT_PROPAGATOR_HPP
#define IMQFT_PROPAGATOR_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "imqft/model.hpp"

namespace imqft {

class UnsupportedSpectrum : public std::runtime_error {
public:
    explicit UnsupportedSpectrum(const std::string& msg) : std::runtime_error(msg) {}
};

class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& msg) : std::runtime_error(msg) {}
};

// p(t) = prod_l (t + m_l^2)^{nu_l} / prod_l m_l^{2 nu_l};  p(0) = 1.
double p_polynomial(double t, const MassSpectrum& spectrum);

// Q_E(k) / prod_l (|k|^2 + m_l^2)^{nu_l}
Eigen::MatrixXcd dhat_inverse(const Eigen::VectorXd& k, const ValidatedModel& model);

// Residue coefficients of 1/prod(t + m_l^2) = sum_l b_l/(t + m_l^2).
struct PartialFractions {
    std::vector<double> b;
};
PartialFractions partial_fractions(const MassSpectrum& spectrum);

// Fundamental solution of (-Laplace + m^2) in d dimensions at radius |x|.
// Closed forms for d = 1, 2, 3; proper-time quadrature otherwise.
double green_kernel(double r, double m, int d);
double green_kernel(const Eigen::VectorXd& x, double m, int d);

// prod_l (-Laplace + m_l^2)^{-nu_l} evaluated at radius r via the partial
// fraction decomposition; requires a no-dipole spectrum with distinct masses
// unless the spectrum has a single entry with nu = 1.
double product_green_kernel(double r, const MassSpectrum& spectrum, int d);

}  // namespace imqft

#endif
