#ifndef IMQFT_TESTFUNC_HPP
#define IMQFT_TESTFUNC_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "imqft/rng.hpp"

namespace imqft {

// Smooth rapidly decaying functions on R^d built from Gaussian-Hermite
// products.  The momentum representation is the primary one:
//   fhat(k) = sum_j c_j prod_mu H_{n_mu}(k_mu) e^{-k_mu^2 / 2}
// with physicists' Hermite polynomials; the position representation follows in
// closed form (Hermite functions are Fourier eigenfunctions).
struct TestFunction {
    struct Component {
        double coeff = 1.0;
        std::vector<int> orders;  // Hermite order per dimension
    };

    int d = 2;
    std::vector<Component> comps;

    double fhat(const Eigen::VectorXd& k) const;

    // Position-space value (complex: components pick up (-i)^{sum n} phases).
    std::complex<double> position(const Eigen::VectorXd& x) const;

    // Integral over R^d, i.e. fhat(0).
    double integral() const { return fhat(Eigen::VectorXd::Zero(d)); }
};

// Finite basis: all Hermite products with per-dim order < max_order.
class TestFunctionFamily {
public:
    TestFunctionFamily(int d, int max_order);

    const std::vector<TestFunction>& basis() const { return basis_; }
    int size() const { return static_cast<int>(basis_.size()); }
    int dim() const { return d_; }

    // Random scaled basis element (atomic draw; see the implementation note).
    TestFunction random_element(CounterRng& rng) const;

private:
    int d_;
    std::vector<TestFunction> basis_;
};

// Schwartz-type norm: max over multi-indices |a| <= K, |b| <= K of
// sup_x |x^a D^b f(x)|, evaluated on a fixed grid covering the Gaussian decay.
double schwartz_norm(const TestFunction& f, int K = 4);

}  // namespace imqft

#endif
