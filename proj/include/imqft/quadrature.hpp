#ifndef IMQFT_QUADRATURE_HPP
#define IMQFT_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace imqft {

// Adaptive Simpson on [a,b] with absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_depth = 40);

// Semi-infinite integral \int_a^\infty f; truncates when the running tail
// contribution over a doubling window drops below tol.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol = 1e-10);

// Gauss-Hermite rule adapted to weight e^{-k^2/2}: \int g(k) e^{-k^2/2} dk
// ~= sum w_i g(k_i) after the caller multiplies its own gaussian back in; here
// we return nodes k_i and weights W_i such that \int h(k) dk ~= sum W_i h(k_i)
// is exact for h = polynomial * e^{-k^2/2}.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermite gauss_hermite_halfweight(int n);

}  // namespace imqft

#endif
