#include "imqft/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace imqft {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, lm, flm);
    double right = simpson(f, m, fm, b, fb, rm, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = simpson(f, a, fa, b, fb, m, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double abs_tol) {
    double total = 0.0;
    double width = 1.0;
    double x = a;
    for (int block = 0; block < 80; ++block) {
        double piece = integrate_adaptive(f, x, x + width, abs_tol * 0.1);
        total += piece;
        x += width;
        width *= 2.0;
        if (block > 2 && std::abs(piece) < abs_tol) break;
    }
    return total;
}

GaussHermite gauss_hermite_halfweight(int n) {
    if (n < 1 || n > 200) throw std::invalid_argument("gauss_hermite: bad order");
    // Physicists' Hermite nodes/weights for weight e^{-x^2} by Newton iteration,
    // then rescaled so the rule integrates h(k) with a built-in e^{-k^2/2} decay.
    std::vector<double> x(n), w(n);
    int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for orthonormal Hermite functions.
            double p1 = std::pow(M_PI, -0.25);
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    GaussHermite rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // k = sqrt(2) x;  \int h dk = sqrt(2) sum w_i e^{x_i^2} h(sqrt(2) x_i)
        // for h with an e^{-k^2/2} profile.
        rule.nodes[i] = std::sqrt(2.0) * x[n - 1 - i];
        rule.weights[i] = std::sqrt(2.0) * w[n - 1 - i] * std::exp(x[n - 1 - i] * x[n - 1 - i]);
    }
    return rule;
}

}  // namespace imqft
