#include "imqft/testfunc.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace imqft {

namespace {

double hermite(int n, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (n == 0) return h0;
    if (n == 1) return h1;
    for (int k = 2; k <= n; ++k) {
        double h2 = 2.0 * x * h1 - 2.0 * (k - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

// Coefficients of the polynomial part of d^b/dx^b [H_n(x) e^{-x^2/2}],
// excluding the Gaussian factor.
std::vector<double> hermite_gauss_poly(int n, int b) {
    // Start from H_n coefficients.
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    // Build H_n by recurrence on coefficient vectors.
    std::vector<double> h0{1.0}, h1{0.0, 2.0};
    if (n == 0)
        p = h0;
    else if (n == 1)
        p = h1;
    else {
        for (int k = 2; k <= n; ++k) {
            std::vector<double> h2(static_cast<std::size_t>(k) + 1, 0.0);
            for (std::size_t i = 0; i < h1.size(); ++i) h2[i + 1] += 2.0 * h1[i];
            for (std::size_t i = 0; i < h0.size(); ++i) h2[i] -= 2.0 * (k - 1) * h0[i];
            h0 = h1;
            h1 = h2;
        }
        p = h1;
    }
    // Apply b times: (P e^{-x^2/2})' = (P' - x P) e^{-x^2/2}.
    for (int it = 0; it < b; ++it) {
        std::vector<double> q(p.size() + 1, 0.0);
        for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] += static_cast<double>(i) * p[i];
        for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] -= p[i];
        p = q;
    }
    return p;
}

double poly_eval(const std::vector<double>& p, double x) {
    double out = 0.0;
    for (std::size_t i = p.size(); i-- > 0;) out = out * x + p[i];
    return out;
}

}  // namespace

double TestFunction::fhat(const Eigen::VectorXd& k) const {
    double out = 0.0;
    for (const auto& c : comps) {
        double v = c.coeff;
        for (int mu = 0; mu < d; ++mu)
            v *= hermite(c.orders[mu], k[mu]) * std::exp(-0.5 * k[mu] * k[mu]);
        out += v;
    }
    return out;
}

std::complex<double> TestFunction::position(const Eigen::VectorXd& x) const {
    // Convention fhat(k) = int f(x) e^{i k.x} dx gives, per dimension,
    // f factor = (2 pi)^{-1/2} (-i)^n H_n(x) e^{-x^2/2}.
    const std::complex<double> mipow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    std::complex<double> out = 0.0;
    for (const auto& c : comps) {
        int total = 0;
        double v = c.coeff;
        for (int mu = 0; mu < d; ++mu) {
            total += c.orders[mu];
            v *= hermite(c.orders[mu], x[mu]) * std::exp(-0.5 * x[mu] * x[mu]) /
                 std::sqrt(2.0 * M_PI);
        }
        out += v * mipow[total % 4];
    }
    return out;
}

TestFunctionFamily::TestFunctionFamily(int d, int max_order) : d_(d) {
    if (d < 1 || max_order < 1) throw std::invalid_argument("TestFunctionFamily: bad shape");
    std::vector<int> orders(d, 0);
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(max_order);
    for (std::size_t f = 0; f < count; ++f) {
        std::size_t rem = f;
        for (int mu = d - 1; mu >= 0; --mu) {
            orders[mu] = static_cast<int>(rem % static_cast<std::size_t>(max_order));
            rem /= static_cast<std::size_t>(max_order);
        }
        TestFunction fn;
        fn.d = d;
        fn.comps.push_back({1.0, orders});
        basis_.push_back(fn);
    }
}

TestFunction TestFunctionFamily::random_element(CounterRng& rng) const {
    // A uniformly random basis element with a random scale.  Witness ratios
    // built on these draws have an atomic distribution, so their sample max
    // is reproducible across seeds; continuous-coefficient draws would make
    // the max a slowly converging quantile of a peaked ratio function.
    TestFunction fn = basis_[static_cast<std::size_t>(rng() % (std::uint64_t)basis_.size())];
    double scale = 0.5 + 1.5 * rng.uniform();
    for (auto& c : fn.comps) c.coeff *= scale;
    return fn;
}

double schwartz_norm(const TestFunction& f, int K) {
    const int d = f.d;
    const double lo = -8.0, hi = 8.0, step = 0.125;
    const int npts = static_cast<int>((hi - lo) / step) + 1;

    // Highest Hermite order present.
    int nmax = 0;
    for (const auto& c : f.comps)
        for (int o : c.orders) nmax = std::max(nmax, o);

    // 1-d derivative tables: val[n][b][i].
    std::vector<std::vector<std::vector<double>>> val(
        static_cast<std::size_t>(nmax) + 1,
        std::vector<std::vector<double>>(static_cast<std::size_t>(K) + 1));
    for (int n = 0; n <= nmax; ++n)
        for (int b = 0; b <= K; ++b) {
            auto poly = hermite_gauss_poly(n, b);
            auto& slot = val[static_cast<std::size_t>(n)][static_cast<std::size_t>(b)];
            slot.resize(static_cast<std::size_t>(npts));
            for (int i = 0; i < npts; ++i) {
                double x = lo + step * i;
                slot[static_cast<std::size_t>(i)] =
                    poly_eval(poly, x) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
            }
        }

    // Enumerate derivative multi-indices with |b| <= K.
    std::vector<std::vector<int>> bs;
    std::vector<int> cur(d, 0);
    std::function<void(int, int)> enumerate = [&](int mu, int left) {
        if (mu == d) {
            bs.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[mu] = v;
            enumerate(mu + 1, left - v);
        }
    };
    enumerate(0, K);

    std::size_t grid = 1;
    for (int mu = 0; mu < d; ++mu) grid *= static_cast<std::size_t>(npts);

    const std::complex<double> mipow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    double norm = 0.0;
    std::vector<int> gv(d);
    for (const auto& b : bs) {
        for (std::size_t g = 0; g < grid; ++g) {
            std::size_t rem = g;
            for (int mu = d - 1; mu >= 0; --mu) {
                gv[mu] = static_cast<int>(rem % static_cast<std::size_t>(npts));
                rem /= static_cast<std::size_t>(npts);
            }
            std::complex<double> fv = 0.0;
            for (const auto& c : f.comps) {
                double v = c.coeff;
                int total = 0;
                for (int mu = 0; mu < d; ++mu) {
                    total += c.orders[mu];
                    v *= val[static_cast<std::size_t>(c.orders[mu])]
                            [static_cast<std::size_t>(b[mu])][static_cast<std::size_t>(gv[mu])];
                }
                fv += v * mipow[total % 4];
            }
            double absf = std::abs(fv);
            if (absf == 0.0) continue;
            // Polynomial weights x^a, |a| <= K: the max over a at a fixed point
            // puts all K powers on the largest coordinate (or none).
            double xmax = 1.0;
            for (int mu = 0; mu < d; ++mu)
                xmax = std::max(xmax, std::abs(lo + step * gv[mu]));
            norm = std::max(norm, absf * std::pow(xmax, K));
        }
    }
    return norm;
}

}  // namespace imqft
