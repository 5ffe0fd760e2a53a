#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "imqft/fft.hpp"
#include "imqft/model.hpp"
#include "imqft/propagator.hpp"
#include "imqft/quadrature.hpp"

using namespace imqft;

namespace {

MassSpectrum make_spectrum(std::vector<std::pair<double, int>> entries) {
    MassSpectrum sp;
    for (auto [m, nu] : entries) sp.entries.push_back({m, nu});
    return sp;
}

// Direct lattice oracle for the continuum Green kernel: inverse DFT of
// 1/(k^2 + m^2) with continuum momenta on a large fine box.
double green_fft_oracle(double r, double m, int d, int L, double a) {
    LatticeFft fft(d, L);
    int V = (int)fft.volume();
    std::vector<int> stride(d, 1);
    for (int mu = d - 2; mu >= 0; --mu) stride[mu] = stride[mu + 1] * L;
    std::vector<std::complex<double>> data(V);
    for (int s = 0; s < V; ++s) {
        int rem = s;
        double k2 = 0.0;
        for (int mu = 0; mu < d; ++mu) {
            int n = rem / stride[mu];
            rem %= stride[mu];
            int half = (n <= L / 2) ? n : n - L;
            double k = 2.0 * M_PI * half / (L * a);
            k2 += k * k;
        }
        data[s] = 1.0 / (k2 + m * m);
    }
    fft.inverse(data);
    // site at (r, 0, ..., 0); divide by cell volume a^d for the density.
    int site = int(std::lround(r / a)) * stride[0];
    return data[site].real() / std::pow(a, d);
}

}  // namespace

TEST_CASE("p polynomial normalization p(0) = 1") {
    for (auto sp : {make_spectrum({{1.0, 1}}), make_spectrum({{1.0, 1}, {2.0, 2}}),
                    make_spectrum({{0.5, 3}})}) {
        CHECK(p_polynomial(0.0, sp) == doctest::Approx(1.0));
    }
}

TEST_CASE("p polynomial values") {
    // p(t) = prod (t + m^2)^nu / prod m^(2 nu)
    MassSpectrum sp = make_spectrum({{1.0, 1}, {2.0, 1}});
    CHECK(p_polynomial(1.0, sp) == doctest::Approx(2.0 * 5.0 / 4.0));  // 2.5
    MassSpectrum sq = make_spectrum({{1.0, 2}});
    CHECK(p_polynomial(3.0, sq) == doctest::Approx(16.0));
}

TEST_CASE("partial fractions for two masses") {
    // b_l = prod_{j != l} (m_j^2 - m_l^2)^{-1}; masses 1, sqrt(2):
    // b_1 = 1/(2-1) = 1, b_2 = 1/(1-2) = -1.
    MassSpectrum sp = make_spectrum({{1.0, 1}, {std::sqrt(2.0), 1}});
    PartialFractions pf = partial_fractions(sp);
    REQUIRE(pf.b.size() == 2);
    CHECK(pf.b[0] == doctest::Approx(1.0));
    CHECK(pf.b[1] == doctest::Approx(-1.0));
}

TEST_CASE("partial fractions for three masses") {
    // masses^2 = 1, 3, 4: b_1 = 1/(2*3) = 1/6... compute directly:
    // b_1 = 1/((3-1)(4-1)) = 1/6, b_2 = 1/((1-3)(4-3)) = -1/2,
    // b_3 = 1/((1-4)(3-4)) = 1/3.
    MassSpectrum sp = make_spectrum({{1.0, 1}, {std::sqrt(3.0), 1}, {2.0, 1}});
    PartialFractions pf = partial_fractions(sp);
    REQUIRE(pf.b.size() == 3);
    CHECK(pf.b[0] == doctest::Approx(1.0 / 6.0));
    CHECK(pf.b[1] == doctest::Approx(-0.5));
    CHECK(pf.b[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("partial fraction identity on a grid") {
    MassSpectrum sp = make_spectrum({{1.0, 1}, {1.7, 1}, {2.3, 1}});
    PartialFractions pf = partial_fractions(sp);
    for (double t = 0.0; t <= 25.0; t += 0.5) {
        double prod = 1.0;
        for (const auto& e : sp.entries) prod *= t + e.m * e.m;
        double sum = 0.0;
        for (size_t l = 0; l < pf.b.size(); ++l)
            sum += pf.b[l] / (t + sp.entries[l].m * sp.entries[l].m);
        CHECK(std::abs(sum - 1.0 / prod) < 1e-12);
    }
}

TEST_CASE("partial fractions rejects dipoles") {
    MassSpectrum sp = make_spectrum({{1.0, 2}});
    CHECK_THROWS_AS(partial_fractions(sp), UnsupportedSpectrum);
}

TEST_CASE("green kernel closed forms") {
    double m = 1.3, r = 0.9;
    // d = 1: e^{-mr)/(2m)
    CHECK(green_kernel(r, m, 1) == doctest::Approx(std::exp(-m * r) / (2 * m)));
    // d = 2: K_0(mr)/(2 pi)
    CHECK(green_kernel(r, m, 2) ==
          doctest::Approx(std::cyl_bessel_k(0.0, m * r) / (2 * M_PI)));
    // d = 3: e^{-mr}/(4 pi r)
    CHECK(green_kernel(r, m, 3) == doctest::Approx(std::exp(-m * r) / (4 * M_PI * r)));
}

TEST_CASE("green kernel d=4 vs Bessel oracle") {
    // In d = 4 the kernel is m K_1(m r)/(4 pi^2 r).
    double m = 1.1;
    for (double r : {0.5, 1.0, 2.0}) {
        double want = m * std::cyl_bessel_k(1.0, m * r) / (4 * M_PI * M_PI * r);
        CHECK(green_kernel(r, m, 4) == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("green kernel vs proper-time quadrature oracle in d=2,3") {
    double m = 0.8;
    for (int d : {2, 3}) {
        for (double r : {0.7, 1.4}) {
            double want = integrate_to_infinity(
                [&](double t) {
                    return std::pow(4 * M_PI * t, -d / 2.0) *
                           std::exp(-r * r / (4 * t) - m * m * t);
                },
                1e-12);
            CHECK(green_kernel(r, m, d) == doctest::Approx(want).epsilon(1e-7));
        }
    }
}

TEST_CASE("green kernel vs lattice FFT oracle in d=2") {
    // Fine, large box; agreement limited by discretization, a few percent.
    double m = 1.0;
    double got = green_kernel(2.0, m, 2);
    double oracle = green_fft_oracle(2.0, m, 2, 256, 0.0625);
    CHECK(got == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("green kernel singular at the origin") {
    CHECK_THROWS_AS(green_kernel(0.0, 1.0, 3), SingularityError);
}

TEST_CASE("green kernel monotone decay") {
    for (int d : {1, 2, 3}) {
        double prev = green_kernel(0.25, 1.0, d);
        for (double r = 0.5; r < 4.0; r += 0.25) {
            double cur = green_kernel(r, 1.0, d);
            CHECK(cur < prev);
            CHECK(cur > 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("product green kernel equals partial-fraction sum") {
    MassSpectrum sp = make_spectrum({{1.0, 1}, {2.0, 1}});
    PartialFractions pf = partial_fractions(sp);
    double r = 1.2;
    double want = 0.0;
    for (size_t l = 0; l < pf.b.size(); ++l)
        want += pf.b[l] * green_kernel(r, sp.entries[l].m, 2);
    CHECK(product_green_kernel(r, sp, 2) == doctest::Approx(want));
}

TEST_CASE("dhat_inverse single mass") {
    ValidatedModel model = ValidatedModel::make(parse_model_config(
        R"({"d":2,"N":1,"masses":[{"m":1}],
            "levy":{"z":1,"atoms":[{"w":1,"s":[1]}]}})"));
    double k2 = 2.25;
    Eigen::VectorXd k(2);
    k << 1.5, 0.0;
    CHECK(dhat_inverse(k, model)(0, 0).real() == doctest::Approx(1.0 / (k2 + 1.0)));
}

TEST_CASE("gauss-hermite rule integrates gaussian moments") {
    auto rule = gauss_hermite_halfweight(20);
    // integral over R of k^2 e^{-k^2/2} dk = sqrt(2 pi)
    double got = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        got += rule.weights[i] * rule.nodes[i] * rule.nodes[i] *
               std::exp(-rule.nodes[i] * rule.nodes[i] / 2);
    CHECK(got == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-10));
}
