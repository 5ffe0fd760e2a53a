#include "imqft/propagator.hpp"

#include <cmath>

#include "imqft/quadrature.hpp"

namespace imqft {

double p_polynomial(double t, const MassSpectrum& spectrum) {
    double num = 1.0;
    for (const auto& e : spectrum.entries)
        num *= std::pow(t + e.m * e.m, e.nu);
    return num / spectrum.mass_normalization();
}

Eigen::MatrixXcd dhat_inverse(const Eigen::VectorXd& k, const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    double k2 = k.squaredNorm();
    double denom = 1.0;
    for (const auto& e : spec.spectrum.entries)
        denom *= std::pow(k2 + e.m * e.m, e.nu);
    return spec.qE.eval(k) / denom;
}

PartialFractions partial_fractions(const MassSpectrum& spectrum) {
    if (!spectrum.no_dipole())
        throw UnsupportedSpectrum("partial_fractions: dipole spectrum (nu > 1) not supported");
    const int P = spectrum.size();
    PartialFractions pf;
    pf.b.resize(P);
    for (int l = 0; l < P; ++l) {
        double ml2 = spectrum.entries[l].m * spectrum.entries[l].m;
        double b = 1.0;
        for (int j = 0; j < P; ++j) {
            if (j == l) continue;
            double mj2 = spectrum.entries[j].m * spectrum.entries[j].m;
            double diff = mj2 - ml2;
            if (diff == 0.0)
                throw UnsupportedSpectrum("partial_fractions: duplicate masses");
            b /= diff;
        }
        pf.b[l] = b;
    }
    return pf;
}

double green_kernel(double r, double m, int d) {
    if (r < 1e-12) throw SingularityError("green_kernel: evaluation at coincident points");
    switch (d) {
        case 1:
            return std::exp(-m * r) / (2.0 * m);
        case 2:
            return std::cyl_bessel_k(0.0, m * r) / (2.0 * M_PI);
        case 3:
            return std::exp(-m * r) / (4.0 * M_PI * r);
        default: {
            // Proper-time representation: int_0^inf (4 pi t)^{-d/2}
            // exp(-r^2/(4t) - m^2 t) dt, peaked near t = r/(2m).
            double tstar = r / (2.0 * m);
            auto integrand = [&](double u) {
                double t = tstar * std::exp(u);
                double logI = -0.5 * d * std::log(4.0 * M_PI * t) - r * r / (4.0 * t) -
                              m * m * t;
                return std::exp(logI) * t;  // du-measure Jacobian
            };
            double span = 40.0;
            return integrate_adaptive(integrand, -span, span, 1e-10 * std::exp(-m * r), 48);
        }
    }
}

double green_kernel(const Eigen::VectorXd& x, double m, int d) {
    return green_kernel(x.norm(), m, d);
}

double product_green_kernel(double r, const MassSpectrum& spectrum, int d) {
    if (spectrum.size() == 1 && spectrum.entries[0].nu == 1)
        return green_kernel(r, spectrum.entries[0].m, d);
    PartialFractions pf = partial_fractions(spectrum);
    double out = 0.0;
    for (int l = 0; l < spectrum.size(); ++l)
        out += pf.b[l] * green_kernel(r, spectrum.entries[l].m, d);
    return out;
}

}  // namespace imqft
