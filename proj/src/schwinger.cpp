#include "imqft/schwinger.hpp"

#include <cmath>
#include <stdexcept>

#include "imqft/fft.hpp"
#include "imqft/propagator.hpp"

namespace imqft {

namespace {

CumulantTensor raise_indices(const CumulantTensor& c, const Eigen::MatrixXd& metric) {
    if (metric.isIdentity(1e-14)) return c;
    Eigen::MatrixXd ginv = metric.inverse();
    const int N = c.N;
    CumulantTensor out = c;
    std::vector<int> idx(c.order), jdx(c.order);
    for (std::size_t f = 0; f < out.entries.size(); ++f) {
        std::size_t rem = f;
        for (int i = c.order - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(rem % N);
            rem /= N;
        }
        double val = 0.0;
        std::size_t inner = c.entries.size();
        for (std::size_t g = 0; g < inner; ++g) {
            std::size_t r2 = g;
            for (int i = c.order - 1; i >= 0; --i) {
                jdx[i] = static_cast<int>(r2 % N);
                r2 /= N;
            }
            double w = c.entries[g];
            for (int i = 0; i < c.order && w != 0.0; ++i) w *= ginv(idx[i], jdx[i]);
            val += w;
        }
        out.entries[f] = val;
    }
    return out;
}

}  // namespace

CumulantVertex::CumulantVertex(int order, const ValidatedModel& model, bool minkowski)
    : order_(order), N_(model->N) {
    c_raised_ = raise_indices(cumulant_tensor(order, model->levy), model->metric);
    q_ = minkowski ? model->qE.continued() : model->qE;
    zero_ = true;
    for (double v : c_raised_.entries)
        if (v != 0.0) zero_ = false;
}

std::complex<double> CumulantVertex::eval(const std::vector<Eigen::VectorXd>& ks,
                                          const std::vector<int>& alphas) const {
    if (static_cast<int>(ks.size()) != order_ || static_cast<int>(alphas.size()) != order_)
        throw std::invalid_argument("CumulantVertex::eval: arity mismatch");
    if (zero_) return 0.0;
    std::vector<Eigen::MatrixXcd> qmats;
    qmats.reserve(order_);
    for (const auto& k : ks) qmats.push_back(q_.eval(k));

    std::complex<double> total = 0.0;
    std::vector<int> beta(order_, 0);
    std::size_t combos = 1;
    for (int i = 0; i < order_; ++i) combos *= static_cast<std::size_t>(N_);
    for (std::size_t f = 0; f < combos; ++f) {
        std::size_t rem = f;
        for (int i = order_ - 1; i >= 0; --i) {
            beta[i] = static_cast<int>(rem % N_);
            rem /= N_;
        }
        double c = c_raised_.at(beta);
        if (c == 0.0) continue;
        std::complex<double> prod = c;
        for (int l = 0; l < order_; ++l) prod *= qmats[l](beta[l], alphas[l]);
        total += prod;
    }
    return total;
}

double schwinger2_truncated(const Eigen::VectorXd& x, int alpha1, int alpha2,
                            const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    if (!spec.qE.is_constant())
        throw std::invalid_argument(
            "schwinger2_truncated: derivative couplings need the lattice path");

    Eigen::MatrixXd sbar = spec.levy.sigma_bar2();
    if (sbar.isZero(0.0)) return 0.0;

    // Constant-polynomial contraction of the cumulant vertex at order 2.
    Eigen::MatrixXcd q0 = spec.qE.eval(Eigen::VectorXd::Zero(spec.d));
    Eigen::MatrixXd ginv = spec.metric.inverse();
    Eigen::MatrixXd c_up = ginv * sbar * ginv.transpose();
    std::complex<double> coupling = 0.0;
    for (int b1 = 0; b1 < spec.N; ++b1)
        for (int b2 = 0; b2 < spec.N; ++b2)
            coupling += c_up(b1, b2) * q0(b1, alpha1) * q0(b2, alpha2);
    if (coupling == 0.0) return 0.0;

    double kernel = product_green_kernel(x.norm(), spec.spectrum, spec.d);
    return coupling.real() * kernel / spec.spectrum.mass_normalization();
}

double schwingerN_truncated(const std::vector<Eigen::VectorXd>& points,
                            const std::vector<int>& alphas, const ValidatedModel& model,
                            const LatticeSpec& grid) {
    const ModelSpec& spec = model.spec();
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::domain_error("schwingerN_truncated: order must be >= 3");
    if (spec.N != 1)
        throw std::invalid_argument("schwingerN_truncated: lattice vertex path is scalar-only");
    if (grid.d != spec.d) throw std::invalid_argument("schwingerN_truncated: dimension mismatch");

    double cn = scalar_cumulant(n, spec.levy);
    if (cn == 0.0) return 0.0;

    // Per-leg momentum kernel Q_E(k)/prod(|k|^2 + m^2)^nu on the Fourier grid
    // of the box, inverse transformed to position space once.
    LatticeFft fft(grid.d, grid.L);
    const std::size_t V = grid.volume();
    std::vector<std::complex<double>> kernel(V);
    std::vector<int> nvec(grid.d);
    Eigen::VectorXd k(grid.d);
    for (std::size_t f = 0; f < V; ++f) {
        std::size_t rem = f;
        for (int mu = grid.d - 1; mu >= 0; --mu) {
            nvec[mu] = static_cast<int>(rem % grid.L);
            rem /= grid.L;
        }
        double k2 = 0.0;
        for (int mu = 0; mu < grid.d; ++mu) {
            int half = nvec[mu] <= grid.L / 2 ? nvec[mu] : nvec[mu] - grid.L;
            k[mu] = 2.0 * M_PI * half / (grid.L * grid.a);
            k2 += k[mu] * k[mu];
        }
        double denom = 1.0;
        for (const auto& e : spec.spectrum.entries)
            denom *= std::pow(k2 + e.m * e.m, e.nu);
        kernel[f] = spec.qE.eval(k)(0, 0) / denom;
    }
    fft.inverse(kernel);
    // Continuum normalization: values approximate int d^dk/(2pi)^d e^{ikx} symbol.
    double cell = std::pow(grid.a, grid.d);
    double boxnorm = 1.0 / (cell);  // (1/V) sum_k -> a^d L^d -> 1/(a^d) per site factor
    for (auto& v : kernel) v *= boxnorm;

    // Snap points to sites.
    std::vector<std::vector<int>> sites(n, std::vector<int>(grid.d));
    for (int j = 0; j < n; ++j)
        for (int mu = 0; mu < grid.d; ++mu) {
            long s = std::lround(points[j][mu] / grid.a);
            sites[j][mu] = static_cast<int>(((s % grid.L) + grid.L) % grid.L);
        }

    // Vertex integral: a^d sum_x prod_j kernel[x_j - x].
    std::complex<double> total = 0.0;
    std::vector<int> xv(grid.d);
    for (std::size_t f = 0; f < V; ++f) {
        std::size_t rem = f;
        for (int mu = grid.d - 1; mu >= 0; --mu) {
            xv[mu] = static_cast<int>(rem % grid.L);
            rem /= grid.L;
        }
        std::complex<double> prod = 1.0;
        for (int j = 0; j < n; ++j) {
            std::size_t idx = 0;
            for (int mu = 0; mu < grid.d; ++mu) {
                int diff = sites[j][mu] - xv[mu];
                diff = ((diff % grid.L) + grid.L) % grid.L;
                idx = idx * static_cast<std::size_t>(grid.L) + static_cast<std::size_t>(diff);
            }
            prod *= kernel[idx];
        }
        total += prod;
    }
    total *= cell;

    // Constant scalar Q_E factors are already inside the kernel; the cumulant
    // contraction reduces to C_n once indices are raised.
    (void)alphas;
    double ginv = 1.0 / model->metric(0, 0);
    double craise = std::pow(ginv, n);
    return cn * craise * total.real();
}

}  // namespace imqft
