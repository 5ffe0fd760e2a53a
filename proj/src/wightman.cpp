#include "imqft/wightman.hpp"

#include <cmath>

#include "imqft/partitions.hpp"
#include "imqft/propagator.hpp"
#include "imqft/quadrature.hpp"
#include "imqft/schwinger.hpp"

namespace imqft {

double minkowski_square(const Eigen::VectorXd& k) {
    return k[0] * k[0] - k.tail(k.size() - 1).squaredNorm();
}

MatrixPolynomial continue_qM(const MatrixPolynomial& qE) { return qE.continued(); }

WightmanTermList build_wightman_terms(int n, const std::vector<int>& assignment,
                                      const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    if (n < 2) throw std::domain_error("build_wightman_terms: order must be >= 2");
    if (!spec.spectrum.no_dipole())
        throw UnsupportedSpectrum("build_wightman_terms: dipole spectrum not supported");

    WightmanTermList out;
    out.n = n;
    out.d = spec.d;

    PartialFractions pf = partial_fractions(spec.spectrum);

    if (n == 2) {
        out.two_point = true;
        out.prefactor = std::pow(2.0 * M_PI, spec.d + 1) / spec.spectrum.mass_normalization();
        out.shell_b = pf.b;
        for (int l = 0; l < spec.spectrum.size(); ++l)
            out.masses.push_back(spec.spectrum.entries[l].m);
        return out;
    }

    if (static_cast<int>(assignment.size()) != n)
        throw std::invalid_argument("build_wightman_terms: assignment size must equal n");
    out.mass_idx = assignment;
    out.coupling = 1.0;
    for (int l : assignment) {
        if (l < 0 || l >= spec.spectrum.size())
            throw std::invalid_argument("build_wightman_terms: assignment index out of range");
        out.masses.push_back(spec.spectrum.entries[l].m);
        out.coupling *= pf.b[static_cast<std::size_t>(l)];
    }
    for (int j = 0; j < n; ++j) out.terms.push_back({j});
    return out;
}

std::complex<double> evaluate_onshell(const WightmanTermList& terms,
                                      const std::vector<Eigen::VectorXd>& config,
                                      const ValidatedModel& model,
                                      const std::vector<int>& alphas, double pole_eps,
                                      const VertexEval* custom_qM) {
    const int n = terms.two_point ? 2 : terms.n;
    std::vector<int> comp = alphas.empty() ? std::vector<int>(n, 0) : alphas;

    CumulantVertex vertex(n, model, /*minkowski=*/true);
    auto qm = [&](const std::vector<Eigen::VectorXd>& ks) {
        return custom_qM ? (*custom_qM)(ks, comp) : vertex.eval(ks, comp);
    };

    if (terms.two_point) {
        // Closed two-point density: shell sum at k1 on the backward shell, k2
        // fixed by conservation.
        std::complex<double> total = 0.0;
        for (std::size_t l = 0; l < terms.shell_b.size(); ++l) {
            ShellMomentum k1{terms.masses[l], -1, config[0]};
            Eigen::VectorXd k1f = k1.full();
            total += terms.shell_b[l] / (2.0 * k1.omega()) * qm({k1f, -k1f});
        }
        return terms.prefactor * total;
    }

    std::complex<double> total = 0.0;
    for (const auto& term : terms.terms) {
        const int j = term.pole_slot;
        std::vector<Eigen::VectorXd> ks(n);
        double jac = 1.0;
        Eigen::VectorXd pole_k = Eigen::VectorXd::Zero(terms.d);
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            ShellMomentum sm{terms.masses[static_cast<std::size_t>(l)], l < j ? -1 : +1,
                             config[static_cast<std::size_t>(l)]};
            ks[static_cast<std::size_t>(l)] = sm.full();
            jac /= 2.0 * sm.omega();
            pole_k -= ks[static_cast<std::size_t>(l)];
        }
        ks[static_cast<std::size_t>(j)] = pole_k;
        double mj = terms.masses[static_cast<std::size_t>(j)];
        double denom = minkowski_square(pole_k) - mj * mj;
        if (std::abs(denom) < pole_eps)
            throw NearPoleError("evaluate_onshell: term " + std::to_string(j) +
                                " within " + std::to_string(std::abs(denom)) +
                                " of the mass shell");
        total += jac * (-1.0 / denom) * terms.coupling * qm(ks);
    }
    return total;
}

namespace {

// Constant coupling of the two-point function: Q-contraction of sigma_bar^2
// over the invariant metric, divided by the mass normalization (the closed
// two-point prefactor evaluated for constant Q_E).
double two_point_coupling(const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    Eigen::MatrixXcd q0 = spec.qE.eval(Eigen::VectorXd::Zero(spec.d));
    Eigen::MatrixXd ginv = spec.metric.inverse();
    Eigen::MatrixXd c_up = ginv * spec.levy.sigma_bar2() * ginv.transpose();
    std::complex<double> c = 0.0;
    for (int b1 = 0; b1 < spec.N; ++b1)
        for (int b2 = 0; b2 < spec.N; ++b2) c += c_up(b1, b2) * q0(b1, 0) * q0(b2, 0);
    return c.real() / spec.spectrum.mass_normalization();
}

}  // namespace

FourierLaplaceResult fourier_laplace_check(const ValidatedModel& model, double tau,
                                           const Eigen::VectorXd& xspace) {
    const ModelSpec& spec = model.spec();
    if (tau == 0.0) throw std::domain_error("fourier_laplace_check: tau must be nonzero");
    if (spec.N != 1 || !spec.qE.is_constant())
        throw std::invalid_argument("fourier_laplace_check: scalar constant-Q models only");
    if (spec.d != 2 && spec.d != 3)
        throw std::invalid_argument("fourier_laplace_check: implemented for d = 2, 3");
    if (!spec.spectrum.no_dipole())
        throw UnsupportedSpectrum("fourier_laplace_check: no-dipole spectra only");

    Eigen::VectorXd x(spec.d);
    x[0] = tau;
    x.tail(spec.d - 1) = xspace;

    FourierLaplaceResult res;
    res.lhs = schwinger2_truncated(x, 0, 0, model);

    double pref = two_point_coupling(model);
    PartialFractions pf = partial_fractions(spec.spectrum);
    double abstau = std::abs(tau);
    double rhs = 0.0;
    for (int l = 0; l < spec.spectrum.size(); ++l) {
        double m = spec.spectrum.entries[l].m;
        double shell = 0.0;
        if (spec.d == 2) {
            double xs = xspace[0];
            shell = 2.0 / (2.0 * M_PI) *
                    integrate_to_infinity(
                        [&](double k) {
                            double w = std::sqrt(k * k + m * m);
                            return std::exp(-w * abstau) * std::cos(k * xs) / (2.0 * w);
                        },
                        0.0, 1e-12);
        } else {
            double r = xspace.norm();
            shell = 1.0 / (2.0 * M_PI) *
                    integrate_to_infinity(
                        [&](double k) {
                            double w = std::sqrt(k * k + m * m);
                            double ang = r < 1e-12 ? 1.0 : std::cyl_bessel_j(0.0, k * r);
                            return k * std::exp(-w * abstau) * ang / (2.0 * w);
                        },
                        0.0, 1e-12);
        }
        rhs += pf.b[static_cast<std::size_t>(l)] * shell;
    }
    res.rhs = pref * rhs;
    double scale = std::max(std::abs(res.lhs), std::abs(res.rhs));
    res.gap = scale == 0.0 ? 0.0 : std::abs(res.lhs - res.rhs) / scale;
    return res;
}

std::complex<double> SmearSlot::fhat(const Eigen::VectorXd& k) const {
    double base = fn.fhat(k);
    if (shift.size() == 0) return base;
    double phase = k.dot(shift);
    return base * std::complex<double>(std::cos(phase), std::sin(phase));
}

namespace {

// Tensor-product Gauss-Hermite loop over (count) spatial momenta of dimension
// ds each; calls body with the assembled vectors and the product weight.
void gh_tensor_loop(const GaussHermite& rule, int count, int ds,
                    const std::function<void(const std::vector<Eigen::VectorXd>&, double)>& body) {
    const int D = count * ds;
    std::vector<int> idx(static_cast<std::size_t>(D), 0);
    const int npts = static_cast<int>(rule.nodes.size());
    std::vector<Eigen::VectorXd> ks(static_cast<std::size_t>(count), Eigen::VectorXd(ds));
    while (true) {
        double w = 1.0;
        for (int i = 0; i < D; ++i) {
            double node = rule.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            w *= rule.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            ks[static_cast<std::size_t>(i / ds)][i % ds] = node;
        }
        body(ks, w);
        int p = 0;
        while (p < D) {
            if (++idx[static_cast<std::size_t>(p)] < npts) break;
            idx[static_cast<std::size_t>(p)] = 0;
            ++p;
        }
        if (p == D) break;
    }
}

}  // namespace

std::complex<double> wightman_truncated_smeared(const ValidatedModel& model,
                                                const std::vector<SmearSlot>& slots,
                                                const SmearOptions& opts) {
    const ModelSpec& spec = model.spec();
    const int n = static_cast<int>(slots.size());
    if (spec.N != 1)
        throw std::invalid_argument("wightman_truncated_smeared: scalar models only");
    if (n < 1) throw std::domain_error("wightman_truncated_smeared: empty slot list");

    const int ds = spec.d - 1;

    if (n == 1) {
        double c1 = scalar_cumulant(1, spec.levy);
        double mean = c1 * spec.qE.eval(Eigen::VectorXd::Zero(spec.d))(0, 0).real() /
                      spec.spectrum.mass_normalization();
        return mean * slots[0].fhat(Eigen::VectorXd::Zero(spec.d));
    }

    if (!spec.spectrum.no_dipole())
        throw UnsupportedSpectrum("wightman_truncated_smeared: no-dipole spectra only");
    PartialFractions pf = partial_fractions(spec.spectrum);
    CumulantVertex vertex(n, model, /*minkowski=*/true);
    if (vertex.is_zero()) return 0.0;

    GaussHermite rule = gauss_hermite_halfweight(opts.gh_order);
    const double measure = 1.0 / std::pow(2.0 * M_PI, ds);

    if (n == 2) {
        // Shell representation with the (2 pi)^{d+1} constant divided back out
        // into the smearing measure:
        // sum_l b_l / prod m^{2} int dk/(2 pi)^{d-1} fhat1(k^-) fhat2(-k^-)/(2 w).
        std::complex<double> total = 0.0;
        std::vector<int> a2{0, 0};
        for (int l = 0; l < spec.spectrum.size(); ++l) {
            double m = spec.spectrum.entries[l].m;
            std::complex<double> acc = 0.0;
            gh_tensor_loop(rule, 1, ds, [&](const std::vector<Eigen::VectorXd>& ks, double w) {
                ShellMomentum sm{m, -1, ks[0]};
                Eigen::VectorXd k1 = sm.full();
                acc += w * slots[0].fhat(k1) * slots[1].fhat(-k1) / (2.0 * sm.omega()) *
                       vertex.eval({k1, -k1}, a2);
            });
            total += pf.b[static_cast<std::size_t>(l)] * acc;
        }
        return total * measure / spec.spectrum.mass_normalization();
    }

    // n >= 3: sum over mass assignments and pole positions, (n-1) shell
    // integrals per term.  Overall constant convention: unit, with all 2 pi
    // powers carried by the per-slot measure dk/(2 pi)^{d-1}.
    const int P = spec.spectrum.size();
    std::size_t assignments = 1;
    for (int i = 0; i < n; ++i) assignments *= static_cast<std::size_t>(P);

    std::vector<int> comp(static_cast<std::size_t>(n), 0);
    std::complex<double> total = 0.0;
    std::vector<int> assign(static_cast<std::size_t>(n));
    for (std::size_t af = 0; af < assignments; ++af) {
        std::size_t rem = af;
        for (int i = n - 1; i >= 0; --i) {
            assign[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(P));
            rem /= static_cast<std::size_t>(P);
        }
        double coupling = 1.0;
        for (int l : assign) coupling *= pf.b[static_cast<std::size_t>(l)];

        for (int j = 0; j < n; ++j) {
            std::complex<double> acc = 0.0;
            gh_tensor_loop(rule, n - 1, ds, [&](const std::vector<Eigen::VectorXd>& kfree,
                                                double w) {
                std::vector<Eigen::VectorXd> ks(static_cast<std::size_t>(n));
                Eigen::VectorXd pole_k = Eigen::VectorXd::Zero(spec.d);
                double jac = 1.0;
                int free_idx = 0;
                for (int l = 0; l < n; ++l) {
                    if (l == j) continue;
                    double m = spec.spectrum.entries[assign[static_cast<std::size_t>(l)]].m;
                    ShellMomentum sm{m, l < j ? -1 : +1,
                                     kfree[static_cast<std::size_t>(free_idx++)]};
                    ks[static_cast<std::size_t>(l)] = sm.full();
                    jac /= 2.0 * sm.omega();
                    pole_k -= ks[static_cast<std::size_t>(l)];
                }
                ks[static_cast<std::size_t>(j)] = pole_k;
                double mj = spec.spectrum.entries[assign[static_cast<std::size_t>(j)]].m;
                double denom = minkowski_square(pole_k) - mj * mj;
                // Symmetric node combinations land on the shell exactly (two
                // free momenta on opposite shells with opposite nodes).  The
                // singularity is principal-value integrable and the grid is
                // symmetric about it, so dropping the window is the PV
                // prescription; point evaluation still raises NearPoleError.
                if (std::abs(denom) < opts.pole_eps) return;
                std::complex<double> prod(1.0, 0.0);
                for (int l = 0; l < n; ++l)
                    prod *= slots[static_cast<std::size_t>(l)].fhat(ks[static_cast<std::size_t>(l)]);
                acc += w * jac * (-1.0 / denom) * prod * vertex.eval(ks, comp);
            });
            total += coupling * acc * std::pow(measure, n - 1);
        }
    }
    return total;
}

std::complex<double> wightman_full_smeared(const ValidatedModel& model,
                                           const std::vector<SmearSlot>& slots,
                                           const SmearOptions& opts) {
    const int n = static_cast<int>(slots.size());
    std::function<std::complex<double>(const std::vector<int>&)> block =
        [&](const std::vector<int>& elems) {
            std::vector<SmearSlot> sub;
            for (int e : elems) sub.push_back(slots[static_cast<std::size_t>(e)]);
            return wightman_truncated_smeared(model, sub, opts);
        };
    return untruncate<std::complex<double>>(n, block);
}

HsscStats hssc_witness(const ValidatedModel& model, int n, int m,
                       const TestFunctionFamily& family, int draws, std::uint64_t seed,
                       const SmearOptions& opts) {
    if (n + m > 4) throw std::domain_error("hssc_witness: n + m must be <= 4");
    HsscStats stats;
    stats.draws = draws;
    double sum = 0.0;
    int ok = 0;
    for (int dr = 0; dr < draws; ++dr) {
        CounterRng rng(seed, static_cast<std::uint64_t>(dr) + 1);
        std::vector<SmearSlot> slots;
        double norm_prod = 1.0;
        for (int i = 0; i < n + m; ++i) {
            SmearSlot slot;
            slot.fn = family.random_element(rng);
            slots.push_back(slot);
            norm_prod *= schwartz_norm(slot.fn);
        }
        try {
            std::complex<double> w = wightman_full_smeared(model, slots, opts);
            double ratio = std::abs(w) / norm_prod;
            stats.ratios.push_back(ratio);
            stats.max_ratio = std::max(stats.max_ratio, ratio);
            sum += ratio;
            ++ok;
        } catch (const NearPoleError&) {
            ++stats.failures;
        }
    }
    stats.mean_ratio = ok > 0 ? sum / ok : 0.0;
    return stats;
}

std::vector<ClusterRow> clustering_check(const ValidatedModel& model, int n, int split,
                                         const std::vector<double>& shifts,
                                         const SmearOptions& opts) {
    const ModelSpec& spec = model.spec();
    if (split < 1 || split >= n) throw std::domain_error("clustering_check: bad split");

    // Fixed smooth slot functions: the Gaussian ground state everywhere.
    TestFunctionFamily family(spec.d, 1);
    std::vector<SmearSlot> fslots(static_cast<std::size_t>(split)),
        hslots(static_cast<std::size_t>(n - split));
    for (auto& s : fslots) s.fn = family.basis()[0];
    for (auto& s : hslots) s.fn = family.basis()[0];

    std::complex<double> wf = wightman_full_smeared(model, fslots, opts);
    std::complex<double> wh = wightman_full_smeared(model, hslots, opts);

    std::vector<ClusterRow> rows;
    for (double t : shifts) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(spec.d);
        a[1] = t;  // spacelike direction e_1
        std::vector<SmearSlot> all = fslots;
        for (auto s : hslots) {
            s.shift = a;
            all.push_back(s);
        }
        ClusterRow row;
        row.t = t;
        row.full = wightman_full_smeared(model, all, opts);
        row.product = wf * wh;
        row.gap = std::abs(row.full - row.product);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace imqft
