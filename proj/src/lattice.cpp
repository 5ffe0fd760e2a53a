#include "imqft/lattice.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "imqft/fft.hpp"
#include "imqft/levy.hpp"
#include "imqft/partitions.hpp"
#include "imqft/propagator.hpp"
#include "imqft/rng.hpp"

namespace imqft {

std::vector<std::string> lattice_warnings(const LatticeSpec& lat, const MassSpectrum& spectrum,
                                          std::size_t memory_budget_sites) {
    std::vector<std::string> warnings;
    if (lat.volume() > memory_budget_sites)
        warnings.push_back("lattice volume exceeds the configured memory budget");
    double mmin = spectrum.min_mass();
    if (mmin > 0.0 && lat.a * lat.L <= 6.0 / mmin)
        warnings.push_back("box smaller than 6 correlation lengths; exponential tails wrap");
    return warnings;
}

double lattice_laplacian_eig(const std::vector<int>& nvec, const LatticeSpec& lat) {
    double lam = 0.0;
    for (int mu = 0; mu < lat.d; ++mu) {
        double s = std::sin(M_PI * nvec[mu] / lat.L);
        lam += 4.0 / (lat.a * lat.a) * s * s;
    }
    return lam;
}

namespace {

void decode_site(std::size_t f, int d, int L, std::vector<int>& nvec) {
    for (int mu = d - 1; mu >= 0; --mu) {
        nvec[mu] = static_cast<int>(f % static_cast<std::size_t>(L));
        f /= static_cast<std::size_t>(L);
    }
}

// Momentum-space symbol tables shared by solver and analytic kernels.
struct SymbolTable {
    std::vector<double> lambda;                 // spectral Laplacian eigenvalue per k
    std::vector<Eigen::MatrixXcd> dinv;         // Dhat^{-1} per k (empty matrices if scalar)
    std::vector<std::complex<double>> dinv_s;   // scalar fast path
    bool scalar = true;
};

SymbolTable build_symbols(const LatticeSpec& lat, const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    SymbolTable tab;
    tab.scalar = (spec.N == 1);
    const std::size_t V = lat.volume();
    tab.lambda.resize(V);
    if (tab.scalar)
        tab.dinv_s.resize(V);
    else
        tab.dinv.resize(V);
    std::vector<int> nvec(lat.d);
    Eigen::VectorXd ktilde(lat.d);
    for (std::size_t f = 0; f < V; ++f) {
        decode_site(f, lat.d, lat.L, nvec);
        double lam = 0.0;
        for (int mu = 0; mu < lat.d; ++mu) {
            double s = std::sin(M_PI * nvec[mu] / lat.L);
            double comp = 2.0 / lat.a * s;
            // Signed symbol momentum for Q_E's argument.
            if (nvec[mu] > lat.L / 2) comp = -comp;
            ktilde[mu] = comp;
            lam += comp * comp;
        }
        tab.lambda[f] = lam;
        double denom = 1.0;
        for (const auto& e : spec.spectrum.entries)
            denom *= std::pow(lam + e.m * e.m, e.nu);
        if (tab.scalar)
            tab.dinv_s[f] = spec.qE.eval(ktilde)(0, 0) / denom;
        else
            tab.dinv[f] = spec.qE.eval(ktilde) / denom;
    }
    return tab;
}

}  // namespace

FieldSample sample_noise(const LatticeSpec& lat, const ValidatedModel& model,
                         std::uint64_t seed, std::uint64_t stream) {
    const ModelSpec& spec = model.spec();
    const int N = spec.N;
    const std::size_t V = lat.volume();
    const double cell = std::pow(lat.a, lat.d);

    FieldSample out;
    out.lat = lat;
    out.N = N;
    out.seed = seed;
    out.stream = stream;
    out.values.assign(static_cast<std::size_t>(N) * V, 0.0);

    CounterRng rng(seed, stream);

    // Gaussian white part: chol(sigma2) scaled by a^{-d/2}.
    Eigen::MatrixXd chol = Eigen::MatrixXd::Zero(N, N);
    bool has_gauss = !spec.levy.sigma2.isZero(0.0);
    if (has_gauss) {
        Eigen::LLT<Eigen::MatrixXd> llt(spec.levy.sigma2 +
                                        1e-14 * Eigen::MatrixXd::Identity(N, N));
        chol = llt.matrixL();
    }
    bool has_drift = !spec.levy.a.isZero(0.0);

    // Compound Poisson: K ~ Poisson(z a^d) jumps per cell, each worth s/a^d.
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto& at : spec.levy.atoms) {
        acc += at.w;
        cdf.push_back(acc);
    }
    double jump_mean = spec.levy.z * cell;

    Eigen::VectorXd g(N), site_val(N);
    for (std::size_t x = 0; x < V; ++x) {
        site_val.setZero();
        if (has_drift) site_val += spec.levy.a;
        if (has_gauss) {
            for (int c = 0; c < N; ++c) g[c] = rng.normal();
            site_val += chol * g / std::sqrt(cell);
        }
        if (jump_mean > 0.0) {
            long kjumps = rng.poisson(jump_mean);
            for (long j = 0; j < kjumps; ++j) {
                int i = rng.pick(cdf);
                site_val += spec.levy.atoms[static_cast<std::size_t>(i)].s / cell;
            }
        }
        for (int c = 0; c < N; ++c)
            out.values[static_cast<std::size_t>(c) * V + x] = site_val[c];
    }

    // Independent Gaussian field with spectral density sigma_bar^2 (p - 1).
    Eigen::MatrixXd sbar = spec.levy.sigma_bar2();
    bool need_filter = !sbar.isZero(0.0);
    if (need_filter) {
        // p(lambda) == 1 identically only if the spectrum is trivial; probe cheaply.
        std::vector<int> probe(lat.d, lat.L / 2);
        LatticeSpec tmp = lat;
        if (p_polynomial(lattice_laplacian_eig(probe, tmp), spec.spectrum) == 1.0 &&
            p_polynomial(0.0, spec.spectrum) == 1.0)
            need_filter = false;
    }
    if (need_filter) {
        Eigen::LLT<Eigen::MatrixXd> llt(sbar + 1e-14 * Eigen::MatrixXd::Identity(N, N));
        Eigen::MatrixXd sbar_chol = llt.matrixL();
        LatticeFft fft(lat.d, lat.L);
        std::vector<std::vector<std::complex<double>>> ghat(
            N, std::vector<std::complex<double>>(V));
        for (int c = 0; c < N; ++c)
            for (std::size_t x = 0; x < V; ++x)
                ghat[c][x] = rng.normal() / std::sqrt(cell);
        for (int c = 0; c < N; ++c) fft.forward(ghat[c]);

        std::vector<int> nvec(lat.d);
        for (std::size_t f = 0; f < V; ++f) {
            decode_site(f, lat.d, lat.L, nvec);
            double lam = lattice_laplacian_eig(nvec, lat);
            double filt = std::sqrt(std::max(0.0, p_polynomial(lam, spec.spectrum) - 1.0));
            for (int c = 0; c < N; ++c) ghat[c][f] *= filt;
        }
        // chol(sigma_bar^2) is constant, so the component mixing commutes with
        // the scalar filter and can be applied in position space.
        for (int c = 0; c < N; ++c) fft.inverse(ghat[c]);
        for (std::size_t x = 0; x < V; ++x) {
            Eigen::VectorXd w(N);
            for (int c = 0; c < N; ++c) w[c] = ghat[c][x].real();
            Eigen::VectorXd mixed = sbar_chol * w;
            for (int c = 0; c < N; ++c)
                out.values[static_cast<std::size_t>(c) * V + x] += mixed[c];
        }
    }
    return out;
}

FieldSample solve_spde(const FieldSample& noise, const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    const LatticeSpec& lat = noise.lat;
    const std::size_t V = lat.volume();
    if (noise.N != spec.N) throw std::invalid_argument("solve_spde: component mismatch");

    SymbolTable tab = build_symbols(lat, model);
    LatticeFft fft(lat.d, lat.L);

    FieldSample out;
    out.lat = lat;
    out.N = spec.N;
    out.seed = noise.seed;
    out.stream = noise.stream;
    out.values.assign(noise.values.size(), 0.0);

    std::vector<std::vector<std::complex<double>>> hat(spec.N,
                                                       std::vector<std::complex<double>>(V));
    for (int c = 0; c < spec.N; ++c) {
        for (std::size_t x = 0; x < V; ++x)
            hat[c][x] = noise.values[static_cast<std::size_t>(c) * V + x];
        fft.forward(hat[c]);
    }
    if (tab.scalar) {
        for (std::size_t f = 0; f < V; ++f) hat[0][f] *= tab.dinv_s[f];
    } else {
        Eigen::VectorXcd v(spec.N);
        for (std::size_t f = 0; f < V; ++f) {
            for (int c = 0; c < spec.N; ++c) v[c] = hat[c][f];
            Eigen::VectorXcd w = tab.dinv[f] * v;
            for (int c = 0; c < spec.N; ++c) hat[c][f] = w[c];
        }
    }
    for (int c = 0; c < spec.N; ++c) {
        fft.inverse(hat[c]);
        for (std::size_t x = 0; x < V; ++x)
            out.values[static_cast<std::size_t>(c) * V + x] = hat[c][x].real();
    }
    return out;
}

FieldSample apply_forward_operator(const FieldSample& phi, const ValidatedModel& model) {
    const ModelSpec& spec = model.spec();
    const LatticeSpec& lat = phi.lat;
    const std::size_t V = lat.volume();

    SymbolTable tab = build_symbols(lat, model);
    LatticeFft fft(lat.d, lat.L);

    FieldSample out = phi;
    std::vector<std::vector<std::complex<double>>> hat(spec.N,
                                                       std::vector<std::complex<double>>(V));
    for (int c = 0; c < spec.N; ++c) {
        for (std::size_t x = 0; x < V; ++x)
            hat[c][x] = phi.values[static_cast<std::size_t>(c) * V + x];
        fft.forward(hat[c]);
    }
    if (tab.scalar) {
        for (std::size_t f = 0; f < V; ++f) hat[0][f] /= tab.dinv_s[f];
    } else {
        Eigen::VectorXcd v(spec.N);
        for (std::size_t f = 0; f < V; ++f) {
            for (int c = 0; c < spec.N; ++c) v[c] = hat[c][f];
            Eigen::VectorXcd w = tab.dinv[f].inverse() * v;
            for (int c = 0; c < spec.N; ++c) hat[c][f] = w[c];
        }
    }
    for (int c = 0; c < spec.N; ++c) {
        fft.inverse(hat[c]);
        for (std::size_t x = 0; x < V; ++x)
            out.values[static_cast<std::size_t>(c) * V + x] = hat[c][x].real();
    }
    return out;
}

namespace {

std::size_t site_index(const std::vector<int>& coords, const LatticeSpec& lat) {
    std::size_t idx = 0;
    for (int mu = 0; mu < lat.d; ++mu) {
        int c = ((coords[mu] % lat.L) + lat.L) % lat.L;
        idx = idx * static_cast<std::size_t>(lat.L) + static_cast<std::size_t>(c);
    }
    return idx;
}

}  // namespace

std::vector<MomentEstimate> estimate_truncated_moments(const ValidatedModel& model,
                                                       const LatticeSpec& lat,
                                                       const std::vector<ProbeTuple>& probes,
                                                       const EstimateOptions& opts) {
    if (opts.samples < 100)
        throw std::invalid_argument("estimate_truncated_moments: need at least 100 samples");
    for (const auto& p : probes)
        if (p.order() < 1 || p.order() > 6)
            throw std::invalid_argument("estimate_truncated_moments: orders must be in [1, 6]");

    const long nblocks = opts.samples / opts.block;
    const long samples = nblocks * opts.block;
    const int nchains = static_cast<int>(std::min<long>(opts.chains, nblocks));
    const int nprobes = static_cast<int>(probes.size());

    // Per-probe subset accumulators per block: sums[b][p][mask-1].
    std::vector<std::vector<std::vector<double>>> sums(
        static_cast<std::size_t>(nblocks));
    for (auto& bp : sums) {
        bp.resize(static_cast<std::size_t>(nprobes));
        for (int p = 0; p < nprobes; ++p)
            bp[static_cast<std::size_t>(p)].assign((1u << probes[p].order()) - 1, 0.0);
    }

    // Flatten probe sites once.
    std::vector<std::vector<std::pair<int, std::size_t>>> legs(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p)
        for (int j = 0; j < probes[p].order(); ++j)
            legs[p].push_back({probes[p].alphas.empty() ? 0 : probes[p].alphas[j],
                               site_index(probes[p].sites[j], lat)});

    auto run_chain = [&](int chain) {
        const std::size_t V = lat.volume();
        std::vector<double> phi_at(16);
        for (long b = chain; b < nblocks; b += nchains) {
            for (int i = 0; i < opts.block; ++i) {
                std::uint64_t sample_id =
                    static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(opts.block) +
                    static_cast<std::uint64_t>(i);
                FieldSample eta = sample_noise(lat, model, opts.seed, sample_id);
                FieldSample phi = solve_spde(eta, model);
                for (int p = 0; p < nprobes; ++p) {
                    const int n = probes[static_cast<std::size_t>(p)].order();
                    for (int j = 0; j < n; ++j) {
                        auto [alpha, site] = legs[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
                        phi_at[static_cast<std::size_t>(j)] =
                            phi.values[static_cast<std::size_t>(alpha) * V + site];
                    }
                    auto& acc = sums[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)];
                    for (unsigned mask = 1; mask < (1u << n); ++mask) {
                        double prod = 1.0;
                        for (int j = 0; j < n; ++j)
                            if (mask & (1u << j)) prod *= phi_at[static_cast<std::size_t>(j)];
                        acc[mask - 1] += prod;
                    }
                }
            }
        }
    };

    int nthreads = std::max(1, std::min(opts.threads, nchains));
    if (nthreads == 1) {
        for (int c = 0; c < nchains; ++c) run_chain(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (int c = t; c < nchains; c += nthreads) run_chain(c);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<MomentEstimate> out;
    for (int p = 0; p < nprobes; ++p) {
        const int n = probes[static_cast<std::size_t>(p)].order();
        const unsigned nmask = (1u << n) - 1;
        std::vector<double> total(nmask, 0.0);
        for (long b = 0; b < nblocks; ++b)
            for (unsigned m = 0; m < nmask; ++m)
                total[m] += sums[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)][m];

        auto truncated_from = [&](const std::vector<double>& subset_means) {
            std::function<double(const std::vector<int>&)> full =
                [&](const std::vector<int>& elems) {
                    unsigned mask = 0;
                    for (int e : elems) mask |= 1u << e;
                    return subset_means[mask - 1];
                };
            return truncate<double>(n, full);
        };

        std::vector<double> means(nmask);
        for (unsigned m = 0; m < nmask; ++m) means[m] = total[m] / static_cast<double>(samples);
        double center = truncated_from(means);

        // Block jackknife.
        std::vector<double> theta(static_cast<std::size_t>(nblocks));
        std::vector<double> loo(nmask);
        double denom = static_cast<double>(samples - opts.block);
        for (long b = 0; b < nblocks; ++b) {
            for (unsigned m = 0; m < nmask; ++m)
                loo[m] = (total[m] -
                          sums[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)][m]) /
                         denom;
            theta[static_cast<std::size_t>(b)] = truncated_from(loo);
        }
        double tbar = 0.0;
        for (double t : theta) tbar += t;
        tbar /= static_cast<double>(nblocks);
        double var = 0.0;
        for (double t : theta) var += (t - tbar) * (t - tbar);
        var *= static_cast<double>(nblocks - 1) / static_cast<double>(nblocks);

        MomentEstimate est;
        est.order = n;
        est.probe_id = p;
        est.mean = center;
        est.stderr_ = std::sqrt(var);
        est.count = samples;
        out.push_back(est);
    }
    return out;
}

std::vector<double> lattice_analytic_kernel(const ValidatedModel& model, const LatticeSpec& lat,
                                            const std::vector<ProbeTuple>& probes) {
    const ModelSpec& spec = model.spec();
    if (spec.N != 1)
        throw std::invalid_argument("lattice_analytic_kernel: scalar models only");
    const std::size_t V = lat.volume();
    const double cell = std::pow(lat.a, lat.d);

    SymbolTable tab = build_symbols(lat, model);
    LatticeFft fft(lat.d, lat.L);

    // Discrete solver kernel G with phi_x = sum_y G_{x-y} eta_y.
    std::vector<std::complex<double>> G(tab.dinv_s.begin(), tab.dinv_s.end());
    fft.inverse(G);

    // Two-point array: (1/V) sum_k sigma_bar^2 p(lambda) |Dinv|^2 e^{ikr} / a^d.
    double sbar = spec.levy.sigma_bar2()(0, 0);
    std::vector<std::complex<double>> C2(V);
    for (std::size_t f = 0; f < V; ++f)
        C2[f] = sbar * p_polynomial(tab.lambda[f], spec.spectrum) * std::norm(tab.dinv_s[f]) /
                cell;
    fft.inverse(C2);

    double c1 = scalar_cumulant(1, spec.levy);
    double zero_mode = tab.dinv_s[0].real();  // Dhat^{-1}(0)

    std::vector<double> out;
    for (const auto& probe : probes) {
        const int n = probe.order();
        if (n == 1) {
            out.push_back(c1 * zero_mode);
            continue;
        }
        if (n == 2) {
            std::vector<int> diff(lat.d);
            for (int mu = 0; mu < lat.d; ++mu)
                diff[mu] = probe.sites[0][mu] - probe.sites[1][mu];
            out.push_back(C2[site_index(diff, lat)].real());
            continue;
        }
        double cn = scalar_cumulant(n, spec.levy);
        if (cn == 0.0) {
            out.push_back(0.0);
            continue;
        }
        double kappa = cn * std::pow(cell, 1 - n);
        // sum_y prod_j G[x_j - y]
        std::vector<std::size_t> probe_sites;
        for (int j = 0; j < n; ++j) probe_sites.push_back(site_index(probe.sites[j], lat));
        std::vector<int> yv(lat.d), xv(lat.d), dv(lat.d);
        double total = 0.0;
        for (std::size_t y = 0; y < V; ++y) {
            decode_site(y, lat.d, lat.L, yv);
            double prod = 1.0;
            for (int j = 0; j < n; ++j) {
                decode_site(probe_sites[static_cast<std::size_t>(j)], lat.d, lat.L, xv);
                for (int mu = 0; mu < lat.d; ++mu) dv[mu] = xv[mu] - yv[mu];
                prod *= G[site_index(dv, lat)].real();
            }
            total += prod;
        }
        out.push_back(kappa * total);
    }
    return out;
}

}  // namespace imqft
