#include "imqft/scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "imqft/propagator.hpp"
#include "imqft/schwinger.hpp"

namespace imqft {

Eigen::VectorXd onshell_momentum(double m, const Eigen::VectorXd& kspace) {
    if (!(m > 0.0)) throw std::domain_error("onshell_momentum: mass must be positive");
    Eigen::VectorXd k(kspace.size() + 1);
    k[0] = std::sqrt(kspace.squaredNorm() + m * m);
    k.tail(kspace.size()) = kspace;
    return k;
}

double coupling_prefactor(const ValidatedModel& model, const std::vector<int>& mass_indices) {
    PartialFractions pf = partial_fractions(model->spectrum);
    double c = 1.0;
    for (int l : mass_indices) {
        if (l < 0 || l >= model->spectrum.size())
            throw std::invalid_argument("coupling_prefactor: mass index out of range");
        c *= pf.b[static_cast<std::size_t>(l)];
    }
    return c;
}

AmplitudeResult amplitude(const std::vector<ParticleState>& ins,
                          const std::vector<ParticleState>& outs, const ScatteringModel& model,
                          double conservation_tol) {
    const ModelSpec& spec = model.base.spec();
    if (!spec.spectrum.no_dipole())
        throw UnsupportedSpectrum("amplitude: dipole spectrum not supported");
    const int n = static_cast<int>(ins.size() + outs.size());
    if (n < 1) throw std::invalid_argument("amplitude: no external particles");

    // Assemble on-shell momenta; K_in = sum of incoming, K_out of outgoing.
    Eigen::VectorXd kin = Eigen::VectorXd::Zero(spec.d);
    Eigen::VectorXd kout = Eigen::VectorXd::Zero(spec.d);
    std::vector<Eigen::VectorXd> args;
    std::vector<int> alphas;
    std::vector<int> mass_indices;
    for (const auto& p : ins) {
        Eigen::VectorXd k = onshell_momentum(spec.spectrum.entries[p.l].m, p.kspace);
        kin += k;
        args.push_back(-k);  // crossing: incoming momenta enter negated
        alphas.push_back(p.alpha);
        mass_indices.push_back(p.l);
    }
    for (const auto& p : outs) {
        Eigen::VectorXd k = onshell_momentum(spec.spectrum.entries[p.l].m, p.kspace);
        kout += k;
        args.push_back(k);
        alphas.push_back(p.alpha);
        mass_indices.push_back(p.l);
    }

    AmplitudeResult res;
    res.gap = (kin - kout).norm();
    res.conserved = res.gap < conservation_tol;
    if (!res.conserved) return res;

    std::complex<double> qm;
    auto it = model.custom_qM.find(n);
    if (it != model.custom_qM.end()) {
        qm = it->second.eval(args, alphas);
    } else {
        CumulantVertex vertex(n, model.base, /*minkowski=*/true);
        qm = vertex.eval(args, alphas);
    }

    res.value = std::complex<double>(0.0, -2.0 * M_PI) * qm *
                coupling_prefactor(model.base, mass_indices);
    return res;
}

DecayReport decay_scan(double m, double mu, const ScatteringModel& model) {
    if (!(m > 0.0) || !(mu > 0.0)) throw std::domain_error("decay_scan: masses must be positive");
    const ModelSpec& spec = model.base.spec();

    DecayReport rep;
    rep.feasible = m >= 2.0 * mu;
    rep.witness_out_k = Eigen::VectorXd::Zero(spec.d - 1);
    if (!rep.feasible) return rep;

    rep.kmag = std::sqrt(m * m / 4.0 - mu * mu);
    rep.witness_out_k[0] = rep.kmag;

    // Locate (or synthesize) the two masses in the spectrum for the amplitude.
    auto find_mass = [&](const MassSpectrum& sp, double target) {
        for (int l = 0; l < sp.size(); ++l)
            if (std::abs(sp.entries[l].m - target) < 1e-9) return l;
        return -1;
    };
    ScatteringModel work = model;
    int lm = find_mass(spec.spectrum, m);
    int lmu = find_mass(spec.spectrum, mu);
    if (lm < 0 || lmu < 0) {
        ModelSpec synth = spec;
        synth.spectrum.entries = {{m, 1}, {mu, 1}};
        work = ScatteringModel(ValidatedModel::make(synth));
        work.custom_qM = model.custom_qM;
        lm = 0;
        lmu = 1;
    }

    ParticleState heavy{true, lm, 0, Eigen::VectorXd::Zero(spec.d - 1)};
    ParticleState out1{false, lmu, 0, rep.witness_out_k};
    ParticleState out2{false, lmu, 0, -rep.witness_out_k};
    rep.amp = amplitude({heavy}, {out1, out2}, work);
    rep.amplitude_nonzero = rep.amp.conserved && std::abs(rep.amp.value) > 0.0;
    return rep;
}

ScatteringModel with_custom_qM(const ValidatedModel& model,
                               const std::map<int, NPolynomial>& polys, int degree_bound) {
    ScatteringModel out(model);
    for (const auto& [order, poly] : polys) {
        if (poly.n_args() != order)
            throw std::invalid_argument("with_custom_qM: polynomial arity must match its order");
        if (poly.max_degree_per_argument() > degree_bound)
            throw std::invalid_argument("with_custom_qM: degree bound violated at order " +
                                        std::to_string(order));
    }
    out.custom_qM = polys;
    return out;
}

}  // namespace imqft
