#include "imqft/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace imqft {

using nlohmann::json;

bool MassSpectrum::no_dipole() const {
    for (const auto& e : entries)
        if (e.nu != 1) return false;
    return true;
}

double MassSpectrum::min_mass() const {
    double mn = entries.empty() ? 0.0 : entries[0].m;
    for (const auto& e : entries) mn = std::min(mn, e.m);
    return mn;
}

double MassSpectrum::mass_normalization() const {
    double p = 1.0;
    for (const auto& e : entries) p *= std::pow(e.m * e.m, e.nu);
    return p;
}

Eigen::MatrixXd LevySpec::sigma_bar2() const {
    Eigen::MatrixXd out = sigma2;
    for (const auto& atom : atoms) out += z * atom.w * atom.s * atom.s.transpose();
    return out;
}

std::vector<std::string> model_errors(const ModelSpec& spec) {
    std::vector<std::string> errs;
    if (spec.d < 2) errs.push_back("d: spacetime dimension must be >= 2");
    if (spec.N < 1) errs.push_back("N: field components must be >= 1");

    if (spec.spectrum.entries.empty()) errs.push_back("masses: spectrum must be nonempty");
    for (int l = 0; l < spec.spectrum.size(); ++l) {
        const auto& e = spec.spectrum.entries[l];
        if (!(e.m > 0.0))
            errs.push_back("masses[" + std::to_string(l) + "].m: mass must be positive");
        if (e.nu < 1)
            errs.push_back("masses[" + std::to_string(l) + "].nu: degree must be >= 1");
    }
    for (int l = 0; l < spec.spectrum.size(); ++l)
        for (int j = l + 1; j < spec.spectrum.size(); ++j)
            if (spec.spectrum.entries[l].m == spec.spectrum.entries[j].m)
                errs.push_back("masses: entries " + std::to_string(l) + " and " +
                               std::to_string(j) + " must have distinct masses");

    const auto& lv = spec.levy;
    if (lv.a.size() != spec.N) errs.push_back("levy.a: drift must have N components");
    if (lv.sigma2.rows() != spec.N || lv.sigma2.cols() != spec.N)
        errs.push_back("levy.sigma2: must be N x N");
    else {
        if (!lv.sigma2.isApprox(lv.sigma2.transpose(), 1e-12))
            errs.push_back("levy.sigma2: must be symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lv.sigma2);
        if (es.info() == Eigen::Success && es.eigenvalues().minCoeff() < -1e-12)
            errs.push_back("levy.sigma2: must be positive semidefinite");
    }
    if (lv.z < 0.0) errs.push_back("levy.z: intensity must be nonnegative");
    if (lv.z > 0.0 || !lv.atoms.empty()) {
        double wsum = 0.0;
        for (std::size_t i = 0; i < lv.atoms.size(); ++i) {
            const auto& at = lv.atoms[i];
            if (!(at.w > 0.0))
                errs.push_back("levy.atoms[" + std::to_string(i) + "].w: weight must be positive");
            if (at.s.size() != spec.N)
                errs.push_back("levy.atoms[" + std::to_string(i) + "].s: must have N components");
            else if (at.s.norm() == 0.0)
                errs.push_back("levy.atoms[" + std::to_string(i) + "].s: jump location must be nonzero");
            wsum += at.w;
        }
        if (lv.z > 0.0 && lv.atoms.empty())
            errs.push_back("levy.atoms: jump measure required when z > 0");
        else if (!lv.atoms.empty() && std::abs(wsum - 1.0) > 1e-12)
            errs.push_back("levy.atoms: jump measure not normalized (sum w = " +
                           std::to_string(wsum) + ")");
    }

    if (spec.qE.dim() != spec.d || spec.qE.components() != spec.N)
        errs.push_back("qE: polynomial shape must match (d, N)");
    if (spec.metric.rows() != spec.N || spec.metric.cols() != spec.N)
        errs.push_back("metric: must be N x N");
    else if (!spec.metric.isApprox(spec.metric.transpose(), 1e-12))
        errs.push_back("metric: must be symmetric");

    return errs;
}

ValidatedModel ValidatedModel::make(const ModelSpec& spec) {
    auto errs = model_errors(spec);
    if (!errs.empty()) {
        std::string joined;
        for (const auto& e : errs) {
            if (!joined.empty()) joined += "; ";
            joined += e;
        }
        throw ValidationError(joined);
    }
    return ValidatedModel(spec);
}

namespace {

Eigen::VectorXd vec_from_json(const json& j) {
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

Eigen::MatrixXd mat_from_json(const json& j) {
    Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols)
            throw std::runtime_error("parse error: ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

json vec_to_json(const Eigen::VectorXd& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

json mat_to_json(const Eigen::MatrixXd& m) {
    json j = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        j.push_back(row);
    }
    return j;
}

[[noreturn]] void parse_fail(const std::string& key, const std::string& what) {
    throw std::runtime_error("parse error at '" + key + "': " + what);
}

}  // namespace

ModelSpec parse_model_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("parse error: ") + e.what());
    }

    ModelSpec spec;
    try {
        spec.d = j.at("d").get<int>();
    } catch (const json::exception&) { parse_fail("d", "missing or non-integer"); }
    try {
        spec.N = j.at("N").get<int>();
    } catch (const json::exception&) { parse_fail("N", "missing or non-integer"); }

    if (!j.contains("masses") || !j["masses"].is_array()) parse_fail("masses", "missing array");
    for (const auto& me : j["masses"]) {
        MassEntry e;
        if (!me.contains("m")) parse_fail("masses[].m", "missing");
        e.m = me["m"].get<double>();
        e.nu = me.value("nu", 1);
        spec.spectrum.entries.push_back(e);
    }

    // Defaults: a = 0, sigma2 = 0, z = 0, no atoms.
    spec.levy.a = Eigen::VectorXd::Zero(spec.N);
    spec.levy.sigma2 = Eigen::MatrixXd::Zero(spec.N, spec.N);
    if (j.contains("levy")) {
        const json& lv = j["levy"];
        if (!lv.is_object()) parse_fail("levy", "must be an object");
        if (lv.contains("a")) spec.levy.a = vec_from_json(lv["a"]);
        if (lv.contains("sigma2")) spec.levy.sigma2 = mat_from_json(lv["sigma2"]);
        spec.levy.z = lv.value("z", 0.0);
        if (lv.contains("atoms")) {
            for (const auto& ja : lv["atoms"]) {
                JumpAtom at;
                if (!ja.contains("w") || !ja.contains("s")) parse_fail("levy.atoms[]", "needs w and s");
                at.w = ja["w"].get<double>();
                at.s = vec_from_json(ja["s"]);
                spec.levy.atoms.push_back(at);
            }
        }
    }

    if (j.contains("qE")) {
        std::vector<MonoTerm> terms;
        for (const auto& jt : j["qE"]) {
            MonoTerm t;
            t.row = jt.value("row", 0);
            t.col = jt.value("col", 0);
            if (!jt.contains("powers")) parse_fail("qE[].powers", "missing");
            for (const auto& p : jt["powers"]) t.powers.push_back(p.get<int>());
            t.coeff = {jt.value("re", 0.0), jt.value("im", 0.0)};
            terms.push_back(t);
        }
        try {
            spec.qE = MatrixPolynomial(spec.d, spec.N, std::move(terms));
        } catch (const std::invalid_argument& e) {
            parse_fail("qE", e.what());
        }
    } else {
        spec.qE = MatrixPolynomial::identity(spec.d, spec.N);
    }

    spec.metric = j.contains("metric") ? mat_from_json(j["metric"])
                                       : Eigen::MatrixXd::Identity(spec.N, spec.N);

    auto errs = model_errors(spec);
    if (!errs.empty()) throw ValidationError("invalid model: " + errs.front());
    return spec;
}

std::string emit_model_config(const ModelSpec& spec) {
    json j;
    j["d"] = spec.d;
    j["N"] = spec.N;
    j["masses"] = json::array();
    for (const auto& e : spec.spectrum.entries) j["masses"].push_back({{"m", e.m}, {"nu", e.nu}});
    json lv;
    lv["a"] = vec_to_json(spec.levy.a);
    lv["sigma2"] = mat_to_json(spec.levy.sigma2);
    lv["z"] = spec.levy.z;
    lv["atoms"] = json::array();
    for (const auto& at : spec.levy.atoms)
        lv["atoms"].push_back({{"w", at.w}, {"s", vec_to_json(at.s)}});
    j["levy"] = lv;
    json qe = json::array();
    for (const auto& t : spec.qE.terms()) {
        json jt;
        jt["row"] = t.row;
        jt["col"] = t.col;
        jt["powers"] = t.powers;
        jt["re"] = t.coeff.real();
        jt["im"] = t.coeff.imag();
        qe.push_back(jt);
    }
    j["qE"] = qe;
    j["metric"] = mat_to_json(spec.metric);
    return j.dump(2);
}

ModelSpec load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_config(ss.str());
}

}  // namespace imqft
