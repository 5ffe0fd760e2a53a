// Command-line front end: dispatches the model validation, analytic kernels,
// lattice Monte Carlo, Wightman continuation, and scattering modules, emitting
// CSV/JSON results with a manifest sidecar per output.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "imqft/lattice.hpp"
#include "imqft/levy.hpp"
#include "imqft/model.hpp"
#include "imqft/propagator.hpp"
#include "imqft/scattering.hpp"
#include "imqft/schwinger.hpp"
#include "imqft/wightman.hpp"

using json = nlohmann::json;
using namespace imqft;

namespace {

constexpr const char* kVersion = "0.1.0";

// Round-trippable doubles, 17 significant digits, scientific.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

struct CommonOpts {
    std::string model_path;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = resolve from IMQFT_THREADS or 1
    int lattice = 64;
    double spacing = 0.25;
    long samples = 10000;
    double tolerance = 1e-6;
    std::string out_dir = ".";
    bool to_stdout = false;

    int resolved_threads() const {
        if (threads > 0) return threads;
        if (const char* env = std::getenv("IMQFT_THREADS")) {
            int t = std::atoi(env);
            if (t > 0) return t;
        }
        return 1;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_model = true) {
    if (with_model) cmd->add_option("model", o.model_path, "model JSON file")->required();
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--threads", o.threads, "worker threads (default: IMQFT_THREADS or 1)");
    cmd->add_option("--lattice", o.lattice, "lattice extent L (power of two)");
    cmd->add_option("--spacing", o.spacing, "lattice spacing a");
    cmd->add_option("--samples", o.samples, "Monte Carlo samples");
    cmd->add_option("--tolerance", o.tolerance, "numeric tolerance");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_flag("--stdout", o.to_stdout, "write data to stdout instead of files");
}

// Deterministic manifest: the timestamp honors SOURCE_DATE_EPOCH so repeated
// runs with a fixed seed are byte-identical.
json manifest(const std::string& command, const CommonOpts& o,
              const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["model"] = o.model_path;
    m["parameters"] = {{"seed", o.seed},           {"threads", o.resolved_threads()},
                       {"lattice", o.lattice},     {"spacing", o.spacing},
                       {"samples", o.samples},     {"tolerance", o.tolerance}};
    m["outputs"] = outputs;
    m["version"] = kVersion;
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    m["timestamp"] = epoch ? epoch : "unset";
    return m;
}

void write_result(const CommonOpts& o, const std::string& command, const std::string& name,
                  const std::string& payload) {
    if (o.to_stdout) {
        std::cout << payload;
        return;
    }
    std::string path = o.out_dir + "/" + name;
    {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << payload;
    }
    std::ofstream mf(path + ".manifest.json");
    if (!mf) throw std::runtime_error("cannot write manifest for " + path);
    mf << manifest(command, o, {path}).dump(2) << "\n";
    std::cerr << "wrote " << path << "\n";
}

Eigen::VectorXd to_vector(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[(int)i] = arr[i].get<double>();
    return v;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

int run_validate(const CommonOpts& o) {
    ModelSpec spec = load_model_file(o.model_path);
    auto errs = model_errors(spec);
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "invalid: " << e << "\n";
        return 1;
    }
    write_result(o, "validate", "model.normalized.json", emit_model_config(spec) + "\n");
    return 0;
}

int run_cumulants(const CommonOpts& o, int max_order) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    std::ostringstream csv;
    csv << "order,indices,value\n";
    for (int n = 1; n <= max_order; ++n) {
        CumulantTensor c = cumulant_tensor(n, model->levy);
        std::vector<int> idx(n, 0);
        for (std::size_t f = 0; f < c.entries.size(); ++f) {
            std::size_t rem = f;
            for (int i = n - 1; i >= 0; --i) {
                idx[i] = (int)(rem % (std::size_t)c.N);
                rem /= (std::size_t)c.N;
            }
            csv << n << ",";
            for (int i = 0; i < n; ++i) csv << idx[i] << (i + 1 < n ? "-" : "");
            csv << "," << fmt(c.entries[f]) << "\n";
        }
    }
    write_result(o, "cumulants", "cumulants.csv", csv.str());
    return 0;
}

int run_schwinger(const CommonOpts& o, const std::string& probes_path) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    json probes = load_json_file(probes_path);
    LatticeSpec grid{model->d, o.lattice, o.spacing};
    std::ostringstream csv;
    int d = model->d;
    csv << "probe,point,coordinates,alphas,value\n";
    std::ostringstream rows;
    int pid = 0;
    for (const auto& probe : probes.at("probes")) {
        std::vector<Eigen::VectorXd> pts;
        for (const auto& p : probe.at("points")) pts.push_back(to_vector(p));
        std::vector<int> alphas = probe.value("alphas", std::vector<int>(pts.size(), 0));
        double value;
        if (pts.size() == 2) {
            value = schwinger2_truncated(pts[0] - pts[1], alphas[0], alphas[1], model);
        } else {
            value = schwingerN_truncated(pts, alphas, model, grid);
        }
        for (std::size_t j = 0; j < pts.size(); ++j) {
            csv << pid << "," << j << ",";
            for (int mu = 0; mu < d; ++mu) csv << fmt(pts[j][mu]) << (mu + 1 < d ? ";" : "");
            csv << "," << alphas[j] << "," << fmt(value) << "\n";
        }
        ++pid;
    }
    write_result(o, "schwinger", "schwinger.csv", csv.str());
    return 0;
}

std::vector<ProbeTuple> parse_probes(const json& j) {
    std::vector<ProbeTuple> probes;
    for (const auto& probe : j.at("probes")) {
        ProbeTuple t;
        for (const auto& s : probe.at("sites")) t.sites.push_back(s.get<std::vector<int>>());
        t.alphas = probe.value("alphas", std::vector<int>(t.sites.size(), 0));
        probes.push_back(std::move(t));
    }
    return probes;
}

// Default probe battery: orders 1-4 at short separations on the first axis.
std::vector<ProbeTuple> default_probes(int d) {
    auto site = [d](int x, int y) {
        std::vector<int> s(d, 0);
        s[0] = x;
        if (d > 1) s[1] = y;
        return s;
    };
    std::vector<ProbeTuple> probes;
    probes.push_back({{site(0, 0)}, {0}});
    for (int r : {1, 2, 3, 4})
        probes.push_back({{site(0, 0), site(r, 0)}, {0, 0}});
    probes.push_back({{site(0, 0), site(1, 0), site(0, 1)}, {0, 0, 0}});
    probes.push_back({{site(0, 0), site(2, 0), site(0, 2)}, {0, 0, 0}});
    probes.push_back({{site(0, 0), site(1, 0), site(0, 1), site(1, 1)}, {0, 0, 0, 0}});
    return probes;
}

int run_simulate(const CommonOpts& o, const std::string& probes_path) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    LatticeSpec lat{model->d, o.lattice, o.spacing};
    for (const auto& w : lattice_warnings(lat, model->spectrum)) std::cerr << "warning: " << w << "\n";
    std::vector<ProbeTuple> probes = probes_path.empty()
                                         ? default_probes(model->d)
                                         : parse_probes(load_json_file(probes_path));
    EstimateOptions opts;
    opts.samples = o.samples;
    opts.seed = o.seed;
    opts.threads = o.resolved_threads();
    auto mc = estimate_truncated_moments(model, lat, probes, opts);
    auto analytic = lattice_analytic_kernel(model, lat, probes);

    std::ostringstream csv;
    csv << "order,probe,mc_mean,mc_stderr,analytic_value,z_score\n";
    for (std::size_t i = 0; i < mc.size(); ++i) {
        double z = mc[i].stderr_ > 0.0 ? (mc[i].mean - analytic[i]) / mc[i].stderr_ : 0.0;
        csv << mc[i].order << "," << mc[i].probe_id << "," << fmt(mc[i].mean) << ","
            << fmt(mc[i].stderr_) << "," << fmt(analytic[i]) << "," << fmt(z) << "\n";
    }
    write_result(o, "simulate", "simulate.csv", csv.str());
    return 0;
}

int run_wightman(const CommonOpts& o, int order, std::vector<int> assignment) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    if (assignment.empty()) assignment.assign((std::size_t)order, 0);
    WightmanTermList terms = build_wightman_terms(order, assignment, model);
    json j;
    j["n"] = terms.n;
    j["d"] = terms.d;
    j["two_point"] = terms.two_point;
    j["masses"] = terms.masses;
    if (terms.two_point) {
        j["prefactor"] = terms.prefactor;
        j["shell_b"] = terms.shell_b;
    } else {
        j["coupling"] = terms.coupling;
        j["mass_assignment"] = terms.mass_idx;
        json tl = json::array();
        for (const auto& t : terms.terms) tl.push_back({{"pole_slot", t.pole_slot}});
        j["terms"] = tl;
    }
    write_result(o, "wightman", "wightman_terms.json", j.dump(2) + "\n");
    return 0;
}

int run_scatter(const CommonOpts& o, const std::string& process_path) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    json proc = load_json_file(process_path);
    auto parse_states = [&](const json& arr, bool incoming) {
        std::vector<ParticleState> states;
        for (const auto& p : arr) {
            ParticleState st;
            st.incoming = incoming;
            st.l = p.value("l", 0);
            st.alpha = p.value("alpha", 0);
            st.kspace = to_vector(p.at("k"));
            states.push_back(std::move(st));
        }
        return states;
    };
    ScatteringModel sm(model);
    auto res = amplitude(parse_states(proc.at("ins"), true),
                         parse_states(proc.at("outs"), false), sm, o.tolerance);
    json j;
    j["conserved"] = res.conserved;
    j["gap"] = res.gap;
    j["value_re"] = res.value.real();
    j["value_im"] = res.value.imag();
    write_result(o, "scatter", "amplitude.json", j.dump(2) + "\n");
    return 0;
}

int run_decay(const CommonOpts& o, double m, double mu) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    ScatteringModel sm(model);
    DecayReport rep = decay_scan(m, mu, sm);
    json j;
    j["feasible"] = rep.feasible;
    j["kmag"] = rep.kmag;
    if (rep.feasible) {
        j["witness_out_k"] = std::vector<double>(rep.witness_out_k.data(),
                                                 rep.witness_out_k.data() + rep.witness_out_k.size());
        j["conserved"] = rep.amp.conserved;
        j["amplitude_re"] = rep.amp.value.real();
        j["amplitude_im"] = rep.amp.value.imag();
        j["amplitude_nonzero"] = rep.amplitude_nonzero;
    }
    write_result(o, "decay", "decay.json", j.dump(2) + "\n");
    return 0;
}

int run_hssc(const CommonOpts& o, int n, int m, int draws, int max_order) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    TestFunctionFamily family(model->d, max_order);
    HsscStats stats = hssc_witness(model, n, m, family, draws, o.seed);
    std::ostringstream csv;
    csv << "draw,ratio\n";
    for (std::size_t i = 0; i < stats.ratios.size(); ++i)
        csv << i << "," << fmt(stats.ratios[i]) << "\n";
    csv << "# draws=" << stats.draws << " failures=" << stats.failures
        << " max=" << fmt(stats.max_ratio) << " mean=" << fmt(stats.mean_ratio) << "\n";
    write_result(o, "hssc", "hssc_ratios.csv", csv.str());
    return 0;
}

int run_cluster(const CommonOpts& o, int order, int split, std::vector<double> shifts) {
    ValidatedModel model = ValidatedModel::make(load_model_file(o.model_path));
    if (shifts.empty()) shifts = {0.0, 1.0, 2.0, 4.0, 6.0};
    SmearOptions opts;
    opts.gh_order = 64;
    auto rows = clustering_check(model, order, split, shifts, opts);
    std::ostringstream csv;
    csv << "t,full_re,full_im,product_re,product_im,gap\n";
    for (const auto& r : rows)
        csv << fmt(r.t) << "," << fmt(r.full.real()) << "," << fmt(r.full.imag()) << ","
            << fmt(r.product.real()) << "," << fmt(r.product.imag()) << "," << fmt(r.gap)
            << "\n";
    write_result(o, "cluster", "cluster_decay.csv", csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"indefinite-metric QFT laboratory"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* c_validate = app.add_subcommand("validate", "check a model file");
    add_common(c_validate, o);

    int cum_order = 4;
    auto* c_cumulants = app.add_subcommand("cumulants", "noise cumulant tensors");
    add_common(c_cumulants, o);
    c_cumulants->add_option("--order", cum_order, "maximum order");

    std::string probes_path;
    auto* c_schwinger = app.add_subcommand("schwinger", "analytic truncated kernels");
    add_common(c_schwinger, o);
    c_schwinger->add_option("--probes", probes_path, "probe JSON file")->required();

    std::string sim_probes;
    auto* c_simulate = app.add_subcommand("simulate", "lattice Monte Carlo vs analytic");
    add_common(c_simulate, o);
    c_simulate->add_option("--probes", sim_probes, "probe JSON file (site indices)");

    int w_order = 2;
    std::vector<int> w_assignment;
    auto* c_wightman = app.add_subcommand("wightman", "momentum-space term lists");
    add_common(c_wightman, o);
    c_wightman->add_option("--order", w_order, "correlation order n");
    c_wightman->add_option("--assignment", w_assignment, "mass index per slot");

    std::string process_path;
    auto* c_scatter = app.add_subcommand("scatter", "on-shell amplitude");
    add_common(c_scatter, o);
    c_scatter->add_option("--process", process_path, "process JSON file")->required();

    double dm = 0.0, dmu = 0.0;
    auto* c_decay = app.add_subcommand("decay", "1 -> 2 decay kinematics");
    add_common(c_decay, o);
    c_decay->add_option("--m", dm, "heavy mass")->required();
    c_decay->add_option("--mu", dmu, "light mass")->required();

    int h_n = 1, h_m = 1, h_draws = 20, h_maxorder = 2;
    auto* c_hssc = app.add_subcommand("hssc", "Hilbert space structure witness ratios");
    add_common(c_hssc, o);
    c_hssc->add_option("--n", h_n, "left tensor order");
    c_hssc->add_option("--m", h_m, "right tensor order");
    c_hssc->add_option("--draws", h_draws, "random draws");
    c_hssc->add_option("--family-order", h_maxorder, "Hermite orders per dimension");

    int cl_order = 2, cl_split = 1;
    std::vector<double> cl_shifts;
    auto* c_cluster = app.add_subcommand("cluster", "spacelike clustering decay table");
    add_common(c_cluster, o);
    c_cluster->add_option("--order", cl_order, "correlation order n");
    c_cluster->add_option("--split", cl_split, "left cluster size");
    c_cluster->add_option("--shift", cl_shifts, "shift magnitudes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (c_validate->parsed()) return run_validate(o);
        if (c_cumulants->parsed()) return run_cumulants(o, cum_order);
        if (c_schwinger->parsed()) return run_schwinger(o, probes_path);
        if (c_simulate->parsed()) return run_simulate(o, sim_probes);
        if (c_wightman->parsed()) return run_wightman(o, w_order, w_assignment);
        if (c_scatter->parsed()) return run_scatter(o, process_path);
        if (c_decay->parsed()) return run_decay(o, dm, dmu);
        if (c_hssc->parsed()) return run_hssc(o, h_n, h_m, h_draws, h_maxorder);
        if (c_cluster->parsed()) return run_cluster(o, cl_order, cl_split, cl_shifts);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NearPoleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad input file: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
