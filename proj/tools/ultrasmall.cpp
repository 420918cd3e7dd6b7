#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultrasmall.hpp"

using namespace ultrasmall;
using nlohmann::json;

namespace {

std::unique_ptr<std::ostream> open_out(const std::string& path) {
    if (path.empty() || path == "-") return std::make_unique<std::ostream>(std::cout.rdbuf());
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw std::runtime_error("cannot write " + path);
    return f;
}

bool is_pam_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        return line.compare(b, 5, "# pam") == 0;
    }
    return false;
}

DegreeSequence degrees_from_params(const json& p) {
    if (p.contains("degrees_file")) return read_degrees(p["degrees_file"].get<std::string>());
    if (p.contains("degree_list")) return DegreeSequence(p["degree_list"].get<std::vector<std::int64_t>>());
    PowerLawSpec spec{p.value("tau", 2.5), p.value("d_min", std::int64_t{3}), p.value("n", std::int64_t{1000})};
    std::string kind = p.value("degrees", std::string("quantile"));
    if (kind == "quantile") return quantile_sequence(spec);
    if (kind == "iid") return sample_iid_powerlaw(spec, p.value("seed", std::uint64_t{1}));
    throw std::invalid_argument("degrees must be quantile or iid");
}

json run_bounds(const std::string& which, const json& p) {
    json out;
    out["which"] = which;
    out["params"] = p;
    if (which == "mk1" || which == "mk2") {
        auto seq = degrees_from_params(p);
        int k = p.value("k", 1);
        out["n"] = seq.n();
        out["ell"] = seq.ell();
        out["n_dmin"] = seq.count_of(seq.min_degree());
        out["i_k"] = i_k_cm(seq.min_degree(), k);
        out["first_moment"] = cm_mk_first_moment(seq, k);
        if (which == "mk2") out["second_moment_bound"] = cm_mk_second_moment_bound(seq, k);
    } else if (which == "pathbound") {
        if (p.contains("path")) {
            out["value"] = pam_path_weight(p["path"].get<std::vector<std::int64_t>>(), p.value("C", 1.0), p.value("m", 2),
                                           p.value("gamma", 2.0 / 3.0));
            return out;
        }
        auto seq = degrees_from_params(p);
        double tau = p.value("tau", 2.5);
        double eta = p.value("eta", 0.05);
        auto ac = cm_constants(tau, seq.min_degree());
        int k_bar = p.contains("k_bar") ? p["k_bar"].get<int>() : ac.k_bar(static_cast<double>(seq.n()), p.value("eps", 0.2));
        auto g = cm_truncation_sequence(seq.n(), tau, eta, std::max(2 * k_bar, 1));
        double ln = std::log(static_cast<double>(seq.n()));
        double da = p.value("d_a", ln), db = p.value("d_b", ln);
        out["k_bar"] = k_bar;
        out["g0"] = g[0];
        out["value"] = cm_distance_bound(seq, da, db, k_bar, g);
    } else if (which == "appA") {
        std::int64_t t = p.value("t", std::int64_t{10000});
        double R = p.value("R", 2.0), gamma = p.value("gamma", 2.0 / 3.0);
        int k_max = p.value("k_max", 4);
        auto s = appendixA_sequences(t, R, gamma, k_max, p.value("c", 0.0));
        out["c"] = s.c;
        out["g"] = s.g;
        out["alpha"] = std::vector<double>(s.alpha.begin() + 1, s.alpha.end());
        out["beta"] = std::vector<double>(s.beta.begin() + 1, s.beta.end());
        out["eta"] = s.eta();
        out["first_degenerate"] = s.first_degenerate;
        if (p.value("check", false)) {
            auto c = check_appendix_a(s, k_max, resolve_threads(0));
            out["check"] = {{"comparisons", c.comparisons}, {"violations", c.violations}, {"worst_ratio", c.worst_ratio}};
        }
    } else if (which == "constants") {
        std::string model = p.value("model", std::string("CM"));
        AsymptoticConstants ac;
        double tau;
        if (model == "PAM") {
            PamParams pp{p.value("m", 2), p.value("delta", -1.0)};
            ac = pam_constants(pp);
            tau = pp.tau();
            out["gamma"] = pp.gamma();
        } else {
            tau = p.value("tau", 2.5);
            ac = cm_constants(tau, p.value("d_min", std::int64_t{3}));
        }
        out["tau"] = tau;
        out["d_fwd"] = ac.d_fwd;
        out["c_dist"] = ac.c_dist;
        out["diam_constant"] = ac.diam_constant;
        out["typ_constant"] = ac.typ_constant;
        double sigma = p.value("sigma", 2.2);
        auto hc = default_h_constants(tau, sigma);
        out["doubling_rate"] = 1.0 / hc.B;
        out["B"] = hc.B;
        out["C"] = hc.C;
        if (p.contains("n")) {
            double n = p["n"].get<double>();
            double eps = p.value("eps", 0.1);
            out["k_minus"] = ac.k_minus(n, eps);
            out["k_plus"] = ac.k_plus(n, eps);
            out["k_bar"] = ac.k_bar(n, eps);
            out["h_n"] = AsymptoticConstants::h(n, hc.B, hc.C);
        }
    } else {
        throw std::invalid_argument("unknown bound: " + which);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scale-free random graph generators, distance measurements and bound evaluation"};
    app.require_subcommand(1);

    // gen-cm
    auto* gcm = app.add_subcommand("gen-cm", "configuration model edge list");
    double tau = 2.5;
    std::int64_t dmin = 3, n = 1000;
    std::uint64_t seed = 1;
    std::string out_path, deg_file;
    bool quantile = false, write_deg = false;
    gcm->add_option("--tau", tau, "power-law exponent in (2,3)");
    gcm->add_option("--dmin", dmin, "minimum degree");
    gcm->add_option("--n", n, "number of vertices");
    gcm->add_option("--seed", seed, "random seed");
    gcm->add_option("--out", out_path, "output edge list (default stdout)");
    gcm->add_option("--degrees", deg_file, "read degrees from FILE instead of sampling");
    gcm->add_flag("--quantile", quantile, "deterministic quantile degrees instead of i.i.d.");
    gcm->add_flag("--fix-parity", write_deg, "bump the last degree when the total is odd");

    // fix-parity
    auto* fp = app.add_subcommand("fix-parity", "make the degree total even by incrementing the last degree");
    std::string fp_in, fp_out;
    fp->add_option("--degrees", fp_in, "degree file")->required();
    fp->add_option("--out", fp_out, "output degree file (default stdout)");

    // gen-pam
    auto* gpam = app.add_subcommand("gen-pam", "preferential attachment (w, j, xi) table");
    int m = 2;
    double delta = -1.0;
    std::int64_t t = 1000;
    gpam->add_option("--m", m, "edges per vertex");
    gpam->add_option("--delta", delta, "affine shift, > -m");
    gpam->add_option("--t", t, "number of vertices");
    gpam->add_option("--seed", seed, "random seed");
    gpam->add_option("--out", out_path, "output file (default stdout)");

    // diameter
    auto* dia = app.add_subcommand("diameter", "exact diameter of the largest component");
    std::string in_path;
    unsigned threads = 0;
    bool exact = false, ifub = false;
    dia->add_option("--in", in_path, "edge list or PAM table")->required();
    dia->add_option("--threads", threads, "worker threads (default ULTRASMALL_THREADS or all cores)");
    dia->add_option("--seed", seed, "seed recorded in the CSV row");
    auto* fx = dia->add_flag("--exact", exact, "all-sources BFS");
    dia->add_flag("--ifub", ifub, "iFUB pruning (exact)")->excludes(fx);
    bool no_header = false;
    dia->add_flag("--no-header", no_header, "omit the CSV header");

    // analyze
    auto* ana = app.add_subcommand("analyze", "structural measurements");
    std::string what = "mkc";
    int k = -1;
    double sigma = 2.2, eps = 0.1;
    bool per_vertex = false, induced = false;
    ana->add_option("--in", in_path, "edge list or PAM table")->required();
    ana->add_option("--what", what, "mkc | explore | core-dist")->check(CLI::IsMember({"mkc", "explore", "core-dist"}));
    ana->add_option("--k", k, "depth (default k_n^- for mkc, k_n^+ for explore)");
    ana->add_option("--sigma", sigma, "core exponent");
    ana->add_option("--eps", eps, "epsilon of the k thresholds");
    ana->add_option("--tau", tau, "tau of a CM edge list (PAM files carry their own)");
    ana->add_option("--threads", threads, "worker threads");
    ana->add_flag("--per-vertex", per_vertex, "CSV rows per vertex instead of summary JSON");
    ana->add_flag("--induced", induced, "strict induced-ball rule for CM mkc");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "evaluate closed-form formulas and bounds");
    std::string which, params = "{}";
    bnd->add_option("--which", which, "mk1 | mk2 | pathbound | appA | constants")
        ->required()
        ->check(CLI::IsMember({"mk1", "mk2", "pathbound", "appA", "constants"}));
    bnd->add_option("--params", params, "JSON object (or @file)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "multi-replica experiment");
    std::string cfg_path, out_dir = "results";
    bool gnuplot = false;
    exp->add_option("--config", cfg_path, "config JSON")->required();
    exp->add_option("--out", out_dir, "output directory");
    exp->add_option("--threads", threads, "replica workers (default ULTRASMALL_THREADS or all cores)");
    exp->add_flag("--gnuplot", gnuplot, "also write per-size means for plotting");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gcm) {
            DegreeSequence seq = !deg_file.empty()
                                     ? read_degrees(deg_file)
                                     : (quantile ? quantile_sequence({tau, dmin, n}) : sample_iid_powerlaw({tau, dmin, n}, seed));
            if (write_deg) seq = fix_parity(seq);
            if (seq.ell() % 2 != 0) {
                std::cerr << "error: total degree " << seq.ell() << " is odd (use fix-parity or --fix-parity)\n";
                return 2;
            }
            auto g = generate_cm(seq, seed);
            auto out = open_out(out_path);
            write_edge_list(*out, g);
        } else if (*fp) {
            auto seq = fix_parity(read_degrees(fp_in));
            auto out = open_out(fp_out);
            write_degrees(*out, seq);
        } else if (*gpam) {
            auto g = generate_pam({m, delta}, t, seed);
            auto out = open_out(out_path);
            write_pam(*out, g);
        } else if (*dia) {
            threads = resolve_threads(threads);
            MultiGraph g = is_pam_file(in_path) ? read_pam(in_path).undirected_view() : read_edge_list(in_path);
            auto method = exact ? DiameterMethod::AllSources
                                : (ifub || g.n() > 100000 ? DiameterMethod::IFub : DiameterMethod::AllSources);
            auto r = diameter(g, threads, method);
            if (!no_header) std::cout << "n,seed,diam,lcc_fraction\n";
            std::cout << g.n() << ',' << seed << ',' << r.diam << ',' << std::setprecision(17) << r.component_fraction << '\n';
        } else if (*ana) {
            threads = resolve_threads(threads);
            const bool pam = is_pam_file(in_path);
            PamGraph pg;
            MultiGraph g;
            AsymptoticConstants ac;
            std::int64_t d_min = 0;
            if (pam) {
                pg = read_pam(in_path);
                g = pg.undirected_view();
                ac = pam_constants(pg.params());
                tau = pg.params().tau();
            } else {
                g = read_edge_list(in_path);
                d_min = g.degree(0);
                for (vertex_t v = 0; v < g.n(); ++v) d_min = std::min(d_min, g.degree(v));
                ac = cm_constants(tau, d_min);
            }
            const double nd = static_cast<double>(g.n());
            json out;
            out["n"] = g.n();
            out["model"] = pam ? "PAM" : "CM";
            out["what"] = what;
            if (what == "mkc") {
                if (k < 0) k = ac.k_minus(nd, eps);
                MkcCensus c = pam ? census_mkc(pg, k, threads)
                                  : census_mkc(g, d_min, k, induced ? MkcRule::Induced : MkcRule::Exploration, threads);
                if (per_vertex) {
                    std::cout << "vertex\n";
                    for (auto v : c.members) std::cout << (pam ? v : v + 1) << '\n';
                    return 0;
                }
                out["k"] = k;
                out["i_k"] = c.i_k;
                out["count"] = c.count;
            } else {
                CoreSet core = pam ? extract_core_pam(pg, sigma) : extract_core(g, tau, sigma);
                out["core_size"] = core.members.size();
                out["core_threshold"] = core.threshold;
                auto hc = default_h_constants(tau, sigma);
                if (what == "core-dist") {
                    auto dc = distance_to_core(g, core);
                    int ref = ac.k_plus(nd, eps) + AsymptoticConstants::h(nd, hc.B, hc.C);
                    if (per_vertex) {
                        std::cout << "vertex,dist\n";
                        for (vertex_t v = 0; v < g.n(); ++v) std::cout << (v + 1) << ',' << dc.dist[v] << '\n';
                        return 0;
                    }
                    std::int64_t ok = 0;
                    for (auto d : dc.dist) ok += d != kUnreachable && d <= ref;
                    out["max_distance"] = dc.max;
                    out["unreachable"] = dc.unreachable;
                    out["reference_k_plus_plus_h"] = ref;
                    out["fraction_within_reference"] = ok / nd;
                } else {
                    if (k < 0) k = ac.k_plus(nd, eps);
                    auto mask = core_mask(core, g.n());
                    if (per_vertex) std::cout << "vertex,collisions_before_core,hit_core,boundary\n";
                    std::int64_t ge2 = 0, mx = 0;
                    CmExploreScratch sc;
                    Marks mk;
                    for (vertex_t v = 0; v < g.n(); ++v) {
                        auto e = pam ? explore_pam(pg, v + 1, k, mask, mk) : explore_cm(g, v, k, d_min, mask, sc);
                        ge2 += e.collisions_before_core >= 2;
                        mx = std::max(mx, e.collisions_before_core);
                        if (per_vertex)
                            std::cout << (v + 1) << ',' << e.collisions_before_core << ',' << e.hit_core << ','
                                      << e.boundary.size() << '\n';
                    }
                    if (per_vertex) return 0;
                    out["k"] = k;
                    out["fraction_ge2_collisions_before_core"] = ge2 / nd;
                    out["max_collisions_before_core"] = mx;
                }
            }
            std::cout << std::setw(2) << out << '\n';
        } else if (*bnd) {
            json p;
            if (!params.empty() && params[0] == '@') {
                std::ifstream f(params.substr(1));
                if (!f) throw std::runtime_error("cannot open " + params.substr(1));
                f >> p;
            } else {
                p = json::parse(params);
            }
            std::cout << std::setw(2) << run_bounds(which, p) << '\n';
        } else if (*exp) {
            std::ifstream f(cfg_path);
            if (!f) throw std::runtime_error("cannot open " + cfg_path);
            json j;
            f >> j;
            auto cfg = config_from_json(j);
            auto res = run(cfg, threads);
            report(res, out_dir, "csv");
            report(res, out_dir, "json");
            if (gnuplot) report(res, out_dir, "gnuplot");
            std::int64_t failed = 0;
            for (const auto& r : res.rows) failed += r.status != "ok";
            std::cerr << res.rows.size() << " rows written to " << out_dir << " (" << failed << " failed)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
