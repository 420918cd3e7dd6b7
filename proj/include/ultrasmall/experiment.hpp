#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cm_generator.hpp"
#include "degree_sequence.hpp"
#include "graph_metrics.hpp"
#include "pam_generator.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "structure_analysis.hpp"
#include "theory_bounds.hpp"

namespace ultrasmall {

struct ExperimentConfig {
    Model model = Model::CM;
    double tau = 2.5;
    std::int64_t d_min = 3;
    std::string degrees = "iid";  // iid | quantile
    int m = 2;
    double delta = -1.0;
    std::vector<std::int64_t> sizes;
    int replicas = 1;
    std::uint64_t seed = 1;
    double epsilon = 0.1;
    double sigma = 2.2;
    double eta = 0.05;
    double B = -1;  // < 0: derived default
    double C = std::numeric_limits<double>::quiet_NaN();
    std::set<std::string> measurements{"diameter"};
    std::int64_t typical_pairs = 100;
    DiameterMethod diameter_method = DiameterMethod::IFub;
    double timeout_seconds = 0;  // 0: no budget
    unsigned inner_threads = 1;

    static const std::set<std::string>& known_measurements() {
        static const std::set<std::string> k{"diameter", "typical", "mkc", "core", "exploration", "connectors", "bounds"};
        return k;
    }

    void validate() const {
        if (sizes.empty()) throw std::invalid_argument("sizes must be nonempty");
        if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
        for (auto n : sizes)
            if (n < 1) throw std::invalid_argument("sizes must be positive");
        for (const auto& s : measurements)
            if (!known_measurements().count(s)) throw std::invalid_argument("unknown measurement: " + s);
        if (model == Model::CM) PowerLawSpec{tau, d_min, 0}.validate();
        else PamParams{m, delta}.validate();
        if (degrees != "iid" && degrees != "quantile") throw std::invalid_argument("degrees must be iid or quantile");
    }

    double model_tau() const { return model == Model::CM ? tau : PamParams{m, delta}.tau(); }
    HConstants h_constants() const {
        auto d = default_h_constants(model_tau(), sigma);
        if (B > 0) d.B = B;
        if (!std::isnan(C)) d.C = C;
        return d;
    }
};

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    std::string model = j.value("model", "CM");
    std::transform(model.begin(), model.end(), model.begin(), ::toupper);
    if (model == "CM") c.model = Model::CM;
    else if (model == "PAM") c.model = Model::PAM;
    else throw std::invalid_argument("model must be CM or PAM");
    if (j.contains("params")) {
        const auto& p = j["params"];
        c.tau = p.value("tau", c.tau);
        c.d_min = p.value("d_min", c.d_min);
        c.degrees = p.value("degrees", c.degrees);
        c.m = p.value("m", c.m);
        c.delta = p.value("delta", c.delta);
    }
    c.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
    c.replicas = j.value("replicas", c.replicas);
    c.seed = j.value("seed", c.seed);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.sigma = j.value("sigma", c.sigma);
    c.eta = j.value("eta", c.eta);
    if (j.contains("B") && !j["B"].is_null()) c.B = j["B"].get<double>();
    if (j.contains("C") && !j["C"].is_null()) c.C = j["C"].get<double>();
    if (j.contains("measurements")) {
        c.measurements.clear();
        for (const auto& s : j["measurements"]) c.measurements.insert(s.get<std::string>());
    }
    c.typical_pairs = j.value("typical_pairs", c.typical_pairs);
    std::string dm = j.value("diameter_method", std::string("ifub"));
    if (dm == "ifub") c.diameter_method = DiameterMethod::IFub;
    else if (dm == "exact") c.diameter_method = DiameterMethod::AllSources;
    else throw std::invalid_argument("diameter_method must be ifub or exact");
    c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
    c.validate();
    return c;
}

// One per-replica row. Columns are fixed; NaN marks a measurement not taken.
struct ExperimentRow {
    std::int64_t size = 0;
    int replica = 0;
    std::uint64_t seed = 0;
    std::string status = "ok";
    bool timed_out = false;
    std::map<std::string, double> values;
};

inline const std::vector<std::string>& value_columns() {
    static const std::vector<std::string> cols{
        // empirical
        "diam", "lcc_fraction", "typ_mean", "typ_max", "typ_connected_fraction", "mkc_k", "mkc_count", "core_size",
        "core_diam", "core_dist_max", "core_dist_ok_fraction", "expl_k", "expl_frac_ge2", "expl_max_collisions",
        "conn_count", "conn_DA", "conn_Di",
        // theory
        "loglog_n", "diam_constant", "typ_constant", "k_minus", "k_plus", "k_bar", "h_n", "mk_first_moment"};
    return cols;
}

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;
};

namespace detail {

inline void fill_theory(const ExperimentConfig& cfg, std::int64_t n, ExperimentRow& row) {
    auto ac = cfg.model == Model::CM ? cm_constants(cfg.tau, cfg.d_min) : pam_constants(PamParams{cfg.m, cfg.delta});
    row.values["diam_constant"] = ac.diam_constant;
    row.values["typ_constant"] = ac.typ_constant;
    const double nd = static_cast<double>(n);
    if (nd > std::exp(1.0)) {
        row.values["loglog_n"] = std::log(std::log(nd));
        row.values["k_minus"] = ac.k_minus(nd, cfg.epsilon);
        row.values["k_plus"] = ac.k_plus(nd, cfg.epsilon);
        row.values["k_bar"] = ac.k_bar(nd, cfg.epsilon);
    }
    if (nd > std::exp(std::exp(1.0))) {
        auto hc = cfg.h_constants();
        row.values["h_n"] = AsymptoticConstants::h(nd, hc.B, hc.C);
    }
}

inline void run_replica(const ExperimentConfig& cfg, ExperimentRow& row) {
    const std::int64_t n = row.size;
    const auto& M = cfg.measurements;
    const unsigned th = cfg.inner_threads;
    fill_theory(cfg, n, row);
    const double nd = static_cast<double>(n);
    const bool ll_ok = nd > std::exp(std::exp(1.0));

    MultiGraph g;
    PamGraph pg;
    DegreeSequence seq;
    if (cfg.model == Model::CM) {
        PowerLawSpec spec{cfg.tau, cfg.d_min, n};
        seq = cfg.degrees == "quantile" ? quantile_sequence(spec) : sample_iid_powerlaw(spec, row.seed);
        seq = fix_parity(seq);
        g = generate_cm(seq, row.seed ^ 0x9e3779b97f4a7c15ULL);
    } else {
        pg = generate_pam(PamParams{cfg.m, cfg.delta}, n, row.seed);
        g = pg.undirected_view();
    }
    auto ac = cfg.model == Model::CM ? cm_constants(cfg.tau, cfg.d_min) : pam_constants(PamParams{cfg.m, cfg.delta});

    if (M.count("diameter")) {
        auto d = diameter(g, th, cfg.diameter_method);
        row.values["diam"] = d.diam;
        row.values["lcc_fraction"] = d.component_fraction;
    }
    if (M.count("typical")) {
        auto s = typical_distance_sample(g, cfg.typical_pairs, row.seed + 0x51ed270b27e9b9f1ULL);
        double sum = 0;
        std::int64_t cnt = 0;
        std::int32_t mx = 0;
        for (auto d : s)
            if (d != kUnreachable) {
                sum += d;
                ++cnt;
                mx = std::max(mx, d);
            }
        row.values["typ_mean"] = cnt ? sum / cnt : std::numeric_limits<double>::quiet_NaN();
        row.values["typ_max"] = mx;
        row.values["typ_connected_fraction"] = static_cast<double>(cnt) / static_cast<double>(s.size());
    }
    if (M.count("mkc") && nd > std::exp(1.0)) {
        int k = std::max(0, ac.k_minus(nd, cfg.epsilon));
        row.values["mkc_k"] = k;
        if (cfg.model == Model::CM) {
            row.values["mkc_count"] = static_cast<double>(census_mkc(g, seq.min_degree(), k, MkcRule::Exploration, th).count);
        } else {
            row.values["mkc_count"] = static_cast<double>(census_mkc(pg, k, th).count);
        }
    }
    if (M.count("bounds") && cfg.model == Model::CM && nd > std::exp(1.0)) {
        int k = std::max(0, ac.k_minus(nd, cfg.epsilon));
        try {
            row.values["mk_first_moment"] = cm_mk_first_moment(seq, k);
        } catch (const std::exception&) {
        }
    }
    CoreSet core;
    bool have_core = false;
    if ((M.count("core") || M.count("exploration")) && ll_ok) {
        core = cfg.model == Model::CM ? extract_core(g, cfg.tau, cfg.sigma) : extract_core_pam(pg, cfg.sigma);
        have_core = true;
        row.values["core_size"] = static_cast<double>(core.members.size());
    }
    if (M.count("core") && have_core && !core.members.empty()) {
        auto cd = core_diameter(g, core, th);
        row.values["core_diam"] = cd.diam;
        auto dc = distance_to_core(g, core);
        row.values["core_dist_max"] = dc.max;
        const auto hc = cfg.h_constants();
        const int ref = ac.k_plus(nd, cfg.epsilon) + AsymptoticConstants::h(nd, hc.B, hc.C);
        std::int64_t ok = 0;
        for (auto d : dc.dist) ok += d != kUnreachable && d <= ref;
        row.values["core_dist_ok_fraction"] = static_cast<double>(ok) / nd;
    }
    if (M.count("exploration") && have_core) {
        int k = ac.k_plus(nd, cfg.epsilon);
        row.values["expl_k"] = k;
        const auto mask = core_mask(core, g.n());
        std::vector<std::int64_t> ge2(std::max(1u, th), 0), mx(std::max(1u, th), 0);
        if (cfg.model == Model::CM) {
            std::vector<CmExploreScratch> sc(std::max(1u, th));
            parallel_for(static_cast<std::size_t>(g.n()), th, [&](std::size_t v, unsigned w) {
                auto e = explore_cm(g, static_cast<vertex_t>(v), k, cfg.d_min, mask, sc[w]);
                ge2[w] += e.collisions_before_core >= 2;
                mx[w] = std::max(mx[w], e.collisions_before_core);
            });
        } else {
            std::vector<Marks> sc(std::max(1u, th));
            parallel_for(static_cast<std::size_t>(pg.t()), th, [&](std::size_t v, unsigned w) {
                auto e = explore_pam(pg, static_cast<vertex_t>(v + 1), k, mask, sc[w]);
                ge2[w] += e.collisions_before_core >= 2;
                mx[w] = std::max(mx[w], e.collisions_before_core);
            });
        }
        std::int64_t tot = 0, m = 0;
        for (std::size_t i = 0; i < ge2.size(); ++i) {
            tot += ge2[i];
            m = std::max(m, mx[i]);
        }
        row.values["expl_frac_ge2"] = static_cast<double>(tot) / nd;
        row.values["expl_max_collisions"] = static_cast<double>(m);
    }
    if (M.count("connectors") && cfg.model == Model::PAM && n >= 8) {
        const std::int64_t half = n / 2;
        auto dh = pg.degrees_at(half);
        std::vector<vertex_t> order(static_cast<std::size_t>(half));
        for (std::int64_t v = 0; v < half; ++v) order[v] = static_cast<vertex_t>(v + 1);
        std::stable_sort(order.begin(), order.end(), [&](vertex_t a, vertex_t b) { return dh[a - 1] > dh[b - 1]; });
        const std::size_t a_size = std::min<std::size_t>(50, order.size() - 1);
        std::vector<vertex_t> A(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(a_size));
        Rng rng(row.seed + 0x2545f4914f6cdd1dULL);
        vertex_t i = order[a_size + rng.below(order.size() - a_size)];
        auto q = find_connectors(pg, A, i);
        double DA = 0;
        for (auto a : A) DA += static_cast<double>(dh[a - 1]);
        row.values["conn_count"] = static_cast<double>(q.connectors.size());
        row.values["conn_DA"] = DA;
        row.values["conn_Di"] = static_cast<double>(dh[i - 1]);
    }
}

inline std::string format_double(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace detail

inline ExperimentResult run(const ExperimentConfig& cfg, unsigned threads = 0) {
    cfg.validate();
    threads = resolve_threads(threads);
    ExperimentResult res;
    res.config = cfg;
    for (auto n : cfg.sizes)
        for (int r = 0; r < cfg.replicas; ++r) {
            ExperimentRow row;
            row.size = n;
            row.replica = r;
            row.seed = replica_seed(cfg.seed, static_cast<std::uint64_t>(res.rows.size()));
            res.rows.push_back(row);
        }
    parallel_for(res.rows.size(), threads, [&](std::size_t i, unsigned) {
        auto& row = res.rows[i];
        auto start = std::chrono::steady_clock::now();
        try {
            detail::run_replica(cfg, row);
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.timed_out = cfg.timeout_seconds > 0 && secs > cfg.timeout_seconds;
    });
    std::sort(res.rows.begin(), res.rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
        return std::tie(a.size, a.seed) < std::tie(b.size, b.seed);
    });
    return res;
}

// ------------------------------------------------------------------ reporting

inline void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << "size,replica,seed,status,timed_out";
    for (const auto& c : value_columns()) out << ',' << c;
    out << '\n';
    for (const auto& r : rows) {
        std::string st = r.status;
        std::replace(st.begin(), st.end(), ',', ';');
        std::replace(st.begin(), st.end(), '\n', ' ');
        out << r.size << ',' << r.replica << ',' << r.seed << ',' << st << ',' << (r.timed_out ? 1 : 0);
        for (const auto& c : value_columns()) {
            auto it = r.values.find(c);
            out << ',' << (it == r.values.end() ? std::string() : detail::format_double(it->second));
        }
        out << '\n';
    }
}

inline std::vector<ExperimentRow> read_csv(std::istream& in) {
    std::vector<ExperimentRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string f;
        while (std::getline(hs, f, ',')) header.push_back(f);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                f.push_back(cur);
                cur.clear();
            } else cur += ch;
        }
        f.push_back(cur);
        if (f.size() != header.size()) throw std::runtime_error("CSV row width mismatch");
        ExperimentRow r;
        for (std::size_t i = 0; i < header.size(); ++i) {
            const auto& h = header[i];
            if (h == "size") r.size = std::stoll(f[i]);
            else if (h == "replica") r.replica = std::stoi(f[i]);
            else if (h == "seed") r.seed = std::stoull(f[i]);
            else if (h == "status") r.status = f[i];
            else if (h == "timed_out") r.timed_out = f[i] == "1";
            else if (!f[i].empty()) r.values[h] = std::stod(f[i]);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

struct ColumnSummary {
    std::int64_t count = 0;
    double mean = 0, std_error = 0, q25 = 0, median = 0, q75 = 0, min = 0, max = 0;
};

// linear interpolation between order statistics
inline double quantile_sorted(const std::vector<double>& s, double p) {
    if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
    double pos = p * static_cast<double>(s.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    auto hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

inline ColumnSummary summarize(std::vector<double> v) {
    ColumnSummary s;
    s.count = static_cast<std::int64_t>(v.size());
    if (v.empty()) return s;
    std::sort(v.begin(), v.end());
    long double sum = 0;
    for (auto x : v) sum += x;
    s.mean = static_cast<double>(sum / v.size());
    long double ss = 0;
    for (auto x : v) ss += (x - s.mean) * (x - s.mean);
    s.std_error = v.size() > 1 ? static_cast<double>(std::sqrt(ss / (v.size() - 1) / v.size())) : 0.0;
    s.q25 = quantile_sorted(v, 0.25);
    s.median = quantile_sorted(v, 0.5);
    s.q75 = quantile_sorted(v, 0.75);
    s.min = v.front();
    s.max = v.back();
    return s;
}

// size -> column -> summary, over rows with status ok
inline std::map<std::int64_t, std::map<std::string, ColumnSummary>> aggregate(const std::vector<ExperimentRow>& rows) {
    std::map<std::int64_t, std::map<std::string, std::vector<double>>> cols;
    for (const auto& r : rows) {
        if (r.status != "ok") continue;
        for (const auto& [k, v] : r.values)
            if (!std::isnan(v)) cols[r.size][k].push_back(v);
    }
    std::map<std::int64_t, std::map<std::string, ColumnSummary>> out;
    for (auto& [n, m] : cols)
        for (auto& [k, v] : m) out[n][k] = summarize(std::move(v));
    return out;
}

inline nlohmann::json aggregate_json(const ExperimentResult& res) {
    nlohmann::json j;
    const auto& c = res.config;
    j["model"] = c.model == Model::CM ? "CM" : "PAM";
    if (c.model == Model::CM) j["params"] = {{"tau", c.tau}, {"d_min", c.d_min}, {"degrees", c.degrees}};
    else j["params"] = {{"m", c.m}, {"delta", c.delta}, {"tau", c.model_tau()}};
    auto ac = c.model == Model::CM ? cm_constants(c.tau, c.d_min) : pam_constants(PamParams{c.m, c.delta});
    j["diam_constant"] = ac.diam_constant;
    j["typ_constant"] = ac.typ_constant;
    j["c_dist"] = ac.c_dist;
    j["d_fwd"] = ac.d_fwd;
    j["replicas"] = c.replicas;
    j["seed"] = c.seed;
    std::int64_t failed = 0;
    for (const auto& r : res.rows) failed += r.status != "ok";
    j["failed_rows"] = failed;
    nlohmann::json sizes = nlohmann::json::array();
    for (const auto& [n, m] : aggregate(res.rows)) {
        nlohmann::json s;
        s["size"] = n;
        for (const auto& [k, v] : m)
            s["columns"][k] = {{"count", v.count}, {"mean", v.mean}, {"stderr", v.std_error}, {"q25", v.q25},
                               {"median", v.median}, {"q75", v.q75}, {"min", v.min}, {"max", v.max}};
        sizes.push_back(s);
    }
    j["sizes"] = sizes;
    return j;
}

// format: "csv" writes rows.csv, "json" writes aggregate.json, "gnuplot" writes
// whitespace-separated per-size means; returns the written path.
inline std::filesystem::path report(const ExperimentResult& res, const std::filesystem::path& dir,
                                    const std::string& format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::filesystem::path p;
    if (format == "csv") p = dir / "rows.csv";
    else if (format == "json") p = dir / "aggregate.json";
    else if (format == "gnuplot") p = dir / "means.dat";
    else throw std::invalid_argument("unknown format: " + format);
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    if (format == "csv") {
        write_csv(out, res.rows);
    } else if (format == "json") {
        out << std::setw(2) << aggregate_json(res) << '\n';
    } else {
        out << "# size";
        for (const auto& c : value_columns()) out << ' ' << c;
        out << '\n';
        for (const auto& [n, m] : aggregate(res.rows)) {
            out << n;
            for (const auto& c : value_columns()) {
                auto it = m.find(c);
                out << ' ' << (it == m.end() ? std::string("NaN") : detail::format_double(it->second.mean));
            }
            out << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed writing " + p.string());
    return p;
}

}  // namespace ultrasmall
