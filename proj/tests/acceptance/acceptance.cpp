// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Criterion 7 is the expensive one; ULTRASMALL_ACC7_SIZES (comma list) and
// ULTRASMALL_ACC7_REPLICAS override its defaults.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"

using namespace ultrasmall;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<std::int64_t> env_sizes(const char* name, std::vector<std::int64_t> def) {
    const char* v = std::getenv(name);
    if (!v) return def;
    std::vector<std::int64_t> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out.empty() ? def : out;
}

int env_int(const char* name, int def) {
    const char* v = std::getenv(name);
    return v ? std::stoi(v) : def;
}

// least-squares slope of y on x
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

Outcome criterion1() {
    DegreeSequence seq({3, 3, 3, 3});
    double total = 0;
    std::int64_t count = 0;
    oracle::for_each_matching(seq.ell(), [&](const std::vector<std::int64_t>& p) {
        total += static_cast<double>(census_mkc(oracle::graph_from_matching(seq.degrees(), p), 3, 1).count);
        ++count;
    });
    const double emp = total / static_cast<double>(count);
    const double formula = cm_mk_first_moment(seq, 1);
    const double diff = std::abs(emp - formula);
    return {count == 10395 && diff <= 1e-12,
            fmt("pairings=%lld enumerated E[M_1]=%.15f formula=%.15f |diff|=%.2e (648/693=%.15f)",
                static_cast<long long>(count), emp, formula, diff, 648.0 / 693.0)};
}

Outcome criterion2() {
    const PamParams p{2, -0.5};
    double worst = 0;
    std::int64_t trees = 0;
    bool unexpected = false;
    auto compare = [&](std::int64_t t, const std::map<PamTree, double>& observed) {
        for (vertex_t v = static_cast<vertex_t>(t / 2 + 1); v <= t; ++v)
            for (int k = 0; k <= 1; ++k)
                for (const auto& H : enumerate_admissible(p.m, t, v, k)) {
                    auto it = observed.find(H);
                    const double o = it == observed.end() ? 0.0 : it->second;
                    worst = std::max(worst, std::abs(pam_mkc_probability(p, t, H) - o));
                    ++trees;
                }
        for (const auto& [H, pr] : observed) try {
                check_admissible(H, p.m, t);
            } catch (const std::invalid_argument&) {
                unexpected = true;
            }
    };
    // full outcome trees for small t
    for (std::int64_t t = 1; t <= 6; ++t) {
        std::map<PamTree, double> observed;
        oracle::for_each_pam_realization(p.m, p.delta, t, [&](const std::vector<vertex_t>& xi, double pr) {
            PamGraph g(p, t, xi);
            for (int k = 0; k <= 1; ++k)
                for (auto v : census_mkc(g, k).members) observed[pam_member_tree(g, v, k)] += pr;
        });
        compare(t, observed);
    }
    // exact degree-vector chain for t = 7, 8
    for (int t = 7; t <= 8; ++t) {
        std::map<PamTree, double> observed;
        const int quarter = t / 4, half = t / 2;
        for (int v = half + 1; v <= t; ++v)
            for (const auto& [st, pr] : oracle::pam_degree_law(p.m, p.delta, t, v)) {
                if (st[v - 1] != p.m) continue;
                observed[PamTree{v, 0, {}}] += pr;
                const int c1 = st[t], c2 = st[t + 1];
                if (c1 == c2) continue;
                if (c1 <= quarter || c1 > half || c2 <= quarter || c2 > half) continue;
                if (st[c1 - 1] != p.m + 1 || st[c2 - 1] != p.m + 1) continue;
                observed[PamTree{v, 1, {{v, {c1, c2}}}}] += pr;
            }
        compare(t, observed);
    }
    return {worst <= 1e-10 && !unexpected,
            fmt("admissible trees checked=%lld (t<=8, k<=1) max |formula-enumeration|=%.2e%s",
                static_cast<long long>(trees), worst, unexpected ? " inadmissible tree observed" : "")};
}

Outcome criterion3() {
    DegreeSequence seq({2, 2, 2});
    std::map<std::vector<half_edge_t>, int> idx;
    oracle::for_each_matching(6, [&](const std::vector<std::int64_t>& m) { idx.emplace(m, static_cast<int>(idx.size())); });
    const int trials = 100000;
    std::vector<int> cnt(idx.size(), 0);
    for (int s = 0; s < trials; ++s) ++cnt[idx.at(generate_cm(seq, static_cast<std::uint64_t>(s)).partners())];
    const double e = static_cast<double>(trials) / static_cast<double>(idx.size());
    double chi2 = 0;
    for (int c : cnt) chi2 += (c - e) * (c - e) / e;
    boost::math::chi_squared dist(static_cast<double>(idx.size() - 1));
    const double crit = boost::math::quantile(dist, 0.99);
    const bool same = oracle::pairing_law(seq, oracle::Order::Forward) == oracle::pairing_law(seq, oracle::Order::Reverse);
    return {idx.size() == 15 && chi2 < crit && same,
            fmt("matchings=%zu chi2=%.3f crit(1%%,df=14)=%.3f forward/reverse laws equal=%s", idx.size(), chi2, crit,
                same ? "yes" : "no")};
}

Outcome criterion4() {
    const PamParams p{2, -0.5};
    const std::int64_t t = 3;
    const int trials = 1000000;
    std::map<std::vector<vertex_t>, int> freq;
    for (int s = 0; s < trials; ++s) ++freq[generate_pam(p, t, static_cast<std::uint64_t>(s)).xi_array()];
    int outside = 0, outcomes = 0;
    double worst = 0;
    oracle::for_each_pam_realization(p.m, p.delta, t, [&](const std::vector<vertex_t>& xi, double pr) {
        ++outcomes;
        const double f = freq.count(xi) ? freq.at(xi) / static_cast<double>(trials) : 0.0;
        const double sd = std::sqrt(pr * (1 - pr) / trials);
        const double z = std::abs(f - pr) / sd;
        worst = std::max(worst, z);
        outside += z > 3.0;
    });
    return {outside == 0, fmt("realizations=%d outside 3 sigma=%d max |z|=%.3f", outcomes, outside, worst)};
}

Outcome criterion5() {
    auto s = appendixA_sequences(10000, 2.0, 2.0 / 3.0, 4);
    auto r = check_appendix_a(s, 4, resolve_threads(0));
    return {r.violations == 0,
            fmt("t=10^4 gamma=2/3 R=2 c=%.3f g_0..g_4=%lld,%lld,%lld,%lld,%lld comparisons=%lld violations=%lld "
                "max f_exact/f_bound=%.4f",
                s.c, static_cast<long long>(s.g[0]), static_cast<long long>(s.g[1]), static_cast<long long>(s.g[2]),
                static_cast<long long>(s.g[3]), static_cast<long long>(s.g[4]),
                static_cast<long long>(r.comparisons), static_cast<long long>(r.violations), r.worst_ratio)};
}

Outcome criterion6() {
    const auto ac = cm_constants(2.5, 3);
    std::string detail = "E[M_k-] (eps=0.2):";
    bool increasing = true;
    double prev = -1;
    for (std::int64_t n : {1000, 10000, 100000}) {
        auto seq = fix_parity(quantile_sequence({2.5, 3, n}));
        const int k = ac.k_minus(static_cast<double>(n), 0.2);
        const double e = cm_mk_first_moment(seq, k);
        detail += fmt(" n=%lld k=%d %.3e;", static_cast<long long>(n), k, e);
        if (prev >= 0 && !(e > prev)) increasing = false;
        prev = e;
    }
    bool mc_ok = true;
    auto seq = fix_parity(quantile_sequence({2.5, 3, 10000}));
    const int reps = 1000;
    std::vector<std::vector<double>> samples(3, std::vector<double>(reps));
    parallel_for(reps, resolve_threads(0), [&](std::size_t r, unsigned) {
        auto g = generate_cm(seq, replica_seed(606, r));
        for (int k = 1; k <= 2; ++k) samples[k][r] = static_cast<double>(census_mkc(g, 3, k).count);
    });
    for (int k = 1; k <= 2; ++k) {
        const double exact = cm_mk_first_moment(seq, k);
        auto s = summarize(samples[k]);
        // a sample without variation carries no spread estimate; fall back to the Poisson scale
        const double sigma = s.std_error > 0 ? s.std_error : std::sqrt(std::max(exact, 0.0) / reps);
        const bool ok = std::abs(s.mean - exact) <= 3 * sigma;
        mc_ok = mc_ok && ok;
        detail += fmt(" MC n=10^4 k=%d mean=%.4g exact=%.4g sigma=%.3g %s;", k, s.mean, exact, sigma, ok ? "ok" : "off");
    }
    detail += fmt(" monotone=%s", increasing ? "yes" : "no");
    return {increasing && mc_ok, detail};
}

Outcome criterion7() {
    const auto sizes = env_sizes("ULTRASMALL_ACC7_SIZES", {1000, 10000, 100000, 1000000});
    const int reps = env_int("ULTRASMALL_ACC7_REPLICAS", 20);
    const unsigned threads = resolve_threads(0);
    std::string detail = fmt("replicas=%d;", reps);
    bool all_ok = true;
    for (Model model : {Model::CM, Model::PAM}) {
        std::vector<double> xs, ys;
        bool dominates = true;
        for (auto n : sizes) {
            std::vector<double> diam(static_cast<std::size_t>(reps));
            std::vector<char> ok(static_cast<std::size_t>(reps), 1);
            parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r, unsigned) {
                const auto seed = replica_seed(model == Model::CM ? 7000 : 8000, r + 100 * static_cast<std::size_t>(std::log10(n)));
                MultiGraph g = model == Model::CM ? generate_cm(fix_parity(sample_iid_powerlaw({2.5, 3, n}, seed)), seed)
                                                  : generate_pam({2, -1.0}, n, seed).undirected_view();
                auto d = diameter(g, 1, DiameterMethod::IFub);
                auto h = typical_distance_sample(g, 100, seed ^ 0x9e3779b97f4a7c15ULL);
                std::int32_t hmax = 0;
                for (auto x : h)
                    if (x != kUnreachable) hmax = std::max(hmax, x);
                ok[r] = d.diam >= hmax;
                diam[r] = d.diam;
            });
            for (std::size_t r = 0; r < diam.size(); ++r) {
                xs.push_back(std::log(std::log(static_cast<double>(n))));
                ys.push_back(diam[r]);
                dominates = dominates && ok[r];
            }
            detail += fmt(" %s n=%lld mean diam=%.2f;", model == Model::CM ? "CM" : "PAM", static_cast<long long>(n),
                          summarize(diam).mean);
        }
        const double sl = slope(xs, ys);
        const double hi = model == Model::CM ? 12.0 : 14.0;
        const bool in = sl >= 2.0 && sl <= hi;
        all_ok = all_ok && in && dominates;
        detail += fmt(" %s slope=%.3f in [2,%g]=%s diam>=max H=%s;", model == Model::CM ? "CM" : "PAM", sl, hi,
                      in ? "yes" : "no", dominates ? "yes" : "no");
    }
    return {all_ok, detail};
}

Outcome criterion8() {
    const std::int64_t n = 100000;
    const int reps = 5;
    const auto ac = cm_constants(2.5, 3);
    const int k = ac.k_plus(static_cast<double>(n), 0.1);
    const auto hc = default_h_constants(2.5, 2.2);
    const int h = AsymptoticConstants::h(static_cast<double>(n), hc.B, hc.C);
    std::int64_t total = 0, multi = 0, near = 0;
    std::int32_t worst = 0;
    for (int r = 0; r < reps; ++r) {
        const auto seed = replica_seed(808, static_cast<std::uint64_t>(r));
        auto g = generate_cm(fix_parity(sample_iid_powerlaw({2.5, 3, n}, seed)), seed);
        auto core = extract_core(g, 2.5, 2.2);
        auto mask = core_mask(core, g.n());
        auto cd = distance_to_core(g, core);
        CmExploreScratch s;
        for (vertex_t v = 0; v < g.n(); ++v) {
            ++total;
            multi += explore_cm(g, v, k, 3, mask, s).collisions_before_core >= 2;
            if (cd.dist[v] != kUnreachable && cd.dist[v] <= k + h) ++near;
            if (cd.dist[v] != kUnreachable) worst = std::max(worst, cd.dist[v]);
        }
    }
    const double fmulti = static_cast<double>(multi) / static_cast<double>(total);
    const double fnear = static_cast<double>(near) / static_cast<double>(total);
    return {fmulti < 0.01 && fnear >= 0.99,
            fmt("n=10^5 replicas=%d k+=%d h=%d (B=%.3f C=%.3f) frac >=2 collisions=%.5f frac dist<=k+h=%.5f max dist=%d",
                reps, k, h, hc.B, hc.C, fmulti, fnear, worst)};
}

Outcome criterion9() {
    const std::int64_t n = 20000;
    const int reps = 10000;
    const double eps = 0.2, eta = 0.05;
    auto seq = fix_parity(quantile_sequence({2.5, 3, n}));
    const auto ac = cm_constants(2.5, 3);
    const int kbar = ac.k_bar(static_cast<double>(n), eps);
    const double dmax = std::floor(std::log(static_cast<double>(n)));
    std::vector<vertex_t> low;
    for (std::size_t v = 0; v < static_cast<std::size_t>(seq.n()); ++v)
        if (static_cast<double>(seq[v]) <= dmax) low.push_back(static_cast<vertex_t>(v));
    auto g = cm_truncation_sequence(n, 2.5, eta, 2 * kbar);
    const double bound = cm_distance_bound(seq, dmax, dmax, kbar, g);
    std::vector<char> hit(static_cast<std::size_t>(reps), 0);
    parallel_for(static_cast<std::size_t>(reps), resolve_threads(0), [&](std::size_t r, unsigned) {
        const auto seed = replica_seed(909, r);
        Rng rng(seed ^ 0x5851f42d4c957f2dULL);
        const auto a = low[rng.below(low.size())];
        auto b = a;
        while (b == a) b = low[rng.below(low.size())];
        auto d = bfs(generate_cm(seq, seed), a).distances[b];
        hit[r] = d != kUnreachable && d <= 2 * kbar;
    });
    double p = 0;
    for (auto x : hit) p += x;
    p /= reps;
    const double sd = std::sqrt(p * (1 - p) / reps);
    return {p <= bound + 3 * sd,
            fmt("n=2*10^4 k_bar=%d degrees<=%g P(dist<=2k_bar)=%.4f sigma=%.4f bound=%.4g", kbar, dmax, p, sd, bound)};
}

Outcome criterion10() {
    int graphs = 0, mismatches = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(s);
        const auto n = static_cast<std::int64_t>(2 + rng.below(49));
        MultiGraph g = s % 2 == 0 ? generate_cm(fix_parity(sample_iid_powerlaw({2.5, 1 + static_cast<std::int64_t>(s % 3), n}, s)), s)
                                  : generate_pam({1 + static_cast<int>(s % 3), -0.5}, n, s).undirected_view();
        ++graphs;
        const auto d = oracle::floyd_warshall(g);
        bool ok = true;
        for (vertex_t v = 0; v < g.n(); ++v) {
            auto r = bfs(g, v);
            for (vertex_t w = 0; w < g.n(); ++w)
                ok = ok && r.distances[w] == (d[v][w] >= oracle::kInf ? kUnreachable : d[v][w]);
        }
        const int fw = oracle::fw_diameter(g);
        ok = ok && diameter(g, 1, DiameterMethod::AllSources).diam == fw && diameter(g, 1, DiameterMethod::IFub).diam == fw;
        mismatches += !ok;
    }
    return {mismatches == 0, fmt("graphs=%d (CM and PAM, n<=50) mismatches=%d", graphs, mismatches)};
}

Outcome criterion11() {
    const std::int64_t t = 100000;
    const int reps = 20;
    std::vector<DegreeGrowthReport> rep(reps);
    parallel_for(reps, resolve_threads(0), [&](std::size_t r, unsigned) {
        rep[r] = degree_growth(generate_pam({2, -1.0}, t, replica_seed(1111, r)), 2.2, 5.0);
    });
    std::int64_t viol = 0, outside = 0, maxdeg = 0;
    for (const auto& r : rep) {
        viol += r.violations;
        outside += r.outside_core;
        maxdeg = std::max(maxdeg, r.max_final_degree_outside_core);
    }
    return {viol == 0, fmt("t=10^5 replicas=%d threshold=%.2f (1+B)threshold=%.2f checked=%lld violations=%lld "
                           "max final degree outside core=%lld",
                           reps, rep[0].threshold, 6 * rep[0].threshold, static_cast<long long>(outside),
                           static_cast<long long>(viol), static_cast<long long>(maxdeg))};
}

}  // namespace

int main() {
    const std::vector<Outcome (*)()> criteria{criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                                              criterion7, criterion8, criterion9, criterion10, criterion11};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("Criterion %zu: %s (%.1fs) %s\n", i + 1, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
