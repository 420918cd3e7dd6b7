#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "degree_sequence.hpp"
#include "pam_generator.hpp"
#include "parallel.hpp"

namespace ultrasmall {

enum class Model { CM, PAM };

// ---------------------------------------------------------------- tree sizes

// CM: number of edges of the d-regular tree of depth k
inline std::int64_t i_k_cm(std::int64_t d_min, int k) {
    if (d_min < 2) throw std::invalid_argument("d_min must be >= 2");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    if (d_min == 2) return 2 * static_cast<std::int64_t>(k);
    std::int64_t pw = 1;
    for (int i = 0; i < k; ++i) {
        if (pw > std::numeric_limits<std::int64_t>::max() / (d_min - 1) / d_min) throw std::overflow_error("i_k overflows");
        pw *= d_min - 1;
    }
    return d_min * (pw - 1) / (d_min - 2);
}

// PAM: number of vertices of the m-ary tree of depth k
inline std::int64_t i_k_pam(std::int64_t m, int k) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    std::int64_t total = 0, pw = 1;
    for (int i = 0; i <= k; ++i) {
        total += pw;
        if (i < k && pw > std::numeric_limits<std::int64_t>::max() / m / 2) throw std::overflow_error("i_k overflows");
        pw *= m;
    }
    return total;
}

inline std::int64_t i_k(std::int64_t d_min_or_m, int k, Model model) {
    return model == Model::CM ? i_k_cm(d_min_or_m, k) : i_k_pam(d_min_or_m, k);
}

// ---------------------------------------------------------------- CM moments

inline double cm_mk_first_moment(const DegreeSequence& seq, int k) {
    const std::int64_t d = seq.min_degree();
    if (d < 2) throw std::invalid_argument("minimum degree must be >= 2");
    const std::int64_t nd = seq.count_of(d);
    const std::int64_t ik = i_k_cm(d, k);
    if (nd <= ik) return 0.0;
    const std::int64_t ell = seq.ell();
    if (ell <= 2 * ik) throw std::domain_error("total degree too small for depth k");
    long double lg = std::log(static_cast<long double>(nd));
    const long double ld = std::log(static_cast<long double>(d));
    for (std::int64_t i = 1; i <= ik; ++i)
        lg += ld + std::log(static_cast<long double>(nd - i)) - std::log(static_cast<long double>(ell - 2 * i + 1));
    return static_cast<double>(std::exp(lg));
}

inline double cm_mk_second_moment_bound(const DegreeSequence& seq, int k) {
    const std::int64_t d = seq.min_degree();
    if (d < 2) throw std::invalid_argument("minimum degree must be >= 2");
    const std::int64_t ik = i_k_cm(d, k);
    const std::int64_t ell = seq.ell();
    if (ell <= 4 * ik) throw std::domain_error("second-moment bound needs total degree > 4 i_k");
    const double e = cm_mk_first_moment(seq, k);
    const double i2k = static_cast<double>(i_k_cm(d, 2 * k));
    const double nd = static_cast<double>(seq.count_of(d));
    return e * e + e * ((static_cast<double>(ik) + 1.0) + i2k * static_cast<double>(d) * nd / static_cast<double>(ell - 4 * ik));
}

// ------------------------------------------------ size-biased tail, truncated mean

inline double size_biased_ccdf(const DegreeSequence& seq, double x) {
    if (seq.empty()) throw std::invalid_argument("empty degree sequence");
    long double s = 0;
    for (auto it = seq.histogram().rbegin(); it != seq.histogram().rend() && static_cast<double>(it->first) > x; ++it)
        s += static_cast<long double>(it->first) * it->second;
    return static_cast<double>(s / seq.ell());
}

inline double truncated_mean_nu(const DegreeSequence& seq, double x) {
    if (seq.empty()) throw std::invalid_argument("empty degree sequence");
    long double s = 0;
    for (const auto& [d, c] : seq.histogram()) {
        if (static_cast<double>(d) > x) break;
        s += static_cast<long double>(d) * (d - 1) * c;
    }
    return static_cast<double>(s / seq.ell());
}

// g_k = g_0^{p^k}, g_0 = (log n)^{loglog n}, p = 1/(tau-2-2 eta); overflow saturates to +inf
inline std::vector<double> cm_truncation_sequence(std::int64_t n, double tau, double eta, int k_max) {
    if (!(2.0 * eta < tau - 2.0) || !(eta > 0)) throw std::invalid_argument("need 0 < 2 eta < tau - 2");
    if (n < 16) throw std::invalid_argument("n too small for loglog n");
    const double ll = std::log(std::log(static_cast<double>(n)));
    const double log_g0 = ll * ll;  // log((log n)^{loglog n})
    const double p = 1.0 / (tau - 2.0 - 2.0 * eta);
    std::vector<double> g(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        double lg = log_g0 * std::pow(p, k);
        g[k] = lg > 700.0 ? std::numeric_limits<double>::infinity() : std::exp(lg);
    }
    return g;
}

inline double cm_distance_bound(const DegreeSequence& seq, double d_a, double d_b, int k_bar,
                                const std::vector<double>& g) {
    if (k_bar < 0) throw std::invalid_argument("k_bar must be >= 0");
    if (k_bar == 0) return 0.0;
    const double ell = static_cast<double>(seq.ell());
    if (!(ell > 4.0 * k_bar)) throw std::domain_error("need total degree > 4 k_bar");
    if (g.size() < static_cast<std::size_t>(2 * k_bar)) throw std::invalid_argument("truncation sequence too short");
    if (d_a > g[0] || d_b > g[0]) throw std::invalid_argument("endpoint degrees must not exceed g_0");
    // nu is monotone in its argument; cache per index pair
    auto nu = [&](double x) { return truncated_mean_nu(seq, x); };
    long double t1 = 0;
    for (int k = 1; k <= 2 * k_bar; ++k) {
        long double term = std::pow(1.0L - 2.0L * k / ell, -static_cast<long double>(k));
        for (int l = 1; l <= k - 1; ++l) term *= nu(std::min(g[l], g[k - l]));
        t1 += term;
    }
    t1 *= d_a * d_b / ell;
    long double t2 = 0;
    for (int k = 1; k <= k_bar; ++k) {
        long double term = std::pow(1.0L - 2.0L * k / ell, -static_cast<long double>(k)) * size_biased_ccdf(seq, g[k]);
        for (int l = 1; l <= k - 1; ++l) term *= nu(g[l]);
        t2 += term;
    }
    t2 *= d_a + d_b;
    return static_cast<double>(t1 + t2);
}

// ---------------------------------------------------------------- PAM path weight

inline double pam_path_weight(const std::vector<std::int64_t>& path, double C, int m, double gamma) {
    if (path.size() < 2) throw std::invalid_argument("path needs at least two vertices");
    std::set<std::int64_t> seen(path.begin(), path.end());
    if (seen.size() != path.size()) throw std::invalid_argument("path vertices must be distinct");
    double w = 1.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        double a = static_cast<double>(std::min(path[i], path[i + 1]));
        double b = static_cast<double>(std::max(path[i], path[i + 1]));
        w *= C * m / (std::pow(a, gamma) * std::pow(b, 1.0 - gamma));
    }
    return w;
}

// ------------------------------------------------------- low-distance recursion

struct GrowthSequences {
    std::int64_t t = 0;
    double R = 0, gamma = 0, c = 0;
    std::vector<std::int64_t> g;  // g[0..k_max]
    std::vector<double> alpha;    // alpha[k], index 0 unused
    std::vector<double> beta;     // beta[k], index 0 unused
    int first_degenerate = -1;    // first k with g_k < 2, or -1
    std::vector<double> eta() const {
        std::vector<double> e(g.size());
        for (std::size_t k = 0; k < g.size(); ++k) e[k] = static_cast<double>(t) / static_cast<double>(g[k]);
        return e;
    }
};

// Constant for the one-step bound: sums are compared with integrals, giving
// c = R * max(1 + 1/(g log(t/g)), 2 gamma/(2 gamma - 1)), worst case g = 1.
inline double appendix_a_constant(std::int64_t t, double R, double gamma) {
    const double lt = std::log(static_cast<double>(t));
    return R * std::max(1.0 + 1.0 / lt, 2.0 * gamma / (2.0 * gamma - 1.0));
}

inline GrowthSequences appendixA_sequences(std::int64_t t, double R, double gamma, int k_max, double c = 0.0) {
    if (t < 4) throw std::invalid_argument("t must be >= 4");
    if (!(gamma > 0.5 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (1/2,1)");
    if (!(R > 0)) throw std::invalid_argument("R must be positive");
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    GrowthSequences s;
    s.t = t;
    s.R = R;
    s.gamma = gamma;
    s.c = c > 0 ? c : appendix_a_constant(t, R, gamma);
    const double td = static_cast<double>(t);
    const double lt = std::log(td);
    s.g.assign(static_cast<std::size_t>(k_max) + 1, 0);
    s.alpha.assign(static_cast<std::size_t>(k_max) + 2, 0.0);
    s.beta.assign(static_cast<std::size_t>(k_max) + 2, 0.0);
    s.g[0] = static_cast<std::int64_t>(std::ceil(td / (lt * lt)));
    s.alpha[1] = R * std::pow(static_cast<double>(s.g[0]), gamma - 1.0);
    s.beta[1] = R * std::pow(static_cast<double>(s.g[0]), -gamma);
    for (int k = 1; k <= k_max; ++k) {
        const double rhs = 6.0 / (std::numbers::pi * std::numbers::pi * k * k * lt * lt);
        auto ok = [&](std::int64_t g) {
            return s.alpha[k] * std::pow(static_cast<double>(g), 1.0 - gamma) / (1.0 - gamma) >= rhs;
        };
        double guess = std::pow(rhs * (1.0 - gamma) / s.alpha[k], 1.0 / (1.0 - gamma));
        auto g = static_cast<std::int64_t>(std::clamp(std::ceil(guess), 1.0, td));
        while (g > 1 && ok(g - 1)) --g;
        while (g < t && !ok(g)) ++g;
        s.g[k] = g;
        if (g < 2 && s.first_degenerate < 0) s.first_degenerate = k;
        const double gk = static_cast<double>(g);
        const double lg = std::log(td / gk);
        s.alpha[k + 1] = s.c * (s.alpha[k] * lg + s.beta[k] * std::pow(td, 2.0 * gamma - 1.0));
        s.beta[k + 1] = s.c * (s.alpha[k] * std::pow(gk, 1.0 - 2.0 * gamma) + s.beta[k] * lg);
    }
    return s;
}

// alpha_k l^{-gamma} + 1{l > g_{k-1}} beta_k l^{gamma-1}
inline double f_bound(const GrowthSequences& s, int k, std::int64_t l) {
    if (k < 1 || k >= static_cast<int>(s.alpha.size()) || k - 1 >= static_cast<int>(s.g.size()))
        throw std::out_of_range("k outside computed sequences");
    const double ld = static_cast<double>(l);
    double v = s.alpha[k] * std::pow(ld, -s.gamma);
    if (l > s.g[k - 1]) v += s.beta[k] * std::pow(ld, s.gamma - 1.0);
    return v;
}

// Powers l^{-gamma} and l^{gamma-1} for l = 1..t, shared by all sources.
struct AppendixAKernel {
    std::vector<double> neg, pos;
    explicit AppendixAKernel(const GrowthSequences& s)
        : neg(static_cast<std::size_t>(s.t) + 1), pos(static_cast<std::size_t>(s.t) + 1) {
        for (std::int64_t z = 1; z <= s.t; ++z) {
            neg[z] = std::pow(static_cast<double>(z), -s.gamma);
            pos[z] = std::pow(static_cast<double>(z), s.gamma - 1.0);
        }
    }
};

// f_1..f_{k_max}(x, l) for l = 1..t (out[k-1][l-1]), by the recursion with the kernel
// p(z,w) = R min^{-gamma} max^{gamma-1}; it is separable on either side of the
// diagonal, so each step reduces to a prefix and a suffix sum.
inline void f_exact_levels(const GrowthSequences& s, const AppendixAKernel& K, std::int64_t x, int k_max,
                           std::vector<std::vector<double>>& out) {
    const std::int64_t t = s.t;
    if (x < 1 || x > t) throw std::out_of_range("x outside [1,t]");
    if (k_max < 1 || k_max > static_cast<int>(s.g.size())) throw std::out_of_range("k outside computed sequences");
    out.resize(static_cast<std::size_t>(k_max));
    auto& f1 = out[0];
    f1.assign(static_cast<std::size_t>(t), 0.0);
    if (x >= s.g[0])
        for (std::int64_t l = 1; l <= t; ++l) f1[l - 1] = x <= l ? s.R * K.neg[x] * K.pos[l] : s.R * K.neg[l] * K.pos[x];
    std::vector<long double> below(static_cast<std::size_t>(t) + 1), above(static_cast<std::size_t>(t) + 1);
    for (int step = 1; step < k_max; ++step) {
        const auto& f = out[step - 1];
        auto& nf = out[step];
        nf.assign(static_cast<std::size_t>(t), 0.0);
        const std::int64_t gk = s.g[step];
        below[0] = 0;
        for (std::int64_t z = 1; z <= t; ++z)
            below[z] = below[z - 1] + (z >= gk ? static_cast<long double>(f[z - 1]) * K.neg[z] : 0.0L);
        above[t] = 0;
        for (std::int64_t z = t; z >= 1; --z)
            above[z - 1] = above[z] + (z >= gk ? static_cast<long double>(f[z - 1]) * K.pos[z] : 0.0L);
        for (std::int64_t w = 1; w <= t; ++w)
            nf[w - 1] = static_cast<double>(s.R * (below[w] * K.pos[w] + above[w] * K.neg[w]));
    }
}

inline std::vector<double> f_exact_all(const GrowthSequences& s, std::int64_t x, int k) {
    AppendixAKernel K(s);
    std::vector<std::vector<double>> out;
    f_exact_levels(s, K, x, k, out);
    return out.back();
}

inline double f_exact(const GrowthSequences& s, std::int64_t x, std::int64_t l, int k) {
    if (l < 1 || l > s.t) throw std::out_of_range("l outside [1,t]");
    return f_exact_all(s, x, k)[l - 1];
}

struct AppendixACheck {
    std::int64_t comparisons = 0;
    std::int64_t violations = 0;
    double worst_ratio = 0.0;  // max f_exact / f_bound
};

// Exhaustive comparison over sources x in [g_0, t], targets l in [t] and depths 1..k_max.
inline AppendixACheck check_appendix_a(const GrowthSequences& s, int k_max, unsigned threads = 1,
                                       double rel_tol = 1e-12) {
    const std::int64_t t = s.t;
    std::vector<std::vector<double>> bound(static_cast<std::size_t>(k_max) + 1);
    for (int k = 1; k <= k_max; ++k) {
        bound[k].resize(static_cast<std::size_t>(t));
        for (std::int64_t l = 1; l <= t; ++l) bound[k][l - 1] = f_bound(s, k, l);
    }
    const AppendixAKernel K(s);
    threads = std::max(1u, threads);
    std::vector<AppendixACheck> part(threads);
    std::vector<std::vector<std::vector<double>>> buf(threads);
    const std::int64_t x0 = s.g[0];
    parallel_for(static_cast<std::size_t>(t - x0 + 1), threads, [&](std::size_t i, unsigned w) {
        const std::int64_t x = x0 + static_cast<std::int64_t>(i);
        f_exact_levels(s, K, x, k_max, buf[w]);
        for (int k = 1; k <= k_max; ++k) {
            const auto& f = buf[w][k - 1];
            for (std::int64_t l = 1; l <= t; ++l) {
                double b = bound[k][l - 1];
                ++part[w].comparisons;
                if (f[l - 1] > b * (1.0 + rel_tol)) ++part[w].violations;
                part[w].worst_ratio = std::max(part[w].worst_ratio, f[l - 1] / b);
            }
        }
    });
    AppendixACheck r;
    for (auto& p : part) {
        r.comparisons += p.comparisons;
        r.violations += p.violations;
        r.worst_ratio = std::max(r.worst_ratio, p.worst_ratio);
    }
    return r;
}

struct EtaCheck {
    bool holds = true;
    std::vector<double> eta;
    std::vector<double> bound;
};

// eta_k = t/g_k against exp(B loglog t kappa^{k/2})
inline EtaCheck eta_growth_check(std::int64_t t, double kappa, double B, int k_max, double R = 2.0) {
    if (!(kappa > 1)) throw std::invalid_argument("kappa must exceed 1");
    const double gamma = kappa / (1.0 + kappa);
    auto s = appendixA_sequences(t, R, gamma, k_max);
    EtaCheck r;
    r.eta = s.eta();
    const double ll = std::log(std::log(static_cast<double>(t)));
    for (int k = 0; k <= k_max; ++k) {
        r.bound.push_back(std::exp(B * ll * std::pow(kappa, k / 2.0)));
        if (r.eta[k] > r.bound[k]) r.holds = false;
    }
    return r;
}

// smallest C with eta_{k+2}^{1-gamma} <= C (eta_k^gamma + eta_{k+1}^{1-gamma} log eta_{k+1})
inline double eta_recursion_constant(const GrowthSequences& s) {
    auto e = s.eta();
    double C = 0;
    for (std::size_t k = 0; k + 2 < e.size(); ++k) {
        double rhs = std::pow(e[k], s.gamma) + std::pow(e[k + 1], 1.0 - s.gamma) * std::log(e[k + 1]);
        C = std::max(C, std::pow(e[k + 2], 1.0 - s.gamma) / rhs);
    }
    return C;
}

// ---------------------------------------------------- PAM minimally-k-connected

// Labelled directed tree: out[u] lists the targets of edges 1..m of interior vertex u.
struct PamTree {
    vertex_t root = 0;
    int k = 0;
    std::map<vertex_t, std::vector<vertex_t>> out;

    std::vector<vertex_t> vertices() const {
        std::vector<vertex_t> vs{root};
        for (const auto& [u, ch] : out) vs.insert(vs.end(), ch.begin(), ch.end());
        std::sort(vs.begin(), vs.end());
        return vs;
    }
    bool operator==(const PamTree&) const = default;
    bool operator<(const PamTree& o) const {
        return std::tie(root, k, out) < std::tie(o.root, o.k, o.out);
    }
};

// Throws std::invalid_argument when H is not admissible for PA_t with out-degree m.
inline void check_admissible(const PamTree& H, int m, std::int64_t t) {
    const std::int64_t half = t / 2, quarter = t / 4;
    if (H.k < 0) throw std::invalid_argument("k must be >= 0");
    if (H.root <= half || H.root > t) throw std::invalid_argument("root must lie in (t/2, t]");
    std::set<vertex_t> seen{H.root};
    std::vector<vertex_t> level{H.root};
    std::size_t interior = 0;
    for (int d = 0; d < H.k; ++d) {
        std::vector<vertex_t> next;
        for (auto u : level) {
            auto it = H.out.find(u);
            if (it == H.out.end() || static_cast<int>(it->second.size()) != m)
                throw std::invalid_argument("interior vertex without exactly m children");
            ++interior;
            for (auto c : it->second) {
                if (c <= quarter || c > half) throw std::invalid_argument("vertex outside (t/4, t/2]");
                if (c >= u) throw std::invalid_argument("child must be older than its parent");
                if (!seen.insert(c).second) throw std::invalid_argument("repeated vertex");
                next.push_back(c);
            }
        }
        level = std::move(next);
    }
    if (interior != H.out.size()) throw std::invalid_argument("children listed for a vertex at depth k");
}

inline double pam_mkc_probability(const PamParams& p, std::int64_t t, const PamTree& H) {
    p.validate();
    check_admissible(H, p.m, t);
    const int m = p.m;
    const double dm = p.delta / m;
    const auto verts = H.vertices();
    std::vector<char> in_h(static_cast<std::size_t>(t) + 1, 0), interior(static_cast<std::size_t>(t) + 1, 0);
    for (auto v : verts) in_h[v] = 1;
    for (const auto& [u, ch] : H.out) interior[u] = 1;

    long double lp = 0;
    for (const auto& [u, ch] : H.out)
        for (int j = 1; j <= m; ++j) lp += std::log((m + p.delta) / p.normalizer(u, j));

    std::int64_t h_before = 0, int_before = 0;
    for (std::int64_t u = verts.front(); u <= t; ++u) {
        if (!interior[u]) {
            const double base = static_cast<double>(m) * (h_before + int_before) + h_before * p.delta;
            for (int j = 1; j <= m; ++j) {
                double w = base + (in_h[u] ? j * (1.0 + dm) : 0.0);
                double q = 1.0 - w / p.normalizer(u, j);
                if (q <= 0) return 0.0;
                lp += std::log1p(-w / p.normalizer(u, j));
            }
        }
        h_before += in_h[u];
        int_before += interior[u];
    }
    return static_cast<double>(std::exp(lp));
}

// All admissible trees rooted at v of depth k.
inline std::vector<PamTree> enumerate_admissible(int m, std::int64_t t, vertex_t v, int k) {
    std::vector<PamTree> out;
    const auto half = static_cast<vertex_t>(t / 2), quarter = static_cast<vertex_t>(t / 4);
    if (v <= half || v > t) return out;
    PamTree H;
    H.root = v;
    H.k = k;
    std::set<vertex_t> used{v};
    // frontier-based recursion over (level list, position in level, child slot)
    std::function<void(std::vector<vertex_t>, std::size_t, std::vector<vertex_t>, int)> rec;
    rec = [&](std::vector<vertex_t> level, std::size_t idx, std::vector<vertex_t> next, int depth) {
        if (depth == k) {
            out.push_back(H);
            return;
        }
        if (idx == level.size()) {
            rec(next, 0, {}, depth + 1);
            return;
        }
        vertex_t u = level[idx];
        auto& ch = H.out[u];
        if (static_cast<int>(ch.size()) == m) {
            auto nx = next;
            nx.insert(nx.end(), ch.begin(), ch.end());
            rec(level, idx + 1, nx, depth);
            return;
        }
        for (vertex_t c = quarter + 1; c <= half && c < u; ++c) {
            if (used.count(c)) continue;
            used.insert(c);
            ch.push_back(c);
            rec(level, idx, next, depth);
            H.out[u].pop_back();
            used.erase(c);
        }
        if (H.out[u].empty()) H.out.erase(u);
    };
    rec({v}, 0, {}, 0);
    return out;
}

// ------------------------------------------------------------ asymptotic constants

struct AsymptoticConstants {
    Model model = Model::CM;
    double tau = 2.5;
    double d_fwd = 2;
    double c_dist = 1;
    double diam_constant = 0;
    double typ_constant = 0;

    static double round_half_up(double x) { return std::floor(x + 0.5); }
    static double loglog(double n) {
        if (!(n > std::exp(1.0))) throw std::invalid_argument("n too small for loglog n");
        return std::log(std::log(n));
    }
    int k_minus(double n, double eps) const { return static_cast<int>(round_half_up((1 - eps) * loglog(n) / std::log(d_fwd))); }
    int k_plus(double n, double eps) const { return static_cast<int>(round_half_up((1 + eps) * loglog(n) / std::log(d_fwd))); }
    int k_bar(double n, double eps) const {
        return static_cast<int>(round_half_up((1 - eps) * c_dist * loglog(n) / std::abs(std::log(tau - 2))));
    }
    static int h(double n, double B, double C) {
        if (!(n > std::exp(std::exp(1.0)))) throw std::invalid_argument("n too small for logloglog n");
        return static_cast<int>(std::ceil(B * std::log(std::log(std::log(n))) + C));
    }
};

inline AsymptoticConstants make_constants(Model model, double tau, double d_fwd) {
    if (!(tau > 2 && tau < 3)) throw std::invalid_argument("tau must lie in (2,3)");
    if (!(d_fwd >= 2)) throw std::invalid_argument("forward degree must be >= 2");
    AsymptoticConstants a;
    a.model = model;
    a.tau = tau;
    a.d_fwd = d_fwd;
    a.c_dist = model == Model::CM ? 1.0 : 2.0;
    const double lt = std::abs(std::log(tau - 2));
    a.typ_constant = 2.0 * a.c_dist / lt;
    a.diam_constant = 2.0 / std::log(d_fwd) + a.typ_constant;
    return a;
}

inline AsymptoticConstants cm_constants(double tau, std::int64_t d_min) {
    return make_constants(Model::CM, tau, static_cast<double>(d_min - 1));
}

inline AsymptoticConstants pam_constants(const PamParams& p) {
    p.validate();
    return make_constants(Model::PAM, p.tau(), static_cast<double>(p.m));
}

// Largest doubling rate gamma on a 0.01 grid with 1 - e^gamma (tau - 2 + gamma) >= 0.01.
inline double default_doubling_rate(double tau) {
    if (!(tau > 2 && tau < 3)) throw std::invalid_argument("tau must lie in (2,3)");
    double best = 0;
    for (int i = 1; i <= 100; ++i) {
        double g = i / 100.0;
        if (1.0 - std::exp(g) * (tau - 2.0 + g) >= 0.01) best = g;
    }
    if (best == 0) throw std::domain_error("no feasible doubling rate");
    return best;
}

struct HConstants {
    double B = 0, C = 0;
};

inline HConstants default_h_constants(double tau, double sigma) {
    return {1.0 / default_doubling_rate(tau), std::log(sigma / std::log(2.0))};
}

// ceil(s(m,l) m^k) with s(m,l) = m^{-1-l/(m-1)}
inline std::int64_t boundary_lower_bound(int m, int l, int k) {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    if (l < 0 || k < 0) throw std::invalid_argument("l and k must be >= 0");
    double e = static_cast<double>(k) - 1.0 - static_cast<double>(l) / (m - 1);
    double v = std::pow(static_cast<double>(m), e);
    return static_cast<std::int64_t>(std::ceil(v - 1e-9 * std::max(1.0, v)));
}

}  // namespace ultrasmall
