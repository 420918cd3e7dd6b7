#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "graph_metrics.hpp"
#include "multigraph.hpp"
#include "pam_generator.hpp"
#include "parallel.hpp"
#include "theory_bounds.hpp"

namespace ultrasmall {

// Vertex ids: CM functions use 0-based ids of the MultiGraph; PAM functions use
// labels 1..t. The undirected view of a PamGraph maps label v to id v-1.

// Exploration: every vertex closer than k has degree d_min and its edges reach
// distinct fresh vertices of degree d_min (the ball is a tree when cut at depth k).
// Induced: additionally no edge joins two vertices of the ball outside that tree.
enum class MkcRule { Exploration, Induced };

struct MkcCensus {
    int k = 0;
    std::vector<vertex_t> members;
    std::int64_t count = 0;
    std::int64_t i_k = 0;
};

// stamp-based visited marks so repeated local searches cost O(ball), not O(n)
class Marks {
public:
    explicit Marks(std::size_t n = 0) : stamp_(n, 0) {}
    void resize(std::size_t n) {
        if (stamp_.size() < n) stamp_.resize(n, 0);
    }
    void clear() {
        if (++cur_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            cur_ = 1;
        }
    }
    bool test(std::size_t i) const { return stamp_[i] == cur_; }
    void set(std::size_t i) { stamp_[i] = cur_; }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t cur_ = 0;
};

struct CmBallScratch {
    Marks mark;
    struct Item {
        vertex_t v;
        half_edge_t in;
        int depth;
    };
    std::vector<Item> ball;
};

inline bool cm_is_mkc(const MultiGraph& g, vertex_t v, std::int64_t d_min, int k, MkcRule rule,
                      CmBallScratch& s) {
    if (g.degree(v) != d_min) return false;
    s.mark.resize(static_cast<std::size_t>(g.n()));
    s.mark.clear();
    s.ball.assign(1, {v, -1, 0});
    s.mark.set(v);
    for (std::size_t i = 0; i < s.ball.size(); ++i) {
        const auto it = s.ball[i];
        const auto first = g.first_half_edge(it.v);
        for (auto h = first; h < first + g.degree(it.v); ++h) {
            if (h == it.in) continue;
            const auto ph = g.partner(h);
            const vertex_t w = g.owner(ph);
            if (it.depth == k) {
                if (rule == MkcRule::Induced && s.mark.test(w)) return false;
                continue;
            }
            if (s.mark.test(w) || g.degree(w) != d_min) return false;
            s.mark.set(w);
            s.ball.push_back({w, ph, it.depth + 1});
        }
    }
    return true;
}

inline MkcCensus census_mkc(const MultiGraph& g, std::int64_t d_min, int k, MkcRule rule = MkcRule::Exploration,
                            unsigned threads = 1) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    MkcCensus c;
    c.k = k;
    c.i_k = i_k_cm(d_min, k);
    threads = std::max(1u, threads);
    std::vector<char> is(static_cast<std::size_t>(g.n()), 0);
    std::vector<CmBallScratch> scratch(threads);
    parallel_for(static_cast<std::size_t>(g.n()), threads, [&](std::size_t v, unsigned w) {
        is[v] = cm_is_mkc(g, static_cast<vertex_t>(v), d_min, k, rule, scratch[w]);
    });
    for (vertex_t v = 0; v < g.n(); ++v)
        if (is[v]) c.members.push_back(v);
    c.count = static_cast<std::int64_t>(c.members.size());
    return c;
}

// vertices at distance <= k from v (ids), BFS order
inline std::vector<vertex_t> ball(const MultiGraph& g, vertex_t v, int k) {
    std::vector<vertex_t> out{v};
    std::vector<int> depth{0};
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    seen[v] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (depth[i] == k) continue;
        g.for_each_neighbor(out[i], [&](vertex_t w) {
            if (!seen[w]) {
                seen[w] = 1;
                out.push_back(w);
                depth.push_back(depth[i] + 1);
            }
        });
    }
    return out;
}

// PAM membership uses final degrees D_t, age windows and the induced ball being a tree.
inline bool pam_is_mkc(const PamGraph& pg, const MultiGraph& view, const std::vector<std::int64_t>& deg_t, vertex_t v,
                       int k) {
    const std::int64_t t = pg.t(), half = t / 2, quarter = t / 4;
    const int m = pg.m();
    if (v <= half || v > t || deg_t[v - 1] != m) return false;
    auto b = ball(view, v - 1, k);
    std::vector<char> in(static_cast<std::size_t>(view.n()), 0);
    for (auto x : b) in[x] = 1;
    std::int64_t inner_half_edges = 0;
    for (auto x : b) {
        const vertex_t lab = x + 1;
        if (lab != v && (lab <= quarter || lab > half || deg_t[x] != m + 1)) return false;
        view.for_each_neighbor(x, [&](vertex_t w) { inner_half_edges += in[w]; });
    }
    return inner_half_edges == 2 * (static_cast<std::int64_t>(b.size()) - 1);
}

inline MkcCensus census_mkc(const PamGraph& pg, int k, unsigned threads = 1) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    MkcCensus c;
    c.k = k;
    c.i_k = pg.m() >= 1 ? i_k_pam(pg.m(), k) : 0;
    auto view = pg.undirected_view();
    auto deg = pg.degrees_at(pg.t());
    const std::int64_t half = pg.t() / 2;
    const auto cnt = static_cast<std::size_t>(pg.t() - half);
    std::vector<char> is(cnt, 0);
    parallel_for(cnt, std::max(1u, threads), [&](std::size_t i, unsigned) {
        is[i] = pam_is_mkc(pg, view, deg, static_cast<vertex_t>(half + 1 + static_cast<std::int64_t>(i)), k);
    });
    for (std::size_t i = 0; i < cnt; ++i)
        if (is[i]) c.members.push_back(static_cast<vertex_t>(half + 1 + static_cast<std::int64_t>(i)));
    c.count = static_cast<std::int64_t>(c.members.size());
    return c;
}

// The realized labelled tree U_{<=k}(v) of a PAM member.
inline PamTree pam_member_tree(const PamGraph& pg, vertex_t v, int k) {
    PamTree H;
    H.root = v;
    H.k = k;
    std::vector<vertex_t> level{v};
    for (int d = 0; d < k; ++d) {
        std::vector<vertex_t> next;
        for (auto u : level) {
            auto& ch = H.out[u];
            for (int j = 1; j <= pg.m(); ++j) {
                ch.push_back(pg.xi(u, j));
                next.push_back(pg.xi(u, j));
            }
        }
        level = std::move(next);
    }
    return H;
}

// ----------------------------------------------------------------- exploration

struct Collision {
    int level = 0;          // level the colliding edge would have created
    vertex_t vertex = 0;    // vertex hit by the edge
    std::int64_t step = 0;  // 1-based index of the explored edge
};

struct ExplorationGraph {
    vertex_t root = 0;
    int depth = 0;
    std::vector<std::vector<vertex_t>> levels;
    std::vector<Collision> collisions;
    std::vector<std::int64_t> level_collisions;  // l_i for i = 1..depth (index i-1)
    std::vector<vertex_t> boundary;
    bool hit_core = false;
    int core_level = -1;
    std::int64_t core_step = -1;
    std::int64_t collisions_before_core = 0;
    std::int64_t steps = 0;
    bool has_all_self_loop_vertex = false;
};

struct CmExploreScratch {
    Marks vmark, hmark;
};

// Post-hoc exploration on a realized CM graph: the root uses its first d_min slots,
// every later vertex its first d_min-1 slots that are not yet used; a slot is used
// once it or its partner has been explored. in_core is indexed by vertex id (may be empty).
inline ExplorationGraph explore_cm(const MultiGraph& g, vertex_t root, int k, std::int64_t d_min,
                                   const std::vector<char>& in_core, CmExploreScratch& s) {
    if (root < 0 || root >= g.n()) throw std::out_of_range("root out of range");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    s.vmark.resize(static_cast<std::size_t>(g.n()));
    s.hmark.resize(static_cast<std::size_t>(g.num_half_edges()));
    s.vmark.clear();
    s.hmark.clear();
    ExplorationGraph e;
    e.root = root;
    e.depth = k;
    e.levels.push_back({root});
    s.vmark.set(root);
    auto core = [&](vertex_t v) { return !in_core.empty() && in_core[v]; };
    if (core(root)) {
        e.hit_core = true;
        e.core_level = 0;
        e.core_step = 0;
    }
    for (int lev = 0; lev < k; ++lev) {
        std::vector<vertex_t> next;
        std::int64_t lc = 0;
        for (auto x : e.levels[lev]) {
            const auto first = g.first_half_edge(x);
            const auto deg = g.degree(x);
            const auto limit = lev == 0 ? std::min<std::int64_t>(d_min, deg) : deg;
            std::int64_t quota = lev == 0 ? d_min : d_min - 1;
            for (std::int64_t slot = 0; slot < limit && quota > 0; ++slot) {
                const auto h = first + slot;
                if (s.hmark.test(static_cast<std::size_t>(h))) continue;
                --quota;
                const auto p = g.partner(h);
                s.hmark.set(static_cast<std::size_t>(h));
                s.hmark.set(static_cast<std::size_t>(p));
                const vertex_t w = g.owner(p);
                ++e.steps;
                if (s.vmark.test(w)) {
                    e.collisions.push_back({lev + 1, w, e.steps});
                    ++lc;
                    if (!e.hit_core) ++e.collisions_before_core;
                    continue;
                }
                s.vmark.set(w);
                next.push_back(w);
                if (!e.hit_core && core(w)) {
                    e.hit_core = true;
                    e.core_level = lev + 1;
                    e.core_step = e.steps;
                }
            }
        }
        e.level_collisions.push_back(lc);
        e.levels.push_back(std::move(next));
    }
    e.boundary = e.levels.back();
    return e;
}

inline ExplorationGraph explore_cm(const MultiGraph& g, vertex_t root, int k, std::int64_t d_min,
                                   const std::vector<char>& in_core = {}) {
    CmExploreScratch s;
    return explore_cm(g, root, k, d_min, in_core, s);
}

// PAM exploration along out-edges 1..m; levels and collisions carry labels.
// in_core is indexed by label-1 (may be empty).
inline ExplorationGraph explore_pam(const PamGraph& pg, vertex_t root, int k, const std::vector<char>& in_core,
                                    Marks& mark) {
    if (root < 1 || root > pg.t()) throw std::out_of_range("root out of range");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    mark.resize(static_cast<std::size_t>(pg.t()) + 1);
    mark.clear();
    ExplorationGraph e;
    e.root = root;
    e.depth = k;
    e.levels.push_back({root});
    mark.set(root);
    auto core = [&](vertex_t v) { return !in_core.empty() && in_core[v - 1]; };
    auto all_self = [&](vertex_t v) {
        for (int j = 1; j <= pg.m(); ++j)
            if (pg.xi(v, j) != v) return false;
        return true;
    };
    if (core(root)) {
        e.hit_core = true;
        e.core_level = 0;
        e.core_step = 0;
    }
    e.has_all_self_loop_vertex = all_self(root);
    for (int lev = 0; lev < k; ++lev) {
        std::vector<vertex_t> next;
        std::int64_t lc = 0;
        for (auto x : e.levels[lev]) {
            for (int j = 1; j <= pg.m(); ++j) {
                const vertex_t w = pg.xi(x, j);
                ++e.steps;
                if (mark.test(w)) {
                    e.collisions.push_back({lev + 1, w, e.steps});
                    ++lc;
                    if (!e.hit_core) ++e.collisions_before_core;
                    continue;
                }
                mark.set(w);
                next.push_back(w);
                if (all_self(w)) e.has_all_self_loop_vertex = true;
                if (!e.hit_core && core(w)) {
                    e.hit_core = true;
                    e.core_level = lev + 1;
                    e.core_step = e.steps;
                }
            }
        }
        e.level_collisions.push_back(lc);
        e.levels.push_back(std::move(next));
    }
    e.boundary = e.levels.back();
    return e;
}

inline ExplorationGraph explore_pam(const PamGraph& pg, vertex_t root, int k, const std::vector<char>& in_core = {}) {
    Marks mark;
    return explore_pam(pg, root, k, in_core, mark);
}

// ----------------------------------------------------------------- core helpers

// PAM core: labels v <= t/2 with D_{t/2}(v) >= (log t)^sigma; members are ids (label-1).
inline CoreSet extract_core_pam(const PamGraph& pg, double sigma) {
    const std::int64_t half = pg.t() / 2;
    auto d = pg.degrees_at(half);
    return core_from_degrees(d, pg.t(), sigma, pg.params().tau(), half);
}

inline std::vector<char> core_mask(const CoreSet& core, std::int64_t n) {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (auto v : core.members) mask[v] = 1;
    return mask;
}

struct CoreDistance {
    std::vector<std::int32_t> dist;  // kUnreachable when no path to the core
    std::int32_t max = 0;
    std::int64_t unreachable = 0;
};

inline CoreDistance distance_to_core(const MultiGraph& g, const CoreSet& core) {
    if (core.members.empty()) throw std::invalid_argument("empty core");
    CoreDistance r;
    r.dist = multi_source_bfs(g, core.members);
    for (auto d : r.dist) {
        if (d == kUnreachable) ++r.unreachable;
        else r.max = std::max(r.max, d);
    }
    return r;
}

// boundary vertices within distance h of the core
inline std::int64_t count_successes(const std::vector<vertex_t>& boundary_ids, const std::vector<std::int32_t>& core_dist,
                                    std::int32_t h) {
    std::int64_t c = 0;
    for (auto x : boundary_ids)
        if (core_dist[x] != kUnreachable && core_dist[x] <= h) ++c;
    return c;
}

// ----------------------------------------------------------------- t-connectors

struct ConnectorQuery {
    std::vector<vertex_t> A;
    vertex_t i = 0;
    std::vector<vertex_t> connectors;
};

inline ConnectorQuery find_connectors(const PamGraph& pg, const std::vector<vertex_t>& A, vertex_t i) {
    const std::int64_t t = pg.t(), half = t / 2;
    std::vector<char> inA(static_cast<std::size_t>(t) + 1, 0);
    for (auto a : A) {
        if (a < 1 || a > half) throw std::invalid_argument("A must be a subset of [t/2]");
        inA[a] = 1;
    }
    if (i < 1 || i > half || inA[i]) throw std::invalid_argument("i must lie in [t/2] \\ A");
    ConnectorQuery q;
    q.A = A;
    q.i = i;
    if (A.empty()) return q;
    for (std::int64_t j = half + 1; j <= t; ++j) {
        bool hitA = false, hitI = false;
        for (int e = 1; e <= pg.m(); ++e) {
            auto x = pg.xi(j, e);
            hitA = hitA || inA[x];
            hitI = hitI || x == i;
        }
        if (hitA && hitI) q.connectors.push_back(static_cast<vertex_t>(j));
    }
    return q;
}

// ----------------------------------------------------------- degree growth control

struct DegreeGrowthReport {
    double threshold = 0;
    std::int64_t outside_core = 0;  // vertices in [t/2] with D_{t/2} below threshold
    std::int64_t violations = 0;    // of those, with D_t >= (1+B) threshold
    std::int64_t max_final_degree_outside_core = 0;
};

inline DegreeGrowthReport degree_growth(const PamGraph& pg, double sigma, double B) {
    const std::int64_t t = pg.t(), half = t / 2;
    DegreeGrowthReport r;
    r.threshold = std::pow(std::log(static_cast<double>(t)), sigma);
    auto dh = pg.degrees_at(half);
    auto dt = pg.degrees_at(t);
    for (std::int64_t v = 0; v < half; ++v) {
        if (static_cast<double>(dh[v]) >= r.threshold) continue;
        ++r.outside_core;
        r.max_final_degree_outside_core = std::max(r.max_final_degree_outside_core, dt[v]);
        if (static_cast<double>(dt[v]) >= (1.0 + B) * r.threshold) ++r.violations;
    }
    return r;
}

}  // namespace ultrasmall
