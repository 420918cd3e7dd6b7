#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "multigraph.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace ultrasmall {

inline constexpr std::int32_t kUnreachable = -1;

struct DistanceReport {
    vertex_t source = 0;
    std::vector<std::int32_t> distances;  // kUnreachable for other components
    std::int32_t eccentricity = 0;
};

// Plain BFS reusing caller-owned buffers; returns the eccentricity within the component.
inline std::int32_t bfs_into(const MultiGraph& g, vertex_t source, std::vector<std::int32_t>& dist,
                             std::vector<vertex_t>& queue) {
    dist.assign(static_cast<std::size_t>(g.n()), kUnreachable);
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    std::int32_t ecc = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        vertex_t u = queue[head];
        std::int32_t du = dist[u];
        ecc = du;
        g.for_each_neighbor(u, [&](vertex_t w) {
            if (dist[w] == kUnreachable) {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        });
    }
    return ecc;
}

inline DistanceReport bfs(const MultiGraph& g, vertex_t source) {
    if (source < 0 || source >= g.n()) throw std::out_of_range("source out of range");
    DistanceReport r;
    r.source = source;
    std::vector<vertex_t> q;
    r.eccentricity = bfs_into(g, source, r.distances, q);
    return r;
}

inline std::vector<std::int32_t> multi_source_bfs(const MultiGraph& g, const std::vector<vertex_t>& sources) {
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n()), kUnreachable);
    std::vector<vertex_t> q;
    for (auto s : sources) {
        if (s < 0 || s >= g.n()) throw std::out_of_range("source out of range");
        if (dist[s] != 0) {
            dist[s] = 0;
            q.push_back(s);
        }
    }
    for (std::size_t head = 0; head < q.size(); ++head) {
        vertex_t u = q[head];
        g.for_each_neighbor(u, [&](vertex_t w) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        });
    }
    return dist;
}

struct Components {
    std::vector<vertex_t> label;
    std::vector<std::int64_t> sizes;
    vertex_t largest = -1;
};

inline Components connected_components(const MultiGraph& g) {
    Components c;
    c.label.assign(static_cast<std::size_t>(g.n()), -1);
    std::vector<vertex_t> q;
    for (vertex_t s = 0; s < g.n(); ++s) {
        if (c.label[s] >= 0) continue;
        auto id = static_cast<vertex_t>(c.sizes.size());
        q.assign(1, s);
        c.label[s] = id;
        for (std::size_t h = 0; h < q.size(); ++h)
            g.for_each_neighbor(q[h], [&](vertex_t w) {
                if (c.label[w] < 0) {
                    c.label[w] = id;
                    q.push_back(w);
                }
            });
        c.sizes.push_back(static_cast<std::int64_t>(q.size()));
        if (c.largest < 0 || c.sizes[id] > c.sizes[c.largest]) c.largest = id;
    }
    return c;
}

enum class DiameterMethod { AllSources, IFub };

struct DiameterResult {
    std::int32_t diam = 0;
    double component_fraction = 0.0;
    std::int64_t bfs_count = 0;
};

namespace detail {

// Scratch for bit-parallel BFS: one bit per source, up to 64 sources per sweep.
struct BitBfsScratch {
    std::vector<std::uint64_t> visited, frontier, next;
    std::vector<vertex_t> active, fresh;
};

// Largest eccentricity among up to 64 sources, each measured inside its own component.
// Rounds push from a sparse frontier and pull into unfinished vertices once the frontier is dense.
inline std::int32_t max_ecc_batch(const MultiGraph& g, const vertex_t* src, std::size_t count, BitBfsScratch& s) {
    const auto n = static_cast<std::size_t>(g.n());
    s.visited.assign(n, 0);
    s.frontier.assign(n, 0);
    s.next.assign(n, 0);
    s.active.clear();
    const std::uint64_t full = count == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const auto v = src[i];
        if (!s.frontier[v]) s.active.push_back(v);
        s.visited[v] |= std::uint64_t{1} << i;
        s.frontier[v] |= std::uint64_t{1} << i;
    }
    std::int32_t ecc = 0;
    for (std::int32_t round = 1; !s.active.empty(); ++round) {
        s.fresh.clear();
        if (s.active.size() * 32 < n) {
            for (auto v : s.active) {
                const auto f = s.frontier[v];
                const auto first = g.first_half_edge(v);
                for (auto h = first; h < first + g.degree(v); ++h) {
                    const vertex_t w = g.owner(g.partner(h));
                    const auto add = f & ~s.visited[w];
                    if (!add) continue;
                    if (!s.next[w]) s.fresh.push_back(w);
                    s.next[w] |= add;
                }
            }
        } else {
            for (std::size_t v = 0; v < n; ++v) {
                if (s.visited[v] == full) continue;
                std::uint64_t acc = 0;
                const auto first = g.first_half_edge(static_cast<vertex_t>(v));
                for (auto h = first; h < first + g.degree(static_cast<vertex_t>(v)); ++h) acc |= s.frontier[g.owner(g.partner(h))];
                acc &= ~s.visited[v];
                if (acc) {
                    s.next[v] = acc;
                    s.fresh.push_back(static_cast<vertex_t>(v));
                }
            }
        }
        for (auto v : s.active) s.frontier[v] = 0;
        for (auto v : s.fresh) {
            s.visited[v] |= s.next[v];
            s.frontier[v] = s.next[v];
            s.next[v] = 0;
        }
        if (!s.fresh.empty()) ecc = round;
        s.active.swap(s.fresh);
    }
    return ecc;
}

inline std::int32_t max_ecc_parallel(const MultiGraph& g, const std::vector<vertex_t>& sources, unsigned threads) {
    const std::size_t batches = (sources.size() + 63) / 64;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(batches, 1))));
    std::vector<std::int32_t> best(threads, 0);
    std::vector<BitBfsScratch> scratch(threads);
    parallel_for(batches, threads, [&](std::size_t b, unsigned w) {
        const std::size_t lo = b * 64, cnt = std::min<std::size_t>(64, sources.size() - lo);
        best[w] = std::max(best[w], max_ecc_batch(g, sources.data() + lo, cnt, scratch[w]));
    });
    return *std::max_element(best.begin(), best.end());
}

}  // namespace detail

// Exact diameter of the largest connected component.
inline DiameterResult diameter(const MultiGraph& g, unsigned threads = 1,
                               DiameterMethod method = DiameterMethod::AllSources) {
    if (g.n() == 0) throw std::invalid_argument("empty graph");
    DiameterResult r;
    auto comp = connected_components(g);
    std::vector<vertex_t> members;
    members.reserve(static_cast<std::size_t>(comp.sizes[comp.largest]));
    for (vertex_t v = 0; v < g.n(); ++v)
        if (comp.label[v] == comp.largest) members.push_back(v);
    r.component_fraction = static_cast<double>(members.size()) / static_cast<double>(g.n());

    if (method == DiameterMethod::AllSources) {
        r.diam = detail::max_ecc_parallel(g, members, threads);
        r.bfs_count = static_cast<std::int64_t>(members.size());
        return r;
    }

    // iFUB from a central-ish vertex found by a double sweep through the max-degree vertex
    std::vector<std::int32_t> dist;
    std::vector<vertex_t> q;
    vertex_t hub = *std::max_element(members.begin(), members.end(),
                                     [&](vertex_t a, vertex_t b) { return g.degree(a) < g.degree(b); });
    bfs_into(g, hub, dist, q);
    vertex_t a = q.back();
    std::int32_t lb = bfs_into(g, a, dist, q);
    vertex_t b = q.back();
    std::int32_t da = lb;
    // midpoint of the a-b path as the iFUB root
    vertex_t mid = b;
    {
        std::vector<std::int32_t> db;
        std::vector<vertex_t> q2;
        bfs_into(g, b, db, q2);
        for (vertex_t v : members)
            if (dist[v] + db[v] == da && dist[v] == da / 2) {
                mid = v;
                break;
            }
    }
    r.bfs_count = 3;
    std::int32_t ecc_root = bfs_into(g, mid, dist, q);
    ++r.bfs_count;
    lb = std::max(lb, ecc_root);
    std::vector<std::vector<vertex_t>> levels(static_cast<std::size_t>(ecc_root) + 1);
    for (vertex_t v : q) levels[dist[v]].push_back(v);
    std::int32_t ub = 2 * ecc_root;
    for (std::int32_t i = ecc_root; i > 0 && ub > lb; --i) {
        std::int32_t bi = detail::max_ecc_parallel(g, levels[i], threads);
        r.bfs_count += static_cast<std::int64_t>(levels[i].size());
        lb = std::max(lb, bi);
        if (lb > 2 * (i - 1)) break;
        ub = 2 * (i - 1);
    }
    r.diam = lb;
    return r;
}

// Distances between independent uniform vertex pairs; kUnreachable when disconnected.
inline std::vector<std::int32_t> typical_distance_sample(const MultiGraph& g, std::int64_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("pairs must be >= 1");
    if (g.n() == 0) throw std::invalid_argument("empty graph");
    Rng rng(seed);
    std::vector<std::int32_t> out;
    out.reserve(static_cast<std::size_t>(pairs));
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n()), kUnreachable);
    std::vector<vertex_t> q;
    for (std::int64_t i = 0; i < pairs; ++i) {
        auto u = static_cast<vertex_t>(rng.below(static_cast<std::uint64_t>(g.n())));
        auto v = static_cast<vertex_t>(rng.below(static_cast<std::uint64_t>(g.n())));
        if (u == v) {
            out.push_back(0);
            continue;
        }
        // BFS from u, stopped once v is labelled
        for (auto x : q) dist[x] = kUnreachable;
        q.assign(1, u);
        dist[u] = 0;
        std::int32_t found = kUnreachable;
        for (std::size_t h = 0; h < q.size() && found == kUnreachable; ++h) {
            vertex_t x = q[h];
            for (auto e = g.first_half_edge(x); e < g.first_half_edge(x) + g.degree(x); ++e) {
                vertex_t w = g.owner(g.partner(e));
                if (dist[w] != kUnreachable) continue;
                dist[w] = dist[x] + 1;
                q.push_back(w);
                if (w == v) {
                    found = dist[w];
                    break;
                }
            }
        }
        out.push_back(found);
    }
    return out;
}

struct CoreSet {
    std::vector<vertex_t> members;
    double threshold = 0.0;
    double sigma = 0.0;
    std::int64_t snapshot_time = 0;
};

// Core from a degree snapshot: members have degree >= (log n)^sigma.
inline CoreSet core_from_degrees(const std::vector<std::int64_t>& degrees, std::int64_t n, double sigma,
                                 double tau, std::int64_t snapshot_time) {
    if (!(sigma > 1.0 / (3.0 - tau))) throw std::invalid_argument("sigma must exceed 1/(3-tau)");
    CoreSet c;
    c.sigma = sigma;
    c.threshold = std::pow(std::log(static_cast<double>(n)), sigma);
    c.snapshot_time = snapshot_time;
    for (std::size_t v = 0; v < degrees.size(); ++v)
        if (static_cast<double>(degrees[v]) >= c.threshold) c.members.push_back(static_cast<vertex_t>(v));
    return c;
}

inline CoreSet extract_core(const MultiGraph& g, double tau, double sigma) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(g.n()));
    for (vertex_t v = 0; v < g.n(); ++v) d[v] = g.degree(v);
    return core_from_degrees(d, g.n(), sigma, tau, g.n());
}

struct CoreDiameter {
    bool defined = false;   // false for an empty core
    bool connected = true;  // false when some core pair is in different components
    std::int32_t diam = 0;  // max finite core-to-core distance through the whole graph
};

inline CoreDiameter core_diameter(const MultiGraph& g, const CoreSet& core, unsigned threads = 1) {
    CoreDiameter r;
    if (core.members.empty()) return r;
    r.defined = true;
    threads = std::max(1u, threads);
    std::vector<std::int32_t> best(threads, 0);
    std::vector<char> disc(threads, 0);
    std::vector<std::vector<std::int32_t>> dist(threads);
    std::vector<std::vector<vertex_t>> queue(threads);
    parallel_for(core.members.size(), threads, [&](std::size_t i, unsigned w) {
        bfs_into(g, core.members[i], dist[w], queue[w]);
        for (auto c : core.members) {
            auto d = dist[w][c];
            if (d == kUnreachable) disc[w] = 1;
            else best[w] = std::max(best[w], d);
        }
    });
    r.diam = *std::max_element(best.begin(), best.end());
    r.connected = std::none_of(disc.begin(), disc.end(), [](char c) { return c != 0; });
    return r;
}

}  // namespace ultrasmall
