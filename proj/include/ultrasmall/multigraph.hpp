#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ultrasmall {

using vertex_t = std::int32_t;
using half_edge_t = std::int64_t;

// Undirected multigraph stored by half-edges. Half-edges of vertex v occupy
// [offsets[v], offsets[v+1]) in slot order; a self-loop uses two slots of v.
class MultiGraph {
public:
    MultiGraph() = default;

    // partner must be a fixed-point-free involution on [0, offsets.back())
    MultiGraph(std::vector<half_edge_t> offsets, std::vector<half_edge_t> partner)
        : offsets_(std::move(offsets)), partner_(std::move(partner)) {
        if (offsets_.empty()) offsets_.push_back(0);
        if (static_cast<half_edge_t>(partner_.size()) != offsets_.back())
            throw std::invalid_argument("partner size does not match degree total");
        owner_.resize(partner_.size());
        for (vertex_t v = 0; v < n(); ++v)
            for (auto h = offsets_[v]; h < offsets_[v + 1]; ++h) owner_[h] = v;
        for (half_edge_t h = 0; h < static_cast<half_edge_t>(partner_.size()); ++h) {
            auto p = partner_[h];
            if (p < 0 || p >= static_cast<half_edge_t>(partner_.size()) || p == h || partner_[p] != h)
                throw std::invalid_argument("partner is not a perfect matching");
        }
    }

    static MultiGraph from_edges(vertex_t n, const std::vector<std::pair<vertex_t, vertex_t>>& edges) {
        std::vector<half_edge_t> deg(static_cast<std::size_t>(n) + 1, 0);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
            ++deg[u];
            ++deg[v];
        }
        std::vector<half_edge_t> off(static_cast<std::size_t>(n) + 1, 0);
        for (vertex_t v = 0; v < n; ++v) off[v + 1] = off[v] + deg[v];
        std::vector<half_edge_t> fill(off.begin(), off.end() - 1);
        std::vector<half_edge_t> partner(static_cast<std::size_t>(off.back()));
        for (auto [u, v] : edges) {
            auto a = fill[u]++;
            auto b = fill[v]++;
            partner[a] = b;
            partner[b] = a;
        }
        return MultiGraph(std::move(off), std::move(partner));
    }

    vertex_t n() const { return static_cast<vertex_t>(offsets_.size() - 1); }
    half_edge_t num_half_edges() const { return offsets_.back(); }
    half_edge_t num_edges() const { return offsets_.back() / 2; }
    std::int64_t degree(vertex_t v) const { return offsets_[v + 1] - offsets_[v]; }
    half_edge_t first_half_edge(vertex_t v) const { return offsets_[v]; }
    half_edge_t partner(half_edge_t h) const { return partner_[h]; }
    vertex_t owner(half_edge_t h) const { return owner_[h]; }
    // neighbour reached through slot s of v
    vertex_t neighbor(vertex_t v, std::int64_t slot) const { return owner_[partner_[offsets_[v] + slot]]; }

    template <class Fn>
    void for_each_neighbor(vertex_t v, Fn&& fn) const {
        for (auto h = offsets_[v]; h < offsets_[v + 1]; ++h) fn(owner_[partner_[h]]);
    }

    std::vector<std::pair<vertex_t, vertex_t>> edges() const {
        std::vector<std::pair<vertex_t, vertex_t>> out;
        out.reserve(static_cast<std::size_t>(num_edges()));
        for (half_edge_t h = 0; h < num_half_edges(); ++h)
            if (h < partner_[h]) out.emplace_back(owner_[h], owner_[partner_[h]]);
        return out;
    }

    std::int64_t self_loops() const {
        std::int64_t c = 0;
        for (half_edge_t h = 0; h < num_half_edges(); ++h)
            if (h < partner_[h] && owner_[h] == owner_[partner_[h]]) ++c;
        return c;
    }

    const std::vector<half_edge_t>& offsets() const { return offsets_; }
    const std::vector<half_edge_t>& partners() const { return partner_; }

private:
    std::vector<half_edge_t> offsets_{0};
    std::vector<half_edge_t> partner_;
    std::vector<vertex_t> owner_;
};

// Edge list text: optional "# n N" header, then one "u v" per line, 1-based.
inline void write_edge_list(std::ostream& out, const MultiGraph& g) {
    out << "# n " << g.n() << '\n';
    for (auto [u, v] : g.edges()) out << (u + 1) << ' ' << (v + 1) << '\n';
}

inline MultiGraph read_edge_list(std::istream& in) {
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    long long n = -1;
    long long maxid = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == '#') {
            std::istringstream hs(line.substr(b + 1));
            std::string key;
            long long val;
            if (hs >> key >> val && key == "n") n = val;
            continue;
        }
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v) || u < 1 || v < 1) throw std::runtime_error("malformed edge line: " + line);
        maxid = std::max({maxid, u, v});
        edges.emplace_back(static_cast<vertex_t>(u - 1), static_cast<vertex_t>(v - 1));
    }
    if (n < maxid) n = maxid;
    return MultiGraph::from_edges(static_cast<vertex_t>(n), edges);
}

inline MultiGraph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

}  // namespace ultrasmall
