#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multigraph.hpp"
#include "rng.hpp"

namespace ultrasmall {

struct PamParams {
    int m = 2;
    double delta = 0.0;

    void validate() const {
        if (m < 1) throw std::invalid_argument("m must be >= 1");
        if (!(delta > -m)) throw std::invalid_argument("delta must exceed -m");
    }
    double tau() const { return 3.0 + delta / m; }
    double gamma() const { return m / (2.0 * m + delta); }
    // normalizer of the attachment law for edge j of vertex t
    double normalizer(std::int64_t t, int j) const {
        return (static_cast<double>(m) * (t - 1) + (j - 1)) * (2.0 + delta / m) + 1.0 + delta / m;
    }
};

// Fenwick tree over doubles with prefix search.
class FenwickTree {
public:
    explicit FenwickTree(std::size_t n = 0) : tree_(n + 1, 0.0) {
        step_ = 1;
        while (step_ * 2 <= n) step_ *= 2;
    }
    void add(std::size_t i, double w) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += w;
    }
    double total() const { return total_prefix(tree_.size() - 1); }
    // smallest index i with prefix(i) > x
    std::size_t search(double x) const {
        std::size_t pos = 0;
        for (std::size_t s = step_; s > 0; s >>= 1) {
            if (pos + s < tree_.size() && tree_[pos + s] <= x) {
                pos += s;
                x -= tree_[pos];
            }
        }
        return pos;
    }

private:
    double total_prefix(std::size_t i) const {
        double s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }
    std::vector<double> tree_;
    std::size_t step_ = 1;
};

// Vertex labels are 1..t. xi(w, j) is the target of the j-th edge of w.
class PamGraph {
public:
    PamGraph() = default;
    PamGraph(PamParams params, std::int64_t t, std::vector<vertex_t> targets)
        : p_(params), t_(t), xi_(std::move(targets)) {
        p_.validate();
        if (static_cast<std::int64_t>(xi_.size()) != t_ * p_.m) throw std::invalid_argument("xi size mismatch");
        for (std::int64_t w = 1; w <= t_; ++w)
            for (int j = 1; j <= p_.m; ++j) {
                auto x = xi(w, j);
                if (x < 1 || x > w) throw std::invalid_argument("xi(w,j) must lie in [1,w]");
            }
    }

    const PamParams& params() const { return p_; }
    int m() const { return p_.m; }
    std::int64_t t() const { return t_; }
    vertex_t xi(std::int64_t w, int j) const { return xi_[static_cast<std::size_t>((w - 1) * p_.m + (j - 1))]; }
    const std::vector<vertex_t>& xi_array() const { return xi_; }

    // D_{s,j}(v): degree of v after the j-th edge of vertex s
    std::int64_t degree_at(vertex_t v, std::int64_t s, int j) const {
        if (v < 1 || s > t_ || v > s) throw std::invalid_argument("degree_at needs 1 <= v <= s <= t");
        if (j < 0 || j > p_.m) throw std::invalid_argument("edge index out of range");
        std::int64_t d = 0;
        for (std::int64_t w = v; w <= s; ++w) {
            int jmax = (w == s) ? j : p_.m;
            for (int i = 1; i <= jmax; ++i) d += (xi(w, i) == v) + (w == v);
        }
        return d;
    }

    // D_s(v) for all v (index v-1), after all edges of vertex s
    std::vector<std::int64_t> degrees_at(std::int64_t s) const {
        if (s < 0 || s > t_) throw std::invalid_argument("time out of range");
        std::vector<std::int64_t> d(static_cast<std::size_t>(t_), 0);
        for (std::int64_t w = 1; w <= s; ++w)
            for (int i = 1; i <= p_.m; ++i) {
                ++d[xi(w, i) - 1];
                ++d[w - 1];
            }
        return d;
    }

    MultiGraph undirected_view() const {
        std::vector<std::pair<vertex_t, vertex_t>> edges;
        edges.reserve(xi_.size());
        for (std::int64_t w = 1; w <= t_; ++w)
            for (int j = 1; j <= p_.m; ++j) edges.emplace_back(static_cast<vertex_t>(w - 1), xi(w, j) - 1);
        return MultiGraph::from_edges(static_cast<vertex_t>(t_), edges);
    }

private:
    PamParams p_;
    std::int64_t t_ = 0;
    std::vector<vertex_t> xi_;
};

struct PamOptions {
    bool check_normalization = false;
};

inline PamGraph generate_pam(const PamParams& p, std::int64_t t, std::uint64_t seed, PamOptions opt = {}) {
    p.validate();
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    Rng rng(seed);
    const int m = p.m;
    const double dm = p.delta / m;
    std::vector<vertex_t> xi(static_cast<std::size_t>(t * m));
    std::vector<std::int64_t> deg(static_cast<std::size_t>(t), 0);
    FenwickTree fw(static_cast<std::size_t>(t));
    for (std::int64_t s = 1; s <= t; ++s) {
        for (int j = 1; j <= m; ++j) {
            const double w_new = static_cast<double>(deg[s - 1]) + 1.0 + j * dm;
            const double old_total = fw.total();
            const double total = old_total + w_new;
            if (opt.check_normalization) {
                double c = p.normalizer(s, j);
                if (std::abs(total - c) > 1e-12 * std::max(1.0, c))
                    throw std::logic_error("attachment probabilities do not sum to one");
            }
            double x = rng.uniform() * total;
            vertex_t target;
            if (x < w_new || s == 1) {
                target = static_cast<vertex_t>(s);
            } else {
                auto idx = fw.search(x - w_new);
                if (idx >= static_cast<std::size_t>(s - 1)) idx = static_cast<std::size_t>(s - 2);
                target = static_cast<vertex_t>(idx + 1);
            }
            xi[static_cast<std::size_t>((s - 1) * m + (j - 1))] = target;
            deg[s - 1] += 1;
            deg[target - 1] += 1;
            if (target != s) fw.add(static_cast<std::size_t>(target - 1), 1.0);
        }
        fw.add(static_cast<std::size_t>(s - 1), static_cast<double>(deg[s - 1]) + p.delta);
    }
    return PamGraph(p, t, std::move(xi));
}

inline void write_pam(std::ostream& out, const PamGraph& g) {
    out.precision(17);
    out << "# pam m " << g.m() << " delta " << g.params().delta << " t " << g.t() << '\n';
    for (std::int64_t w = 1; w <= g.t(); ++w)
        for (int j = 1; j <= g.m(); ++j) out << w << ' ' << j << ' ' << g.xi(w, j) << '\n';
}

inline PamGraph read_pam(std::istream& in) {
    PamParams p;
    std::int64_t t = -1;
    std::vector<vertex_t> xi;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == '#') {
            std::istringstream hs(line.substr(b + 1));
            std::string tag, k1, k2, k3;
            if (hs >> tag && tag == "pam" && hs >> k1 >> p.m >> k2 >> p.delta >> k3 >> t) {
                header = true;
                xi.assign(static_cast<std::size_t>(t * p.m), 0);
            }
            continue;
        }
        if (!header) throw std::runtime_error("missing '# pam' header");
        std::istringstream ls(line);
        std::int64_t w;
        int j;
        long long x;
        if (!(ls >> w >> j >> x) || w < 1 || w > t || j < 1 || j > p.m) throw std::runtime_error("malformed triple: " + line);
        xi[static_cast<std::size_t>((w - 1) * p.m + (j - 1))] = static_cast<vertex_t>(x);
    }
    if (!header) throw std::runtime_error("missing '# pam' header");
    return PamGraph(p, t, std::move(xi));
}

inline PamGraph read_pam(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_pam(in);
}

}  // namespace ultrasmall
