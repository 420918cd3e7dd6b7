#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "degree_sequence.hpp"
#include "multigraph.hpp"
#include "rng.hpp"

namespace ultrasmall {

struct HalfEdge {
    vertex_t vertex = 0;
    std::int64_t slot = 0;
    bool operator==(const HalfEdge&) const = default;
};

// Incremental uniform pairing. Unpaired half-edges live in a compact array with
// a position index so both removal and uniform selection are O(1).
class PairingState {
public:
    PairingState(const DegreeSequence& seq, std::uint64_t seed) : rng_(seed) {
        offsets_.assign(static_cast<std::size_t>(seq.n()) + 1, 0);
        for (std::int64_t v = 0; v < seq.n(); ++v) offsets_[v + 1] = offsets_[v] + seq[v];
        const auto ell = offsets_.back();
        partner_.assign(static_cast<std::size_t>(ell), -1);
        unpaired_.resize(static_cast<std::size_t>(ell));
        pos_.resize(static_cast<std::size_t>(ell));
        for (half_edge_t h = 0; h < ell; ++h) unpaired_[h] = pos_[h] = h;
    }

    half_edge_t id(const HalfEdge& e) const {
        if (e.vertex < 0 || e.vertex + 1 >= static_cast<vertex_t>(offsets_.size()))
            throw std::invalid_argument("vertex out of range");
        if (e.slot < 0 || e.slot >= offsets_[e.vertex + 1] - offsets_[e.vertex])
            throw std::invalid_argument("slot out of range");
        return offsets_[e.vertex] + e.slot;
    }
    HalfEdge half_edge(half_edge_t h) const {
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), h);
        auto v = static_cast<vertex_t>(it - offsets_.begin() - 1);
        return {v, h - offsets_[v]};
    }

    bool is_paired(half_edge_t h) const { return partner_[h] >= 0; }
    std::size_t unpaired_count() const { return unpaired_.size(); }
    const std::vector<half_edge_t>& unpaired() const { return unpaired_; }
    half_edge_t partner(half_edge_t h) const { return partner_[h]; }
    bool complete() const { return unpaired_.empty(); }

    // pairs chosen with a uniform unpaired half-edge other than itself
    HalfEdge pair_next(const HalfEdge& chosen) { return half_edge(pair_next(id(chosen))); }

    half_edge_t pair_next(half_edge_t chosen) {
        check_unpaired(chosen);
        remove(chosen);
        if (unpaired_.empty()) throw std::logic_error("no half-edge left to pair with");
        auto partner = unpaired_[rng_.below(unpaired_.size())];
        remove(partner);
        partner_[chosen] = partner;
        partner_[partner] = chosen;
        return partner;
    }

    // deterministic pairing step, used by enumeration drivers
    void pair_with(half_edge_t chosen, half_edge_t partner) {
        check_unpaired(chosen);
        check_unpaired(partner);
        if (chosen == partner) throw std::invalid_argument("cannot pair a half-edge with itself");
        remove(chosen);
        remove(partner);
        partner_[chosen] = partner;
        partner_[partner] = chosen;
    }

    MultiGraph to_graph() const {
        if (!complete()) throw std::logic_error("pairing incomplete");
        return MultiGraph(offsets_, partner_);
    }

private:
    void check_unpaired(half_edge_t h) const {
        if (h < 0 || h >= static_cast<half_edge_t>(partner_.size())) throw std::invalid_argument("half-edge out of range");
        if (partner_[h] >= 0) throw std::invalid_argument("half-edge already paired");
    }
    void remove(half_edge_t h) {
        auto p = pos_[h];
        auto last = unpaired_.back();
        unpaired_[p] = last;
        pos_[last] = p;
        unpaired_.pop_back();
    }

    Rng rng_;
    std::vector<half_edge_t> offsets_;
    std::vector<half_edge_t> partner_;
    std::vector<half_edge_t> unpaired_;
    std::vector<half_edge_t> pos_;
};

inline MultiGraph generate_cm(const DegreeSequence& seq, std::uint64_t seed) {
    if (seq.ell() % 2 != 0) throw std::invalid_argument("total degree is odd; configuration model needs an even total");
    PairingState st(seq, seed);
    while (!st.complete()) st.pair_next(st.unpaired().back());
    return st.to_graph();
}

}  // namespace ultrasmall
