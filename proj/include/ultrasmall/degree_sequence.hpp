#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace ultrasmall {

struct PowerLawSpec {
    double tau = 2.5;
    std::int64_t d_min = 3;
    std::int64_t n = 0;

    void validate() const {
        if (!(tau > 2.0 && tau < 3.0)) throw std::invalid_argument("tau must lie in (2,3)");
        if (d_min < 1) throw std::invalid_argument("d_min must be >= 1");
        if (n < 0) throw std::invalid_argument("n must be >= 0");
    }

    // F(x) = 1 - (d_min/(x+1))^{tau-1} for x >= d_min, 0 below
    double cdf(double x) const {
        if (x < static_cast<double>(d_min)) return 0.0;
        return 1.0 - std::pow(static_cast<double>(d_min) / (x + 1.0), tau - 1.0);
    }
};

class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<std::int64_t> degrees) : d_(std::move(degrees)) {
        for (auto d : d_)
            if (d < 1) throw std::invalid_argument("degrees must be positive");
        for (auto d : d_) {
            ell_ += d;
            ++hist_[d];
        }
    }

    const std::vector<std::int64_t>& degrees() const { return d_; }
    std::int64_t operator[](std::size_t i) const { return d_[i]; }
    std::int64_t n() const { return static_cast<std::int64_t>(d_.size()); }
    std::int64_t ell() const { return ell_; }
    bool empty() const { return d_.empty(); }
    const std::map<std::int64_t, std::int64_t>& histogram() const { return hist_; }

    std::int64_t count_of(std::int64_t k) const {
        auto it = hist_.find(k);
        return it == hist_.end() ? 0 : it->second;
    }
    std::int64_t min_degree() const { return hist_.empty() ? 0 : hist_.begin()->first; }
    std::int64_t max_degree() const { return hist_.empty() ? 0 : hist_.rbegin()->first; }
    double mean() const { return d_.empty() ? 0.0 : static_cast<double>(ell_) / static_cast<double>(d_.size()); }

    // empirical distribution function F_{d,n}(x) = (1/n) #{i : d_i <= x}
    double empirical_cdf(double x) const {
        if (d_.empty()) return 0.0;
        std::int64_t c = 0;
        for (const auto& [k, cnt] : hist_) {
            if (static_cast<double>(k) > x) break;
            c += cnt;
        }
        return static_cast<double>(c) / static_cast<double>(d_.size());
    }

private:
    std::vector<std::int64_t> d_;
    std::int64_t ell_ = 0;
    std::map<std::int64_t, std::int64_t> hist_;
};

inline DegreeSequence sample_iid_powerlaw(const PowerLawSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    std::vector<std::int64_t> out(static_cast<std::size_t>(spec.n));
    const double inv = 1.0 / (spec.tau - 1.0);
    const double cap = 9.0e18;
    for (auto& d : out) {
        double u = rng.uniform_open();
        double x = std::ceil(static_cast<double>(spec.d_min) * std::pow(u, -inv) - 1.0);
        if (x > cap) x = cap;
        d = std::max<std::int64_t>(spec.d_min, static_cast<std::int64_t>(x));
    }
    return DegreeSequence(std::move(out));
}

inline DegreeSequence quantile_sequence(const PowerLawSpec& spec) {
    spec.validate();
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(spec.n));
    const double n = static_cast<double>(spec.n);
    std::int64_t prev = 0;  // ceil(n F(d_min - 1)) = 0
    for (std::int64_t k = spec.d_min; static_cast<std::int64_t>(out.size()) < spec.n; ++k) {
        auto cur = static_cast<std::int64_t>(std::ceil(n * spec.cdf(static_cast<double>(k))));
        cur = std::min(cur, spec.n);
        for (std::int64_t i = prev; i < cur; ++i) out.push_back(k);
        prev = std::max(prev, cur);
    }
    return DegreeSequence(std::move(out));
}

struct PolynomialReport {
    double c1_hat = 0.0;
    double c2_hat = 0.0;
    bool holds_lower = false;
    bool holds_upper = false;
    double alpha = 0.0;
};

// Finite-n diagnostic for 1-F(x) >= c1 x^{-(tau-1+delta)} on x <= n^alpha and
// 1-F(x) <= c2 x^{-(tau-1-delta)} on x >= 1. The tail is a step function, so the
// infimum on [k,k+1) sits at x=k and the supremum is approached as x -> k+1.
inline PolynomialReport check_polynomial_condition(const DegreeSequence& seq, double tau, double delta) {
    if (seq.empty()) throw std::invalid_argument("empty degree sequence");
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    PolynomialReport r;
    r.alpha = std::min(0.6, 1.0 / (tau - 1.0 + delta));
    const double n = static_cast<double>(seq.n());
    const auto xmax = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::pow(n, r.alpha) + 1e-9)));
    const double a_lo = tau - 1.0 + delta;
    const double a_hi = tau - 1.0 - delta;

    // tail(k) = 1 - F(k) for integer k
    std::vector<std::pair<std::int64_t, std::int64_t>> h(seq.histogram().begin(), seq.histogram().end());
    std::int64_t above = seq.n();
    std::size_t idx = 0;
    auto tail_at = [&](std::int64_t k) {
        while (idx < h.size() && h[idx].first <= k) above -= h[idx++].second;
        return static_cast<double>(above) / n;
    };

    double c1 = INFINITY;
    double c2 = 0.0;
    const std::int64_t kmax = std::max(xmax, seq.max_degree());
    for (std::int64_t k = 1; k <= kmax; ++k) {
        double tail = tail_at(k);
        if (k <= xmax) c1 = std::min(c1, tail * std::pow(static_cast<double>(k), a_lo));
        c2 = std::max(c2, tail * std::pow(static_cast<double>(k + 1), a_hi));
    }
    r.c1_hat = c1;
    r.c2_hat = c2;
    r.holds_lower = c1 > 0.0;
    r.holds_upper = std::isfinite(c2);
    return r;
}

inline DegreeSequence read_degrees(std::istream& in) {
    std::vector<std::int64_t> d;
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        d.push_back(std::stoll(line.substr(b)));
    }
    return DegreeSequence(std::move(d));
}

inline DegreeSequence read_degrees(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_degrees(in);
}

inline void write_degrees(std::ostream& out, const DegreeSequence& seq) {
    for (auto d : seq.degrees()) out << d << '\n';
}

// bumps the last degree when the total is odd
inline DegreeSequence fix_parity(const DegreeSequence& seq) {
    if (seq.ell() % 2 == 0 || seq.empty()) return seq;
    auto d = seq.degrees();
    d.back() += 1;
    return DegreeSequence(std::move(d));
}

}  // namespace ultrasmall
