#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ultrasmall {

// mt19937_64 output is fixed by the standard, the std distributions are not,
// so the draws below are written out to keep streams identical across platforms.
class Rng {
public:
    using engine_type = std::mt19937_64;

    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform on [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t thresh = (0 - bound) % bound;
            while (lo < thresh) {
                m = static_cast<unsigned __int128>(next()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1)
    double uniform_open() {
        double u;
        do { u = uniform(); } while (u == 0.0);
        return u;
    }

private:
    engine_type eng_;
};

inline std::uint64_t replica_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

}  // namespace ultrasmall
