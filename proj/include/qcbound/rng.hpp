#pragma once

#include <cmath>
#include <cstdint>

namespace qcb {

/// Small splittable pseudo-random generator.  Each draw advances the state
/// by a fixed odd constant and hashes it, so a child stream derived from a
/// (parent, index) pair is a pure function of the two — trials simulated on
/// different threads see exactly the sequences they would see serially.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(hash(seed + 0x9e3779b97f4a7c15ull)) {}

    /// Child stream for a given index; independent of draws already made on
    /// the parent only via the parent's construction seed semantics, so
    /// derive from freshly constructed parents when splitting.
    Rng derive(std::uint64_t index) const {
        return Rng(hash(state_ ^ hash(index + 0x632be59bd9b4e019ull)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return hash(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via the polar Box-Muller transform with a cached
    /// spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Random sign, +1 or -1.
    double sign() { return (next_u64() & 1ull) ? 1.0 : -1.0; }

private:
    static std::uint64_t hash(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qcb
