#pragma once

#include <cmath>
#include <cstdint>

namespace tsarm {

inline std::uint64_t avalanche64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Stable mixing of a base seed with a stream index. Used to derive
// per-sample / per-run streams so results do not depend on scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return avalanche64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

// Small self-contained generator (splitmix64 core, Box-Muller normals).
// Hand-rolled because std:: distributions are implementation-defined and we
// promise bit-identical output for a given seed on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return avalanche64(state_);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform in {0, ..., n-1}.
    std::uint64_t next_below(std::uint64_t n) {
        // 128-bit multiply avoids the modulo bias.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite.
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Independent substream for a given salt; advancing one stream never
    // perturbs the other.
    Rng split(std::uint64_t salt) const { return Rng(mix_seed(state_, salt)); }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tsarm
