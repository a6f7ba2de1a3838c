#pragma once

#include <cmath>
#include <cstdint>

namespace persistence {

// Counter-based splittable generator. A stream is fully determined by the
// (seed, stream) pair, so work units keyed by stream index produce the same
// output regardless of how they are scheduled.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ mix(stream * 0x9e3779b97f4a7c15ULL + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

    // Uniform in (0,1).
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via Box-Muller; implementation-defined distributions
    // from <random> are avoided so streams are reproducible across platforms.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace persistence
