#pragma once

#include <cstdint>
#include <optional>

namespace brownwind {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// One output of a splitmix64 generator whose state is `x`:
/// advance by the golden gamma, then apply the finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + kGoldenGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed of replicate `r` under `master_seed`.
constexpr std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t r) noexcept {
    return splitmix64(master_seed ^ ((r + 1) * kGoldenGamma));
}

/// splitmix64 stream with a Box-Muller Gaussian layer.
///
/// Uniforms use the top 53 bits of each output. Normals come in pairs
/// from (u1, u2) with u1 in (0, 1]; the second of each pair is cached.
/// The construction is fixed so that outputs depend only on the seed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : state_(seed), stream_id_(stream_id) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t out = splitmix64(state_);
        state_ += kGoldenGamma;
        return out;
    }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double normal() noexcept;

    std::uint64_t state() const noexcept { return state_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t state_;
    std::uint64_t stream_id_;
    std::optional<double> spare_;
};

}  // namespace brownwind
