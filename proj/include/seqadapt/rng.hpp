#ifndef SEQADAPT_RNG_HPP
#define SEQADAPT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace seqadapt {

/// Identifies a reproducible random stream. Identical (seed, stream_id)
/// always reproduce the same draws; distinct stream_ids are independent.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

// SplitMix64 finalizer; bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based generator: the n-th output is a pure function of
/// (key, n), so substreams can be handed to workers in any order
/// without changing the numbers drawn.
class RngStream {
public:
    explicit RngStream(RngSpec spec)
        : key_(derive_key(spec.seed, spec.stream_id)) {}

    /// Child stream for e.g. a replication index. Independent of the
    /// parent's position; derivation is collision-resistant mixing.
    RngStream substream(std::uint64_t index) const {
        RngStream child(*this);
        child.key_ = detail::mix64(key_ ^ detail::mix64(index + 0x632BE59BD9B4E019ull));
        child.counter_ = 0;
        child.have_cached_normal_ = false;
        return child;
    }

    std::uint64_t next_u64() {
        const std::uint64_t v =
            detail::mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ull);
        return v;
    }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; second value of each pair cached.
    double normal() {
        if (have_cached_normal_) {
            have_cached_normal_ = false;
            return cached_normal_;
        }
        // u1 in (0,1] so the log is finite.
        const double u1 =
            (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        cached_normal_ = radius * std::sin(angle);
        have_cached_normal_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        return detail::mix64(detail::mix64(seed + 0x9E3779B97F4A7C15ull) ^
                             detail::mix64(stream + 0xD1B54A32D192ED03ull));
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool have_cached_normal_ = false;
};

} // namespace seqadapt

#endif
