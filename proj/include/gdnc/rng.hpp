#pragma once

#include <cmath>
#include <cstdint>

namespace gdnc {

namespace detail {
// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Counter-based random stream. A stream is identified by a key derived
/// from (seed, index tuple); draw i of a stream depends only on (key, i),
/// so parallel workers produce identical sequences regardless of
/// scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    /// Key derivation for per-trial streams: hash-chains the indices.
    static RngStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t k = detail::mix64(seed);
        k = detail::mix64(k ^ a);
        k = detail::mix64(k ^ b);
        return RngStream(k);
    }

    std::uint64_t next_u64() { return detail::mix64(key_ ^ counter_++); }

    /// Uniform in [0, 1).
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Unit-mean exponential via inverse CDF.
    double next_exp() { return -std::log1p(-next_unit()); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace gdnc
