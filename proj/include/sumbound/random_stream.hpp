#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace sumbound {

/// Deterministic 64-bit generator (xoshiro256**, period 2^256 - 1).
///
/// Substream k of a seed starts 2^128 * k steps into the base sequence, so
/// substreams never overlap for fewer than 2^128 draws each. Satisfies
/// UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    /// Streams 0 .. count-1 of seed, built with one jump per stream.
    static std::vector<RandomStream> substreams(std::uint64_t seed, std::size_t count);

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Advance by 2^128 draws.
    void jump() noexcept;

    std::uint64_t stream_id() const noexcept { return stream_id_; }

    friend bool operator==(const RandomStream&, const RandomStream&) = default;

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t stream_id_ = 0;
};

} // namespace sumbound
