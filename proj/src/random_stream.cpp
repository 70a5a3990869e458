#include "sumbound/random_stream.hpp"

#include <bit>

namespace sumbound {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept
{
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
{
    std::uint64_t sm = seed;
    for (auto& word : s_) {
        word = splitmix64(sm);
    }
    for (std::uint64_t k = 0; k < stream_id; ++k) {
        jump();
    }
    stream_id_ = stream_id;
}

std::vector<RandomStream> RandomStream::substreams(std::uint64_t seed, std::size_t count)
{
    std::vector<RandomStream> out;
    out.reserve(count);
    RandomStream cursor(seed);
    for (std::size_t k = 0; k < count; ++k) {
        cursor.stream_id_ = k;
        out.push_back(cursor);
        cursor.jump();
    }
    return out;
}

RandomStream::result_type RandomStream::operator()() noexcept
{
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

void RandomStream::jump() noexcept
{
    static constexpr std::array<std::uint64_t, 4> kJump{0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                                        0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> acc{};
    for (const std::uint64_t word : kJump) {
        for (int b = 0; b < 64; ++b) {
            if (word & (std::uint64_t{1} << b)) {
                for (std::size_t i = 0; i < 4; ++i) {
                    acc[i] ^= s_[i];
                }
            }
            (*this)();
        }
    }
    s_ = acc;
}

} // namespace sumbound
