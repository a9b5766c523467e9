#include "fsorf/random.hpp"

#include <array>

#include "fsorf/error.hpp"

namespace fsorf {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t state = master_seed;
    const std::uint64_t a = splitmix64(state);
    state = a ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL);
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); i += 2) {
        const std::uint64_t v = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(v);
        words[i + 1] = static_cast<std::uint32_t>(v >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t index)
    : engine_(seeded_engine(master_seed, index)), index_(index) {}

double RandomStream::uniform() {
    // 53 random mantissa bits, shifted off zero
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<RandomStream> spawn_streams(std::uint64_t master_seed, std::size_t workers) {
    detail::require(workers >= 1, "spawn_streams: need at least one stream");
    std::vector<RandomStream> streams;
    streams.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k) streams.emplace_back(master_seed, k);
    return streams;
}

}  // namespace fsorf
