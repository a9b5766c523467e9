#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace fsorf {

/// Reproducible random stream identified by (master seed, stream index).
///
/// The engine state is derived from the pair alone, so stream k is the same no matter
/// how many sibling streams are created.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t master_seed, std::uint64_t index);

    static constexpr result_type min() noexcept { return std::mt19937_64::min(); }
    static constexpr result_type max() noexcept { return std::mt19937_64::max(); }

    result_type operator()() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform();

    std::uint64_t index() const noexcept { return index_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t index_;
};

std::vector<RandomStream> spawn_streams(std::uint64_t master_seed, std::size_t workers);

}  // namespace fsorf
