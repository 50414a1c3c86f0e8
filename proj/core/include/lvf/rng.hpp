#pragma once

#include <cstdint>
#include <string_view>

#include "lvf/matrix.hpp"

namespace lvf {

/// Seeded pseudo-random stream: xoshiro256++ state initialized from the seed
/// via splitmix64. Pure 64-bit integer arithmetic, so equal seeds give equal
/// streams on every platform. Single-owner, not thread-safe.
///
/// Doubles take the top 53 bits of a draw; gaussians come from Box-Muller
/// over consecutive uniform pairs with the sine half cached, so the gaussian
/// stream is as reproducible as the integer one.
class Rng {
public:
    explicit Rng(uint64_t seed);

    static constexpr std::string_view algorithm_id = "xoshiro256++/splitmix64";

    uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). n must be > 0.
    uint64_t uniform_index(uint64_t n);
    /// Standard normal draw.
    double gaussian();

    Vector uniform_vector(std::size_t dim, double lo, double hi);
    Vector gaussian_vector(std::size_t dim);
    Matrix gaussian_matrix(std::size_t rows, std::size_t cols);

    /// In-place Fisher-Yates shuffle of an index permutation.
    void shuffle(std::vector<std::size_t>& items);

private:
    uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lvf
