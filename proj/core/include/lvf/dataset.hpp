#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lvf/matrix.hpp"
#include "lvf/rng.hpp"

namespace lvf {

/// A dataset: one flattened sample per row, optional integer labels.
/// Pixel-derived data is scaled into [0,1] at parse time.
struct Dataset {
    Matrix items;
    std::optional<std::vector<int>> labels;
    std::size_t input_dim = 0;
    std::string name;

    std::size_t size() const { return items.rows(); }
    Vector sample(std::size_t i) const { return row_vector(items, i); }
};

struct Split {
    Dataset train;
    Dataset test;
    uint64_t seed = 0;
};

struct MixtureMode {
    Vector mean;
    double std = 1.0;
};

/// per_mode samples around each mode mean, labels = mode index.
Dataset gen_gaussian_mixture(const std::vector<MixtureMode>& modes, std::size_t per_mode, Rng& rng);

/// 2D points near a circle of the given radius with gaussian radial noise.
Dataset gen_ring(double radius, double noise_std, std::size_t n, Rng& rng);

/// Seeded disjoint train/test partition. test_fraction in (0,1); throws if
/// either side would be empty.
Split split(const Dataset& ds, double test_fraction, Rng& rng);

/// First n samples of a seeded shuffle — the documented subsampling rule for
/// dataset-size sweeps.
Dataset subsample(const Dataset& ds, std::size_t n, Rng& rng);

}  // namespace lvf
