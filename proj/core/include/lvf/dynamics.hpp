#pragma once

#include <optional>
#include <vector>

#include "lvf/model.hpp"

namespace lvf {

/// Stopping rule for latent iteration: stop when the squared step norm
/// ||z_{t+1} - z_t||^2 drops below tol, or at max_iters.
struct SolverParams {
    std::size_t max_iters = 3000;
    double tol = 1e-6;

    /// Cheaper settings for expensive models.
    static SolverParams fast() { return {500, 1e-5}; }
};

struct Trajectory {
    std::vector<Vector> states;         // z_0 .. z_N
    std::vector<double> residual_norms; // ||z_{t+1} - z_t||, length N
    bool converged = false;
    std::size_t iterations = 0;
};

struct FixedPoint {
    Vector z_star;
    double residual = 0.0;  // ||f(z*) - z*||, re-verified at acceptance
    std::size_t iterations = 0;
    Vector from_seed;
};

struct AttractorSet {
    std::vector<FixedPoint> members;
    double dedup_cosine = 0.99;
    std::vector<std::size_t> basin_counts;  // per member, converged seeds absorbed
    std::size_t non_converged = 0;

    Matrix members_matrix() const;  // one attractor per row
};

/// 2D latent field sampled over an axis-aligned grid (k = 2 models only).
struct FieldGrid {
    double x_min = 0, x_max = 0;
    double y_min = 0, y_max = 0;
    std::size_t steps = 0;
    std::vector<double> u, v, norms;  // row-major, steps x steps
};

/// One application of the latent map f(z) = E(D(z)).
Vector latent_step(const AutoencoderModel& m, const Vector& z);
/// The vector field f(z) - z.
Vector field_at(const AutoencoderModel& m, const Vector& z);

/// Iterates f from z0 under the solver's stopping rule. Throws on a
/// non-finite iterate (expansive model blew up).
Trajectory iterate(const AutoencoderModel& m, const Vector& z0, const SolverParams& params);

/// Converged terminal iterate with its residual re-verified; nullopt when the
/// cap was hit first.
std::optional<FixedPoint> solve_fixed_point(const AutoencoderModel& m, const Vector& z0,
                                            const SolverParams& params);

/// Solves every seed row and deduplicates greedily in discovery order:
/// a new fixed point joins the first member with cosine above the threshold
/// (Euclidean 1e-6 fallback when both norms < 1e-8), else becomes a member.
AttractorSet compute_attractors(const AutoencoderModel& m, const Matrix& seeds,
                                const SolverParams& params, double dedup_cosine,
                                unsigned threads = 1);

double distinct_fraction(const AttractorSet& aset, std::size_t seed_count);

struct GridSpec {
    double x_min = -8, x_max = 8;
    double y_min = -8, y_max = 8;
    std::size_t steps = 32;
};

FieldGrid raster_field(const AutoencoderModel& m, const GridSpec& spec);

/// True when two fixed points are the same attractor under the dedup rule.
bool attractors_equal(const Vector& a, const Vector& b, double dedup_cosine);

}  // namespace lvf
