#include "lvf/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "lvf/linalg.hpp"
#include "lvf/parallel.hpp"

namespace lvf {

Matrix AttractorSet::members_matrix() const {
    if (members.empty()) return {};
    Matrix m(members.size(), members[0].z_star.dim());
    for (std::size_t r = 0; r < members.size(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = members[r].z_star[c];
    return m;
}

Vector latent_step(const AutoencoderModel& m, const Vector& z) {
    return encode(m, decode(m, z));
}

Vector field_at(const AutoencoderModel& m, const Vector& z) {
    return sub(latent_step(m, z), z);
}

Trajectory iterate(const AutoencoderModel& m, const Vector& z0, const SolverParams& params) {
    if (params.max_iters < 1) throw std::invalid_argument("iterate: max_iters must be >= 1");
    if (params.tol <= 0.0) throw std::invalid_argument("iterate: tol must be > 0");
    Trajectory traj;
    traj.states.push_back(z0);
    Vector z = z0;
    for (std::size_t t = 0; t < params.max_iters; ++t) {
        Vector next = latent_step(m, z);
        if (!next.all_finite()) throw std::runtime_error("iterate: non-finite iterate (divergent map)");
        const double step_sq = norm_squared(sub(next, z));
        traj.states.push_back(next);
        traj.residual_norms.push_back(std::sqrt(step_sq));
        traj.iterations = t + 1;
        z = std::move(next);
        if (step_sq < params.tol) {
            traj.converged = true;
            break;
        }
    }
    return traj;
}

std::optional<FixedPoint> solve_fixed_point(const AutoencoderModel& m, const Vector& z0,
                                            const SolverParams& params) {
    Trajectory traj = iterate(m, z0, params);
    if (!traj.converged) return std::nullopt;
    FixedPoint fp;
    fp.z_star = traj.states.back();
    fp.residual = norm(field_at(m, fp.z_star));
    fp.iterations = traj.iterations;
    fp.from_seed = z0;
    // The stopping rule looked at the last step; re-verify at the terminal
    // point itself so accepted residuals honor the sqrt(tol) contract.
    if (fp.residual >= std::sqrt(params.tol)) return std::nullopt;
    return fp;
}

bool attractors_equal(const Vector& a, const Vector& b, double dedup_cosine) {
    const double na = norm(a), nb = norm(b);
    // Cosine is meaningless at the origin; fall back to absolute closeness.
    if (na < 1e-8 && nb < 1e-8) return euclidean(a, b) < 1e-6;
    if (na == 0.0 || nb == 0.0) return false;
    return cosine(a, b) > dedup_cosine;
}

AttractorSet compute_attractors(const AutoencoderModel& m, const Matrix& seeds,
                                const SolverParams& params, double dedup_cosine,
                                unsigned threads) {
    if (!(dedup_cosine > 0.0 && dedup_cosine < 1.0))
        throw std::invalid_argument("compute_attractors: dedup cosine must lie in (0,1)");
    AttractorSet aset;
    aset.dedup_cosine = dedup_cosine;

    std::vector<std::optional<FixedPoint>> solved(seeds.rows());
    parallel_for(seeds.rows(), threads, [&](std::size_t i) {
        solved[i] = solve_fixed_point(m, row_vector(seeds, i), params);
    });

    // Sequential greedy reduction keeps membership deterministic in seed order.
    for (auto& fp : solved) {
        if (!fp) {
            aset.non_converged += 1;
            continue;
        }
        bool joined = false;
        for (std::size_t j = 0; j < aset.members.size(); ++j) {
            if (attractors_equal(fp->z_star, aset.members[j].z_star, dedup_cosine)) {
                aset.basin_counts[j] += 1;
                joined = true;
                break;
            }
        }
        if (!joined) {
            aset.members.push_back(std::move(*fp));
            aset.basin_counts.push_back(1);
        }
    }
    return aset;
}

double distinct_fraction(const AttractorSet& aset, std::size_t seed_count) {
    if (seed_count < 1) throw std::invalid_argument("distinct_fraction: seed count must be >= 1");
    return static_cast<double>(aset.members.size()) / static_cast<double>(seed_count);
}

FieldGrid raster_field(const AutoencoderModel& m, const GridSpec& spec) {
    if (m.bottleneck_k != 2) throw std::invalid_argument("raster_field: requires a k=2 model");
    if (spec.steps < 2) throw std::invalid_argument("raster_field: need at least 2 steps");
    FieldGrid grid;
    grid.x_min = spec.x_min;
    grid.x_max = spec.x_max;
    grid.y_min = spec.y_min;
    grid.y_max = spec.y_max;
    grid.steps = spec.steps;
    grid.u.resize(spec.steps * spec.steps);
    grid.v.resize(spec.steps * spec.steps);
    grid.norms.resize(spec.steps * spec.steps);
    const double dx = (spec.x_max - spec.x_min) / static_cast<double>(spec.steps - 1);
    const double dy = (spec.y_max - spec.y_min) / static_cast<double>(spec.steps - 1);
    for (std::size_t iy = 0; iy < spec.steps; ++iy) {
        for (std::size_t ix = 0; ix < spec.steps; ++ix) {
            Vector z{spec.x_min + dx * static_cast<double>(ix),
                     spec.y_min + dy * static_cast<double>(iy)};
            Vector f = field_at(m, z);
            const std::size_t cell = iy * spec.steps + ix;
            grid.u[cell] = f[0];
            grid.v[cell] = f[1];
            grid.norms[cell] = norm(f);
        }
    }
    return grid;
}

}  // namespace lvf
