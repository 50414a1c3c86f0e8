#pragma once

#include <functional>
#include <optional>

#include "lvf/dynamics.hpp"
#include "lvf/model.hpp"

namespace lvf {

enum class JacobianMethod : uint8_t { analytic = 0, central_difference = 1 };

struct JacobianEstimate {
    Vector at;
    Matrix matrix;  // k x k
    JacobianMethod method = JacobianMethod::analytic;
    double fd_step = 0.0;
};

struct FixedPointClass {
    double spectral_norm = 0.0;
    /// Largest singular value, a conservative stand-in for the largest
    /// eigenvalue modulus: sigma_max < 1 implies every |lambda| < 1.
    double max_abs_eigenvalue_proxy = 0.0;
    bool is_attractor = false;
};

/// Jacobian of the latent map f = E o D at z: exact chain-rule product of
/// layer Jacobians, or column-wise central differences.
JacobianEstimate jacobian(const AutoencoderModel& m, const Vector& z,
                          JacobianMethod method = JacobianMethod::analytic,
                          double fd_step = 1e-5);

/// Jacobian of the input-space map F = D o E at x (m x m).
Matrix input_jacobian(const AutoencoderModel& m, const Vector& x);

FixedPointClass classify(const AutoencoderModel& m, const FixedPoint& fp);

/// Iterations needed to shrink an initial error e0 to eps under contraction
/// rate rho: log(eps/e0) / log(rho). Returns 0 when eps >= e0; throws when
/// rho is outside (0,1).
double convergence_estimate(double rho, double e0_norm, double eps);

struct ConvergenceStudy {
    AttractorSet attractors;
    std::vector<FixedPointClass> classes;  // one per attractor member
    struct SeedRow {
        std::size_t attractor_index = 0;
        double predicted = 0.0;
        double measured = 0.0;
    };
    std::vector<SeedRow> rows;        // converged seeds whose destination has rho < 1
    std::optional<double> pearson;    // empty when either side has zero variance
};

/// Predicts per-seed convergence time from the destination attractor's
/// spectral norm and correlates it with the measured iteration counts.
/// Throws when fewer than 2 seeds converge.
ConvergenceStudy convergence_correlation(const AutoencoderModel& m, const Matrix& seeds,
                                         const SolverParams& params, double dedup_cosine = 0.99,
                                         unsigned threads = 1);

/// Relative error of the 1-homogeneous identity F(x) = J_F(x) x; only
/// meaningful for bias-free relu/linear models (throws otherwise).
double homogeneity_check(const AutoencoderModel& m, const Vector& x);

/// Cosine between the residual field v(z) and the descent direction
/// -grad ||v||^2 = -2 (J_f - I)^T v. Empty when either vector vanishes.
std::optional<double> gradient_alignment(const AutoencoderModel& m, const Vector& z);

struct ScoreAlignment {
    double fraction = 0.0;       // probes with <v(z), score(z)> > 0
    std::size_t degenerate = 0;  // probes where v(z) ~ 0
    std::size_t n_probes = 0;
};

/// Fraction of probe points where the latent field ascends the supplied
/// analytic score.
ScoreAlignment score_alignment(const AutoencoderModel& m,
                               const std::function<Vector(const Vector&)>& score,
                               const Matrix& probes);

/// Pearson correlation; empty if either sequence has zero variance.
std::optional<double> pearson(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lvf
