#pragma once

#include <functional>

#include "lvf/matrix.hpp"
#include "lvf/rng.hpp"

namespace lvf {

struct SvdResult {
    Matrix u;        // m x r
    Vector s;        // r, non-negative, non-increasing
    Matrix vt;       // r x n
};

/// Thin SVD via one-sided Jacobi rotations (r = min(m, n)).
/// Accurate for the small dense matrices used here; throws on
/// non-convergence after the sweep cap.
SvdResult svd(const Matrix& m, int max_sweeps = 60);

/// A linear map given as matrix-free apply/apply_t callbacks.
struct LinearOperator {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    std::function<Vector(const Vector&)> apply;
    std::function<Vector(const Vector&)> apply_t;

    static LinearOperator from_matrix(const Matrix& m);
};

struct PowerIterResult {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Largest singular value estimate by alternating apply / apply_t.
/// Always returns the best estimate at the iteration cap; the converged
/// flag records whether successive estimates settled within tol (relative).
PowerIterResult power_iteration(const LinearOperator& op, int iters, double tol, Rng& rng);

/// Spectral norm of a matrix via power iteration with library defaults.
double spectral_norm(const Matrix& m, Rng& rng, int iters = 500, double tol = 1e-10);

/// dim x n matrix with orthonormal columns drawn from a seeded gaussian,
/// orthogonalized by twice-applied modified Gram-Schmidt. Requires n <= dim.
Matrix qr_orthobasis(std::size_t dim, std::size_t n, Rng& rng);

/// Cosine similarity; throws on zero-norm input.
double cosine(const Vector& a, const Vector& b);
double euclidean(const Vector& a, const Vector& b);

/// Cholesky factor L (lower) of a symmetric positive definite matrix.
/// Throws std::runtime_error if the matrix is not positive definite.
Matrix cholesky_factor(const Matrix& spd);
/// Solves (L L^T) x = b given the factor from cholesky_factor.
Vector cholesky_solve(const Matrix& lower, const Vector& b);

}  // namespace lvf
