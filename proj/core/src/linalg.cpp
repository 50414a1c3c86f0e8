#include "lvf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lvf {

namespace {

// One-sided Jacobi on a tall-or-square matrix: orthogonalize the columns of
// `b` in place, accumulating the right rotations into `v`.
bool jacobi_orthogonalize(Matrix& b, Matrix& v, int max_sweeps) {
    const std::size_t m = b.rows(), n = b.cols();
    const double tol = 1e-14;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    const double bp = b(i, p), bq = b(i, q);
                    alpha += bp * bp;
                    beta += bq * bq;
                    gamma += bp * bq;
                }
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double bp = b(i, p), bq = b(i, q);
                    b(i, p) = c * bp - s * bq;
                    b(i, q) = s * bp + c * bq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) return true;
    }
    return false;
}

SvdResult svd_tall(const Matrix& a, int max_sweeps) {
    Matrix b = a;
    Matrix v = Matrix::identity(a.cols());
    if (!jacobi_orthogonalize(b, v, max_sweeps)) {
        throw std::runtime_error("svd: Jacobi sweeps did not converge");
    }
    const std::size_t m = b.rows(), n = b.cols();
    Vector s(n);
    Matrix u(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        double col_norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) col_norm += b(i, j) * b(i, j);
        col_norm = std::sqrt(col_norm);
        s[j] = col_norm;
        if (col_norm > 0.0) {
            for (std::size_t i = 0; i < m; ++i) u(i, j) = b(i, j) / col_norm;
        }
    }
    // Sort singular values descending, permuting u and v alongside.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return s[x] > s[y]; });
    Vector ss(n);
    Matrix us(m, n), vs(v.rows(), n);
    for (std::size_t j = 0; j < n; ++j) {
        ss[j] = s[order[j]];
        for (std::size_t i = 0; i < m; ++i) us(i, j) = u(i, order[j]);
        for (std::size_t i = 0; i < v.rows(); ++i) vs(i, j) = v(i, order[j]);
    }
    return {std::move(us), std::move(ss), vs.transposed()};
}

}  // namespace

SvdResult svd(const Matrix& m, int max_sweeps) {
    if (m.empty()) throw std::invalid_argument("svd: empty matrix");
    if (m.rows() >= m.cols()) return svd_tall(m, max_sweeps);
    // A = (A^T)^T: factor the transpose and swap the factors.
    SvdResult t = svd_tall(m.transposed(), max_sweeps);
    return {t.vt.transposed(), std::move(t.s), t.u.transposed()};
}

LinearOperator LinearOperator::from_matrix(const Matrix& m) {
    return {m.cols(), m.rows(),
            [m](const Vector& x) { return matvec(m, x); },
            [m](const Vector& y) { return matvec_t(m, y); }};
}

PowerIterResult power_iteration(const LinearOperator& op, int iters, double tol, Rng& rng) {
    if (iters < 1) throw std::invalid_argument("power_iteration: iters must be >= 1");
    Vector v = rng.gaussian_vector(op.in_dim);
    double vn = norm(v);
    if (vn == 0.0) v = Vector(op.in_dim, 1.0), vn = std::sqrt(double(op.in_dim));
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] /= vn;

    double estimate = 0.0;
    for (int it = 0; it < iters; ++it) {
        Vector w = op.apply(v);
        const double sigma = norm(w);
        if (sigma == 0.0) return {0.0, true, it + 1};
        Vector u = scale(w, 1.0 / sigma);
        Vector back = op.apply_t(u);
        const double bn = norm(back);
        if (bn == 0.0) return {sigma, true, it + 1};
        v = scale(back, 1.0 / bn);
        const double prev = estimate;
        estimate = sigma;
        if (it > 0 && std::abs(estimate - prev) < tol * std::max(estimate, 1e-300)) {
            return {estimate, true, it + 1};
        }
    }
    return {estimate, false, iters};
}

double spectral_norm(const Matrix& m, Rng& rng, int iters, double tol) {
    return power_iteration(LinearOperator::from_matrix(m), iters, tol, rng).value;
}

Matrix qr_orthobasis(std::size_t dim, std::size_t n, Rng& rng) {
    if (n > dim) throw std::invalid_argument("qr_orthobasis: n > dim");
    Matrix q(dim, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector col(dim);
        double cn = 0.0;
        // Redraw on (practically impossible) degeneracy.
        for (int attempt = 0; attempt < 16; ++attempt) {
            col = rng.gaussian_vector(dim);
            // Two MGS passes keep orthogonality at the 1e-15 level.
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t p = 0; p < j; ++p) {
                    double proj = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) proj += col[i] * q(i, p);
                    for (std::size_t i = 0; i < dim; ++i) col[i] -= proj * q(i, p);
                }
            }
            cn = norm(col);
            if (cn > 1e-12) break;
        }
        if (cn <= 1e-12) throw std::runtime_error("qr_orthobasis: degenerate draw");
        for (std::size_t i = 0; i < dim; ++i) q(i, j) = col[i] / cn;
    }
    return q;
}

double cosine(const Vector& a, const Vector& b) {
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine: zero-norm input");
    return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

double euclidean(const Vector& a, const Vector& b) { return norm(sub(a, b)); }

Matrix cholesky_factor(const Matrix& spd) {
    if (spd.rows() != spd.cols()) throw std::invalid_argument("cholesky: not square");
    const std::size_t n = spd.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = spd(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
            if (i == j) {
                if (s <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
                l(i, j) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Vector cholesky_solve(const Matrix& lower, const Vector& b) {
    const std::size_t n = lower.rows();
    if (b.dim() != n) throw std::invalid_argument("cholesky_solve: dimension mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t p = 0; p < i; ++p) s -= lower(i, p) * y[p];
        y[i] = s / lower(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii > 0; --ii) {
        const std::size_t i = ii - 1;
        double s = y[i];
        for (std::size_t p = i + 1; p < n; ++p) s -= lower(p, i) * x[p];
        x[i] = s / lower(i, i);
    }
    return x;
}

}  // namespace lvf
