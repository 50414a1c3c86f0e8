#include "lvf/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lvf {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                    " != rows*cols " + std::to_string(rows_ * cols_));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void Matrix::validate() const {
    if (!all_finite()) throw std::invalid_argument("Matrix: non-finite entry");
}

bool Vector::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

void Vector::validate() const {
    if (!all_finite()) throw std::invalid_argument("Vector: non-finite entry");
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols()) +
                                    " != " + std::to_string(b.rows()));
    }
    Matrix c(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    // i-k-j order keeps both b and c accesses contiguous.
    for (std::size_t i = 0; i < n; ++i) {
        double* crow = c.data() + i * m;
        const double* arow = a.data() + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = b.data() + p * m;
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matmul_nt: dimension mismatch");
    Matrix c(a.rows(), b.rows());
    const std::size_t k = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.data() + i * k;
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* brow = b.data() + j * k;
            double s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
            c(i, j) = s;
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matmul_tn: dimension mismatch");
    Matrix c(a.cols(), b.cols());
    const std::size_t m = b.cols();
    for (std::size_t p = 0; p < a.rows(); ++p) {
        const double* arow = a.data() + p * a.cols();
        const double* brow = b.data() + p * m;
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double av = arow[i];
            if (av == 0.0) continue;
            double* crow = c.data() + i * m;
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Vector matvec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.dim()) throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.data() + i * a.cols();
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += arow[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_t(const Matrix& a, const Vector& x) {
    if (a.rows() != x.dim()) throw std::invalid_argument("matvec_t: dimension mismatch");
    Vector y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.data() + i * a.cols();
        const double xv = x[i];
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += arow[j] * xv;
    }
    return y;
}

Vector add(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
    Vector c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return c;
}

Vector sub(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("sub: dimension mismatch");
    Vector c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return c;
}

Vector scale(const Vector& a, double s) {
    Vector c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] * s;
    return c;
}

double dot(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double norm_squared(const Vector& a) { return dot(a, a); }

double norm(const Vector& a) { return std::sqrt(norm_squared(a)); }

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m.data()[i] * m.data()[i];
    return std::sqrt(s);
}

Vector row_vector(const Matrix& m, std::size_t r) {
    Vector v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) v[c] = m(r, c);
    return v;
}

}  // namespace lvf
