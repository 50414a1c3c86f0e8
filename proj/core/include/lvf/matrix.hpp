#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lvf {

/// Dense row-major matrix of 64-bit floats. The single numeric currency of
/// the library; validated construction rejects NaN/Inf entries.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);
    /// Construct from nested initializer data, e.g. {{1,2},{3,4}}.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Matrix transposed() const;
    bool all_finite() const;
    /// Throws std::invalid_argument if any entry is NaN or Inf.
    void validate() const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Dense vector of 64-bit floats.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
    Vector(std::initializer_list<double> init) : data_(init) {}
    explicit Vector(std::vector<double> data) : data_(std::move(data)) {}

    std::size_t dim() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::span<const double> span() const { return data_; }

    const std::vector<double>& raw() const { return data_; }

    bool all_finite() const;
    void validate() const;

    bool operator==(const Vector& other) const = default;

private:
    std::vector<double> data_;
};

// c = a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// c = a * b^T without materializing the transpose
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// c = a^T * b without materializing the transpose
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
// y = a^T * x
Vector matvec_t(const Matrix& a, const Vector& x);

Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, double s);
double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double norm_squared(const Vector& a);
double frobenius_norm(const Matrix& m);

/// Matrix row as a Vector copy.
Vector row_vector(const Matrix& m, std::size_t r);

}  // namespace lvf
