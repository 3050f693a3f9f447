#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace prodkernel {

/// Relative breakdown threshold shared by Cholesky and the Newton basis.
/// A pivot (diagonal entry of the factor) below
/// kBreakdownTolerance * sqrt(max diagonal of A) is treated as zero.
inline constexpr double kBreakdownTolerance = 1e-13;

/// Largest number of entries a Kronecker product or enumerated grid may have.
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 26;

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double frobenius_norm(const Matrix& a);
/// max_{i,j} |a_ij - b_ij| / max_{i,j} |b_ij|.
double max_relative_difference(const Matrix& a, const Matrix& b);

/// Lower triangular factor with positive diagonal.
class LowerTriangular {
public:
    LowerTriangular() = default;
    /// Throws ParameterError if `m` is not square or has nonzero strict upper part.
    explicit LowerTriangular(Matrix m);

    std::size_t order() const noexcept { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    std::span<const double> row(std::size_t i) const noexcept { return m_.row(i); }
    const Matrix& matrix() const noexcept { return m_; }

    friend bool operator==(const LowerTriangular&, const LowerTriangular&) = default;

private:
    Matrix m_;
};

double dot(std::span<const double> a, std::span<const double> b);

/// Block matrix with block (r, s) equal to a(r, s) * b, i.e. 0-based
/// entry (r*p + u, s*q + v) = a(r, s) * b(u, v) for b of size p x q.
/// Throws ResourceError if the result would exceed `max_entries`.
Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_entries = kMaxEntries);
LowerTriangular kron(const LowerTriangular& a, const LowerTriangular& b, std::size_t max_entries = kMaxEntries);
Matrix kron(std::span<const Matrix> factors, std::size_t max_entries = kMaxEntries);

/// Unpivoted Cholesky factorization A = L L^T (lower half of A is read).
/// Throws NotPositiveDefiniteError carrying the failing pivot index.
LowerTriangular cholesky(const Matrix& a, double pivot_tolerance = kBreakdownTolerance);

/// Solves L x = b.
std::vector<double> solve_lower(const LowerTriangular& l, std::span<const double> b);
/// Solves L^T x = b.
std::vector<double> solve_upper(const LowerTriangular& l, std::span<const double> b);

/// All eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
std::vector<double> sym_eigenvalues(const Matrix& a);
/// (smallest, largest) eigenvalue of a symmetric matrix.
std::pair<double, double> sym_eig_extremes(const Matrix& a);
/// Spectral condition number of a symmetric positive definite matrix.
double cond2(const Matrix& a);

/// y = (A_1 (x) ... (x) A_M) x without forming the product.
std::vector<double> kron_matvec(std::span<const Matrix* const> factors, std::span<const double> x);
/// Solves (L_1 (x) ... (x) L_M) x = b by mode-wise forward substitution.
std::vector<double> kron_solve_lower(std::span<const LowerTriangular* const> factors, std::span<const double> b);
/// Solves (L_1 (x) ... (x) L_M)^T x = b.
std::vector<double> kron_solve_upper(std::span<const LowerTriangular* const> factors, std::span<const double> b);

}  // namespace prodkernel
