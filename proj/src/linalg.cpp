#include "prodkernel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prodkernel/errors.hpp"

namespace prodkernel {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionError("matrix: entry count does not match rows*cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
        }
    }
    return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw DimensionError("matrix-vector product: size mismatch");
    std::vector<double> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double max_relative_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix comparison: shapes differ");
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        diff = std::max(diff, std::abs(a.data()[k] - b.data()[k]));
        scale = std::max(scale, std::abs(b.data()[k]));
    }
    return scale == 0.0 ? diff : diff / scale;
}

LowerTriangular::LowerTriangular(Matrix m) : m_(std::move(m)) {
    if (!m_.square()) throw ParameterError("lower triangular: matrix must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i + 1; j < m_.cols(); ++j)
            if (m_(i, j) != 0.0) throw ParameterError("lower triangular: nonzero entry above the diagonal");
}

double dot(std::span<const double> a, std::span<const double> b) {
    // Four independent partial sums; the summation order is fixed.
    const std::size_t n = std::min(a.size(), b.size());
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        s0 += a[k] * b[k];
        s1 += a[k + 1] * b[k + 1];
        s2 += a[k + 2] * b[k + 2];
        s3 += a[k + 3] * b[k + 3];
    }
    for (; k < n; ++k) s0 += a[k] * b[k];
    return (s0 + s1) + (s2 + s3);
}

namespace {

void check_entries(std::size_t rows, std::size_t cols, std::size_t max_entries) {
    if (rows != 0 && cols > max_entries / rows) {
        throw ResourceError("kron: result of size " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds the limit of " + std::to_string(max_entries) + " entries");
    }
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_entries) {
    const std::size_t p = b.rows();
    const std::size_t q = b.cols();
    if (a.rows() != 0 && p > std::numeric_limits<std::size_t>::max() / a.rows()) throw ResourceError("kron: row overflow");
    if (a.cols() != 0 && q > std::numeric_limits<std::size_t>::max() / a.cols()) throw ResourceError("kron: column overflow");
    check_entries(a.rows() * p, a.cols() * q, max_entries);
    Matrix c(a.rows() * p, a.cols() * q);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t u = 0; u < p; ++u) {
            auto out = c.row(r * p + u);
            const auto brow = b.row(u);
            for (std::size_t s = 0; s < a.cols(); ++s) {
                const double ars = a(r, s);
                double* dst = out.data() + s * q;
                for (std::size_t v = 0; v < q; ++v) dst[v] = ars * brow[v];
            }
        }
    }
    return c;
}

LowerTriangular kron(const LowerTriangular& a, const LowerTriangular& b, std::size_t max_entries) {
    return LowerTriangular(kron(a.matrix(), b.matrix(), max_entries));
}

Matrix kron(std::span<const Matrix> factors, std::size_t max_entries) {
    if (factors.empty()) return Matrix::identity(1);
    Matrix result = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) result = kron(result, factors[i], max_entries);
    return result;
}

LowerTriangular cholesky(const Matrix& a, double pivot_tolerance) {
    if (!a.square()) throw DimensionError("cholesky: matrix must be square");
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));
    const double threshold = pivot_tolerance * std::sqrt(max_diag);

    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto li = l.row(i);
        for (std::size_t j = 0; j < i; ++j) {
            const auto lj = l.row(j);
            li[j] = (a(i, j) - dot(li.first(j), lj.first(j))) / lj[j];
        }
        const double d = a(i, i) - dot(li.first(i), li.first(i));
        if (!(d > 0.0) || std::sqrt(d) <= threshold) {
            throw NotPositiveDefiniteError("cholesky: non-positive pivot at index " + std::to_string(i), i);
        }
        li[i] = std::sqrt(d);
    }
    return LowerTriangular(std::move(l));
}

std::vector<double> solve_lower(const LowerTriangular& l, std::span<const double> b) {
    const std::size_t n = l.order();
    if (b.size() != n) throw DimensionError("solve_lower: size mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = l(i, i);
        if (d == 0.0) throw SingularError("solve_lower: zero diagonal at index " + std::to_string(i));
        x[i] = (b[i] - dot(l.row(i).first(i), std::span<const double>(x).first(i))) / d;
    }
    return x;
}

std::vector<double> solve_upper(const LowerTriangular& l, std::span<const double> b) {
    const std::size_t n = l.order();
    if (b.size() != n) throw DimensionError("solve_upper: size mismatch");
    std::vector<double> x(b.begin(), b.end());
    // Column-oriented back substitution on L^T keeps row access contiguous.
    for (std::size_t i = n; i-- > 0;) {
        const double d = l(i, i);
        if (d == 0.0) throw SingularError("solve_upper: zero diagonal at index " + std::to_string(i));
        x[i] /= d;
        const auto li = l.row(i);
        for (std::size_t j = 0; j < i; ++j) x[j] -= li[j] * x[i];
    }
    return x;
}

namespace {

double inf_norm(const Matrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double v : a.row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

void require_symmetric(const Matrix& a) {
    if (!a.square()) throw DimensionError("symmetric eigensolver: matrix must be square");
    double asym = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j) - a(j, i));
        asym = std::max(asym, s);
    }
    if (asym > 1e-12 * inf_norm(a)) throw ParameterError("symmetric eigensolver: matrix is not symmetric");
}

}  // namespace

std::vector<double> sym_eigenvalues(const Matrix& input) {
    require_symmetric(input);
    const std::size_t n = input.rows();
    Matrix a = input;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 100;

    // Cyclic Jacobi. An off-diagonal entry is annihilated only while it is
    // large relative to the geometric mean of its diagonal entries, which
    // gives small eigenvalues of SPD matrices to high relative accuracy.
    bool rotated = true;
    int sweep = 0;
    for (; rotated && sweep < max_sweeps; ++sweep) {
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double app = a(p, p);
                const double aqq = a(q, q);
                if (std::abs(apq) <= eps * std::sqrt(std::abs(app * aqq)) ||
                    std::abs(apq) < std::numeric_limits<double>::min()) {
                    continue;
                }
                rotated = true;
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                auto rp = a.row(p);
                auto rq = a.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = rp[k];
                    const double akq = rq[k];
                    const double new_p = akp - s * (akq + tau * akp);
                    const double new_q = akq + s * (akp - tau * akq);
                    rp[k] = new_p;
                    rq[k] = new_q;
                    a(k, p) = new_p;
                    a(k, q) = new_q;
                }
            }
        }
    }
    if (rotated) throw NumericalError("symmetric eigensolver: Jacobi iteration did not converge");

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::pair<double, double> sym_eig_extremes(const Matrix& a) {
    if (a.rows() == 0) throw DimensionError("symmetric eigensolver: empty matrix");
    const auto eig = sym_eigenvalues(a);
    return {eig.front(), eig.back()};
}

double cond2(const Matrix& a) {
    const auto [lo, hi] = sym_eig_extremes(a);
    if (!(lo > 0.0)) throw NotPositiveDefiniteError("cond2: smallest eigenvalue is not positive", 0);
    return hi / lo;
}

namespace {

struct ModeLayout {
    std::size_t pre = 1;
    std::size_t post = 1;
};

ModeLayout layout(std::span<const std::size_t> shape, std::size_t mode) {
    ModeLayout l;
    for (std::size_t i = 0; i < mode; ++i) l.pre *= shape[i];
    for (std::size_t i = mode + 1; i < shape.size(); ++i) l.post *= shape[i];
    return l;
}

}  // namespace

std::vector<double> kron_matvec(std::span<const Matrix* const> factors, std::span<const double> x) {
    std::vector<std::size_t> shape;
    std::size_t expected = 1;
    for (const Matrix* f : factors) {
        shape.push_back(f->cols());
        expected *= f->cols();
    }
    if (x.size() != expected) throw DimensionError("kron_matvec: vector length does not match the factor sizes");

    std::vector<double> cur(x.begin(), x.end());
    for (std::size_t mode = 0; mode < factors.size(); ++mode) {
        const Matrix& f = *factors[mode];
        const auto [pre, post] = layout(shape, mode);
        const std::size_t in = f.cols();
        const std::size_t out = f.rows();
        std::vector<double> next(pre * out * post, 0.0);
        for (std::size_t a = 0; a < pre; ++a) {
            const double* src = cur.data() + a * in * post;
            double* dst = next.data() + a * out * post;
            for (std::size_t r = 0; r < out; ++r) {
                const auto frow = f.row(r);
                double* d = dst + r * post;
                for (std::size_t s = 0; s < in; ++s) {
                    const double w = frow[s];
                    if (w == 0.0) continue;
                    const double* sv = src + s * post;
                    for (std::size_t b = 0; b < post; ++b) d[b] += w * sv[b];
                }
            }
        }
        shape[mode] = out;
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> kron_solve_lower(std::span<const LowerTriangular* const> factors, std::span<const double> b) {
    std::vector<std::size_t> shape;
    std::size_t expected = 1;
    for (const LowerTriangular* f : factors) {
        shape.push_back(f->order());
        expected *= f->order();
    }
    if (b.size() != expected) throw DimensionError("kron_solve_lower: vector length does not match the factor sizes");

    std::vector<double> x(b.begin(), b.end());
    for (std::size_t mode = 0; mode < factors.size(); ++mode) {
        const LowerTriangular& l = *factors[mode];
        const auto [pre, post] = layout(shape, mode);
        const std::size_t n = l.order();
        for (std::size_t a = 0; a < pre; ++a) {
            double* block = x.data() + a * n * post;
            for (std::size_t r = 0; r < n; ++r) {
                double* xr = block + r * post;
                const auto lrow = l.row(r);
                for (std::size_t s = 0; s < r; ++s) {
                    const double w = lrow[s];
                    if (w == 0.0) continue;
                    const double* xs = block + s * post;
                    for (std::size_t k = 0; k < post; ++k) xr[k] -= w * xs[k];
                }
                const double d = lrow[r];
                if (d == 0.0) throw SingularError("kron_solve_lower: zero diagonal at index " + std::to_string(r));
                for (std::size_t k = 0; k < post; ++k) xr[k] /= d;
            }
        }
    }
    return x;
}

std::vector<double> kron_solve_upper(std::span<const LowerTriangular* const> factors, std::span<const double> b) {
    std::vector<std::size_t> shape;
    std::size_t expected = 1;
    for (const LowerTriangular* f : factors) {
        shape.push_back(f->order());
        expected *= f->order();
    }
    if (b.size() != expected) throw DimensionError("kron_solve_upper: vector length does not match the factor sizes");

    std::vector<double> x(b.begin(), b.end());
    for (std::size_t mode = 0; mode < factors.size(); ++mode) {
        const LowerTriangular& l = *factors[mode];
        const auto [pre, post] = layout(shape, mode);
        const std::size_t n = l.order();
        for (std::size_t a = 0; a < pre; ++a) {
            double* block = x.data() + a * n * post;
            for (std::size_t r = n; r-- > 0;) {
                double* xr = block + r * post;
                const auto lrow = l.row(r);
                const double d = lrow[r];
                if (d == 0.0) throw SingularError("kron_solve_upper: zero diagonal at index " + std::to_string(r));
                for (std::size_t k = 0; k < post; ++k) xr[k] /= d;
                for (std::size_t s = 0; s < r; ++s) {
                    const double w = lrow[s];
                    if (w == 0.0) continue;
                    double* xs = block + s * post;
                    for (std::size_t k = 0; k < post; ++k) xs[k] -= w * xr[k];
                }
            }
        }
    }
    return x;
}

}  // namespace prodkernel
