#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prodkernel/gridpoints.hpp"
#include "prodkernel/kernels.hpp"
#include "prodkernel/linalg.hpp"

namespace prodkernel {

/// Newton basis n_1, ..., n_m of span{K(., x_1), ..., K(., x_m)}.
///
/// The basis is stored implicitly through its Vandermonde matrix at the
/// centers, L(j, k) = n_k(x_j), which is lower triangular and equals the
/// Cholesky factor of the interpolation matrix. Basis functions are
/// evaluated by the recursion
///   n_k(x) = (K(x, x_k) - sum_{j<k} n_j(x_k) n_j(x)) / P_{k-1}(x_k),
/// with diagonal L(k, k) = P_{k-1}(x_k), the power function of the first
/// k-1 centers at x_k.
class NewtonBasis {
public:
    explicit NewtonBasis(ProductKernel kernel);
    explicit NewtonBasis(const ComponentKernel& kernel) : NewtonBasis(ProductKernel({kernel})) {}

    const ProductKernel& kernel() const noexcept { return kernel_; }
    const PointSet& centers() const noexcept { return centers_; }
    std::size_t size() const noexcept { return centers_.size(); }
    bool empty() const noexcept { return centers_.empty(); }
    std::size_t dim() const noexcept { return kernel_.total_dim(); }

    /// Row j of the Vandermonde matrix: n_0(x_j), ..., n_j(x_j).
    std::span<const double> vandermonde_row(std::size_t j) const noexcept {
        return {packed_.data() + j * (j + 1) / 2, j + 1};
    }
    double diagonal(std::size_t j) const noexcept { return packed_[j * (j + 1) / 2 + j]; }
    /// P_{X_{k-1}}(x_k) for every center, i.e. the diagonal of L.
    std::vector<double> power_diag() const;
    LowerTriangular vandermonde() const;

    /// (n_1(x), ..., n_m(x))
    std::vector<double> eval(std::span<const double> x) const;
    /// P_X(x) = sqrt(K(x,x) - sum_k n_k(x)^2)
    double power(std::span<const double> x) const;

    /// Adds x as the next center. Throws DegeneratePointError if the power
    /// function at x is at or below kBreakdownTolerance * sqrt(K(x,x)).
    void append(std::span<const double> x);
    /// As append(), with the values n_k(x) for the current basis already known.
    void append(std::span<const double> x, std::span<const double> basis_values);

private:
    ProductKernel kernel_;
    PointSet centers_;
    std::vector<double> packed_;
};

NewtonBasis newton_build(const ComponentKernel& k, const PointSet& points);
NewtonBasis newton_build(const ProductKernel& pk, const PointSet& points);
/// A copy of `b` extended by one center.
NewtonBasis newton_extend(const NewtonBasis& b, std::span<const double> x_new);
std::vector<double> newton_eval(const NewtonBasis& b, std::span<const double> x);
double power_from_basis(const NewtonBasis& b, std::span<const double> x);

/// Power function of a product kernel on a grid from component data:
/// P_X(x)^2 = prod_i K_i(x^i,x^i) - prod_i (K_i(x^i,x^i) - P_{X^i}(x^i)^2).
/// Returns P_X(x).
double power_product(const ProductKernel& pk, std::span<const double> component_powers,
                     std::span<const double> diagonal_values);

/// Products of component Newton functions; an orthonormal basis of the
/// trial space on the grid of the component centers.
class TensorNewtonBasis {
public:
    explicit TensorNewtonBasis(std::vector<NewtonBasis> components);

    std::size_t num_components() const noexcept { return components_.size(); }
    const NewtonBasis& component(std::size_t i) const { return components_.at(i); }
    const std::vector<NewtonBasis>& components() const noexcept { return components_; }
    std::size_t size() const noexcept;
    std::size_t total_dim() const noexcept;
    /// Grid of the component centers (all components must be nonempty).
    GridPointSet centers() const;

private:
    std::vector<NewtonBasis> components_;
};

TensorNewtonBasis tensor_newton_build(const ProductKernel& pk, const GridPointSet& grid);

/// Evaluation matrix of one component basis at `points` (rows: points, columns: basis functions).
Matrix component_vandermonde(const NewtonBasis& b, const PointSet& points);
/// Evaluation matrix of the tensor basis at the grid points (Kronecker product of component matrices).
Matrix tensor_vandermonde(const TensorNewtonBasis& tb, const GridPointSet& grid, std::size_t max_entries = kMaxEntries);

/// Solves (L_1 (x) ... (x) L_M) c = values, values in enumerate_grid order.
std::vector<double> newton_coeffs(const TensorNewtonBasis& tb, std::span<const double> values);

/// s = sum over multi-indices of c_j prod_i n^i_{j_i}; coefficients in grid order.
class TensorNewtonInterpolant {
public:
    TensorNewtonInterpolant(TensorNewtonBasis basis, std::vector<double> coeffs);

    const TensorNewtonBasis& basis() const noexcept { return basis_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    double operator()(std::span<const double> x) const;
    std::vector<double> evaluate(const PointSet& points) const;

private:
    TensorNewtonBasis basis_;
    std::vector<double> coeffs_;
};

TensorNewtonInterpolant tensor_newton_fit(const ProductKernel& pk, const GridPointSet& grid,
                                          std::span<const double> values);

/// Interpolant in a (non-tensor) Newton basis, extended one center at a time.
class NewtonInterpolant {
public:
    explicit NewtonInterpolant(ProductKernel kernel) : basis_(std::move(kernel)) {}

    const NewtonBasis& basis() const noexcept { return basis_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// Adds center x with data value f; the new coefficient is
    /// (f - s(x)) / n_new(x).
    void add(std::span<const double> x, double f);
    double operator()(std::span<const double> x) const;

private:
    NewtonBasis basis_;
    std::vector<double> coeffs_;
};

NewtonInterpolant newton_fit(const ProductKernel& pk, const PointSet& points, std::span<const double> values);

}  // namespace prodkernel
