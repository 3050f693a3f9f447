#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "prodkernel/gridpoints.hpp"
#include "prodkernel/kernels.hpp"
#include "prodkernel/linalg.hpp"

namespace prodkernel {

using Function = std::function<double(std::span<const double>)>;

/// A_{K,X} = (K(x_i, x_j)) by pointwise evaluation.
Matrix assemble_direct(const ProductKernel& pk, const PointSet& points);
/// Interpolation matrix of a single component kernel.
Matrix assemble_component(const ComponentKernel& k, const PointSet& points);
/// A_{K,X} for a grid, built as the Kronecker product of the component matrices.
/// Row order is that of enumerate_grid(grid).
Matrix assemble_kronecker(const ProductKernel& pk, const GridPointSet& grid, std::size_t max_entries = kMaxEntries);

/// s(x) = sum_i c_i K(x, x_i).
class Interpolant {
public:
    Interpolant(ProductKernel kernel, PointSet centers, std::vector<double> coeffs);

    const ProductKernel& kernel() const noexcept { return kernel_; }
    const PointSet& centers() const noexcept { return centers_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    double operator()(std::span<const double> x) const;
    std::vector<double> evaluate(const PointSet& points) const;

private:
    ProductKernel kernel_;
    PointSet centers_;
    std::vector<double> coeffs_;
};

/// Solves A_{K,X} c = values with an unpivoted Cholesky factorization in the given point order.
Interpolant fit(const ProductKernel& pk, const PointSet& points, std::span<const double> values);
/// As fit(), with the matrix assembled through the Kronecker factorization.
Interpolant fit_kronecker(const ProductKernel& pk, const GridPointSet& grid, std::span<const double> values);

double evaluate(const Interpolant& s, std::span<const double> x);

/// Interpolant on a grid with coefficients stored in grid order. Both the
/// solve and evaluation use only the component matrices.
class GridInterpolant {
public:
    GridInterpolant(ProductKernel kernel, GridPointSet grid, std::vector<double> coeffs);

    const ProductKernel& kernel() const noexcept { return kernel_; }
    const GridPointSet& grid() const noexcept { return grid_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    double operator()(std::span<const double> x) const;
    std::vector<double> evaluate(const PointSet& points) const;

private:
    ProductKernel kernel_;
    GridPointSet grid_;
    std::vector<double> coeffs_;
};

/// Solves (A_1 (x) ... (x) A_M) c = values via the component Cholesky factors.
GridInterpolant fit_grid(const ProductKernel& pk, const GridPointSet& grid, std::span<const double> values);

/// s(x) = prod_i s_i(x^i) for separately fitted component interpolants.
class ProductInterpolant {
public:
    ProductInterpolant(ProductKernel kernel, std::vector<Interpolant> components);

    const ProductKernel& kernel() const noexcept { return kernel_; }
    const std::vector<Interpolant>& components() const noexcept { return components_; }

    double operator()(std::span<const double> x) const;

private:
    ProductKernel kernel_;
    std::vector<Interpolant> components_;
};

/// Interpolant of a separable target f = prod_i f_i on a grid, from the
/// samples of each f_i on its factor.
ProductInterpolant fit_tensor_target(const ProductKernel& pk, const GridPointSet& grid,
                                     const std::vector<std::vector<double>>& component_values);

/// P_X(x) = sqrt(K(x,x) - k_x^T A^{-1} k_x), computed from a Cholesky factor of A_{K,X}.
class DirectPowerFunction {
public:
    DirectPowerFunction(ProductKernel kernel, PointSet points);
    double operator()(std::span<const double> x) const;

private:
    ProductKernel kernel_;
    PointSet points_;
    LowerTriangular chol_;
};

double power_function_direct(const ProductKernel& pk, const PointSet& points, std::span<const double> x);

/// sqrt of a squared norm, clamping round-off negatives in [-1e-10 * scale, 0) to zero.
double clamped_sqrt(double radicand, double scale);

/// Mean of (model(x) - target(x))^2 over eval_points.
double mse(const Function& model, const Function& target, const PointSet& eval_points);
/// Same, from precomputed model values.
double mse(std::span<const double> predicted, const Function& target, const PointSet& eval_points);

}  // namespace prodkernel
