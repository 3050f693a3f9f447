#include "prodkernel/interpolation.hpp"

#include <cmath>
#include <string>

#include "prodkernel/errors.hpp"
#include "prodkernel/parallel.hpp"

namespace prodkernel {

Matrix assemble_direct(const ProductKernel& pk, const PointSet& points) {
    if (!points.empty() && points.dim() != pk.total_dim()) {
        throw DimensionError("assemble_direct: point dimension does not match the kernel");
    }
    const std::size_t n = points.size();
    Matrix a(n, n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = pk(points[i], points[j]);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j);
    return a;
}

Matrix assemble_component(const ComponentKernel& k, const PointSet& points) {
    if (!points.empty() && points.dim() != k.dim()) {
        throw DimensionError("assemble_component: point dimension does not match the kernel");
    }
    const std::size_t n = points.size();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            a(i, j) = k(points[i], points[j]);
            a(j, i) = a(i, j);
        }
    }
    return a;
}

namespace {

void check_grid(const ProductKernel& pk, const GridPointSet& grid) {
    if (grid.num_factors() != pk.num_components()) {
        throw DimensionError("grid has " + std::to_string(grid.num_factors()) + " factors but the kernel has " +
                             std::to_string(pk.num_components()) + " components");
    }
    for (std::size_t i = 0; i < grid.num_factors(); ++i) {
        if (grid.factor(i).dim() != pk.component(i).dim()) {
            throw DimensionError("grid factor " + std::to_string(i) + " does not match the component dimension");
        }
    }
}

std::vector<LowerTriangular> component_factors(const ProductKernel& pk, const GridPointSet& grid) {
    std::vector<LowerTriangular> factors;
    factors.reserve(grid.num_factors());
    for (std::size_t i = 0; i < grid.num_factors(); ++i) {
        factors.push_back(cholesky(assemble_component(pk.component(i), grid.factor(i))));
    }
    return factors;
}

std::vector<double> solve_spd(const LowerTriangular& l, std::span<const double> values) {
    return solve_upper(l, solve_lower(l, values));
}

}  // namespace

Matrix assemble_kronecker(const ProductKernel& pk, const GridPointSet& grid, std::size_t max_entries) {
    check_grid(pk, grid);
    if (grid.size() != 0 && grid.size() > max_entries / grid.size()) {
        throw ResourceError("assemble_kronecker: a " + std::to_string(grid.size()) + "-point grid exceeds the size guard");
    }
    std::vector<Matrix> blocks;
    blocks.reserve(grid.num_factors());
    for (std::size_t i = 0; i < grid.num_factors(); ++i) {
        blocks.push_back(assemble_component(pk.component(i), grid.factor(i)));
    }
    return kron(blocks, max_entries);
}

Interpolant::Interpolant(ProductKernel kernel, PointSet centers, std::vector<double> coeffs)
    : kernel_(std::move(kernel)), centers_(std::move(centers)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != centers_.size()) throw DimensionError("interpolant: coefficient count differs from center count");
    if (!centers_.empty() && centers_.dim() != kernel_.total_dim()) {
        throw DimensionError("interpolant: center dimension does not match the kernel");
    }
}

double Interpolant::operator()(std::span<const double> x) const {
    if (x.size() != kernel_.total_dim()) throw DimensionError("interpolant: evaluation point has wrong dimension");
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * kernel_(x, centers_[i]);
    return s;
}

std::vector<double> Interpolant::evaluate(const PointSet& points) const {
    std::vector<double> out(points.size());
    parallel_for(points.size(), [&](std::size_t n) { out[n] = (*this)(points[n]); });
    return out;
}

Interpolant fit(const ProductKernel& pk, const PointSet& points, std::span<const double> values) {
    if (values.size() != points.size()) throw DimensionError("fit: value count differs from point count");
    const LowerTriangular l = cholesky(assemble_direct(pk, points));
    return Interpolant(pk, points, solve_spd(l, values));
}

Interpolant fit_kronecker(const ProductKernel& pk, const GridPointSet& grid, std::span<const double> values) {
    if (values.size() != grid.size()) throw DimensionError("fit_kronecker: value count differs from grid size");
    const LowerTriangular l = cholesky(assemble_kronecker(pk, grid));
    return Interpolant(pk, enumerate_grid(grid), solve_spd(l, values));
}

double evaluate(const Interpolant& s, std::span<const double> x) { return s(x); }

GridInterpolant::GridInterpolant(ProductKernel kernel, GridPointSet grid, std::vector<double> coeffs)
    : kernel_(std::move(kernel)), grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    check_grid(kernel_, grid_);
    if (coeffs_.size() != grid_.size()) throw DimensionError("grid interpolant: coefficient count differs from grid size");
}

double GridInterpolant::operator()(std::span<const double> x) const {
    if (x.size() != kernel_.total_dim()) throw DimensionError("grid interpolant: evaluation point has wrong dimension");
    std::vector<Matrix> rows;
    rows.reserve(grid_.num_factors());
    for (std::size_t i = 0; i < grid_.num_factors(); ++i) {
        const PointSet& f = grid_.factor(i);
        Matrix r(1, f.size());
        const auto xi = kernel_.slice(x, i);
        for (std::size_t j = 0; j < f.size(); ++j) r(0, j) = kernel_.component(i)(xi, f[j]);
        rows.push_back(std::move(r));
    }
    std::vector<const Matrix*> ptrs;
    for (const auto& r : rows) ptrs.push_back(&r);
    return kron_matvec(ptrs, coeffs_).front();
}

std::vector<double> GridInterpolant::evaluate(const PointSet& points) const {
    std::vector<double> out(points.size());
    parallel_for(points.size(), [&](std::size_t n) { out[n] = (*this)(points[n]); });
    return out;
}

GridInterpolant fit_grid(const ProductKernel& pk, const GridPointSet& grid, std::span<const double> values) {
    check_grid(pk, grid);
    if (values.size() != grid.size()) throw DimensionError("fit_grid: value count differs from grid size");
    const auto factors = component_factors(pk, grid);
    std::vector<const LowerTriangular*> ptrs;
    for (const auto& l : factors) ptrs.push_back(&l);
    auto coeffs = kron_solve_upper(ptrs, kron_solve_lower(ptrs, values));
    return GridInterpolant(pk, grid, std::move(coeffs));
}

ProductInterpolant::ProductInterpolant(ProductKernel kernel, std::vector<Interpolant> components)
    : kernel_(std::move(kernel)), components_(std::move(components)) {
    if (components_.size() != kernel_.num_components()) {
        throw DimensionError("product interpolant: one component interpolant per kernel component required");
    }
}

double ProductInterpolant::operator()(std::span<const double> x) const {
    if (x.size() != kernel_.total_dim()) throw DimensionError("product interpolant: evaluation point has wrong dimension");
    double value = 1.0;
    for (std::size_t i = 0; i < components_.size(); ++i) value *= components_[i](kernel_.slice(x, i));
    return value;
}

ProductInterpolant fit_tensor_target(const ProductKernel& pk, const GridPointSet& grid,
                                     const std::vector<std::vector<double>>& component_values) {
    check_grid(pk, grid);
    if (component_values.size() != grid.num_factors()) {
        throw DimensionError("fit_tensor_target: expected one value vector per factor");
    }
    std::vector<Interpolant> parts;
    parts.reserve(grid.num_factors());
    for (std::size_t i = 0; i < grid.num_factors(); ++i) {
        parts.push_back(fit(ProductKernel({pk.component(i)}), grid.factor(i), component_values[i]));
    }
    return ProductInterpolant(pk, std::move(parts));
}

double clamped_sqrt(double radicand, double scale) {
    if (radicand >= 0.0) return std::sqrt(radicand);
    if (radicand >= -1e-10 * scale) return 0.0;
    throw NumericalError("power function: squared value " + std::to_string(radicand) + " is negative beyond round-off");
}

DirectPowerFunction::DirectPowerFunction(ProductKernel kernel, PointSet points)
    : kernel_(std::move(kernel)), points_(std::move(points)) {
    if (!points_.empty()) chol_ = cholesky(assemble_direct(kernel_, points_));
}

double DirectPowerFunction::operator()(std::span<const double> x) const {
    const double kxx = kernel_(x, x);
    if (points_.empty()) return std::sqrt(kxx);
    std::vector<double> kx(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) kx[i] = kernel_(x, points_[i]);
    // k^T A^{-1} k = |L^{-1} k|^2
    const auto w = solve_lower(chol_, kx);
    return clamped_sqrt(kxx - dot(w, w), kxx);
}

double power_function_direct(const ProductKernel& pk, const PointSet& points, std::span<const double> x) {
    return DirectPowerFunction(pk, points)(x);
}

double mse(std::span<const double> predicted, const Function& target, const PointSet& eval_points) {
    if (eval_points.empty()) throw ParameterError("mse: no evaluation points");
    if (predicted.size() != eval_points.size()) throw DimensionError("mse: prediction count differs from point count");
    double sum = 0.0;
    for (std::size_t n = 0; n < eval_points.size(); ++n) {
        const double e = predicted[n] - target(eval_points[n]);
        sum += e * e;
    }
    return sum / static_cast<double>(eval_points.size());
}

double mse(const Function& model, const Function& target, const PointSet& eval_points) {
    std::vector<double> predicted(eval_points.size());
    parallel_for(eval_points.size(), [&](std::size_t n) { predicted[n] = model(eval_points[n]); });
    return mse(predicted, target, eval_points);
}

}  // namespace prodkernel
