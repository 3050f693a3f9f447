#include "prodkernel/newton.hpp"

#include <cmath>
#include <string>

#include "prodkernel/errors.hpp"
#include "prodkernel/interpolation.hpp"
#include "prodkernel/parallel.hpp"

namespace prodkernel {

NewtonBasis::NewtonBasis(ProductKernel kernel) : kernel_(std::move(kernel)), centers_(kernel_.total_dim()) {}

std::vector<double> NewtonBasis::power_diag() const {
    std::vector<double> d(size());
    for (std::size_t j = 0; j < size(); ++j) d[j] = diagonal(j);
    return d;
}

LowerTriangular NewtonBasis::vandermonde() const {
    Matrix l(size(), size());
    for (std::size_t j = 0; j < size(); ++j) {
        const auto r = vandermonde_row(j);
        std::copy(r.begin(), r.end(), l.row(j).begin());
    }
    return LowerTriangular(std::move(l));
}

std::vector<double> NewtonBasis::eval(std::span<const double> x) const {
    if (x.size() != dim()) throw DimensionError("newton basis: evaluation point has wrong dimension");
    const std::size_t m = size();
    std::vector<double> v(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto row = vandermonde_row(k);
        const double s = dot(row.first(k), std::span<const double>(v).first(k));
        v[k] = (kernel_(x, centers_[k]) - s) / row[k];
    }
    return v;
}

double NewtonBasis::power(std::span<const double> x) const {
    const auto v = eval(x);
    const double kxx = kernel_(x, x);
    return clamped_sqrt(kxx - dot(v, v), kxx);
}

void NewtonBasis::append(std::span<const double> x) { append(x, eval(x)); }

void NewtonBasis::append(std::span<const double> x, std::span<const double> basis_values) {
    if (x.size() != dim()) throw DimensionError("newton basis: new center has wrong dimension");
    if (basis_values.size() != size()) throw DimensionError("newton basis: expected one value per basis function");
    const double kxx = kernel_(x, x);
    const double radicand = kxx - dot(basis_values, basis_values);
    const double p = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
    if (p <= kBreakdownTolerance * std::sqrt(kxx)) {
        throw DegeneratePointError("newton basis: power function vanishes at new center " + std::to_string(size()),
                                   size());
    }
    centers_.push_back(x);
    packed_.insert(packed_.end(), basis_values.begin(), basis_values.end());
    packed_.push_back(p);
}

NewtonBasis newton_build(const ProductKernel& pk, const PointSet& points) {
    if (!points.empty() && points.dim() != pk.total_dim()) {
        throw DimensionError("newton_build: point dimension does not match the kernel");
    }
    NewtonBasis b(pk);
    for (std::size_t j = 0; j < points.size(); ++j) b.append(points[j]);
    return b;
}

NewtonBasis newton_build(const ComponentKernel& k, const PointSet& points) {
    return newton_build(ProductKernel({k}), points);
}

NewtonBasis newton_extend(const NewtonBasis& b, std::span<const double> x_new) {
    NewtonBasis out = b;
    out.append(x_new);
    return out;
}

std::vector<double> newton_eval(const NewtonBasis& b, std::span<const double> x) { return b.eval(x); }

double power_from_basis(const NewtonBasis& b, std::span<const double> x) { return b.power(x); }

double power_product(const ProductKernel& pk, std::span<const double> component_powers,
                     std::span<const double> diagonal_values) {
    if (component_powers.size() != pk.num_components() || diagonal_values.size() != pk.num_components()) {
        throw DimensionError("power_product: expected one value per kernel component");
    }
    double full = 1.0;
    double reduced = 1.0;
    for (std::size_t i = 0; i < component_powers.size(); ++i) {
        const double kii = diagonal_values[i];
        const double p = component_powers[i];
        if (!(p >= 0.0) || !(kii >= 0.0) || p * p > kii * (1.0 + 1e-10)) {
            throw ParameterError("power_product: component " + std::to_string(i) +
                                 " violates K_i(x,x) >= P_i(x)^2 >= 0");
        }
        full *= kii;
        reduced *= std::max(kii - p * p, 0.0);
    }
    return clamped_sqrt(full - reduced, full);
}

TensorNewtonBasis::TensorNewtonBasis(std::vector<NewtonBasis> components) : components_(std::move(components)) {
    if (components_.empty()) throw ParameterError("tensor newton basis: needs at least one component");
}

std::size_t TensorNewtonBasis::size() const noexcept {
    std::size_t n = 1;
    for (const auto& b : components_) n *= b.size();
    return n;
}

std::size_t TensorNewtonBasis::total_dim() const noexcept {
    std::size_t d = 0;
    for (const auto& b : components_) d += b.dim();
    return d;
}

GridPointSet TensorNewtonBasis::centers() const {
    std::vector<PointSet> factors;
    for (const auto& b : components_) factors.push_back(b.centers());
    return GridPointSet(std::move(factors));
}

TensorNewtonBasis tensor_newton_build(const ProductKernel& pk, const GridPointSet& grid) {
    if (grid.num_factors() != pk.num_components()) {
        throw DimensionError("tensor_newton_build: factor count differs from component count");
    }
    std::vector<NewtonBasis> parts;
    parts.reserve(grid.num_factors());
    for (std::size_t i = 0; i < grid.num_factors(); ++i) parts.push_back(newton_build(pk.component(i), grid.factor(i)));
    return TensorNewtonBasis(std::move(parts));
}

Matrix component_vandermonde(const NewtonBasis& b, const PointSet& points) {
    Matrix v(points.size(), b.size());
    for (std::size_t r = 0; r < points.size(); ++r) {
        const auto row = b.eval(points[r]);
        std::copy(row.begin(), row.end(), v.row(r).begin());
    }
    return v;
}

Matrix tensor_vandermonde(const TensorNewtonBasis& tb, const GridPointSet& grid, std::size_t max_entries) {
    if (grid.num_factors() != tb.num_components()) {
        throw DimensionError("tensor_vandermonde: factor count differs from component count");
    }
    std::vector<Matrix> parts;
    for (std::size_t i = 0; i < grid.num_factors(); ++i) parts.push_back(component_vandermonde(tb.component(i), grid.factor(i)));
    return kron(parts, max_entries);
}

namespace {

std::vector<const LowerTriangular*> pointers(const std::vector<LowerTriangular>& ls) {
    std::vector<const LowerTriangular*> p;
    for (const auto& l : ls) p.push_back(&l);
    return p;
}

}  // namespace

std::vector<double> newton_coeffs(const TensorNewtonBasis& tb, std::span<const double> values) {
    if (values.size() != tb.size()) throw DimensionError("newton_coeffs: value count differs from basis size");
    std::vector<LowerTriangular> ls;
    for (const auto& b : tb.components()) ls.push_back(b.vandermonde());
    return kron_solve_lower(pointers(ls), values);
}

TensorNewtonInterpolant::TensorNewtonInterpolant(TensorNewtonBasis basis, std::vector<double> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_.size()) throw DimensionError("tensor newton interpolant: coefficient count mismatch");
}

double TensorNewtonInterpolant::operator()(std::span<const double> x) const {
    if (x.size() != basis_.total_dim()) throw DimensionError("tensor newton interpolant: wrong point dimension");
    if (coeffs_.empty()) return 0.0;
    std::vector<Matrix> rows;
    std::size_t offset = 0;
    for (const auto& b : basis_.components()) {
        const auto v = b.eval(x.subspan(offset, b.dim()));
        offset += b.dim();
        rows.emplace_back(1, v.size(), v);
    }
    std::vector<const Matrix*> ptrs;
    for (const auto& r : rows) ptrs.push_back(&r);
    return kron_matvec(ptrs, coeffs_).front();
}

std::vector<double> TensorNewtonInterpolant::evaluate(const PointSet& points) const {
    std::vector<double> out(points.size());
    parallel_for(points.size(), [&](std::size_t n) { out[n] = (*this)(points[n]); });
    return out;
}

TensorNewtonInterpolant tensor_newton_fit(const ProductKernel& pk, const GridPointSet& grid,
                                          std::span<const double> values) {
    TensorNewtonBasis tb = tensor_newton_build(pk, grid);
    auto c = newton_coeffs(tb, values);
    return TensorNewtonInterpolant(std::move(tb), std::move(c));
}

void NewtonInterpolant::add(std::span<const double> x, double f) {
    const auto v = basis_.eval(x);
    const double s = dot(v, coeffs_);
    basis_.append(x, v);
    coeffs_.push_back((f - s) / basis_.diagonal(basis_.size() - 1));
}

double NewtonInterpolant::operator()(std::span<const double> x) const { return dot(basis_.eval(x), coeffs_); }

NewtonInterpolant newton_fit(const ProductKernel& pk, const PointSet& points, std::span<const double> values) {
    if (values.size() != points.size()) throw DimensionError("newton_fit: value count differs from point count");
    NewtonInterpolant s(pk);
    for (std::size_t j = 0; j < points.size(); ++j) s.add(points[j], values[j]);
    return s;
}

}  // namespace prodkernel
