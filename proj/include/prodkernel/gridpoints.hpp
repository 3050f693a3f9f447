#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <vector>

#include "prodkernel/kernels.hpp"
#include "prodkernel/linalg.hpp"

namespace prodkernel {

/// Rounds to 12 significant decimal digits; used for every point equality test.
double canonical(double value);

/// Ordered list of points in R^dim, stored contiguously.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t dim) : dim_(dim) {}
    PointSet(std::size_t dim, std::vector<double> coords);
    /// Points of a one-dimensional set.
    static PointSet univariate(std::span<const double> values);
    static PointSet univariate(std::initializer_list<double> values);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> operator[](std::size_t i) const noexcept { return {coords_.data() + i * dim_, dim_}; }
    std::span<const double> coords() const noexcept { return coords_; }

    void push_back(std::span<const double> point);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    /// True if no two points coincide after canonical rounding.
    bool pairwise_distinct() const;
    /// Index of `point` (canonical comparison) or size() if absent.
    std::size_t find(std::span<const double> point) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// Cartesian product X^1 x ... x X^M, enumerated with the last factor fastest:
/// point k (0-based) takes factor i's point at digit i of k in the mixed radix
/// (|X^1|, ..., |X^M|).
class GridPointSet {
public:
    /// Throws ParameterError if a factor is empty or has duplicate points.
    explicit GridPointSet(std::vector<PointSet> factors);

    std::size_t num_factors() const noexcept { return factors_.size(); }
    const PointSet& factor(std::size_t i) const { return factors_.at(i); }
    const std::vector<PointSet>& factors() const noexcept { return factors_; }
    std::vector<std::size_t> sizes() const;
    std::size_t total_dim() const noexcept { return total_dim_; }
    /// prod_i |X^i|
    std::size_t size() const noexcept { return size_; }

    /// The k-th grid point (0-based).
    std::vector<double> point(std::size_t k) const;

private:
    std::vector<PointSet> factors_;
    std::size_t total_dim_ = 0;
    std::size_t size_ = 1;
};

/// Multi-index (1-based) of the 1-based grid position k; the last factor varies fastest.
std::vector<std::size_t> index_decompose(std::size_t k, std::span<const std::size_t> sizes);

/// All grid points in canonical order. Throws ResourceError above `max_entries` coordinates.
PointSet enumerate_grid(const GridPointSet& grid, std::size_t max_entries = kMaxEntries);

/// Distinct coordinate slices per kernel component, in first-occurrence order.
std::vector<PointSet> project(const PointSet& points, const ProductKernel& pk);

/// Smallest grid built from the projections of `points`; contains every input point.
GridPointSet embed_scattered(const PointSet& points, const ProductKernel& pk);

/// Reads a CSV point file with header `x1,...,xd`.
PointSet read_points_csv(const std::filesystem::path& path);
void write_points_csv(const PointSet& points, const std::filesystem::path& path);

}  // namespace prodkernel
