#include "prodkernel/gridpoints.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "prodkernel/errors.hpp"
#include "prodkernel/table.hpp"

namespace prodkernel {

double canonical(double value) {
    if (value == 0.0 || !std::isfinite(value)) return value == 0.0 ? 0.0 : value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    return std::strtod(buf, nullptr);
}

namespace {

std::vector<double> canonical_key(std::span<const double> p) {
    std::vector<double> key(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) key[k] = canonical(p[k]);
    return key;
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw ParameterError("point set: dimension must be positive");
    if (coords_.size() % dim_ != 0) throw DimensionError("point set: coordinate count is not a multiple of dim");
}

PointSet PointSet::univariate(std::span<const double> values) {
    return PointSet(1, std::vector<double>(values.begin(), values.end()));
}

PointSet PointSet::univariate(std::initializer_list<double> values) {
    return PointSet(1, std::vector<double>(values));
}

void PointSet::push_back(std::span<const double> point) {
    if (point.size() != dim_) throw DimensionError("point set: point has wrong dimension");
    coords_.insert(coords_.end(), point.begin(), point.end());
}

bool PointSet::pairwise_distinct() const {
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!seen.insert(canonical_key((*this)[i])).second) return false;
    }
    return true;
}

std::size_t PointSet::find(std::span<const double> point) const {
    if (point.size() != dim_) return size();
    const auto key = canonical_key(point);
    for (std::size_t i = 0; i < size(); ++i) {
        if (canonical_key((*this)[i]) == key) return i;
    }
    return size();
}

GridPointSet::GridPointSet(std::vector<PointSet> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw ParameterError("grid: needs at least one factor");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (f.empty()) throw ParameterError("grid: factor " + std::to_string(i) + " is empty");
        if (!f.pairwise_distinct()) throw ParameterError("grid: factor " + std::to_string(i) + " has duplicate points");
        total_dim_ += f.dim();
        if (size_ > std::numeric_limits<std::size_t>::max() / f.size()) throw ResourceError("grid: size overflow");
        size_ *= f.size();
    }
}

std::vector<std::size_t> GridPointSet::sizes() const {
    std::vector<std::size_t> s;
    s.reserve(factors_.size());
    for (const auto& f : factors_) s.push_back(f.size());
    return s;
}

std::vector<double> GridPointSet::point(std::size_t k) const {
    if (k >= size_) throw ParameterError("grid: point index out of range");
    std::vector<double> p(total_dim_);
    std::size_t offset = total_dim_;
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const auto& f = factors_[i];
        const std::size_t j = k % f.size();
        k /= f.size();
        offset -= f.dim();
        const auto src = f[j];
        std::copy(src.begin(), src.end(), p.begin() + static_cast<std::ptrdiff_t>(offset));
    }
    return p;
}

std::vector<std::size_t> index_decompose(std::size_t k, std::span<const std::size_t> sizes) {
    std::size_t total = 1;
    for (std::size_t s : sizes) {
        if (s == 0) throw ParameterError("index_decompose: factor sizes must be positive");
        total *= s;
    }
    if (k < 1 || k > total) throw ParameterError("index_decompose: index out of range");
    // Recursive form of x_k = (x^1_{ceil(k/N2)}, x^2_{(k-1) mod N2 + 1}) with N2 the
    // size of the trailing block; equivalently mixed-radix digits of k-1.
    std::vector<std::size_t> idx(sizes.size());
    std::size_t rem = k - 1;
    for (std::size_t i = sizes.size(); i-- > 0;) {
        idx[i] = rem % sizes[i] + 1;
        rem /= sizes[i];
    }
    return idx;
}

PointSet enumerate_grid(const GridPointSet& grid, std::size_t max_entries) {
    if (grid.total_dim() != 0 && grid.size() > max_entries / grid.total_dim()) {
        throw ResourceError("enumerate_grid: " + std::to_string(grid.size()) + " points exceed the size guard");
    }
    PointSet out(grid.total_dim());
    out.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) out.push_back(grid.point(k));
    return out;
}

std::vector<PointSet> project(const PointSet& points, const ProductKernel& pk) {
    if (points.dim() != pk.total_dim() && !points.empty()) {
        throw DimensionError("project: point dimension does not match the kernel");
    }
    std::vector<PointSet> out;
    for (std::size_t i = 0; i < pk.num_components(); ++i) {
        PointSet factor(pk.component(i).dim());
        std::set<std::vector<double>> seen;
        for (std::size_t n = 0; n < points.size(); ++n) {
            const auto s = pk.slice(points[n], i);
            if (seen.insert(canonical_key(s)).second) factor.push_back(s);
        }
        out.push_back(std::move(factor));
    }
    return out;
}

GridPointSet embed_scattered(const PointSet& points, const ProductKernel& pk) {
    if (points.empty()) throw ParameterError("embed_scattered: no points");
    return GridPointSet(project(points, pk));
}

PointSet read_points_csv(const std::filesystem::path& path) {
    const Table t = read_csv(path);
    if (t.num_columns() == 0) throw ParseError("point file " + path.string() + ": missing header");
    for (std::size_t c = 0; c < t.num_columns(); ++c) {
        if (t.header()[c] != "x" + std::to_string(c + 1)) {
            throw ParseError("point file " + path.string() + ": expected header x1,...,xd");
        }
    }
    PointSet points(t.num_columns());
    std::vector<double> p(t.num_columns());
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
        for (std::size_t c = 0; c < t.num_columns(); ++c) p[c] = t.number(r, c);
        points.push_back(p);
    }
    return points;
}

void write_points_csv(const PointSet& points, const std::filesystem::path& path) {
    std::vector<std::string> header;
    for (std::size_t c = 0; c < points.dim(); ++c) header.push_back("x" + std::to_string(c + 1));
    Table t(header);
    for (std::size_t n = 0; n < points.size(); ++n) {
        std::vector<Cell> row;
        for (double v : points[n]) row.emplace_back(v);
        t.add_row(std::move(row));
    }
    write_csv(t, path);
}

}  // namespace prodkernel
