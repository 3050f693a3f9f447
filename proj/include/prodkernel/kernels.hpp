#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prodkernel {

/// Askey's truncated power function (1-r)_+^beta, beta >= 2.
double eval_askey(double beta, double r);

/// C^6 Wendland function for d = 1: (1-r)_+^7 (315r^3 + 285r^2 + 105r + 15).
double eval_wendland_1_3(double r);

/// C^6 Wendland function for d <= 3: (1-r)_+^8 (32r^3 + 25r^2 + 8r + 1).
double eval_wendland_3_3(double r);

enum class KernelFamily { Askey, Wendland13, Wendland33, Gaussian };

std::string_view family_name(KernelFamily family);

/// A positive definite kernel on R^dim.
///
/// Radial families are evaluated as phi(shape * |x - y|); the Gaussian as
/// exp(-epsilon * (shape * |x - y|)^2). Values are immutable after
/// construction and evaluation is pure.
class ComponentKernel {
public:
    static ComponentKernel askey(double beta, double shape = 1.0, std::size_t dim = 1);
    static ComponentKernel wendland13(double shape = 1.0, std::size_t dim = 1);
    static ComponentKernel wendland33(double shape = 1.0, std::size_t dim = 1);
    static ComponentKernel gaussian(double epsilon, double shape = 1.0, std::size_t dim = 1);

    KernelFamily family() const noexcept { return family_; }
    /// beta for Askey, epsilon for Gaussian, unused otherwise.
    double parameter() const noexcept { return param_; }
    double shape() const noexcept { return shape_; }
    std::size_t dim() const noexcept { return dim_; }
    bool compactly_supported() const noexcept { return family_ != KernelFamily::Gaussian; }

    /// Profile value at the (unscaled) distance r.
    double radial(double r) const;
    /// Value at r = 0, i.e. k(x, x).
    double diagonal() const { return radial(0.0); }

    /// k(x, y); throws DimensionError unless both have `dim()` entries.
    double operator()(std::span<const double> x, std::span<const double> y) const;

    /// Round-trippable spec string, e.g. "askey:beta=8,shape=1,dim=1".
    std::string to_spec() const;

    friend bool operator==(const ComponentKernel&, const ComponentKernel&) = default;

private:
    ComponentKernel(KernelFamily family, double param, double shape, std::size_t dim);
    friend ComponentKernel parse_kernel_spec(std::string_view spec);

    KernelFamily family_;
    double param_;
    double shape_;
    std::size_t dim_;
};

double kernel_eval(const ComponentKernel& k, std::span<const double> x, std::span<const double> y);

/// Parses `family[:key=value,...]`.
///
/// Families: askey (beta), wendland13, wendland33, gaussian (eps). Every
/// family accepts `shape` (default 1) and `dim` (default 1).
ComponentKernel parse_kernel_spec(std::string_view spec);

/// K(x, y) = prod_i K_i(x^i, y^i), where x^i is the i-th contiguous
/// coordinate slice of x.
class ProductKernel {
public:
    explicit ProductKernel(std::vector<ComponentKernel> components);

    std::size_t num_components() const noexcept { return components_.size(); }
    const ComponentKernel& component(std::size_t i) const { return components_.at(i); }
    const std::vector<ComponentKernel>& components() const noexcept { return components_; }
    std::size_t total_dim() const noexcept { return total_dim_; }
    /// Start of component i's coordinate slice; offsets()[M] == total_dim().
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

    std::span<const double> slice(std::span<const double> x, std::size_t i) const {
        return x.subspan(offsets_[i], components_[i].dim());
    }

    double operator()(std::span<const double> x, std::span<const double> y) const;
    /// K(x, x) = prod_i K_i(0).
    double diagonal() const;

private:
    std::vector<ComponentKernel> components_;
    std::vector<std::size_t> offsets_;
    std::size_t total_dim_ = 0;
};

double product_eval(const ProductKernel& pk, std::span<const double> x, std::span<const double> y);

}  // namespace prodkernel
