#include "prodkernel/kernels.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "prodkernel/errors.hpp"

namespace prodkernel {

namespace {

double truncated(double r) { return r < 1.0 ? 1.0 - r : 0.0; }

double parse_number(std::string_view text, std::string_view key) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError("kernel spec: cannot parse value '" + std::string(text) + "' for key '" +
                         std::string(key) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

double eval_askey(double beta, double r) {
    if (!(beta >= 2.0)) throw ParameterError("askey: beta must be >= 2");
    if (r < 0.0) throw ParameterError("askey: radius must be nonnegative");
    return std::pow(truncated(r), beta);
}

double eval_wendland_1_3(double r) {
    if (r < 0.0) throw ParameterError("wendland13: radius must be nonnegative");
    const double t = truncated(r);
    if (t == 0.0) return 0.0;
    const double t2 = t * t;
    const double t7 = t2 * t2 * t2 * t;
    return t7 * (((315.0 * r + 285.0) * r + 105.0) * r + 15.0);
}

double eval_wendland_3_3(double r) {
    if (r < 0.0) throw ParameterError("wendland33: radius must be nonnegative");
    const double t = truncated(r);
    if (t == 0.0) return 0.0;
    const double t2 = t * t;
    const double t4 = t2 * t2;
    return t4 * t4 * (((32.0 * r + 25.0) * r + 8.0) * r + 1.0);
}

std::string_view family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::Askey: return "askey";
        case KernelFamily::Wendland13: return "wendland13";
        case KernelFamily::Wendland33: return "wendland33";
        case KernelFamily::Gaussian: return "gaussian";
    }
    return "unknown";
}

ComponentKernel::ComponentKernel(KernelFamily family, double param, double shape, std::size_t dim)
    : family_(family), param_(param), shape_(shape), dim_(dim) {
    if (!(shape > 0.0) || !std::isfinite(shape)) throw ParameterError("kernel: shape must be > 0");
    if (dim == 0) throw ParameterError("kernel: dim must be >= 1");
    if (family == KernelFamily::Askey && !(param >= 2.0 && std::isfinite(param))) {
        throw ParameterError("askey: beta must be >= 2");
    }
    if (family == KernelFamily::Gaussian && !(param > 0.0 && std::isfinite(param))) {
        throw ParameterError("gaussian: eps must be > 0");
    }
}

ComponentKernel ComponentKernel::askey(double beta, double shape, std::size_t dim) {
    return {KernelFamily::Askey, beta, shape, dim};
}
ComponentKernel ComponentKernel::wendland13(double shape, std::size_t dim) {
    return {KernelFamily::Wendland13, 0.0, shape, dim};
}
ComponentKernel ComponentKernel::wendland33(double shape, std::size_t dim) {
    return {KernelFamily::Wendland33, 0.0, shape, dim};
}
ComponentKernel ComponentKernel::gaussian(double epsilon, double shape, std::size_t dim) {
    return {KernelFamily::Gaussian, epsilon, shape, dim};
}

double ComponentKernel::radial(double r) const {
    const double s = shape_ * r;
    switch (family_) {
        case KernelFamily::Askey: return eval_askey(param_, s);
        case KernelFamily::Wendland13: return eval_wendland_1_3(s);
        case KernelFamily::Wendland33: return eval_wendland_3_3(s);
        case KernelFamily::Gaussian: return std::exp(-param_ * s * s);
    }
    return 0.0;
}

double ComponentKernel::operator()(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != dim_ || y.size() != dim_) {
        throw DimensionError("kernel: expected points of dimension " + std::to_string(dim_));
    }
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double d = x[k] - y[k];
        r2 += d * d;
    }
    return radial(std::sqrt(r2));
}

std::string ComponentKernel::to_spec() const {
    std::ostringstream os;
    os.precision(17);
    os << family_name(family_) << ':';
    if (family_ == KernelFamily::Askey) os << "beta=" << param_ << ',';
    if (family_ == KernelFamily::Gaussian) os << "eps=" << param_ << ',';
    os << "shape=" << shape_ << ",dim=" << dim_;
    return os.str();
}

double kernel_eval(const ComponentKernel& k, std::span<const double> x, std::span<const double> y) {
    return k(x, y);
}

ComponentKernel parse_kernel_spec(std::string_view spec) {
    spec = trim(spec);
    const auto colon = spec.find(':');
    const std::string_view name = trim(spec.substr(0, colon));
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    KernelFamily family;
    if (name == "askey") {
        family = KernelFamily::Askey;
    } else if (name == "wendland13") {
        family = KernelFamily::Wendland13;
    } else if (name == "wendland33") {
        family = KernelFamily::Wendland33;
    } else if (name == "gaussian") {
        family = KernelFamily::Gaussian;
    } else {
        throw ParseError("kernel spec: unknown family '" + std::string(name) + "'");
    }

    double param = family == KernelFamily::Askey ? 8.0 : family == KernelFamily::Gaussian ? 1.0 : 0.0;
    double shape = 1.0;
    double dim = 1.0;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("kernel spec: expected key=value, got '" + std::string(item) + "'");
        }
        const std::string_view key = trim(item.substr(0, eq));
        const double value = parse_number(trim(item.substr(eq + 1)), key);
        if (key == "shape") {
            shape = value;
        } else if (key == "dim") {
            if (value < 1.0 || value != std::floor(value)) throw ParseError("kernel spec: dim must be a positive integer");
            dim = value;
        } else if (key == "beta" && family == KernelFamily::Askey) {
            param = value;
        } else if ((key == "eps" || key == "epsilon") && family == KernelFamily::Gaussian) {
            param = value;
        } else {
            throw ParseError("kernel spec: unknown key '" + std::string(key) + "' for family '" +
                             std::string(name) + "'");
        }
    }
    try {
        return ComponentKernel(family, param, shape, static_cast<std::size_t>(dim));
    } catch (const ParameterError& e) {
        throw ParseError(std::string("kernel spec '") + std::string(spec) + "': " + e.what());
    }
}

ProductKernel::ProductKernel(std::vector<ComponentKernel> components) : components_(std::move(components)) {
    if (components_.empty()) throw ParameterError("product kernel needs at least one component");
    offsets_.reserve(components_.size() + 1);
    for (const auto& c : components_) {
        offsets_.push_back(total_dim_);
        total_dim_ += c.dim();
    }
    offsets_.push_back(total_dim_);
}

double ProductKernel::operator()(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != total_dim_ || y.size() != total_dim_) {
        throw DimensionError("product kernel: expected points of dimension " + std::to_string(total_dim_));
    }
    double value = 1.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        value *= components_[i](slice(x, i), slice(y, i));
    }
    return value;
}

double ProductKernel::diagonal() const {
    double value = 1.0;
    for (const auto& c : components_) value *= c.diagonal();
    return value;
}

double product_eval(const ProductKernel& pk, std::span<const double> x, std::span<const double> y) {
    return pk(x, y);
}

}  // namespace prodkernel
