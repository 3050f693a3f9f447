#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "prodkernel/errors.hpp"
#include "prodkernel/experiments.hpp"
#include "prodkernel/interpolation.hpp"

using namespace prodkernel;

namespace {

const ProductKernel& kernel2() {
    static const ProductKernel pk({ComponentKernel::askey(8), ComponentKernel::wendland13()});
    return pk;
}

double target(std::span<const double> p) { return std::sin(3 * p[0]) + p[1] * p[1]; }

}  // namespace

TEST(Interpolation, DirectAssemblyEntries) {
    const PointSet x(2, {0.0, 0.0, 0.5, 0.25});
    const Matrix a = assemble_direct(kernel2(), x);
    EXPECT_DOUBLE_EQ(a(0, 0), 15.0);
    EXPECT_DOUBLE_EQ(a(0, 1), std::pow(0.5, 8) * eval_wendland_1_3(0.25));
    EXPECT_EQ(a(0, 1), a(1, 0));
}

TEST(Interpolation, KroneckerAssemblyMatchesDirect) {
    const GridPointSet g({make_xj(2), PointSet::univariate({0.0, 0.3, 0.9})});
    const Matrix k = assemble_kronecker(kernel2(), g);
    const Matrix d = assemble_direct(kernel2(), enumerate_grid(g));
    EXPECT_LE(max_relative_difference(k, d), 1e-15);
    const GridPointSet wrong({make_xj(2)});
    EXPECT_THROW(assemble_kronecker(kernel2(), wrong), DimensionError);
}

TEST(Interpolation, FitReproducesData) {
    const PointSet x(2, {0.1, 0.2, 0.7, 0.3, 0.4, 0.9, 0.8, 0.8, 0.2, 0.6});
    std::vector<double> f;
    for (std::size_t n = 0; n < x.size(); ++n) f.push_back(target(x[n]));
    const Interpolant s = fit(kernel2(), x, f);
    for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(s(x[n]), f[n], 1e-12);
    const std::vector<double> short_f{1.0};
    EXPECT_THROW(fit(kernel2(), x, short_f), DimensionError);
}

TEST(Interpolation, GridAndKroneckerFitsAgreeWithDirect) {
    const GridPointSet g({make_xj(2), make_xj(3)});
    const PointSet all = enumerate_grid(g);
    std::vector<double> f;
    for (std::size_t n = 0; n < all.size(); ++n) f.push_back(target(all[n]));
    const Interpolant direct = fit(kernel2(), all, f);
    const Interpolant kr = fit_kronecker(kernel2(), g, f);
    const GridInterpolant gr = fit_grid(kernel2(), g, f);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 20; ++t) {
        const std::vector<double> p{u(rng), u(rng)};
        EXPECT_NEAR(kr(p), direct(p), 1e-10);
        EXPECT_NEAR(gr(p), direct(p), 1e-10);
    }
}

TEST(Interpolation, PowerFunctionSingleCenter) {
    // P^2(x) = K(x,x) - K(x,x0)^2 / K(x0,x0)
    const PointSet x0(2, {0.5, 0.5});
    const std::vector<double> p{0.6, 0.3};
    const double k = kernel2()(p, x0[0]);
    const double expected = std::sqrt(15.0 - k * k / 15.0);
    EXPECT_NEAR(power_function_direct(kernel2(), x0, p), expected, 1e-12);
    EXPECT_NEAR(power_function_direct(kernel2(), x0, x0[0]), 0.0, 1e-6);
}

TEST(Interpolation, ClampedSqrt) {
    EXPECT_EQ(clamped_sqrt(4.0, 1.0), 2.0);
    EXPECT_EQ(clamped_sqrt(-1e-12, 1.0), 0.0);
    EXPECT_THROW(clamped_sqrt(-1e-3, 1.0), NumericalError);
}

TEST(Interpolation, MeanSquareError) {
    const PointSet x = PointSet::univariate({0.0, 1.0, 2.0});
    const Function zero = [](std::span<const double>) { return 0.0; };
    const Function id = [](std::span<const double> p) { return p[0]; };
    EXPECT_DOUBLE_EQ(mse(zero, id, x), 5.0 / 3.0);
    const std::vector<double> pred{0.0, 1.0, 4.0};
    EXPECT_DOUBLE_EQ(mse(pred, id, x), 4.0 / 3.0);
    EXPECT_THROW(mse(zero, id, PointSet(1)), ParameterError);
}

TEST(Interpolation, TensorTargetMatchesFullGridFit) {
    const GridPointSet g({make_xj(2), make_xj(3)});
    std::vector<std::vector<double>> parts(2);
    for (std::size_t k = 0; k < g.factor(0).size(); ++k) parts[0].push_back(std::cos(g.factor(0)[k][0]));
    for (std::size_t k = 0; k < g.factor(1).size(); ++k) parts[1].push_back(1 + g.factor(1)[k][0]);
    const ProductInterpolant s = fit_tensor_target(kernel2(), g, parts);
    const PointSet all = enumerate_grid(g);
    std::vector<double> f;
    for (std::size_t n = 0; n < all.size(); ++n) f.push_back(std::cos(all[n][0]) * (1 + all[n][1]));
    const Interpolant full = fit(kernel2(), all, f);
    const std::vector<double> p{0.33, 0.71};
    EXPECT_NEAR(s(p), full(p), 1e-10);
}
