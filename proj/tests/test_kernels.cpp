#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "prodkernel/errors.hpp"
#include "prodkernel/kernels.hpp"

using namespace prodkernel;

TEST(Kernels, AskeyValues) {
    EXPECT_DOUBLE_EQ(eval_askey(8, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval_askey(8, 0.3), std::pow(0.7, 8));
    EXPECT_EQ(eval_askey(8, 1.0), 0.0);
    EXPECT_EQ(eval_askey(8, 2.5), 0.0);
    EXPECT_DOUBLE_EQ(eval_askey(2.5, 0.5), std::pow(0.5, 2.5));
}

TEST(Kernels, AskeyRejectsBadArguments) {
    EXPECT_THROW(eval_askey(1.5, 0.1), ParameterError);
    EXPECT_THROW(eval_askey(8, -0.1), ParameterError);
}

TEST(Kernels, WendlandExactDyadicValues) {
    // (1/2)^7 * (315/8 + 285/4 + 105/2 + 15) = 178.125 / 128
    EXPECT_DOUBLE_EQ(eval_wendland_1_3(0.5), 1.3916015625);
    EXPECT_DOUBLE_EQ(eval_wendland_1_3(0.0), 15.0);
    EXPECT_EQ(eval_wendland_1_3(1.0), 0.0);
    EXPECT_EQ(eval_wendland_1_3(3.0), 0.0);
    // (3/4)^8 * 5.0625
    EXPECT_DOUBLE_EQ(eval_wendland_3_3(0.25), 0.50682163238525390625);
    EXPECT_DOUBLE_EQ(eval_wendland_3_3(0.0), 1.0);
    EXPECT_EQ(eval_wendland_3_3(1.2), 0.0);
}

TEST(Kernels, WendlandMatchesExpandedForm) {
    for (double r = 0.0; r < 1.0; r += 0.0625) {
        const double w13 = std::pow(1 - r, 7) * (315 * r * r * r + 285 * r * r + 105 * r + 15);
        const double w33 = std::pow(1 - r, 8) * (32 * r * r * r + 25 * r * r + 8 * r + 1);
        EXPECT_NEAR(eval_wendland_1_3(r), w13, 1e-13 * 15);
        EXPECT_NEAR(eval_wendland_3_3(r), w33, 1e-14);
    }
}

TEST(Kernels, ComponentKernelUsesShapeAndDistance) {
    const auto k = ComponentKernel::askey(8, 0.5, 2);
    const std::vector<double> x{0.0, 0.0}, y{0.6, 0.8};
    EXPECT_DOUBLE_EQ(k(x, y), std::pow(0.5, 8));
    EXPECT_DOUBLE_EQ(k.diagonal(), 1.0);
    const std::vector<double> z{0.1};
    EXPECT_THROW(k(x, z), DimensionError);
}

TEST(Kernels, GaussianValue) {
    const auto k = ComponentKernel::gaussian(2.0);
    const std::vector<double> x{0.0}, y{0.5};
    EXPECT_DOUBLE_EQ(k(x, y), std::exp(-2.0 * 0.25));
    EXPECT_FALSE(k.compactly_supported());
}

TEST(Kernels, ParseSpecs) {
    EXPECT_EQ(parse_kernel_spec("askey"), ComponentKernel::askey(8));
    EXPECT_EQ(parse_kernel_spec("askey:beta=3,shape=2"), ComponentKernel::askey(3, 2));
    EXPECT_EQ(parse_kernel_spec("wendland13"), ComponentKernel::wendland13());
    EXPECT_EQ(parse_kernel_spec("wendland33:dim=2"), ComponentKernel::wendland33(1.0, 2));
    EXPECT_EQ(parse_kernel_spec("gaussian:eps=0.5"), ComponentKernel::gaussian(0.5));
    const auto k = ComponentKernel::askey(5, 0.25, 3);
    EXPECT_EQ(parse_kernel_spec(k.to_spec()), k);
}

TEST(Kernels, ParseSpecErrors) {
    EXPECT_THROW(parse_kernel_spec("matern"), ParseError);
    EXPECT_THROW(parse_kernel_spec("askey:beta=1"), ParseError);
    EXPECT_THROW(parse_kernel_spec("askey:eps=1"), ParseError);
    EXPECT_THROW(parse_kernel_spec("askey:beta=x"), ParseError);
    EXPECT_THROW(parse_kernel_spec("wendland13:shape=-1"), ParseError);
    EXPECT_THROW(parse_kernel_spec("wendland13:dim=0"), ParseError);
}

TEST(Kernels, ProductKernelFactorizes) {
    const ProductKernel pk({ComponentKernel::askey(8), ComponentKernel::wendland33(1.0, 2)});
    EXPECT_EQ(pk.total_dim(), 3u);
    EXPECT_EQ(pk.offsets(), (std::vector<std::size_t>{0, 1, 3}));
    const std::vector<double> x{0.1, 0.2, 0.3}, y{0.4, 0.2, 0.55};
    const double expected = std::pow(0.7, 8) * eval_wendland_3_3(0.25);
    EXPECT_NEAR(pk(x, y), expected, 1e-15);
    EXPECT_DOUBLE_EQ(pk.diagonal(), 1.0);
    const std::vector<double> bad{0.1, 0.2};
    EXPECT_THROW(pk(bad, bad), DimensionError);
}
