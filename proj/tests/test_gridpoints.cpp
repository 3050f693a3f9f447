#include <gtest/gtest.h>

#include <filesystem>
#include <vector>

#include "prodkernel/errors.hpp"
#include "prodkernel/gridpoints.hpp"

using namespace prodkernel;

TEST(Gridpoints, CanonicalRoundsToTwelveDigits) {
    EXPECT_EQ(canonical(0.1 + 0.2), canonical(0.3));
    EXPECT_NE(canonical(0.3), canonical(0.3000001));
    EXPECT_EQ(canonical(-0.0), canonical(0.0));
}

TEST(Gridpoints, LastFactorRunsFastest) {
    const GridPointSet g({PointSet::univariate({0.0, 1.0}), PointSet::univariate({10.0, 20.0, 30.0})});
    EXPECT_EQ(g.size(), 6u);
    const PointSet all = enumerate_grid(g);
    const std::vector<double> expected{0, 10, 0, 20, 0, 30, 1, 10, 1, 20, 1, 30};
    EXPECT_EQ(std::vector<double>(all.coords().begin(), all.coords().end()), expected);
}

TEST(Gridpoints, IndexDecomposeIsOneBased) {
    const std::vector<std::size_t> sizes{3, 4};
    // x_k = (x^1_{ceil(k/4)}, x^2_{(k-1) mod 4 + 1})
    for (std::size_t k = 1; k <= 12; ++k) {
        const auto idx = index_decompose(k, sizes);
        EXPECT_EQ(idx[0], (k + 3) / 4);
        EXPECT_EQ(idx[1], (k - 1) % 4 + 1);
    }
    EXPECT_THROW(index_decompose(0, sizes), ParameterError);
    EXPECT_THROW(index_decompose(13, sizes), ParameterError);
}

TEST(Gridpoints, GridValidation) {
    EXPECT_THROW(GridPointSet({PointSet::univariate({0.0, 0.0})}), ParameterError);
    EXPECT_THROW(GridPointSet({PointSet(1)}), ParameterError);
    EXPECT_THROW(GridPointSet(std::vector<PointSet>{}), ParameterError);
}

TEST(Gridpoints, EnumerateGuard) {
    const GridPointSet g({PointSet::univariate({0.0, 1.0, 2.0}), PointSet::univariate({0.0, 1.0})});
    EXPECT_THROW(enumerate_grid(g, 5), ResourceError);
}

TEST(Gridpoints, ProjectAndEmbed) {
    const ProductKernel pk({ComponentKernel::askey(8), ComponentKernel::wendland13()});
    PointSet scattered(2, {0.5, 0.1, 0.2, 0.1, 0.5, 0.7});
    const auto parts = project(scattered, pk);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], PointSet::univariate({0.5, 0.2}));
    EXPECT_EQ(parts[1], PointSet::univariate({0.1, 0.7}));
    const GridPointSet cover = embed_scattered(scattered, pk);
    EXPECT_EQ(cover.size(), 4u);
    const PointSet all = enumerate_grid(cover);
    for (std::size_t n = 0; n < scattered.size(); ++n) EXPECT_LT(all.find(scattered[n]), all.size());
}

TEST(Gridpoints, DistinctAndFind) {
    PointSet p(2, {0.0, 0.0, 1.0, 0.0});
    EXPECT_TRUE(p.pairwise_distinct());
    const std::vector<double> q{1.0, 0.0}, r{2.0, 0.0};
    EXPECT_EQ(p.find(q), 1u);
    EXPECT_EQ(p.find(r), p.size());
    p.push_back(q);
    EXPECT_FALSE(p.pairwise_distinct());
    const std::vector<double> bad{1.0};
    EXPECT_THROW(p.push_back(bad), DimensionError);
}

TEST(Gridpoints, CsvRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "prodkernel_points_test.csv";
    const PointSet p(2, {0.1, 0.2, 1.0 / 3.0, -4.5});
    write_points_csv(p, path);
    EXPECT_EQ(read_points_csv(path), p);
    std::filesystem::remove(path);
    EXPECT_THROW(read_points_csv(path), IoError);
}
