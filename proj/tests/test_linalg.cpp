#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "prodkernel/errors.hpp"
#include "prodkernel/linalg.hpp"

using namespace prodkernel;

namespace {

Matrix random_spd(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = u(rng);
    Matrix a = b * b.transpose();
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
    return a;
}

}  // namespace

TEST(Linalg, KronSmallExample) {
    const Matrix a{{1, 2}, {3, 4}};
    const Matrix b{{0, 1}, {1, 0}};
    const Matrix expected{{0, 1, 0, 2}, {1, 0, 2, 0}, {0, 3, 0, 4}, {3, 0, 4, 0}};
    EXPECT_EQ(kron(a, b), expected);
}

TEST(Linalg, KronRectangularAndGuard) {
    const Matrix a{{1, 2, 3}};
    const Matrix b{{1}, {-1}};
    const Matrix expected{{1, 2, 3}, {-1, -2, -3}};
    EXPECT_EQ(kron(a, b), expected);
    EXPECT_THROW(kron(Matrix(100, 100), Matrix(100, 100), 1000), ResourceError);
}

TEST(Linalg, CholeskyReconstructs) {
    std::mt19937_64 rng(7);
    const Matrix a = random_spd(6, rng);
    const LowerTriangular l = cholesky(a);
    EXPECT_LT(max_relative_difference(l.matrix() * l.matrix().transpose(), a), 1e-14);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_GT(l(i, i), 0.0);
}

TEST(Linalg, CholeskyReportsBreakdownIndex) {
    const Matrix a{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    try {
        cholesky(a);
        FAIL() << "expected breakdown";
    } catch (const NotPositiveDefiniteError& e) {
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(Linalg, TriangularSolves) {
    const LowerTriangular l(Matrix{{2, 0, 0}, {1, 3, 0}, {-1, 2, 4}});
    const std::vector<double> x{1.0, -2.0, 0.5};
    const std::vector<double> b = l.matrix() * std::span<const double>(x);
    const auto y = solve_lower(l, b);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(y[i], x[i], 1e-15);
    const std::vector<double> bt = l.matrix().transpose() * std::span<const double>(x);
    const auto z = solve_upper(l, bt);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(z[i], x[i], 1e-15);
    EXPECT_THROW(LowerTriangular(Matrix{{1, 1}, {0, 1}}), ParameterError);
}

TEST(Linalg, EigenvaluesOfKnownMatrix) {
    // Tridiagonal 2,-1: eigenvalues 2 - 2 cos(k pi / (n + 1))
    const std::size_t n = 7;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 2;
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1;
    }
    const auto ev = sym_eigenvalues(a);
    for (std::size_t k = 1; k <= n; ++k) {
        EXPECT_NEAR(ev[k - 1], 2 - 2 * std::cos(k * M_PI / (n + 1)), 1e-13);
    }
    const double expected = (2 - 2 * std::cos(n * M_PI / (n + 1))) / (2 - 2 * std::cos(M_PI / (n + 1)));
    EXPECT_NEAR(cond2(a), expected, 1e-10 * expected);
    EXPECT_THROW(sym_eigenvalues(Matrix{{1, 2}, {0, 1}}), ParameterError);
}

TEST(Linalg, Cond2OfDiagonal) {
    const std::vector<double> d{4, 0.5, 2};
    EXPECT_DOUBLE_EQ(cond2(Matrix::diagonal(d)), 8.0);
    const std::vector<double> bad{1, -1};
    EXPECT_THROW(cond2(Matrix::diagonal(bad)), NotPositiveDefiniteError);
}

TEST(Linalg, KronMatvecAndSolvesMatchDense) {
    std::mt19937_64 rng(11);
    const Matrix a = random_spd(3, rng), b = random_spd(4, rng), c = random_spd(2, rng);
    const Matrix full = kron(kron(a, b), c);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> x(24);
    for (auto& v : x) v = u(rng);
    const Matrix* fs[] = {&a, &b, &c};
    const auto y = kron_matvec(fs, x);
    const auto y_ref = full * std::span<const double>(x);
    for (std::size_t i = 0; i < 24; ++i) EXPECT_NEAR(y[i], y_ref[i], 1e-13 * std::abs(y_ref[i]) + 1e-13);

    const LowerTriangular la = cholesky(a), lb = cholesky(b), lc = cholesky(c);
    const LowerTriangular* ls[] = {&la, &lb, &lc};
    const LowerTriangular lfull = kron(kron(la, lb), lc);
    const auto s1 = kron_solve_lower(ls, x);
    const auto r1 = solve_lower(lfull, x);
    const auto s2 = kron_solve_upper(ls, x);
    const auto r2 = solve_upper(lfull, x);
    for (std::size_t i = 0; i < 24; ++i) {
        EXPECT_NEAR(s1[i], r1[i], 1e-12 * (1 + std::abs(r1[i])));
        EXPECT_NEAR(s2[i], r2[i], 1e-12 * (1 + std::abs(r2[i])));
    }
}

TEST(Linalg, KronMatvecRectangular) {
    const Matrix a{{1, 2}};
    const Matrix b{{1, 0, -1}};
    const Matrix* fs[] = {&a, &b};
    const std::vector<double> x{1, 2, 3, 4, 5, 6};
    const auto y = kron_matvec(fs, x);
    ASSERT_EQ(y.size(), 1u);
    // (1*(1-3) + 2*(4-6))
    EXPECT_DOUBLE_EQ(y[0], -6.0);
}
