#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "prodkernel/errors.hpp"
#include "prodkernel/experiments.hpp"
#include "prodkernel/greedy.hpp"
#include "prodkernel/interpolation.hpp"

using namespace prodkernel;

namespace {

const ProductKernel& kernel2() {
    static const ProductKernel pk({ComponentKernel::askey(8), ComponentKernel::wendland13()});
    return pk;
}

double f2(std::span<const double> p) { return franke(p[0], p[1]); }

}  // namespace

TEST(Greedy, BootstrapFillsEmptyComponentsFirst) {
    GreedyState s(kernel2(), {{make_xj(3), make_xj(3)}});
    // Wendland diagonal 15 beats Askey 1, but only empty components compete.
    EXPECT_EQ(s.select_component(), 1u);
    ASSERT_TRUE(s.step(f2));
    EXPECT_EQ(s.select_component(), 0u);
    ASSERT_TRUE(s.step(f2));
    EXPECT_TRUE(s.all_components_nonempty());
    EXPECT_EQ(s.grid_size(), 1u);
}

TEST(Greedy, TiesGoToLowestIndex) {
    GreedyState s(kernel2(), {{make_xj(2), make_xj(2)}});
    EXPECT_EQ(s.select_point(0), 0u);
    EXPECT_EQ(s.select_point(1), 0u);
}

TEST(Greedy, IncrementalMatchesRefit) {
    GreedyState s(kernel2(), {{make_xj(3), make_xj(3)}});
    for (int k = 0; k < 12; ++k) {
        ASSERT_TRUE(s.step(f2));
        if (!s.all_components_nonempty()) continue;
        const GridPointSet g = s.grid();
        const PointSet all = enumerate_grid(g);
        std::vector<double> f;
        for (std::size_t n = 0; n < all.size(); ++n) f.push_back(f2(all[n]));
        const Interpolant ref = fit(kernel2(), all, f);
        const auto inc = s.interpolant();
        for (double x : {0.05, 0.37, 0.81}) {
            const std::vector<double> p{x, 0.5 * x + 0.2};
            EXPECT_NEAR(inc(p), ref(p), 1e-9) << "step " << k;
        }
        const auto& u = s.last_update();
        ASSERT_TRUE(u.has_value());
        EXPECT_NEAR(u->diagonal, u->power, 1e-10);
    }
}

TEST(Greedy, StopRules) {
    const CandidateGrid c{{make_xj(2), make_xj(2)}};
    const auto by_points = run_pgreedy(kernel2(), c, f2, {.max_points = 6});
    EXPECT_EQ(by_points.reason, StopReason::MaxPoints);
    EXPECT_LE(by_points.state.grid_size(), 6u);
    const auto by_steps = run_pgreedy(kernel2(), c, f2, {.max_steps = 3});
    EXPECT_EQ(by_steps.reason, StopReason::MaxSteps);
    EXPECT_EQ(by_steps.trace().size(), 3u);
    const auto all = run_pgreedy(kernel2(), c, f2, {});
    EXPECT_TRUE(all.reason == StopReason::Exhausted || all.reason == StopReason::PowerTolerance ||
                all.reason == StopReason::Breakdown);
    EXPECT_THROW(greedy_step(all.state, f2), ExhaustedError);
}

TEST(Greedy, SupPowerWeaklyDecreasesPerComponent) {
    const auto r = run_pgreedy(kernel2(), {{make_xj(4), make_xj(4)}}, f2, {.max_steps = 16});
    std::vector<double> last(2, INFINITY);
    for (const auto& t : r.trace()) {
        EXPECT_LE(t.sup_power, last[t.component] * (1 + 1e-12));
        last[t.component] = t.sup_power;
    }
}

TEST(Greedy, TraceTableLayout) {
    const auto r = run_pgreedy(kernel2(), {{make_xj(2), make_xj(2)}}, f2, {.max_steps = 2});
    const Table t = trace_table(r.trace());
    EXPECT_EQ(t.header(), (std::vector<std::string>{"step", "component", "point_coords", "sup_power"}));
    EXPECT_EQ(t.number(0, 0), 1.0);
    EXPECT_EQ(t.number(0, 1), 2.0);
    EXPECT_STREQ(to_string(StopReason::MaxPoints), "max_points");
}
