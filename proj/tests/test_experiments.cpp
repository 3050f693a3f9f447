#include <gtest/gtest.h>

#include <cmath>

#include "prodkernel/errors.hpp"
#include "prodkernel/experiments.hpp"

using namespace prodkernel;

TEST(Experiments, FrankeAtOrigin) {
    const double expected = 0.75 * std::exp(-(4.0 + 4.0) / 4.0) + 0.75 * std::exp(-1.0 / 49.0 - 1.0 / 10.0) +
                            0.5 * std::exp(-(49.0 + 9.0) / 4.0) - 0.2 * std::exp(-16.0 - 49.0);
    EXPECT_DOUBLE_EQ(franke(0.0, 0.0), expected);
}

TEST(Experiments, ComponentLadderSizes) {
    const std::size_t sizes[] = {3, 5, 9, 17, 33, 65, 129};
    for (int j = 1; j <= 7; ++j) {
        const PointSet x = make_xj(j);
        EXPECT_EQ(x.size(), sizes[j - 1]);
        EXPECT_EQ(x[0][0], 0.0);
        EXPECT_EQ(x[x.size() - 1][0], 1.0);
        EXPECT_EQ(x[1][0], std::ldexp(1.0, -j));
    }
    EXPECT_THROW(make_xj(0), ParameterError);
}

TEST(Experiments, ConfigFromJson) {
    const auto cfg = config_from_json_text(R"({"j_range": [2, 4], "repetitions": 2, "seed": 7,
        "time_sizes": [8, 16], "description": "small"})");
    EXPECT_EQ(cfg.j_min, 2);
    EXPECT_EQ(cfg.j_max, 4);
    EXPECT_EQ(cfg.repetitions, 2u);
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_EQ(cfg.time_sizes, (std::vector<std::size_t>{8, 16}));
}

TEST(Experiments, ConfigRejectsBadInput) {
    EXPECT_THROW(config_from_json_text(R"({"unknown": 1})"), ParseError);
    EXPECT_THROW(config_from_json_text(R"({"j_range": [5, 2]})"), ParseError);
    EXPECT_THROW(config_from_json_text("{"), ParseError);
    EXPECT_THROW(config_from_json_text(R"({"product_kernels": ["bogus"]})"), ParseError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(Experiments, SmallCondRun) {
    ExperimentConfig cfg;
    cfg.j_min = 5;
    cfg.j_max = 6;
    cfg.grid_i_max = 2;
    cfg.grid_j_max = 3;
    cfg.cond_grid_j_max = 3;
    const auto r = run_cond_experiment(cfg);
    EXPECT_TRUE(r.all_passed());
    EXPECT_GT(r.table.num_rows(), 0u);
}

TEST(Experiments, SmallGreedyDemo) {
    ExperimentConfig cfg;
    cfg.greedy_candidates = 17;
    cfg.greedy_max_points = 9;
    const auto r = run_greedy_demo(cfg);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    EXPECT_GT(r.trace.num_rows(), 0u);
}
