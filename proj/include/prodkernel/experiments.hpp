#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "prodkernel/gridpoints.hpp"
#include "prodkernel/kernels.hpp"
#include "prodkernel/table.hpp"

namespace prodkernel {

/// Franke's bivariate test function.
double franke(double x, double y);

/// X_j = {2^-j k : k = 0..2^j}, 1 <= j <= 12.
PointSet make_xj(int j);
/// n equispaced points on [lo, hi] (n >= 2), or the midpoint for n == 1.
PointSet uniform_points(std::size_t n, double lo, double hi);
/// n x n uniform grid on [lo, hi]^2, enumerated row-major (second coordinate fastest).
PointSet uniform_grid_2d(std::size_t n, double lo, double hi);

struct ExperimentConfig {
    // Components of the product kernel K = K1 * K2.
    std::vector<std::string> product_kernels{"askey:beta=8", "wendland13"};
    // Univariate kernels compared on X_j.
    std::string univariate_askey = "askey:beta=8";
    std::string univariate_wendland = "wendland13";
    // Bivariate radial kernels compared against K on X_{i,j}.
    std::string bivariate_askey = "askey:beta=8,dim=2";
    std::string bivariate_wendland = "wendland33:dim=2";

    int j_min = 1;
    int j_max = 7;
    int grid_i_min = 1;
    int grid_i_max = 4;
    int grid_j_min = 1;
    int grid_j_max = 7;
    /// Largest j used for the bivariate condition numbers (dense eigensolves).
    int cond_grid_j_max = 5;
    /// Restriction height of the univariate target f(., y).
    double univariate_y = 0.25;

    std::size_t eval_resolution_1d = 1001;
    std::size_t eval_resolution_2d = 101;

    std::vector<std::string> time_kernels{"askey:beta=8,shape=0.5", "askey:beta=8,shape=0.5"};
    std::vector<std::size_t> time_sizes{8, 16, 32, 64};
    std::size_t repetitions = 5;
    std::size_t agreement_points = 50;
    double agreement_tol = 1e-7;

    std::vector<std::string> greedy_kernels{"askey:beta=8", "wendland13"};
    std::size_t greedy_candidates = 129;
    std::size_t greedy_max_points = 25;
    std::size_t greedy_max_steps = 200;
    double greedy_power_tol = 0.0;

    std::uint64_t seed = 42;
    std::filesystem::path out_dir = "results";

    /// Throws ParameterError on an invalid combination.
    void validate() const;
};

/// Loads a JSON config; unknown keys are rejected. Missing keys keep their defaults.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json_text(const std::string& text);

/// Outcome of one qualitative comparison.
struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct ExperimentResult {
    Table table;
    std::vector<Check> checks;
    bool all_passed() const;
};

/// Condition numbers on the X_j and X_{i,j} ladders.
ExperimentResult run_cond_experiment(const ExperimentConfig& cfg);
/// Mean square errors for the univariate restriction and bivariate Franke target.
ExperimentResult run_mse_experiment(const ExperimentConfig& cfg);
/// Four-method timing on N x N grids in [-1,1]^2; agreement is verified first.
ExperimentResult run_time_experiment(const ExperimentConfig& cfg);

struct GreedyDemoResult {
    Table trace;
    Table summary;
    std::vector<Check> checks;
};
/// Componentwise P-greedy on Franke over [0,1]^2 with a full-grid baseline.
GreedyDemoResult run_greedy_demo(const ExperimentConfig& cfg);

}  // namespace prodkernel
