#include "prodkernel/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "prodkernel/errors.hpp"
#include "prodkernel/greedy.hpp"
#include "prodkernel/interpolation.hpp"
#include "prodkernel/linalg.hpp"
#include "prodkernel/newton.hpp"
#include "prodkernel/parallel.hpp"

namespace prodkernel {

double franke(double x, double y) {
    const double a = 9.0 * x;
    const double b = 9.0 * y;
    return 0.75 * std::exp(-((a - 2.0) * (a - 2.0) + (b - 2.0) * (b - 2.0)) / 4.0) +
           0.75 * std::exp(-(a + 1.0) * (a + 1.0) / 49.0 - (b + 1.0) * (b + 1.0) / 10.0) +
           0.5 * std::exp(-((a - 7.0) * (a - 7.0) + (b - 3.0) * (b - 3.0)) / 4.0) -
           0.2 * std::exp(-(a - 4.0) * (a - 4.0) - (b - 7.0) * (b - 7.0));
}

PointSet make_xj(int j) {
    if (j < 1 || j > 12) throw ParameterError("make_xj: j must lie in [1, 12]");
    const std::size_t n = (std::size_t{1} << j) + 1;
    PointSet x(1);
    x.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = std::ldexp(static_cast<double>(k), -j);
        x.push_back(std::span<const double>(&v, 1));
    }
    return x;
}

PointSet uniform_points(std::size_t n, double lo, double hi) {
    if (n == 0) throw ParameterError("uniform_points: n must be positive");
    PointSet x(1);
    x.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double v = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        x.push_back(std::span<const double>(&v, 1));
    }
    return x;
}

PointSet uniform_grid_2d(std::size_t n, double lo, double hi) {
    const PointSet axis = uniform_points(n, lo, hi);
    return enumerate_grid(GridPointSet({axis, axis}));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ProductKernel product_from_specs(const std::vector<std::string>& specs) {
    std::vector<ComponentKernel> ks;
    for (const auto& s : specs) ks.push_back(parse_kernel_spec(s));
    return ProductKernel(std::move(ks));
}

std::string grid_label(int i, int j) { return "X_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Function franke_2d() {
    return [](std::span<const double> p) { return franke(p[0], p[1]); };
}

Function franke_restriction(double y) {
    return [y](std::span<const double> p) { return franke(p[0], y); };
}

std::vector<double> sample(const PointSet& points, const Function& f) {
    std::vector<double> v(points.size());
    for (std::size_t n = 0; n < points.size(); ++n) v[n] = f(points[n]);
    return v;
}

}  // namespace

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ParameterError(std::string("config: ") + what);
    };
    require(j_min >= 1 && j_min <= j_max && j_max <= 12, "need 1 <= j_min <= j_max <= 12");
    require(grid_i_min >= 1 && grid_i_min <= grid_i_max && grid_i_max <= 12, "need 1 <= grid_i_min <= grid_i_max <= 12");
    require(grid_j_min >= 1 && grid_j_min <= grid_j_max && grid_j_max <= 12, "need 1 <= grid_j_min <= grid_j_max <= 12");
    require(cond_grid_j_max >= grid_j_min, "cond_grid_j_max must be >= grid_j_min");
    require(repetitions >= 1, "repetitions must be >= 1");
    require(!time_sizes.empty(), "time_sizes must be nonempty");
    require(eval_resolution_1d >= 2 && eval_resolution_2d >= 2, "evaluation resolutions must be >= 2");
    require(product_kernels.size() == 2, "product_kernels must name exactly two univariate components");
    require(time_kernels.size() == 2, "time_kernels must name exactly two univariate components");
    require(greedy_kernels.size() == 2, "greedy_kernels must name exactly two univariate components");
    require(greedy_candidates >= 1, "greedy_candidates must be >= 1");
    require(agreement_points >= 1, "agreement_points must be >= 1");
    for (const auto* list : {&product_kernels, &time_kernels, &greedy_kernels}) {
        for (const auto& s : *list) require(parse_kernel_spec(s).dim() == 1, "component kernels must be univariate");
    }
    require(parse_kernel_spec(univariate_askey).dim() == 1, "univariate_askey must have dim 1");
    require(parse_kernel_spec(univariate_wendland).dim() == 1, "univariate_wendland must have dim 1");
    require(parse_kernel_spec(bivariate_askey).dim() == 2, "bivariate_askey must have dim 2");
    require(parse_kernel_spec(bivariate_wendland).dim() == 2, "bivariate_wendland must have dim 2");
}

ExperimentConfig config_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config: top level must be an object");

    ExperimentConfig cfg;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "product_kernels") value.get_to(cfg.product_kernels);
            else if (key == "univariate_askey") value.get_to(cfg.univariate_askey);
            else if (key == "univariate_wendland") value.get_to(cfg.univariate_wendland);
            else if (key == "bivariate_askey") value.get_to(cfg.bivariate_askey);
            else if (key == "bivariate_wendland") value.get_to(cfg.bivariate_wendland);
            else if (key == "j_range") {
                cfg.j_min = value.at(0).get<int>();
                cfg.j_max = value.at(1).get<int>();
            } else if (key == "grid_i_range") {
                cfg.grid_i_min = value.at(0).get<int>();
                cfg.grid_i_max = value.at(1).get<int>();
            } else if (key == "grid_j_range") {
                cfg.grid_j_min = value.at(0).get<int>();
                cfg.grid_j_max = value.at(1).get<int>();
            } else if (key == "cond_grid_j_max") value.get_to(cfg.cond_grid_j_max);
            else if (key == "univariate_y") value.get_to(cfg.univariate_y);
            else if (key == "eval_resolution_1d") value.get_to(cfg.eval_resolution_1d);
            else if (key == "eval_resolution_2d") value.get_to(cfg.eval_resolution_2d);
            else if (key == "time_kernels") value.get_to(cfg.time_kernels);
            else if (key == "time_sizes") value.get_to(cfg.time_sizes);
            else if (key == "repetitions") value.get_to(cfg.repetitions);
            else if (key == "agreement_points") value.get_to(cfg.agreement_points);
            else if (key == "agreement_tol") value.get_to(cfg.agreement_tol);
            else if (key == "greedy_kernels") value.get_to(cfg.greedy_kernels);
            else if (key == "greedy_candidates") value.get_to(cfg.greedy_candidates);
            else if (key == "greedy_max_points") value.get_to(cfg.greedy_max_points);
            else if (key == "greedy_max_steps") value.get_to(cfg.greedy_max_steps);
            else if (key == "greedy_power_tol") value.get_to(cfg.greedy_power_tol);
            else if (key == "seed") value.get_to(cfg.seed);
            else if (key == "out_dir") cfg.out_dir = value.get<std::string>();
            else if (key == "$schema" || key == "description") continue;
            else throw ParseError("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

bool ExperimentResult::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

ExperimentResult run_cond_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult out{Table({"kernel", "grid", "i", "j", "n", "cond2", "status"}), {}};
    std::map<std::pair<std::string, std::string>, double> values;

    auto record = [&](const std::string& kernel, const std::string& grid, int i, int j, std::size_t n,
                      const std::function<double()>& compute) {
        double c = std::numeric_limits<double>::quiet_NaN();
        std::string status = "ok";
        try {
            c = compute();
            values[{kernel, grid}] = c;
        } catch (const NumericalError& e) {
            status = std::string("error: ") + e.what();
        }
        out.table.add_row({kernel, grid, static_cast<double>(i), static_cast<double>(j), static_cast<double>(n), c, status});
    };

    const ComponentKernel askey = parse_kernel_spec(cfg.univariate_askey);
    const ComponentKernel wendland = parse_kernel_spec(cfg.univariate_wendland);
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        const PointSet xj = make_xj(j);
        const std::string g = "X_" + std::to_string(j);
        record("phi13", g, 0, j, xj.size(), [&] { return cond2(assemble_component(wendland, xj)); });
        record("phi8", g, 0, j, xj.size(), [&] { return cond2(assemble_component(askey, xj)); });
    }

    const ProductKernel pk = product_from_specs(cfg.product_kernels);
    const ProductKernel bi_askey({parse_kernel_spec(cfg.bivariate_askey)});
    const ProductKernel bi_wendland({parse_kernel_spec(cfg.bivariate_wendland)});
    double worst_law = 0.0;
    std::string worst_law_grid;
    const int jmax = std::min(cfg.grid_j_max, cfg.cond_grid_j_max);
    for (int i = cfg.grid_i_min; i <= cfg.grid_i_max; ++i) {
        for (int j = cfg.grid_j_min; j <= jmax; ++j) {
            const GridPointSet grid({make_xj(i), make_xj(j)});
            const PointSet pts = enumerate_grid(grid);
            const std::string g = grid_label(i, j);
            const Matrix a1 = assemble_component(pk.component(0), grid.factor(0));
            const Matrix a2 = assemble_component(pk.component(1), grid.factor(1));
            record("K1", g, i, j, a1.rows(), [&] { return cond2(a1); });
            record("K2", g, i, j, a2.rows(), [&] { return cond2(a2); });
            record("K", g, i, j, grid.size(), [&] { return cond2(assemble_kronecker(pk, grid)); });
            record("phi8_2d", g, i, j, grid.size(), [&] { return cond2(assemble_direct(bi_askey, pts)); });
            record("phi33_2d", g, i, j, grid.size(), [&] { return cond2(assemble_direct(bi_wendland, pts)); });
            const auto k = values.find({"K", g});
            const auto k1 = values.find({"K1", g});
            const auto k2 = values.find({"K2", g});
            if (k != values.end() && k1 != values.end() && k2 != values.end()) {
                const double expected = k1->second * k2->second;
                const double rel = std::abs(k->second - expected) / expected;
                if (rel >= worst_law) {
                    worst_law = rel;
                    worst_law_grid = g;
                }
            }
        }
    }

    bool all_ok = true;
    bool at_least_one = true;
    for (std::size_t r = 0; r < out.table.num_rows(); ++r) {
        if (out.table.text(r, 6) != "ok") all_ok = false;
        else if (!(out.table.number(r, 5) >= 1.0 - 1e-12)) at_least_one = false;
    }
    out.checks.push_back({"all condition numbers computed", all_ok, all_ok ? "" : "see status column"});
    out.checks.push_back({"cond2 >= 1", at_least_one, ""});
    out.checks.push_back({"cond2(K) = cond2(K1) * cond2(K2)", worst_law <= 1e-6,
                          "max relative deviation " + sci(worst_law) + " at " + worst_law_grid});
    for (int j = std::max(5, cfg.j_min); j <= std::min(7, cfg.j_max); ++j) {
        const std::string g = "X_" + std::to_string(j);
        const auto w = values.find({"phi13", g});
        const auto a = values.find({"phi8", g});
        const bool ok = w != values.end() && a != values.end() && w->second > a->second;
        out.checks.push_back({"cond2(phi13) > cond2(phi8) on " + g, ok,
                              ok ? sci(w->second) + " > " + sci(a->second) : "ordering violated or missing"});
    }
    return out;
}

ExperimentResult run_mse_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult out{Table({"kernel", "grid", "i", "j", "n", "mse"}), {}};
    std::map<std::pair<std::string, int>, double> uni;
    std::map<std::tuple<std::string, int, int>, double> bi;

    const Function g = franke_restriction(cfg.univariate_y);
    const PointSet eval_1d = uniform_points(cfg.eval_resolution_1d, 0.0, 1.0);
    const ComponentKernel askey = parse_kernel_spec(cfg.univariate_askey);
    const ComponentKernel wendland = parse_kernel_spec(cfg.univariate_wendland);
    for (int j = cfg.j_min; j <= cfg.j_max; ++j) {
        const PointSet xj = make_xj(j);
        const auto values = sample(xj, g);
        for (const auto& [name, k] : {std::pair{"phi13", wendland}, std::pair{"phi8", askey}}) {
            const Interpolant s = fit(ProductKernel({k}), xj, values);
            const double e = mse(s.evaluate(eval_1d), g, eval_1d);
            uni[{name, j}] = e;
            out.table.add_row({name, "X_" + std::to_string(j), 0.0, static_cast<double>(j),
                               static_cast<double>(xj.size()), e});
        }
    }

    const Function f = franke_2d();
    const PointSet eval_2d = uniform_grid_2d(cfg.eval_resolution_2d, 0.0, 1.0);
    const ProductKernel pk = product_from_specs(cfg.product_kernels);
    const ProductKernel bi_askey({parse_kernel_spec(cfg.bivariate_askey)});
    const ProductKernel bi_wendland({parse_kernel_spec(cfg.bivariate_wendland)});
    for (int i = cfg.grid_i_min; i <= cfg.grid_i_max; ++i) {
        for (int j = cfg.grid_j_min; j <= cfg.grid_j_max; ++j) {
            const GridPointSet grid({make_xj(i), make_xj(j)});
            const PointSet pts = enumerate_grid(grid);
            const auto values = sample(pts, f);
            const std::string label = grid_label(i, j);
            auto add = [&](const std::string& name, double e) {
                bi[{name, i, j}] = e;
                out.table.add_row({name, label, static_cast<double>(i), static_cast<double>(j),
                                   static_cast<double>(grid.size()), e});
            };
            add("K", mse(fit_grid(pk, grid, values).evaluate(eval_2d), f, eval_2d));
            add("phi8_2d", mse(fit(bi_askey, pts, values).evaluate(eval_2d), f, eval_2d));
            add("phi33_2d", mse(fit(bi_wendland, pts, values).evaluate(eval_2d), f, eval_2d));
        }
    }

    if (cfg.j_min <= 7 && cfg.j_max >= 7) {
        const double w = uni[{"phi13", 7}];
        const double a = uni[{"phi8", 7}];
        out.checks.push_back({"MSE(phi13) < MSE(phi8) on X_7", w < a, sci(w) + " vs " + sci(a)});
    }
    for (const char* name : {"phi13", "phi8"}) {
        bool ok = true;
        std::string detail;
        for (int j = std::max(cfg.j_min, 3) + 1; j <= std::min(cfg.j_max, 7); ++j) {
            if (uni[{name, j}] > 1.05 * uni[{name, j - 1}]) {
                ok = false;
                detail += "X_" + std::to_string(j) + " ";
            }
        }
        out.checks.push_back({std::string("univariate MSE nonincreasing along X_3..X_7 for ") + name, ok,
                              ok ? "" : "increase at " + detail});
    }
    return out;
}

namespace {

struct TimedMethod {
    std::string name;
    std::function<Function()> fit;  // returns a callable interpolant
};

}  // namespace

ExperimentResult run_time_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult out{Table({"method", "N", "n", "setup_seconds", "total_seconds", "repetitions"}), {}};
    const ProductKernel pk = product_from_specs(cfg.time_kernels);
    const Function f = franke_2d();
    const std::size_t saved_threads = num_threads();
    set_num_threads(1);

    std::map<std::pair<std::string, std::size_t>, std::pair<double, double>> times;
    bool agreement_ok = true;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    try {
        for (std::size_t n_axis : cfg.time_sizes) {
            const PointSet axis = uniform_points(n_axis, -1.0, 1.0);
            const GridPointSet grid({axis, axis});
            const PointSet pts = enumerate_grid(grid);
            const auto values = sample(pts, f);

            // Each method reports (setup seconds, total seconds, interpolant).
            struct Run {
                double setup;
                double total;
                Function s;
            };
            const std::vector<std::pair<std::string, std::function<Run()>>> methods{
                {"standard",
                 [&] {
                     const auto t0 = Clock::now();
                     const Matrix a = assemble_direct(pk, pts);
                     const double setup = seconds_since(t0);
                     const LowerTriangular l = cholesky(a);
                     auto c = solve_upper(l, solve_lower(l, values));
                     const double total = seconds_since(t0);
                     auto s = std::make_shared<Interpolant>(pk, pts, std::move(c));
                     return Run{setup, total, [s](std::span<const double> x) { return (*s)(x); }};
                 }},
                {"kronecker_prod",
                 [&] {
                     const auto t0 = Clock::now();
                     const Matrix a = assemble_kronecker(pk, grid);
                     const double setup = seconds_since(t0);
                     const LowerTriangular l = cholesky(a);
                     auto c = solve_upper(l, solve_lower(l, values));
                     const double total = seconds_since(t0);
                     auto s = std::make_shared<Interpolant>(pk, pts, std::move(c));
                     return Run{setup, total, [s](std::span<const double> x) { return (*s)(x); }};
                 }},
                {"Newton_base",
                 [&] {
                     const auto t0 = Clock::now();
                     auto s = std::make_shared<NewtonInterpolant>(newton_fit(pk, pts, values));
                     const double total = seconds_since(t0);
                     return Run{total, total, [s](std::span<const double> x) { return (*s)(x); }};
                 }},
                {"TensorNewton_Base",
                 [&] {
                     const auto t0 = Clock::now();
                     TensorNewtonBasis tb = tensor_newton_build(pk, grid);
                     const double setup = seconds_since(t0);
                     auto c = newton_coeffs(tb, values);
                     const double total = seconds_since(t0);
                     auto s = std::make_shared<TensorNewtonInterpolant>(std::move(tb), std::move(c));
                     return Run{setup, total, [s](std::span<const double> x) { return (*s)(x); }};
                 }},
            };

            // Cross-check (doubles as the discarded warm-up run).
            std::vector<Function> fitted;
            for (const auto& [name, run] : methods) fitted.push_back(run().s);
            double worst = 0.0;
            for (std::size_t k = 0; k < cfg.agreement_points; ++k) {
                const double p[2] = {unif(rng), unif(rng)};
                std::vector<double> vals;
                for (const auto& s : fitted) vals.push_back(s(p));
                const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
                worst = std::max(worst, *hi - *lo);
            }
            const bool agree = worst <= cfg.agreement_tol;
            out.checks.push_back({"four methods agree at N=" + std::to_string(n_axis), agree,
                                  "max pairwise difference " + sci(worst)});
            if (!agree) {
                agreement_ok = false;
                break;
            }

            for (const auto& [name, run] : methods) {
                double setup = 0.0, total = 0.0;
                for (std::size_t r = 0; r < cfg.repetitions; ++r) {
                    const Run res = run();
                    setup += res.setup;
                    total += res.total;
                }
                setup /= static_cast<double>(cfg.repetitions);
                total /= static_cast<double>(cfg.repetitions);
                times[{name, n_axis}] = {setup, total};
                out.table.add_row({name, static_cast<double>(n_axis), static_cast<double>(grid.size()), setup, total,
                                   static_cast<double>(cfg.repetitions)});
            }
        }
    } catch (...) {
        set_num_threads(saved_threads);
        throw;
    }
    set_num_threads(saved_threads);

    if (agreement_ok) {
        const std::size_t n64 = 64;
        if (std::find(cfg.time_sizes.begin(), cfg.time_sizes.end(), n64) != cfg.time_sizes.end()) {
            const auto std_t = times[{"standard", n64}];
            const auto kron_t = times[{"kronecker_prod", n64}];
            const auto newton_t = times[{"Newton_base", n64}];
            const auto tensor_t = times[{"TensorNewton_Base", n64}];
            out.checks.push_back({"kronecker_prod assembly faster than standard assembly at N=64",
                                  kron_t.first < std_t.first, sci(kron_t.first) + " s vs " + sci(std_t.first) + " s"});
            out.checks.push_back({"TensorNewton_Base faster than Newton_base at N=64", tensor_t.second < newton_t.second,
                                  sci(tensor_t.second) + " s vs " + sci(newton_t.second) + " s"});
        }
    }
    return out;
}

GreedyDemoResult run_greedy_demo(const ExperimentConfig& cfg) {
    cfg.validate();
    const ProductKernel pk = product_from_specs(cfg.greedy_kernels);
    const Function f = franke_2d();
    const PointSet axis = uniform_points(cfg.greedy_candidates, 0.0, 1.0);
    const CandidateGrid candidates{{axis, axis}};
    StopRule stop;
    stop.max_points = cfg.greedy_max_points;
    stop.max_steps = cfg.greedy_max_steps;
    stop.power_tol = cfg.greedy_power_tol;
    const GreedyResult result = run_pgreedy(pk, candidates, f, stop);

    GreedyDemoResult out{trace_table(result.trace()),
                         Table({"quantity", "value"}),
                         {}};
    const PointSet eval_2d = uniform_grid_2d(cfg.eval_resolution_2d, 0.0, 1.0);
    const auto sizes = result.state.sizes();
    double greedy_mse = std::numeric_limits<double>::quiet_NaN();
    if (result.state.all_components_nonempty()) {
        greedy_mse = mse(result.interpolant().evaluate(eval_2d), f, eval_2d);
    }
    const GridPointSet baseline_grid({make_xj(2), make_xj(2)});
    const double baseline_mse =
        mse(fit_grid(pk, baseline_grid, sample(enumerate_grid(baseline_grid), f)).evaluate(eval_2d), f, eval_2d);

    out.summary.add_row({"steps", static_cast<double>(result.state.steps())});
    out.summary.add_row({"stop_reason", std::string(to_string(result.reason))});
    out.summary.add_row({"points_component_1", static_cast<double>(sizes[0])});
    out.summary.add_row({"points_component_2", static_cast<double>(sizes[1])});
    out.summary.add_row({"grid_size", static_cast<double>(result.state.grid_size())});
    out.summary.add_row({"final_max_sup_power", result.state.max_sup_power()});
    out.summary.add_row({"greedy_mse", greedy_mse});
    out.summary.add_row({"baseline_X22_mse", baseline_mse});

    // Sup-power per component subsequence must be weakly decreasing.
    bool monotone = true;
    std::vector<double> last(pk.num_components(), std::numeric_limits<double>::infinity());
    for (const auto& e : result.trace()) {
        if (e.sup_power > last[e.component] * (1.0 + 1e-12)) monotone = false;
        last[e.component] = e.sup_power;
    }
    out.checks.push_back({"sup-power weakly decreasing per component", monotone, ""});
    out.checks.push_back({"final point set is grid-like", result.state.grid_size() == sizes[0] * sizes[1],
                          std::to_string(sizes[0]) + " x " + std::to_string(sizes[1])});
    return out;
}

}  // namespace prodkernel
