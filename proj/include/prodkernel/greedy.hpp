#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "prodkernel/gridpoints.hpp"
#include "prodkernel/interpolation.hpp"
#include "prodkernel/kernels.hpp"
#include "prodkernel/newton.hpp"
#include "prodkernel/table.hpp"

namespace prodkernel {

/// Finite candidate sets Omega_i^h, one per kernel component.
struct CandidateGrid {
    std::vector<PointSet> sets;
};

struct StopRule {
    std::size_t max_points = std::numeric_limits<std::size_t>::max();
    double power_tol = 0.0;
    std::size_t max_steps = std::numeric_limits<std::size_t>::max();
};

struct TraceEntry {
    std::size_t step;       // 1-based
    std::size_t component;  // 0-based
    std::vector<double> point;
    double sup_power;
};

/// Quantities of the most recent update, kept for diagnostics.
struct UpdateRecord {
    std::size_t component = 0;
    std::size_t candidate = 0;
    /// Cached P_{X_n^i}(x) at the selected candidate.
    double power = 0.0;
    /// New diagonal entry n_new(x) of the extended component factor.
    double diagonal = 0.0;
    /// Update slab X_new in grid order (empty while some component is empty).
    PointSet slab;
    /// r = f - s_{f,X_n} on the slab.
    std::vector<double> residual;
};

/// Componentwise P-greedy iteration state.
///
/// Selected point sets stay grid-like: each step adds one point to one
/// component. The interpolant is kept in the tensor Newton basis; its
/// coefficient tensor (grid order, last component fastest) grows by one
/// slab per step.
class GreedyState {
public:
    GreedyState(ProductKernel kernel, CandidateGrid candidates);

    const ProductKernel& kernel() const noexcept { return kernel_; }
    std::size_t num_components() const noexcept { return components_.size(); }
    const PointSet& candidates(std::size_t i) const { return components_.at(i).candidates; }
    const NewtonBasis& basis(std::size_t i) const { return components_.at(i).basis; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    std::size_t steps() const noexcept { return trace_.size(); }
    const std::vector<TraceEntry>& trace() const noexcept { return trace_; }
    const std::optional<UpdateRecord>& last_update() const noexcept { return last_; }

    /// Sizes |X_n^i|.
    std::vector<std::size_t> sizes() const;
    /// prod_i |X_n^i|; zero until every component has a point.
    std::size_t grid_size() const;
    bool all_components_nonempty() const;
    /// The current point set; requires all_components_nonempty().
    GridPointSet grid() const;

    /// Cached P_{X_n^i} at candidate c of component i.
    double cached_power(std::size_t i, std::size_t c) const;
    bool selected(std::size_t i, std::size_t c) const { return components_.at(i).selected.at(c); }
    /// Largest cached power over the unselected candidates of component i and
    /// its (lowest) candidate index; nullopt if none is above the breakdown tolerance.
    std::optional<std::pair<double, std::size_t>> sup_power(std::size_t i) const;
    /// max_i sup_power(i), or 0 if every component is exhausted.
    double max_sup_power() const;

    std::size_t select_component() const;
    std::size_t select_point(std::size_t i) const;

    /// Adds candidate `c` of component `i` and updates the interpolant.
    /// Returns false (leaving the state unchanged) on numerical breakdown.
    bool add(std::size_t i, std::size_t c, const Function& f);
    /// One P-greedy step; returns false on breakdown or exhaustion.
    bool step(const Function& f);

    TensorNewtonInterpolant interpolant() const;

private:
    struct Component {
        PointSet candidates;
        NewtonBasis basis;
        std::vector<std::vector<double>> candidate_values;  // n_k(y) for every candidate y
        std::vector<double> power2;                          // P(y)^2 on candidates
        std::vector<bool> selected;
        double kernel_diagonal;
    };

    ProductKernel kernel_;
    std::vector<Component> components_;
    std::vector<double> coeffs_;
    std::vector<TraceEntry> trace_;
    std::optional<UpdateRecord> last_;
};

std::size_t select_component(const GreedyState& state);
std::size_t select_point(const GreedyState& state, std::size_t i);
/// Returns the advanced state; throws ExhaustedError if no admissible candidate remains.
GreedyState greedy_step(GreedyState state, const Function& f);

enum class StopReason { PowerTolerance, MaxPoints, MaxSteps, Exhausted, Breakdown };

struct GreedyResult {
    GreedyState state;
    StopReason reason;
    TensorNewtonInterpolant interpolant() const { return state.interpolant(); }
    const std::vector<TraceEntry>& trace() const noexcept { return state.trace(); }
};

GreedyResult run_pgreedy(const ProductKernel& pk, const CandidateGrid& candidates, const Function& f,
                         const StopRule& stop);

const char* to_string(StopReason reason);

/// Trace as a table with columns step,component,point_coords,sup_power.
/// `component` is 1-based; coordinates are joined with ';'.
Table trace_table(const std::vector<TraceEntry>& trace);

}  // namespace prodkernel
