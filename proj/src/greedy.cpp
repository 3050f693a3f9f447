#include "prodkernel/greedy.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "prodkernel/errors.hpp"

namespace prodkernel {

GreedyState::GreedyState(ProductKernel kernel, CandidateGrid candidates) : kernel_(std::move(kernel)) {
    if (candidates.sets.size() != kernel_.num_components()) {
        throw DimensionError("greedy: expected one candidate set per kernel component");
    }
    for (std::size_t i = 0; i < candidates.sets.size(); ++i) {
        PointSet& set = candidates.sets[i];
        const ComponentKernel& k = kernel_.component(i);
        if (set.empty()) throw ParameterError("greedy: candidate set " + std::to_string(i) + " is empty");
        if (set.dim() != k.dim()) throw DimensionError("greedy: candidate set " + std::to_string(i) + " has wrong dimension");
        if (!set.pairwise_distinct()) throw ParameterError("greedy: candidate set " + std::to_string(i) + " has duplicates");
        Component c{std::move(set), NewtonBasis(k), {}, {}, {}, k.diagonal()};
        const std::size_t n = c.candidates.size();
        c.candidate_values.assign(n, {});
        c.selected.assign(n, false);
        // Empty-set convention: P_{}(y)^2 = K_i(y, y).
        c.power2.resize(n);
        for (std::size_t y = 0; y < n; ++y) c.power2[y] = k(c.candidates[y], c.candidates[y]);
        components_.push_back(std::move(c));
    }
}

std::vector<std::size_t> GreedyState::sizes() const {
    std::vector<std::size_t> s;
    for (const auto& c : components_) s.push_back(c.basis.size());
    return s;
}

std::size_t GreedyState::grid_size() const {
    std::size_t n = 1;
    for (const auto& c : components_) n *= c.basis.size();
    return n;
}

bool GreedyState::all_components_nonempty() const {
    for (const auto& c : components_)
        if (c.basis.empty()) return false;
    return true;
}

GridPointSet GreedyState::grid() const {
    std::vector<PointSet> factors;
    for (const auto& c : components_) factors.push_back(c.basis.centers());
    return GridPointSet(std::move(factors));
}

double GreedyState::cached_power(std::size_t i, std::size_t c) const {
    const double p2 = components_.at(i).power2.at(c);
    return p2 > 0.0 ? std::sqrt(p2) : 0.0;
}

std::optional<std::pair<double, std::size_t>> GreedyState::sup_power(std::size_t i) const {
    const Component& comp = components_.at(i);
    const double threshold = kBreakdownTolerance * std::sqrt(comp.kernel_diagonal);
    std::optional<std::pair<double, std::size_t>> best;
    for (std::size_t y = 0; y < comp.candidates.size(); ++y) {
        if (comp.selected[y]) continue;
        const double p = cached_power(i, y);
        if (p <= threshold) continue;
        if (!best || p > best->first) best = std::pair{p, y};
    }
    return best;
}

double GreedyState::max_sup_power() const {
    double best = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (const auto s = sup_power(i)) best = std::max(best, s->first);
    }
    return best;
}

std::size_t GreedyState::select_component() const {
    // Until every component has a point, only empty components compete.
    const bool bootstrap = !all_components_nonempty();
    std::optional<std::pair<double, std::size_t>> best;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (bootstrap && !components_[i].basis.empty()) continue;
        const auto s = sup_power(i);
        if (!s) continue;
        if (!best || s->first > best->first) best = std::pair{s->first, i};
    }
    if (!best) throw ExhaustedError("greedy: every component is exhausted");
    return best->second;
}

std::size_t GreedyState::select_point(std::size_t i) const {
    const auto s = sup_power(i);
    if (!s) throw ExhaustedError("greedy: component " + std::to_string(i) + " is exhausted");
    return s->second;
}

bool GreedyState::add(std::size_t a, std::size_t q, const Function& f) {
    Component& comp = components_.at(a);
    if (comp.selected.at(q)) throw ParameterError("greedy: candidate already selected");
    const auto x = comp.candidates[q];
    const std::vector<double> v = comp.candidate_values[q];
    const double power = cached_power(a, q);
    const double sup = power;

    const std::vector<std::size_t> old_sizes = sizes();
    try {
        comp.basis.append(x, v);
    } catch (const DegeneratePointError&) {
        return false;
    }
    const double d = comp.basis.diagonal(comp.basis.size() - 1);

    // Extend the candidate caches by the new basis function.
    const ComponentKernel& k = kernel_.component(a);
    for (std::size_t y = 0; y < comp.candidates.size(); ++y) {
        auto& vals = comp.candidate_values[y];
        const double value = (k(comp.candidates[y], x) - dot(vals, v)) / d;
        vals.push_back(value);
        comp.power2[y] -= value * value;
    }
    comp.power2[q] = 0.0;
    comp.selected[q] = true;

    UpdateRecord rec;
    rec.component = a;
    rec.candidate = q;
    rec.power = power;
    rec.diagonal = d;
    rec.slab = PointSet(kernel_.total_dim());

    std::size_t pre = 1, post = 1;
    for (std::size_t i = 0; i < a; ++i) pre *= old_sizes[i];
    for (std::size_t i = a + 1; i < old_sizes.size(); ++i) post *= old_sizes[i];
    const std::size_t na = old_sizes[a];

    std::vector<double> c_new;
    if (pre * post > 0) {
        // w = coefficient tensor contracted with n^a(x) along mode a.
        std::vector<double> w(pre * post, 0.0);
        for (std::size_t p = 0; p < pre; ++p)
            for (std::size_t j = 0; j < na; ++j) {
                const double vj = v[j];
                const double* src = coeffs_.data() + (p * na + j) * post;
                double* dst = w.data() + p * post;
                for (std::size_t b = 0; b < post; ++b) dst[b] += vj * src[b];
            }

        std::vector<LowerTriangular> ls;
        std::vector<PointSet> slab_factors;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i == a) {
                PointSet single(k.dim());
                single.push_back(x);
                slab_factors.push_back(std::move(single));
                continue;
            }
            ls.push_back(components_[i].basis.vandermonde());
            slab_factors.push_back(components_[i].basis.centers());
        }
        std::vector<const Matrix*> mats;
        std::vector<const LowerTriangular*> tris;
        for (const auto& l : ls) {
            mats.push_back(&l.matrix());
            tris.push_back(&l);
        }

        // s_{f,X_n} on X_new, then r = f - s and (x)_{i != a} L_i c = r / n_new(x).
        const std::vector<double> s_old = kron_matvec(mats, w);
        rec.slab = enumerate_grid(GridPointSet(std::move(slab_factors)));
        rec.residual.resize(rec.slab.size());
        std::vector<double> rhs(rec.slab.size());
        for (std::size_t n = 0; n < rec.slab.size(); ++n) {
            rec.residual[n] = f(rec.slab[n]) - s_old[n];
            rhs[n] = rec.residual[n] / d;
        }
        c_new = kron_solve_lower(tris, rhs);
    }

    if (pre * post > 0) {
        std::vector<double> grown(pre * (na + 1) * post);
        for (std::size_t p = 0; p < pre; ++p) {
            const double* src = coeffs_.data() + p * na * post;
            double* dst = grown.data() + p * (na + 1) * post;
            std::copy(src, src + na * post, dst);
            std::copy(c_new.begin() + static_cast<std::ptrdiff_t>(p * post),
                      c_new.begin() + static_cast<std::ptrdiff_t>((p + 1) * post), dst + na * post);
        }
        coeffs_ = std::move(grown);
    }

    trace_.push_back({trace_.size() + 1, a, std::vector<double>(x.begin(), x.end()), sup});
    last_ = std::move(rec);
    return true;
}

bool GreedyState::step(const Function& f) {
    std::size_t i = 0;
    try {
        i = select_component();
    } catch (const ExhaustedError&) {
        return false;
    }
    return add(i, select_point(i), f);
}

TensorNewtonInterpolant GreedyState::interpolant() const {
    std::vector<NewtonBasis> parts;
    for (const auto& c : components_) parts.push_back(c.basis);
    return TensorNewtonInterpolant(TensorNewtonBasis(std::move(parts)), coeffs_);
}

std::size_t select_component(const GreedyState& state) { return state.select_component(); }

std::size_t select_point(const GreedyState& state, std::size_t i) { return state.select_point(i); }

GreedyState greedy_step(GreedyState state, const Function& f) {
    const std::size_t i = state.select_component();
    if (!state.add(i, state.select_point(i), f)) throw ExhaustedError("greedy: breakdown at the selected point");
    return state;
}

GreedyResult run_pgreedy(const ProductKernel& pk, const CandidateGrid& candidates, const Function& f,
                         const StopRule& stop) {
    GreedyState state(pk, candidates);
    StopReason reason = StopReason::MaxSteps;
    while (true) {
        if (state.steps() >= stop.max_steps) {
            reason = StopReason::MaxSteps;
            break;
        }
        if (state.max_sup_power() <= stop.power_tol) {
            reason = StopReason::PowerTolerance;
            break;
        }
        std::size_t i = 0;
        try {
            i = state.select_component();
        } catch (const ExhaustedError&) {
            reason = StopReason::Exhausted;
            break;
        }
        auto next = state.sizes();
        ++next[i];
        std::size_t next_size = 1;
        for (std::size_t s : next) next_size *= s;
        if (next_size > stop.max_points) {
            reason = StopReason::MaxPoints;
            break;
        }
        if (!state.add(i, state.select_point(i), f)) {
            reason = StopReason::Breakdown;
            break;
        }
    }
    return {std::move(state), reason};
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::PowerTolerance: return "power_tolerance";
        case StopReason::MaxPoints: return "max_points";
        case StopReason::MaxSteps: return "max_steps";
        case StopReason::Exhausted: return "exhausted";
        case StopReason::Breakdown: return "breakdown";
    }
    return "unknown";
}

Table trace_table(const std::vector<TraceEntry>& trace) {
    Table t({"step", "component", "point_coords", "sup_power"});
    for (const auto& e : trace) {
        std::string coords;
        for (std::size_t k = 0; k < e.point.size(); ++k) coords += (k ? ";" : "") + format_number(e.point[k]);
        t.add_row({static_cast<double>(e.step), static_cast<double>(e.component + 1), coords, e.sup_power});
    }
    return t;
}

}  // namespace prodkernel
