#pragma once

#include <vector>

#include "llab/interval_set.hpp"
#include "llab/weight.hpp"

namespace llab {

struct StepPiece {
    IntervalUnion region;
    double value = 0.0;
};

// Sorted, disjoint elementary cell of a step function.
struct StepCell {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
};

// Finitely-valued positive function with interval-union level structure.
// Pieces with equal values are merged; regions must be pairwise disjoint.
class StepFunction {
public:
    StepFunction() = default;
    explicit StepFunction(std::vector<StepPiece> pieces);

    static StepFunction indicator(const IntervalUnion& set, double value = 1.0);
    static StepFunction from_cells(const std::vector<StepCell>& cells);

    // Sorted by descending value.
    [[nodiscard]] const std::vector<StepPiece>& pieces() const noexcept { return pieces_; }
    [[nodiscard]] const std::vector<StepCell>& cells() const noexcept { return cells_; }
    [[nodiscard]] bool empty() const noexcept { return pieces_.empty(); }

    // Sorted distinct cell endpoints.
    [[nodiscard]] std::vector<double> breakpoints() const;
    [[nodiscard]] IntervalUnion support() const;

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double integral(double lo, double hi) const;
    [[nodiscard]] double max_value() const noexcept { return pieces_.empty() ? 0.0 : pieces_.front().value; }

    [[nodiscard]] StepFunction scaled(double c) const;

private:
    std::vector<StepPiece> pieces_;
    std::vector<StepCell> cells_;
};

// Non-increasing right-continuous step on [0, ∞): values[i] on
// [breakpoints[i], breakpoints[i+1]), zero after the last breakpoint.
struct DecreasingStep {
    std::vector<double> breakpoints{0.0};
    std::vector<double> values;

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] double support_end() const noexcept { return breakpoints.back(); }
};

// u({|f| > s}).
[[nodiscard]] double distribution(const StepFunction& f, const WeightModel& u, double s);

[[nodiscard]] DecreasingStep rearrange(const StepFunction& f, const WeightModel& u);

// (∫_0^∞ g(t)^p w(t) dt)^{1/p} and sup_t g(t) W(t)^{1/p} for a decreasing step.
[[nodiscard]] double decreasing_norm(const DecreasingStep& g, const WeightModel& w, double p);
[[nodiscard]] double decreasing_weak_norm(const DecreasingStep& g, const WeightModel& w, double p);

// ‖f‖_{Λ^p_u(w)} by summing v_i^p (W(t_i) − W(t_{i−1})) over the plateaus of
// f*_u, cross-checked against lorentz_norm_layer_cake.
[[nodiscard]] double lorentz_norm(const StepFunction& f, const WeightModel& u, const WeightModel& w, double p);

// Same norm as ∫_0^∞ p λ^{p−1} W(u({|f| > λ})) dλ, evaluated per level band.
[[nodiscard]] double lorentz_norm_layer_cake(const StepFunction& f, const WeightModel& u, const WeightModel& w,
                                             double p);

// ‖f‖_{Λ^{p,∞}_u(w)} = max over plateaus of v_i W(t_i)^{1/p}.
[[nodiscard]] double weak_lorentz_norm(const StepFunction& f, const WeightModel& u, const WeightModel& w, double p);

}  // namespace llab
