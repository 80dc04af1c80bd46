#pragma once

#include <memory>
#include <vector>

#include "llab/boyd.hpp"
#include "llab/interval_set.hpp"
#include "llab/rearrangement.hpp"
#include "llab/weight.hpp"

namespace llab {

// Disjoint subintervals I_n of I with S ⊆ ∪ I_n and t|S ∩ I_n| = |I_n|,
// for 1 <= t <= |I|/|S|. Follows the induction on the number of
// components of S: Case I when |I| − t|S| <= a_1 (ties go to Case I),
// otherwise split off the first block (a_1, c) with t|S ∩ (a_1, c)| = c − a_1.
[[nodiscard]] std::vector<Interval> cover(const Interval& interval, const IntervalUnion& set, double t);

// The function f_{S,I}: 1 on S, at least |S|/|I| on I, with level sets
// {f >= λ} made of intervals J that meet S in exact proportion λ. Built by
// recursion on the number of components of S and queried through the tree.
class ExtremalFunction {
public:
    // Requires S nonempty and contained in I. If |S| = |I| the result is the
    // constant 1 on I.
    static ExtremalFunction build(const Interval& interval, const IntervalUnion& set);

    [[nodiscard]] const Interval& base_interval() const noexcept { return interval_; }
    [[nodiscard]] const IntervalUnion& base_set() const noexcept { return set_; }
    [[nodiscard]] double floor() const noexcept { return floor_; }
    // |I| / |S|.
    [[nodiscard]] double ratio() const noexcept { return interval_.length() / set_.measure(); }

    // Level at which neighbouring per-component level sets first touch;
    // equals floor() when no merging level exists above it.
    [[nodiscard]] double merge_level() const noexcept { return lambda0_; }
    [[nodiscard]] const ExtremalFunction* outer() const noexcept { return outer_.get(); }
    [[nodiscard]] const IntervalUnion& blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::size_t depth() const noexcept;

    // {x : f(x) >= λ}. I for λ <= floor, empty for λ > 1.
    [[nodiscard]] IntervalUnion level_set(double lambda) const;

    [[nodiscard]] double operator()(double x) const;

    // ∫_I f, integrated over the geometry of the recursion tree.
    [[nodiscard]] double integral() const;
    [[nodiscard]] double mean_value() const { return integral() / interval_.length(); }

    // Levels in (floor, 1) where the level-set structure changes.
    [[nodiscard]] std::vector<double> critical_levels() const;

    // Step function g <= f taking the value λ_k on {λ_k <= f < λ_{k+1}} for
    // `levels` geometric levels between floor and 1.
    [[nodiscard]] StepFunction lower_step(std::size_t levels) const;

private:
    ExtremalFunction() = default;

    Interval interval_;
    IntervalUnion set_;
    double floor_ = 1.0;
    double lambda0_ = 1.0;
    IntervalUnion blocks_;
    std::shared_ptr<const ExtremalFunction> outer_;
};

[[nodiscard]] inline ExtremalFunction build_extremal(const Interval& interval, const IntervalUnion& set) {
    return ExtremalFunction::build(interval, set);
}

// (1 + log s)/s with s = |I|/|S|, the mean of f_{S,I} over I.
[[nodiscard]] double extremal_mean_formula(double s);

struct WeakTypeCertificate {
    double p = 1.0;
    double s = 1.0;
    Configuration family;
    double threshold = 0.0;      // (1 + log s)/(2s)
    double test_norm = 0.0;      // ‖Σ f_{S_j,I_j}‖_{Λ^p_u(w)}
    double superset_mass = 0.0;  // W(u(∪I_j))
    double subset_mass = 0.0;    // W(u(∪S_j))
    double lower_bound = 0.0;    // superset_mass^{1/p} threshold / test_norm
    // test_norm^p / ((1 + log s) W(u(∪S_j))).
    double part2_constant = 0.0;
};

// Lower bound for the norm of M : Λ^p_u(w) → Λ^{p,∞}_u(w) from one family
// with common ratio s = |I_j|/|S_j| > 1.
[[nodiscard]] WeakTypeCertificate weak_type_lower_bound(const WeightModel& u, const WeightModel& w, double p,
                                                        const Configuration& family);

// ‖Σ_j f_j‖^p_{Λ^p_u(w)} for extremal functions with disjoint supports.
[[nodiscard]] double extremal_sum_norm_p(const std::vector<ExtremalFunction>& parts, const WeightModel& u,
                                         const WeightModel& w, double p);

// Upper bound for W̄_u(s) implied by a weak-type constant:
// C^p 2^p (1 + log s)^{1−p} s^p times the second-stage constant K
// (K = 1 unless a measured one is supplied).
[[nodiscard]] double wbar_u_bound_from_weak(double c_weak, double p, double s, double part2_constant = 1.0);

}  // namespace llab
