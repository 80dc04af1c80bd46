#include <algorithm>
#include <cmath>

#include "llab/construction.hpp"
#include "llab/errors.hpp"

namespace llab {

namespace {

// Single-component pieces: f_k = f_{S_k, I} for I = (a, d), S_k = (b, c).
struct Component {
    double a, b, c, d;

    [[nodiscard]] double inner() const { return c - b; }
    [[nodiscard]] double spare() const { return (d - a) - (c - b); }

    // Fraction of each gap covered by {f_k >= λ}: (b − x_λ)/(b − a) = (y_λ − c)/(d − c).
    [[nodiscard]] double spread(double lambda) const {
        if (spare() <= 0.0) return 1.0;
        return std::clamp(inner() * (1.0 / lambda - 1.0) / spare(), 0.0, 1.0);
    }

    [[nodiscard]] Interval level(double lambda) const {
        const double th = spread(lambda);
        return {b - th * (b - a), c + th * (d - c)};
    }

    [[nodiscard]] double value(double x) const {
        if (x < a || x > d) return 0.0;
        if (x >= b && x <= c) return 1.0;
        const double th = x < b ? (b - x) / (b - a) : (x - c) / (d - c);
        return inner() / (inner() + th * spare());
    }

    // ∫ f_k over {f_k >= λ}.
    [[nodiscard]] double integral_above(double lambda) const {
        if (spare() <= 0.0) return inner();
        const double th = spread(lambda);
        return inner() + spare() * (inner() / spare()) * std::log1p(th * spare() / inner());
    }
};

std::vector<Component> components_of(const Interval& interval, const IntervalUnion& set) {
    std::vector<Component> out;
    for (const auto& part : set.parts()) out.push_back({interval.lo, part.lo, part.hi, interval.hi});
    return out;
}

}  // namespace

ExtremalFunction ExtremalFunction::build(const Interval& interval, const IntervalUnion& set) {
    if (!(interval.lo < interval.hi)) throw PreconditionError("extremal function requires a nondegenerate interval");
    if (set.empty()) throw PreconditionError("extremal function requires a nonempty set S");
    if (!contains(IntervalUnion::normalize({interval}), set))
        throw PreconditionError("extremal function requires S within I");

    ExtremalFunction f;
    f.interval_ = interval;
    f.set_ = set;
    f.floor_ = std::min(1.0, set.measure() / interval.length());
    f.lambda0_ = f.floor_;
    f.blocks_ = IntervalUnion::normalize({interval});
    if (f.floor_ >= 1.0 || set.size() == 1) return f;

    // Neighbouring level intervals touch when
    // c_k + θ_k(d − c_k) = b_{k+1} − θ_{k+1}(b_{k+1} − a), θ_k linear in 1/λ − 1.
    const auto comps = components_of(interval, set);
    double lambda0 = f.floor_;
    for (std::size_t k = 0; k + 1 < comps.size(); ++k) {
        const auto& left = comps[k];
        const auto& right = comps[k + 1];
        const double rate = left.inner() / left.spare() * (left.d - left.c) +
                            right.inner() / right.spare() * (right.b - right.a);
        const double mu = (right.b - left.c) / rate;
        lambda0 = std::max(lambda0, 1.0 / (1.0 + mu));
    }
    lambda0 = std::min(lambda0, 1.0);
    if (lambda0 <= f.floor_ * (1.0 + 1e-14)) return f;

    std::vector<Interval> levels;
    for (const auto& c : comps) levels.push_back(c.level(lambda0));
    auto blocks = IntervalUnion::snapped(std::move(levels), 1e-12 * interval.length());
    if (blocks.size() >= set.size()) throw ConsistencyError("extremal construction failed to merge components");

    f.lambda0_ = lambda0;
    f.blocks_ = blocks;
    f.outer_ = std::make_shared<const ExtremalFunction>(build(interval, blocks));
    return f;
}

std::size_t ExtremalFunction::depth() const noexcept { return outer_ ? 1 + outer_->depth() : 1; }

IntervalUnion ExtremalFunction::level_set(double lambda) const {
    if (lambda > 1.0) return {};
    if (lambda <= floor_) return IntervalUnion::normalize({interval_});
    if (lambda < lambda0_ && outer_) return outer_->level_set(lambda / lambda0_);
    std::vector<Interval> parts;
    for (const auto& c : components_of(interval_, set_)) parts.push_back(c.level(lambda));
    return IntervalUnion::normalize(std::move(parts));
}

double ExtremalFunction::operator()(double x) const {
    if (x < interval_.lo || x > interval_.hi) return 0.0;
    if (floor_ >= 1.0) return 1.0;
    if (outer_ && !blocks_.covers_point(x)) return lambda0_ * (*outer_)(x);
    double best = floor_;
    for (const auto& c : components_of(interval_, set_)) best = std::max(best, c.value(x));
    return best;
}

double ExtremalFunction::integral() const {
    if (floor_ >= 1.0) return interval_.length();
    double on_blocks = 0.0;
    for (const auto& c : components_of(interval_, set_)) on_blocks += c.integral_above(lambda0_);
    if (!outer_) return on_blocks;
    // Outside the blocks f = λ0 g and g = 1 on the blocks.
    return on_blocks + lambda0_ * (outer_->integral() - blocks_.measure());
}

std::vector<double> ExtremalFunction::critical_levels() const {
    std::vector<double> out;
    if (outer_) {
        out.push_back(lambda0_);
        for (double l : outer_->critical_levels()) out.push_back(l * lambda0_);
    }
    std::sort(out.begin(), out.end());
    return out;
}

StepFunction ExtremalFunction::lower_step(std::size_t levels) const {
    if (floor_ >= 1.0 || levels < 2) return StepFunction::indicator(IntervalUnion::normalize({interval_}), floor_);
    std::vector<double> grid;
    for (std::size_t k = 0; k < levels; ++k)
        grid.push_back(floor_ * std::pow(1.0 / floor_, static_cast<double>(k) / static_cast<double>(levels - 1)));
    grid.back() = 1.0;
    std::vector<StepPiece> pieces;
    IntervalUnion upper = level_set(1.0);
    pieces.push_back({upper, 1.0});
    for (std::size_t k = levels - 1; k-- > 0;) {
        const auto current = level_set(grid[k]);
        pieces.push_back({subtract(current, upper), grid[k]});
        upper = current;
    }
    return StepFunction(std::move(pieces));
}

double extremal_mean_formula(double s) { return (1.0 + std::log(s)) / s; }

}  // namespace llab
