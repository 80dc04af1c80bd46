#include "llab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "llab/errors.hpp"

namespace llab {

StepFunction::StepFunction(std::vector<StepPiece> pieces) {
    std::map<double, std::vector<Interval>, std::greater<>> by_value;
    for (auto& piece : pieces) {
        if (!(piece.value > 0.0) || !std::isfinite(piece.value))
            throw PreconditionError("step function values must be positive and finite");
        if (piece.region.empty()) continue;
        auto& parts = by_value[piece.value];
        parts.insert(parts.end(), piece.region.parts().begin(), piece.region.parts().end());
    }
    for (auto& [value, parts] : by_value) {
        pieces_.push_back({IntervalUnion::normalize(std::move(parts)), value});
        for (const auto& part : pieces_.back().region.parts()) cells_.push_back({part.lo, part.hi, value});
    }
    std::sort(cells_.begin(), cells_.end(), [](const StepCell& a, const StepCell& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < cells_.size(); ++i) {
        if (cells_[i].lo < cells_[i - 1].hi) throw PreconditionError("step function regions overlap");
    }
}

StepFunction StepFunction::indicator(const IntervalUnion& set, double value) {
    return StepFunction({{set, value}});
}

StepFunction StepFunction::from_cells(const std::vector<StepCell>& cells) {
    std::vector<StepPiece> pieces;
    pieces.reserve(cells.size());
    for (const auto& c : cells) {
        if (c.value > 0.0) pieces.push_back({IntervalUnion::normalize({{c.lo, c.hi}}), c.value});
    }
    return StepFunction(std::move(pieces));
}

std::vector<double> StepFunction::breakpoints() const {
    std::vector<double> out;
    for (const auto& c : cells_) {
        out.push_back(c.lo);
        out.push_back(c.hi);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IntervalUnion StepFunction::support() const {
    std::vector<Interval> parts;
    for (const auto& c : cells_) parts.push_back({c.lo, c.hi});
    return IntervalUnion::normalize(std::move(parts));
}

double StepFunction::operator()(double x) const {
    auto it = std::upper_bound(cells_.begin(), cells_.end(), x, [](double v, const StepCell& c) { return v < c.lo; });
    if (it == cells_.begin()) return 0.0;
    --it;
    return x < it->hi ? it->value : 0.0;
}

double StepFunction::integral(double lo, double hi) const {
    double total = 0.0;
    for (const auto& c : cells_) {
        if (c.hi <= lo) continue;
        if (c.lo >= hi) break;
        total += c.value * (std::min(c.hi, hi) - std::max(c.lo, lo));
    }
    return total;
}

StepFunction StepFunction::scaled(double c) const {
    if (!(c > 0.0)) throw PreconditionError("step functions scale by positive constants only");
    auto pieces = pieces_;
    for (auto& p : pieces) p.value *= c;
    return StepFunction(std::move(pieces));
}

double DecreasingStep::operator()(double t) const {
    if (t < 0.0) return values.empty() ? 0.0 : values.front();
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    const auto i = static_cast<std::size_t>(it - breakpoints.begin());
    if (i == 0 || i > values.size()) return 0.0;
    return values[i - 1];
}

double distribution(const StepFunction& f, const WeightModel& u, double s) {
    double total = 0.0;
    for (const auto& piece : f.pieces()) {
        if (piece.value > s) total += u.measure(piece.region);
    }
    return total;
}

DecreasingStep rearrange(const StepFunction& f, const WeightModel& u) {
    DecreasingStep g;
    double cumulative = 0.0;
    for (const auto& piece : f.pieces()) {
        const double mass = u.measure(piece.region);
        if (!(mass > 0.0)) continue;
        if (!std::isfinite(mass)) throw PreconditionError("superlevel set of infinite weighted measure");
        cumulative += mass;
        g.breakpoints.push_back(cumulative);
        g.values.push_back(piece.value);
    }
    return g;
}

double decreasing_norm(const DecreasingStep& g, const WeightModel& w, double p) {
    if (!(p > 0.0)) throw PreconditionError("Lorentz norms require p > 0");
    double sum = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const double next = w.primitive(g.breakpoints[i + 1]);
        sum += std::pow(g.values[i], p) * (next - prev);
        prev = next;
    }
    return std::pow(sum, 1.0 / p);
}

double decreasing_weak_norm(const DecreasingStep& g, const WeightModel& w, double p) {
    if (!(p > 0.0)) throw PreconditionError("Lorentz norms require p > 0");
    double best = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i)
        best = std::max(best, g.values[i] * std::pow(w.primitive(g.breakpoints[i + 1]), 1.0 / p));
    return best;
}

double lorentz_norm_layer_cake(const StepFunction& f, const WeightModel& u, const WeightModel& w, double p) {
    if (!(p > 0.0)) throw PreconditionError("Lorentz norms require p > 0");
    const auto g = rearrange(f, u);
    // On (v_{i+1}, v_i] the superlevel set has u-measure t_i.
    double sum = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const double upper = g.values[i];
        const double lower = i + 1 < g.values.size() ? g.values[i + 1] : 0.0;
        sum += (std::pow(upper, p) - std::pow(lower, p)) * w.primitive(g.breakpoints[i + 1]);
    }
    return std::pow(sum, 1.0 / p);
}

double lorentz_norm(const StepFunction& f, const WeightModel& u, const WeightModel& w, double p) {
    const double direct = decreasing_norm(rearrange(f, u), w, p);
    const double layered = lorentz_norm_layer_cake(f, u, w, p);
    if (std::abs(direct - layered) > 1e-10 * std::max(direct, layered))
        throw ConsistencyError("Lorentz norm: direct and layer-cake forms disagree");
    return direct;
}

double weak_lorentz_norm(const StepFunction& f, const WeightModel& u, const WeightModel& w, double p) {
    return decreasing_weak_norm(rearrange(f, u), w, p);
}

}  // namespace llab
