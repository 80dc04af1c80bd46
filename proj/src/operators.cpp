#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "llab/errors.hpp"
#include "llab/operators.hpp"

namespace llab {

namespace {

// ∫_{-∞}^y f via cumulative sums over the sorted cells.
class Primitive {
public:
    explicit Primitive(const StepFunction& f) : cells_(f.cells()) {
        double acc = 0.0;
        for (const auto& c : cells_) {
            before_.push_back(acc);
            acc += c.value * (c.hi - c.lo);
        }
    }

    [[nodiscard]] double operator()(double y) const {
        auto it = std::upper_bound(cells_.begin(), cells_.end(), y,
                                   [](double v, const StepCell& c) { return v < c.lo; });
        if (it == cells_.begin()) return 0.0;
        const auto i = static_cast<std::size_t>(it - cells_.begin()) - 1;
        const auto& c = cells_[i];
        return before_[i] + c.value * (std::min(y, c.hi) - c.lo);
    }

private:
    std::vector<StepCell> cells_;
    std::vector<double> before_;
};

void require_regular(const StepFunction& f, double x) {
    for (const auto& c : f.cells()) {
        if (x == c.lo || x == c.hi) throw SingularInputError("Hilbert transform evaluated at an endpoint of f");
    }
}

// ∫_lo^hi dy/(x − y) for x outside [lo, hi].
double log_kernel(double x, double lo, double hi) { return std::log(std::abs(x - lo) / std::abs(x - hi)); }

}  // namespace

double maximal(const StepFunction& f, double x) {
    if (f.empty()) return 0.0;
    const Primitive F(f);
    std::vector<double> left{x};
    std::vector<double> right{x};
    for (double e : f.breakpoints()) {
        if (e < x) left.push_back(e);
        if (e > x) right.push_back(e);
    }
    double best = 0.0;
    for (double a : left) {
        for (double b : right) {
            if (b > a) best = std::max(best, (F(b) - F(a)) / (b - a));
        }
    }
    return best;
}

double hilbert(const StepFunction& f, double x) {
    require_regular(f, x);
    double sum = 0.0;
    for (const auto& c : f.cells()) sum += c.value * log_kernel(x, c.lo, c.hi);
    return sum / std::numbers::pi;
}

double hilbert_truncated(const StepFunction& f, double x, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("truncation radius must be positive");
    double sum = 0.0;
    for (const auto& c : f.cells()) {
        const double lo_cut = x - eps;
        const double hi_cut = x + eps;
        if (c.lo < lo_cut) sum += c.value * log_kernel(x, c.lo, std::min(c.hi, lo_cut));
        if (c.hi > hi_cut) sum += c.value * log_kernel(x, std::max(c.lo, hi_cut), c.hi);
    }
    return sum / std::numbers::pi;
}

double hilbert_maximal(const StepFunction& f, double x) {
    double best = std::abs(hilbert(f, x));
    for (double e : f.breakpoints()) best = std::max(best, std::abs(hilbert_truncated(f, x, std::abs(x - e))));
    return best;
}

double conjugate_hardy(const DecreasingStep& g, double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const double lo = std::max(g.breakpoints[i], t);
        const double hi = g.breakpoints[i + 1];
        if (!(hi > lo) || g.values[i] == 0.0) continue;
        if (lo <= 0.0) return std::numeric_limits<double>::infinity();
        sum += g.values[i] * std::log(hi / lo);
    }
    return sum;
}

const char* to_string(Operator op) noexcept {
    switch (op) {
        case Operator::M: return "M";
        case Operator::H: return "H";
        case Operator::Hstar: return "Hstar";
        case Operator::Q: return "Q";
    }
    return "?";
}

const char* to_string(NormTarget t) noexcept { return t == NormTarget::strong ? "strong" : "weak"; }

}  // namespace llab
