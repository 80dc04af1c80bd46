#pragma once

#include <vector>

#include "llab/interval_set.hpp"

namespace llab {

enum class Domain { line, half_line };

// coef * |x|^exp on [from, to].
struct PowerSegment {
    double from = 0.0;
    double to = 0.0;
    double coef = 1.0;
    double exp = 0.0;
};

struct PowerTail {
    double coef = 1.0;
    double exp = 0.0;
};

// One maximal piece of a weight on which it is a single power of |x| and
// which does not straddle the origin.
struct PowerPiece {
    double lo = 0.0;
    double hi = 0.0;
    double coef = 1.0;
    double exp = 0.0;
};

// ∫_lo^hi coef * |x|^exp dx for a piece not straddling 0; exact for every
// exponent, including exp = -1 away from the origin.
[[nodiscard]] double power_integral(double lo, double hi, double coef, double exp);

// Piecewise-power weight. Segments are written in absolute coordinates and
// evaluated as coef * |x|^exp; outside [segments.front().from,
// segments.back().to] the tail law applies. With no segments the tail is the
// whole weight, so `{line, {}, {1, 0}}` is u ≡ 1 and `{line, {}, {1, 1}}`
// is u(x) = |x|.
class WeightModel {
public:
    WeightModel(Domain domain, std::vector<PowerSegment> segments, PowerTail tail);

    static WeightModel constant(double value = 1.0, Domain domain = Domain::line);
    static WeightModel power(double exp, double coef = 1.0, Domain domain = Domain::half_line);

    [[nodiscard]] Domain domain() const noexcept { return domain_; }
    [[nodiscard]] const std::vector<PowerSegment>& segments() const noexcept { return segments_; }
    [[nodiscard]] const PowerTail& tail() const noexcept { return tail_; }

    // True when the weight is one constant everywhere.
    [[nodiscard]] bool is_constant() const noexcept;

    [[nodiscard]] double value(double x) const;

    // Segment ends plus the origin, sorted and deduplicated.
    [[nodiscard]] std::vector<double> breakpoints() const;

    // Pieces covering [a, b], split at segment ends and at 0.
    [[nodiscard]] std::vector<PowerPiece> pieces(double a, double b) const;

    // ∫_a^b weight, a <= b, [a, b] inside the domain.
    [[nodiscard]] double integral(double a, double b) const;

    // W(t) = ∫_0^t w; half-line weights only.
    [[nodiscard]] double primitive(double t) const;

    // u(E).
    [[nodiscard]] double measure(const IntervalUnion& set) const;

    // ∫_r^∞ w(t) t^{-p} dt; +inf when the tail integral diverges.
    [[nodiscard]] double tail_moment(double r, double p) const;

private:
    void require_in_domain(double a, double b) const;
    void validate() const;

    Domain domain_;
    std::vector<PowerSegment> segments_;
    PowerTail tail_;
};

[[nodiscard]] inline double primitive(const WeightModel& w, double t) { return w.primitive(t); }
[[nodiscard]] inline double weight_of_set(const WeightModel& u, const IntervalUnion& set) {
    return u.measure(set);
}

}  // namespace llab
