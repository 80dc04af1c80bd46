#pragma once

#include <span>
#include <vector>

namespace llab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double length() const noexcept { return hi - lo; }
    [[nodiscard]] bool contains(double x) const noexcept { return lo <= x && x <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite disjoint union of intervals, kept sorted with strictly separated
// parts. Endpoints are not distinguished as open or closed; every quantity
// derived from a union is insensitive to them.
class IntervalUnion {
public:
    IntervalUnion() = default;

    // Merges overlapping and abutting parts and drops degenerate ones.
    static IntervalUnion normalize(std::vector<Interval> raw);

    // Same as normalize, additionally closing gaps not longer than `gap`.
    static IntervalUnion snapped(std::vector<Interval> raw, double gap);

    [[nodiscard]] std::span<const Interval> parts() const noexcept { return parts_; }
    [[nodiscard]] std::size_t size() const noexcept { return parts_.size(); }
    [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
    [[nodiscard]] const Interval& operator[](std::size_t i) const { return parts_[i]; }

    [[nodiscard]] double measure() const noexcept;

    // Smallest interval containing every part; requires a nonempty union.
    [[nodiscard]] Interval hull() const;

    [[nodiscard]] bool covers_point(double x) const noexcept;

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    explicit IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {}

    std::vector<Interval> parts_;
};

[[nodiscard]] inline double measure(const IntervalUnion& u) noexcept { return u.measure(); }

[[nodiscard]] IntervalUnion intersect(const IntervalUnion& u, const IntervalUnion& v);
[[nodiscard]] IntervalUnion intersect(const IntervalUnion& u, const Interval& v);
[[nodiscard]] IntervalUnion unite(const IntervalUnion& u, const IntervalUnion& v);
[[nodiscard]] IntervalUnion subtract(const IntervalUnion& u, const IntervalUnion& v);

// True iff V \ U has measure zero.
[[nodiscard]] bool contains(const IntervalUnion& u, const IntervalUnion& v);

// |U ∩ (lo, hi)| without materializing the intersection.
[[nodiscard]] double measure_within(const IntervalUnion& u, double lo, double hi) noexcept;

}  // namespace llab
