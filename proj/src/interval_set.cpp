#include "llab/interval_set.hpp"

#include <algorithm>

#include "llab/errors.hpp"

namespace llab {

IntervalUnion IntervalUnion::normalize(std::vector<Interval> raw) { return snapped(std::move(raw), 0.0); }

IntervalUnion IntervalUnion::snapped(std::vector<Interval> raw, double gap) {
    std::erase_if(raw, [](const Interval& i) { return !(i.lo < i.hi); });
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

    std::vector<Interval> merged;
    merged.reserve(raw.size());
    for (const auto& part : raw) {
        if (!merged.empty() && part.lo - merged.back().hi <= gap) {
            merged.back().hi = std::max(merged.back().hi, part.hi);
        } else {
            merged.push_back(part);
        }
    }
    return IntervalUnion(std::move(merged));
}

double IntervalUnion::measure() const noexcept {
    double total = 0.0;
    for (const auto& p : parts_) total += p.length();
    return total;
}

Interval IntervalUnion::hull() const {
    if (parts_.empty()) throw PreconditionError("hull of an empty interval union");
    return {parts_.front().lo, parts_.back().hi};
}

bool IntervalUnion::covers_point(double x) const noexcept {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](double v, const Interval& i) { return v < i.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(x);
}

IntervalUnion intersect(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<Interval> out;
    auto a = u.parts();
    auto b = v.parts();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].lo, b[j].lo);
        const double hi = std::min(a[i].hi, b[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalUnion::normalize(std::move(out));
}

IntervalUnion intersect(const IntervalUnion& u, const Interval& v) {
    return intersect(u, IntervalUnion::normalize({v}));
}

IntervalUnion unite(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<Interval> all(u.parts().begin(), u.parts().end());
    all.insert(all.end(), v.parts().begin(), v.parts().end());
    return IntervalUnion::normalize(std::move(all));
}

IntervalUnion subtract(const IntervalUnion& u, const IntervalUnion& v) {
    std::vector<Interval> out;
    auto cut = v.parts();
    std::size_t j = 0;
    for (const auto& part : u.parts()) {
        double lo = part.lo;
        while (j < cut.size() && cut[j].hi <= lo) ++j;
        std::size_t k = j;
        while (k < cut.size() && cut[k].lo < part.hi) {
            if (cut[k].lo > lo) out.push_back({lo, cut[k].lo});
            lo = std::max(lo, cut[k].hi);
            if (lo >= part.hi) break;
            ++k;
        }
        if (lo < part.hi) out.push_back({lo, part.hi});
    }
    return IntervalUnion::normalize(std::move(out));
}

bool contains(const IntervalUnion& u, const IntervalUnion& v) { return subtract(v, u).empty(); }

double measure_within(const IntervalUnion& u, double lo, double hi) noexcept {
    double total = 0.0;
    for (const auto& p : u.parts()) {
        if (p.hi <= lo) continue;
        if (p.lo >= hi) break;
        total += std::min(p.hi, hi) - std::max(p.lo, lo);
    }
    return total;
}

}  // namespace llab
