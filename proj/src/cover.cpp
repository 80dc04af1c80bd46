#include <cmath>

#include "llab/construction.hpp"
#include "llab/errors.hpp"

namespace llab {

namespace {

void cover_into(double lo, double hi, const std::vector<Interval>& comps, std::size_t first, double t,
                std::vector<Interval>& out) {
    while (first < comps.size()) {
        double total = 0.0;
        for (std::size_t k = first; k < comps.size(); ++k) total += comps[k].length();
        const double a1 = comps[first].lo;

        // Case I: the right-aligned block of length t|S| already contains S.
        if ((hi - lo) - t * total <= a1 - lo) {
            out.push_back({hi - t * total, hi});
            return;
        }

        // Case II: g(c) = t|S ∩ (a_1, c)| − (c − a_1) increases on S and
        // decreases on the gaps; its first zero after b_1 lies in a gap.
        double g = 0.0;
        double c = hi;
        std::size_t next = comps.size();
        for (std::size_t k = first; k < comps.size(); ++k) {
            g += (t - 1.0) * comps[k].length();
            const double gap_end = k + 1 < comps.size() ? comps[k + 1].lo : hi;
            if (g <= gap_end - comps[k].hi) {
                c = comps[k].hi + g;
                next = k + 1;
                break;
            }
            g -= gap_end - comps[k].hi;
        }
        out.push_back({a1, c});
        lo = c;
        first = next;
    }
}

}  // namespace

std::vector<Interval> cover(const Interval& interval, const IntervalUnion& set, double t) {
    if (set.empty()) throw PreconditionError("cover requires a nonempty set S");
    if (!(interval.lo < interval.hi)) throw PreconditionError("cover requires a nondegenerate interval I");
    if (!contains(IntervalUnion::normalize({interval}), set)) throw PreconditionError("cover requires S within I");
    const double max_t = interval.length() / set.measure();
    if (!(t >= 1.0) || !(t <= max_t * (1.0 + 1e-12)))
        throw PreconditionError("cover requires 1 <= t <= |I|/|S|");

    const std::vector<Interval> comps(set.parts().begin(), set.parts().end());
    std::vector<Interval> out;
    cover_into(interval.lo, interval.hi, comps, 0, std::min(t, max_t), out);
    return out;
}

}  // namespace llab
