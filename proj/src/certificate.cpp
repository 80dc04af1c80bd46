#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "llab/construction.hpp"
#include "llab/errors.hpp"

namespace llab {

namespace {

IntervalUnion level_union(const std::vector<ExtremalFunction>& parts, double lambda) {
    IntervalUnion out;
    for (const auto& f : parts) out = unite(out, f.level_set(lambda));
    return out;
}

IntervalUnion support_union(const std::vector<ExtremalFunction>& parts) {
    std::vector<Interval> raw;
    for (const auto& f : parts) raw.push_back(f.base_interval());
    return IntervalUnion::normalize(std::move(raw));
}

}  // namespace

double extremal_sum_norm_p(const std::vector<ExtremalFunction>& parts, const WeightModel& u, const WeightModel& w,
                           double p) {
    if (!(p > 0.0)) throw PreconditionError("p must be positive");
    if (parts.empty()) return 0.0;
    const auto mass = [&](const IntervalUnion& set) { return w.primitive(u.measure(set)); };

    std::vector<double> cuts{1.0};
    double lowest = 1.0;
    for (const auto& f : parts) {
        lowest = std::min(lowest, f.floor());
        cuts.push_back(f.floor());
        for (double l : f.critical_levels()) cuts.push_back(l);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Below the lowest floor the level set is the whole support.
    double total = std::pow(lowest, p) * mass(support_union(parts));
    const auto integrand = [&](double lambda) {
        return p * std::pow(lambda, p - 1.0) * mass(level_union(parts, lambda));
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] < lowest || !(cuts[i + 1] > cuts[i])) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 15,
                                                                               1e-12);
    }
    return total;
}

WeakTypeCertificate weak_type_lower_bound(const WeightModel& u, const WeightModel& w, double p,
                                          const Configuration& family) {
    if (!(p > 0.0)) throw PreconditionError("p must be positive");
    validate_configuration(family);
    if (!(family.ratio > 1.0)) throw PreconditionError("weak-type certificate requires s > 1");

    std::vector<ExtremalFunction> parts;
    std::vector<Interval> supersets;
    std::vector<Interval> subsets;
    for (const auto& pair : family.pairs) {
        parts.push_back(ExtremalFunction::build(pair.interval, pair.subset));
        supersets.push_back(pair.interval);
        subsets.insert(subsets.end(), pair.subset.parts().begin(), pair.subset.parts().end());
    }

    WeakTypeCertificate c;
    c.p = p;
    c.s = family.ratio;
    c.family = family;
    c.threshold = extremal_mean_formula(c.s) / 2.0;
    const double norm_p = extremal_sum_norm_p(parts, u, w, p);
    c.test_norm = std::pow(norm_p, 1.0 / p);
    c.superset_mass = w.primitive(u.measure(IntervalUnion::normalize(std::move(supersets))));
    c.subset_mass = w.primitive(u.measure(IntervalUnion::normalize(std::move(subsets))));
    if (!(c.test_norm > 0.0)) throw SingularInputError("test function has zero norm");
    c.lower_bound = std::pow(c.superset_mass, 1.0 / p) * c.threshold / c.test_norm;
    c.part2_constant = norm_p / ((1.0 + std::log(c.s)) * c.subset_mass);
    return c;
}

double wbar_u_bound_from_weak(double c_weak, double p, double s, double part2_constant) {
    if (!(p > 0.0) || !(s >= 1.0)) throw PreconditionError("requires p > 0 and s >= 1");
    return std::pow(c_weak, p) * std::pow(2.0, p) * std::pow(1.0 + std::log(s), 1.0 - p) * std::pow(s, p) *
           part2_constant;
}

}  // namespace llab
