#include "llab/weight_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "llab/errors.hpp"
#include "llab/trend.hpp"

namespace llab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (expm1(y) - y) / y^2, continuous at 0.
double second_order_ratio(double y) {
    if (std::abs(y) < 1e-4) return 0.5 + y / 6.0 + y * y / 24.0;
    return (std::expm1(y) - y) / (y * y);
}

std::string describe_scale(const char* label, double r) {
    std::ostringstream os;
    os.precision(17);
    os << label << " r=" << r;
    return os.str();
}

void require_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw PreconditionError("probe grid must be nonempty");
    for (double r : grid)
        if (!(r > 0.0) || !std::isfinite(r)) throw PreconditionError("probe grid must be positive and finite");
}

// Scans a ratio along the grid and fills the common verdict fields.
template <typename Ratio>
ClassVerdict scan(WeightClass cls, const char* label, const std::vector<double>& grid, TrendEnd end,
                  Ratio&& ratio) {
    require_grid(grid);
    ClassVerdict v;
    v.class_name = cls;
    v.probe_scales = grid;
    std::vector<double> values;
    values.reserve(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values.push_back(ratio(grid[i]));
        if (values[i] > values[best] || std::isnan(values[best])) best = i;
    }
    v.constant = values[best];
    v.witness = describe_scale(label, grid[best]);
    v.witness_args = {grid[best]};
    v.growth_flagged = growth_trend(values, steps_per_decade(grid), end);
    v.holds = std::isfinite(v.constant) && !v.growth_flagged;
    return v;
}

}  // namespace

const char* to_string(WeightClass c) noexcept {
    switch (c) {
        case WeightClass::Delta2: return "Delta2";
        case WeightClass::Bp: return "Bp";
        case WeightClass::BstarInf: return "BstarInf";
        case WeightClass::A1: return "A1";
        case WeightClass::AInf: return "AInf";
    }
    return "?";
}

std::vector<double> default_class_grid() { return geometric_grid(-20, 20); }

double delta2_ratio(const WeightModel& w, double r) { return w.primitive(2.0 * r) / w.primitive(r); }

double bp_ratio(const WeightModel& w, double p, double r) {
    const double moment = w.tail_moment(r, p);
    if (!std::isfinite(moment)) return kInf;
    return std::pow(r, p) * moment / w.primitive(r);
}

double bstar_integral(const WeightModel& w, double r) {
    if (w.domain() != Domain::half_line) throw ConfigError("B*_inf requires a half-line weight");
    double total = 0.0;
    double primitive_at_lo = 0.0;
    for (const auto& piece : w.pieces(0.0, r)) {
        const double x = piece.exp + 1.0;
        if (piece.lo == 0.0) {
            total += piece.coef * std::pow(piece.hi, x) / (x * x);
        } else {
            // W(t) = W(a) + c a^x (e^{x log(t/a)} - 1)/x on [a, b].
            const double log_ratio = std::log(piece.hi / piece.lo);
            total += primitive_at_lo * log_ratio +
                     piece.coef * std::pow(piece.lo, x) * log_ratio * log_ratio *
                         second_order_ratio(x * log_ratio);
        }
        primitive_at_lo += power_integral(piece.lo, piece.hi, piece.coef, piece.exp);
    }
    return total;
}

double bstar_ratio(const WeightModel& w, double r) { return bstar_integral(w, r) / w.primitive(r); }

double a1_ratio(const WeightModel& u, double x, double lo, double hi) {
    return u.integral(lo, hi) / (hi - lo) / u.value(x);
}

ClassVerdict check_delta2(const WeightModel& w, const std::vector<double>& grid) {
    return scan(WeightClass::Delta2, "W(2r)/W(r) at", grid, TrendEnd::upper,
                [&](double r) { return delta2_ratio(w, r); });
}

ClassVerdict check_Bp(const WeightModel& w, double p, const std::vector<double>& grid) {
    if (!(p > 0.0)) throw PreconditionError("B_p requires p > 0");
    require_grid(grid);
    if (!(w.tail().exp - p < -1.0)) {
        ClassVerdict v;
        v.class_name = WeightClass::Bp;
        v.holds = false;
        v.constant = kInf;
        v.witness = "tail";
        v.probe_scales = grid;
        v.p = p;
        return v;
    }
    auto v = scan(WeightClass::Bp, "r^p int_r^inf w t^-p / W(r) at", grid, TrendEnd::both,
                  [&](double r) { return bp_ratio(w, p, r); });
    v.p = p;
    return v;
}

ClassVerdict check_Bstar_inf(const WeightModel& w, const std::vector<double>& grid) {
    return scan(WeightClass::BstarInf, "int_0^r W(t)/t dt / W(r) at", grid, TrendEnd::both,
                [&](double r) { return bstar_ratio(w, r); });
}

namespace {

struct A1Probe {
    double ratio = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Golden-section maximisation of f on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double& best_arg) {
    constexpr double g = 0.6180339887498949;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-12 * std::max(std::abs(a), std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    best_arg = fc > fd ? c : d;
    return std::max(fc, fd);
}

A1Probe best_average_ratio(const WeightModel& u, double x, const std::vector<double>& radii,
                           const std::vector<double>& breaks) {
    std::vector<double> left{x};
    std::vector<double> right{x};
    for (double r : radii) {
        left.push_back(x - r);
        right.push_back(x + r);
    }
    for (double b : breaks) {
        if (b < x) left.push_back(b);
        if (b > x) right.push_back(b);
    }
    if (u.domain() == Domain::half_line) std::erase_if(left, [](double a) { return a < 0.0; });
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());

    const double ux = u.value(x);
    auto ratio = [&](double lo, double hi) { return u.integral(lo, hi) / (hi - lo) / ux; };

    A1Probe best;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (!(left[i] < right[j])) continue;
            const double r = ratio(left[i], right[j]);
            if (r > best.ratio) {
                best = {r, left[i], right[j]};
                bi = i;
                bj = j;
            }
        }
    }

    // Coordinate refinement of each endpoint inside its neighbouring candidates.
    for (int round = 0; round < 3; ++round) {
        const double a0 = bi > 0 ? left[bi - 1] : best.lo;
        const double a1 = bi + 1 < left.size() ? std::min(left[bi + 1], x) : best.lo;
        if (a0 < a1) {
            double arg = best.lo;
            const double r = golden_max([&](double a) { return a < best.hi ? ratio(a, best.hi) : 0.0; }, a0,
                                        std::min(a1, best.hi), arg);
            if (r > best.ratio) best = {r, arg, best.hi};
        }
        const double b0 = bj > 0 ? std::max(right[bj - 1], x) : best.hi;
        const double b1 = bj + 1 < right.size() ? right[bj + 1] : best.hi;
        if (b0 < b1) {
            double arg = best.hi;
            const double r = golden_max([&](double b) { return b > best.lo ? ratio(best.lo, b) : 0.0; },
                                        std::max(b0, best.lo), b1, arg);
            if (r > best.ratio) best = {r, best.lo, arg};
        }
    }
    return best;
}

}  // namespace

ClassVerdict check_A1(const WeightModel& u, const std::vector<double>& grid) {
    require_grid(grid);
    const auto breaks = u.breakpoints();

    std::vector<double> points;
    for (double r : grid) points.push_back(r);
    if (u.domain() == Domain::line)
        for (double r : grid) points.push_back(-r);

    ClassVerdict v;
    v.class_name = WeightClass::A1;
    v.probe_scales = grid;

    // Per-scale maxima over both signs, for the trend heuristic.
    std::vector<double> per_scale(grid.size(), 0.0);
    double best_ratio = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i];
        const auto probe = best_average_ratio(u, x, grid, breaks);
        auto& slot = per_scale[i % grid.size()];
        slot = std::max(slot, probe.ratio);
        if (probe.ratio > best_ratio) {
            best_ratio = probe.ratio;
            v.witness_args = {x, probe.lo, probe.hi};
            std::ostringstream os;
            os.precision(17);
            os << "x=" << x << " I=(" << probe.lo << ", " << probe.hi << ")";
            v.witness = os.str();
        }
    }
    v.constant = best_ratio;
    v.growth_flagged = growth_trend(per_scale, steps_per_decade(grid), TrendEnd::both);
    v.holds = std::isfinite(v.constant) && !v.growth_flagged;
    return v;
}

std::vector<AinfProbe> default_ainf_probes(const WeightModel& u, const std::vector<double>& grid,
                                           std::uint64_t seed) {
    require_grid(grid);
    SeededRng rng(seed);
    const double fractions[] = {0.5, 1.0 / 16.0, 1.0 / 256.0};
    std::vector<AinfProbe> probes;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double r = grid[k];
        std::vector<Interval> bases{{0.0, r}, {r, 2.0 * r}};
        if (u.domain() == Domain::line) bases.push_back({-r / 2.0, r / 2.0});

        auto add = [&](const Interval& base, double theta, double offset) {
            const double len = theta * base.length();
            const double lo = base.lo + offset * (base.length() - len);
            probes.push_back({base, IntervalUnion::normalize({{lo, std::min(lo + len, base.hi)}}), k});
        };
        for (const auto& base : bases) {
            for (double theta : fractions) {
                add(base, theta, 0.0);
                add(base, theta, 1.0);
                add(base, theta, 0.5);
            }
        }
        for (int i = 0; i < 32; ++i) {
            const auto& base = bases[rng.below(bases.size())];
            const double theta = std::pow(2.0, -rng.uniform(1.0, 10.0));
            add(base, theta, rng.uniform());
        }
    }
    return probes;
}

namespace {

// log(|E|/|I|) / log(u(E)/u(I)); +inf when the probe carries no information.
double ainf_exponent(const WeightModel& u, const Interval& interval, const IntervalUnion& subset) {
    const double rel_len = subset.measure() / interval.length();
    const double rel_mass = u.measure(subset) / u.integral(interval.lo, interval.hi);
    if (!(rel_mass < 1.0) || !(rel_len < 1.0)) return kInf;
    if (!(rel_mass > 0.0)) return 0.0;
    return std::log(rel_len) / std::log(rel_mass);
}

}  // namespace

ClassVerdict check_Ainf(const WeightModel& u, const std::vector<AinfProbe>& probes) {
    if (probes.empty()) throw PreconditionError("A_inf check requires at least one probe");

    std::size_t scales = 0;
    for (const auto& pr : probes) {
        if (!contains(IntervalUnion::normalize({pr.interval}), pr.subset))
            throw PreconditionError("A_inf probe subset E is not contained in I");
        scales = std::max(scales, pr.scale_index + 1);
    }

    // With C_u = 1 the admissible exponents are alpha <= log(|E|/|I|)/log(u(E)/u(I))
    // for every probe; take the largest one, capped at 1.
    ClassVerdict v;
    v.class_name = WeightClass::AInf;
    double alpha = 1.0;
    const AinfProbe* binding = &probes.front();
    std::vector<double> per_scale(scales, 1.0);
    for (const auto& pr : probes) {
        const double e = ainf_exponent(u, pr.interval, pr.subset);
        auto& slot = per_scale[pr.scale_index];
        slot = std::min(slot, e);
        if (e < alpha) {
            alpha = e;
            binding = &pr;
        }
    }

    v.alpha = alpha;
    v.constant = 1.0;
    v.witness_args = {binding->interval.lo, binding->interval.hi};
    for (const auto& part : binding->subset.parts()) {
        v.witness_args.push_back(part.lo);
        v.witness_args.push_back(part.hi);
    }
    std::ostringstream os;
    os.precision(17);
    os << "I=(" << binding->interval.lo << ", " << binding->interval.hi << ") |E|=" << binding->subset.measure();
    v.witness = os.str();

    // Degenerating exponents along the scales signal a non-A_inf weight.
    std::vector<double> inverse;
    for (double a : per_scale) inverse.push_back(a > 0.0 ? 1.0 / a : kInf);
    v.growth_flagged = growth_trend(inverse, 3, TrendEnd::both);
    v.holds = alpha > 0.0 && !v.growth_flagged;
    return v;
}

double evaluate_witness(const ClassVerdict& verdict, const WeightModel& weight) {
    const auto& a = verdict.witness_args;
    switch (verdict.class_name) {
        case WeightClass::Delta2: return delta2_ratio(weight, a.at(0));
        case WeightClass::Bp:
            if (a.empty()) return kInf;
            return bp_ratio(weight, verdict.p.value(), a.at(0));
        case WeightClass::BstarInf: return bstar_ratio(weight, a.at(0));
        case WeightClass::A1: return a1_ratio(weight, a.at(0), a.at(1), a.at(2));
        case WeightClass::AInf: {
            const Interval interval{a.at(0), a.at(1)};
            std::vector<Interval> parts;
            for (std::size_t i = 2; i + 1 < a.size(); i += 2) parts.push_back({a[i], a[i + 1]});
            const auto subset = IntervalUnion::normalize(parts);
            const double rel_len = subset.measure() / interval.length();
            const double rel_mass = weight.measure(subset) / weight.integral(interval.lo, interval.hi);
            return std::max(1.0, rel_len / std::pow(rel_mass, verdict.alpha.value()));
        }
    }
    return 0.0;
}

}  // namespace llab
