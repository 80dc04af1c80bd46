#include <algorithm>
#include <cmath>
#include <limits>

#include "llab/boyd.hpp"
#include "llab/errors.hpp"
#include "llab/trend.hpp"

namespace llab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Golden-section maximisation on [a, b], returning the best value and arg.
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iterations = 100) {
    constexpr double g = 0.6180339887498949;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < iterations; ++it) {
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
    return fc > fd ? std::pair{fc, c} : std::pair{fd, d};
}

enum class Side { upper, lower };

enum class Layout { single, right, left, mirror };

// I = (x, x + len); S has length theta * len and starts at
// x + offset * (len − |S|).
struct Shape {
    double x = 0.0;
    double len = 1.0;
    double offset = 0.0;
    Layout layout = Layout::single;
    int copies = 1;
};

class PairSearch {
public:
    PairSearch(const WeightModel& u, const WeightModel& w, double theta, Side side)
        : u_(u), w_(w), theta_(theta), side_(side) {}

    [[nodiscard]] std::vector<ConfigPair> pairs(const Shape& s) const {
        std::vector<ConfigPair> out;
        // Translates share endpoints exactly, so they never overlap after rounding.
        auto add = [&](double x, double end) {
            const double len = end - x;
            const double slen = theta_ * len;
            const double lo = x + s.offset * (len - slen);
            out.push_back({{x, end}, IntervalUnion::normalize({{lo, std::min(lo + slen, end)}})});
        };
        switch (s.layout) {
            case Layout::single: add(s.x, s.x + s.len); break;
            case Layout::right:
                for (int k = 0; k < s.copies; ++k) add(s.x + k * s.len, s.x + (k + 1) * s.len);
                break;
            case Layout::left:
                for (int k = s.copies - 1; k >= 0; --k) add(s.x - k * s.len, s.x - (k - 1) * s.len);
                break;
            case Layout::mirror:
                add(-s.x - s.len, -s.x);
                add(s.x, s.x + s.len);
                break;
        }
        return out;
    }

    [[nodiscard]] double value(const Shape& s) const {
        if (!(s.len > 0.0) || !std::isfinite(s.x) || s.offset < 0.0 || s.offset > 1.0) return kNegInf;
        if (s.layout == Layout::mirror && s.x < 0.0 && s.x + s.len > 0.0) return kNegInf;
        double mass_outer = 0.0;
        double mass_inner = 0.0;
        for (const auto& pair : pairs(s)) {
            if (u_.domain() == Domain::half_line && pair.interval.lo < 0.0) return kNegInf;
            // Tiny subsets far from 0 lose length to rounding; the search
            // would otherwise reward the representation error.
            const double len = pair.interval.length();
            if (std::abs(pair.subset.measure() - theta_ * len) > 1e-12 * theta_ * len) return kNegInf;
            mass_outer += u_.integral(pair.interval.lo, pair.interval.hi);
            mass_inner += u_.measure(pair.subset);
        }
        const double outer = w_.primitive(mass_outer);
        const double inner = w_.primitive(mass_inner);
        const double r = side_ == Side::upper ? outer / inner : inner / outer;
        return std::isfinite(r) ? r : kNegInf;
    }

    [[nodiscard]] Configuration configuration(const Shape& s) const {
        auto ps = pairs(s);
        std::sort(ps.begin(), ps.end(),
                  [](const ConfigPair& a, const ConfigPair& b) { return a.interval.lo < b.interval.lo; });
        return {std::move(ps), 1.0 / theta_};
    }

private:
    const WeightModel& u_;
    const WeightModel& w_;
    double theta_;
    Side side_;
};

struct Candidate {
    Shape shape;
    double value = kNegInf;
};

void improve(Candidate& best, const PairSearch& search, const Shape& s) {
    const double v = search.value(s);
    if (v > best.value) best = {s, v};
}

// Seeded perturbation with coordinate-wise step control, at most 200 steps.
void refine(Candidate& best, const PairSearch& search, SeededRng& rng) {
    Candidate current = best;
    double steps[3] = {0.25, 0.25, 0.25};
    for (int it = 0; it < 200; ++it) {
        const std::size_t k = rng.below(3);
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double amount = sign * steps[k] * rng.uniform(0.5, 1.5);
        Shape trial = current.shape;
        switch (k) {
            case 0: trial.x += amount * trial.len; break;
            case 1: trial.len *= std::exp(amount); break;
            default: trial.offset = std::clamp(trial.offset + amount, 0.0, 1.0); break;
        }
        const double v = search.value(trial);
        if (v > current.value) {
            current = {trial, v};
            steps[k] = std::min(1.0, steps[k] * 1.5);
        } else {
            steps[k] *= 0.7;
        }
    }
    if (current.value > best.value) best = current;
}

std::vector<double> search_scales() {
    std::vector<double> out;
    for (int k = -160; k <= 160; ++k) out.push_back(std::exp2(k / 4.0));
    return out;
}

std::vector<double> anchors_for(const WeightModel& u) {
    if (u.is_constant()) return {0.0};
    std::vector<double> out = u.breakpoints();
    for (int j : {-20, -10, 0, 10, 20}) {
        out.push_back(std::exp2(j));
        if (u.domain() == Domain::line) out.push_back(-std::exp2(j));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SearchResult run_search(const WeightModel& u, const WeightModel& w, double theta, Side side, SearchBudget budget,
                        std::uint64_t seed) {
    if (budget.level == 0) throw PreconditionError("search budget must be at least 1");
    if (w.domain() != Domain::half_line) throw ConfigError("w must be a half-line weight");

    const PairSearch search(u, w, theta, side);
    SearchResult result;
    if (theta == 1.0) {
        result.value = 1.0;
        result.witness = search.configuration({0.0, 1.0, 0.0});
        return result;
    }

    const auto scales = search_scales();
    const auto anchors = anchors_for(u);
    const double offsets[] = {0.0, 0.5, 1.0};
    const double shifts[] = {0.0, -1.0, -0.5};

    // Stage 1a: single pairs on the anchor x scale x placement grid.
    Candidate best;
    result.per_scale.assign(scales.size(), kNegInf);
    for (std::size_t k = 0; k < scales.size(); ++k) {
        Candidate at_scale;
        for (double a : anchors)
            for (double shift : shifts)
                for (double off : offsets) improve(at_scale, search, {a + shift * scales[k], scales[k], off});
        result.per_scale[k] = at_scale.value;
        if (at_scale.value > best.value) best = at_scale;
    }
    if (!std::isfinite(best.value)) throw PreconditionError("no admissible configuration (weights overflow)");

    // Stage 1b: replications of the best pair across disjoint translates.
    const Shape base = best.shape;
    for (int copies = 2; copies <= 16; ++copies) {
        for (Layout layout : {Layout::right, Layout::left}) {
            Shape s = base;
            s.layout = layout;
            s.copies = copies;
            improve(best, search, s);
        }
    }
    if (u.domain() == Domain::line) {
        Shape s = base;
        s.layout = Layout::mirror;
        s.copies = 2;
        improve(best, search, s);
    }

    // Stage 1c: seeded refinement of the incumbent.
    {
        SeededRng rng(derive_seed(seed, 1));
        refine(best, search, rng);
    }

    // Stages 2..level: random restarts plus another refinement of the incumbent.
    for (unsigned stage = 2; stage <= budget.level; ++stage) {
        SeededRng rng(derive_seed(seed, stage));
        Candidate restart;
        Shape s{anchors[rng.below(anchors.size())], scales[rng.below(scales.size())], rng.uniform()};
        s.x += shifts[rng.below(3)] * s.len;
        s.layout = best.shape.layout;
        s.copies = best.shape.copies;
        improve(restart, search, s);
        if (std::isfinite(restart.value)) refine(restart, search, rng);
        if (restart.value > best.value) best = restart;
        refine(best, search, rng);
    }

    result.value = best.value;
    result.witness = search.configuration(best.shape);
    validate_configuration(result.witness);

    std::vector<double> finite_scale;
    for (double v : result.per_scale)
        if (std::isfinite(v)) finite_scale.push_back(v);
    const std::vector<double> grid(scales.begin(), scales.begin() + 2);
    result.unresolved = growth_trend(finite_scale, steps_per_decade(grid), TrendEnd::both);
    return result;
}

}  // namespace

void validate_configuration(const Configuration& config) {
    if (config.pairs.empty()) throw PreconditionError("configuration has no pairs");
    if (!(config.ratio >= 1.0)) throw PreconditionError("configuration ratio must be >= 1");
    for (std::size_t j = 0; j < config.pairs.size(); ++j) {
        const auto& pr = config.pairs[j];
        if (!(pr.interval.lo < pr.interval.hi)) throw PreconditionError("configuration interval is degenerate");
        if (!contains(IntervalUnion::normalize({pr.interval}), pr.subset))
            throw PreconditionError("configuration violates S_j within I_j");
        const double len = pr.interval.length();
        if (std::abs(len - config.ratio * pr.subset.measure()) > 1e-9 * len)
            throw PreconditionError("configuration violates |I_j| = t|S_j|");
        if (j > 0 && config.pairs[j - 1].interval.hi > pr.interval.lo)
            throw PreconditionError("configuration intervals are not pairwise disjoint (or not sorted)");
    }
}

double configuration_ratio(const WeightModel& u, const WeightModel& w, const Configuration& config) {
    double outer = 0.0;
    double inner = 0.0;
    for (const auto& pr : config.pairs) {
        outer += u.integral(pr.interval.lo, pr.interval.hi);
        inner += u.measure(pr.subset);
    }
    return w.primitive(outer) / w.primitive(inner);
}

double dilation_sup(const WeightModel& w, double t) {
    if (!(t > 0.0)) throw PreconditionError("dilation parameter must be positive");
    if (t == 1.0) return 1.0;
    std::vector<double> grid;
    for (int k = -960; k <= 960; ++k) grid.push_back(std::exp2(k / 16.0));
    for (double b : w.breakpoints()) {
        if (b > 0.0) {
            grid.push_back(b);
            grid.push_back(b / t);
        }
    }
    std::sort(grid.begin(), grid.end());
    auto ratio = [&](double s) {
        const double r = w.primitive(s * t) / w.primitive(s);
        return std::isfinite(r) ? r : kNegInf;
    };
    std::size_t best = 0;
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = ratio(grid[i]);
        if (values[i] > values[best]) best = i;
    }
    double value = values[best];
    if (best > 0 && best + 1 < grid.size()) {
        const auto [v, arg] = golden_max([&](double ls) { return ratio(std::exp(ls)); }, std::log(grid[best - 1]),
                                         std::log(grid[best + 1]));
        value = std::max(value, v);
    }
    return value;
}

double wbar(const WeightModel& w, double t) {
    if (!(t >= 1.0)) throw PreconditionError("wbar requires t >= 1");
    return dilation_sup(w, t);
}

double wbar_lower(const WeightModel& w, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw PreconditionError("wbar_lower requires 0 < t <= 1");
    return dilation_sup(w, t);
}

SearchResult wbar_u(const WeightModel& u, const WeightModel& w, double t, SearchBudget budget, std::uint64_t seed) {
    if (!(t >= 1.0) || !std::isfinite(t)) throw PreconditionError("wbar_u requires t >= 1");
    return run_search(u, w, 1.0 / t, Side::upper, budget, seed);
}

SearchResult underline_wu(const WeightModel& u, const WeightModel& w, double t, SearchBudget budget,
                          std::uint64_t seed) {
    if (!(t > 0.0 && t <= 1.0)) throw PreconditionError("underline_wu requires 0 < t <= 1");
    return run_search(u, w, t, Side::lower, budget, seed);
}

}  // namespace llab
