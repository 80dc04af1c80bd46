#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "llab/construction.hpp"
#include "llab/errors.hpp"
#include "llab/operators.hpp"
#include "llab/parallel.hpp"
#include "llab/trend.hpp"

namespace llab {

namespace {

constexpr int kPointsPerGap = 16;
constexpr std::size_t kGridBudget = 4096;
constexpr int kTailSteps = 96;

std::string describe(const IntervalUnion& set) {
    std::ostringstream out;
    out.precision(6);
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) out << ';';
        out << set[i].lo << ',' << set[i].hi;
    }
    return out.str();
}

IntervalUnion union_of(std::vector<Interval> parts) { return IntervalUnion::normalize(std::move(parts)); }

// Breakpoints of f, up to 16 subdivisions per gap (fewer for long step functions), geometric tails out to 2^20
// times the hull length (clipped at 0 on the half-line).
std::vector<double> image_grid(const StepFunction& f, Domain domain) {
    const auto ends = f.breakpoints();
    const double lo = ends.front();
    const double hi = ends.back();
    const double len = hi - lo;
    const int per_gap = static_cast<int>(std::clamp<std::size_t>(kGridBudget / ends.size(), 2, kPointsPerGap));
    std::vector<double> grid;
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
        for (int k = 0; k < per_gap; ++k) grid.push_back(ends[i] + (ends[i + 1] - ends[i]) * k / per_gap);
    }
    grid.push_back(hi);
    for (int k = 0; k <= kTailSteps; ++k) {
        const double d = len * std::exp2((k - 16) / 4.0);
        grid.push_back(hi + d);
        if (domain == Domain::line || lo - d > 0.0) grid.push_back(lo - d);
    }
    if (domain == Domain::half_line) {
        if (lo > 0.0) {
            for (int k = 0; k < kPointsPerGap; ++k) grid.push_back(lo * k / kPointsPerGap);
        }
        std::erase_if(grid, [](double x) { return x < 0.0; });
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// min over the cell of Mf is at least the best average over intervals
// containing the whole cell. prim[i] = ∫ f from ends[0] to ends[i].
double maximal_on_cell(const StepFunction& f, const std::vector<double>& ends, const std::vector<double>& prim,
                       double c0, double c1) {
    const auto first_right = std::upper_bound(ends.begin(), ends.end(), c1) - ends.begin();
    const auto last_left = std::lower_bound(ends.begin(), ends.end(), c0) - ends.begin();
    const double p0 = f.integral(ends.front(), c0);
    const double p1 = f.integral(ends.front(), c1);
    double best = (p1 - p0) / (c1 - c0);
    for (std::ptrdiff_t i = -1; i < last_left; ++i) {
        const double a = i < 0 ? c0 : ends[i];
        const double pa = i < 0 ? p0 : prim[i];
        best = std::max(best, (p1 - pa) / (c1 - a));
        for (auto j = first_right; j < static_cast<std::ptrdiff_t>(ends.size()); ++j)
            best = std::max(best, (prim[j] - pa) / (ends[j] - a));
    }
    return std::max(best, 0.0);
}

}  // namespace

std::vector<ProbeFunction> probe_family(const std::string& name, std::uint64_t seed) {
    std::vector<ProbeFunction> out;
    const auto add_indicator = [&](std::vector<Interval> parts) {
        auto set = union_of(std::move(parts));
        out.push_back({"ind:" + describe(set), StepFunction::indicator(set)});
    };
    if (name == "indicators") {
        add_indicator({{0, 1}});
        add_indicator({{1, 2}});
        for (int k : {-6, -3, 3, 6}) add_indicator({{0, std::exp2(k)}});
        add_indicator({{0, 1}, {2, 3}});
        add_indicator({{0.5, 1}, {3, 4}, {8, 16}});
    } else if (name == "extremals") {
        const auto add_extremal = [&](Interval interval, std::vector<Interval> parts) {
            auto set = union_of(std::move(parts));
            const auto f = ExtremalFunction::build(interval, set);
            std::ostringstream id;
            id.precision(6);
            id << "ext:" << interval.lo << ',' << interval.hi << '/' << describe(set);
            out.push_back({id.str(), f.lower_step(64)});
        };
        for (double s : {std::numbers::e, 4.0, 16.0, 64.0}) add_extremal({0, s}, {{0, 1}});
        add_extremal({0, 4}, {{1, 2}});
        add_extremal({0, 10}, {{1, 2}, {5, 6}});
        add_extremal({0, 20}, {{1, 2}, {4, 5}, {12, 13}});
    } else if (name.rfind("random:", 0) == 0) {
        std::size_t n = 0;
        try {
            n = std::stoul(name.substr(7));
        } catch (const std::exception&) {
            throw ConfigError("random family needs a count, as in random:16");
        }
        for (std::size_t i = 0; i < n; ++i) {
            SeededRng rng(derive_seed(seed, i));
            const std::size_t m = 1 + rng.below(6);
            std::vector<double> pts;
            for (std::size_t k = 0; k < 2 * m; ++k) pts.push_back(rng.uniform(0.0, 16.0));
            std::sort(pts.begin(), pts.end());
            std::vector<StepCell> cells;
            for (std::size_t k = 0; k < m; ++k) {
                if (pts[2 * k + 1] > pts[2 * k]) cells.push_back({pts[2 * k], pts[2 * k + 1], rng.uniform(0.1, 2.0)});
            }
            out.push_back({"rand:" + std::to_string(i), StepFunction::from_cells(cells)});
        }
    } else {
        throw ConfigError("unknown test family '" + name + "' (indicators, extremals, random:N)");
    }
    return out;
}

StepFunction operator_image(Operator op, const StepFunction& f, const WeightModel& u) {
    if (f.empty()) return {};
    const auto grid = image_grid(f, u.domain());
    const auto ends = f.breakpoints();
    std::vector<double> prim(ends.size(), 0.0);
    for (std::size_t i = 1; i < ends.size(); ++i) prim[i] = prim[i - 1] + f.integral(ends[i - 1], ends[i]);
    std::vector<StepCell> cells;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double c0 = grid[i];
        const double c1 = grid[i + 1];
        double v = 0.0;
        switch (op) {
            case Operator::M: v = maximal_on_cell(f, ends, prim, c0, c1); break;
            case Operator::H: v = std::abs(hilbert(f, 0.5 * (c0 + c1))); break;
            case Operator::Hstar: v = hilbert_maximal(f, 0.5 * (c0 + c1)); break;
            case Operator::Q: throw PreconditionError("Q acts on decreasing rearrangements");
        }
        cells.push_back({c0, c1, v});
    }
    return StepFunction::from_cells(cells);
}

DecreasingStep conjugate_hardy_image(const DecreasingStep& g) {
    const auto& b = g.breakpoints;
    std::vector<double> grid{0.0};
    if (b.size() >= 2) {
        for (int k = 200; k > 0; --k) grid.push_back(b[1] * std::exp2(-k / 4.0));
        for (std::size_t i = 1; i + 1 < b.size(); ++i) {
            const double r = std::log(b[i + 1] / b[i]);
            for (int k = 0; k < kPointsPerGap; ++k) grid.push_back(b[i] * std::exp(r * k / kPointsPerGap));
        }
        grid.push_back(b.back());
    }
    DecreasingStep out;
    out.breakpoints = {0.0};
    out.values.clear();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i + 1] > grid[i])) continue;
        const double v = conjugate_hardy(g, grid[i + 1]);
        if (!(v > 0.0)) break;
        out.breakpoints.push_back(grid[i + 1]);
        out.values.push_back(v);
    }
    return out;
}

OperatorProbeReport empirical_opnorm(Operator op, const WeightModel& u, const WeightModel& w, double p,
                                     const std::vector<ProbeFunction>& family, NormTarget target,
                                     unsigned threads) {
    if (family.empty()) throw PreconditionError("empirical operator norm needs a nonempty test family");
    if (!(p > 0.0)) throw PreconditionError("p must be positive");
    OperatorProbeReport report;
    report.op = op;
    report.norm_kind = target;
    report.approximate = op == Operator::H || op == Operator::Hstar;
    report.ratios.resize(family.size());
    parallel_for(family.size(), threads, [&](std::size_t i) {
        const auto& probe = family[i];
        ProbeRatio r;
        r.id = probe.id;
        r.input_norm = lorentz_norm(probe.f, u, w, p);
        if (op == Operator::Q) {
            const auto image = conjugate_hardy_image(rearrange(probe.f, u));
            r.output_norm = target == NormTarget::strong ? decreasing_norm(image, w, p)
                                                         : decreasing_weak_norm(image, w, p);
        } else {
            const auto image = operator_image(op, probe.f, u);
            r.output_norm = target == NormTarget::strong ? lorentz_norm(image, u, w, p)
                                                         : weak_lorentz_norm(image, u, w, p);
        }
        if (!(r.input_norm > 0.0)) throw SingularInputError("test function '" + probe.id + "' has zero norm");
        r.ratio = r.output_norm / r.input_norm;
        report.ratios[i] = r;
    });
    for (const auto& r : report.ratios) report.max_ratio = std::max(report.max_ratio, r.ratio);
    return report;
}

}  // namespace llab
