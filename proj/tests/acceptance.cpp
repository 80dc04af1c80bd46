// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "llab/boyd.hpp"
#include "llab/construction.hpp"
#include "llab/operators.hpp"
#include "llab/weight_classes.hpp"
#include "oracles.hpp"

using namespace llab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    // Every number the criterion computed, for the determinism rerun.
    std::string digest;
};

class Digest {
public:
    void add(double v) { out_ += fmt::format("{:.17g};", v); }
    [[nodiscard]] std::string str() const { return out_; }

private:
    std::string out_;
};

IntervalUnion set_of(std::vector<Interval> parts) { return IntervalUnion::normalize(std::move(parts)); }

struct Instance {
    Interval interval;
    IntervalUnion set;
};

Instance random_instance(std::mt19937_64& rng, int max_parts) {
    std::uniform_int_distribution<int> count(1, max_parts);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lo = -10.0 + 20.0 * unit(rng);
    const double len = 0.5 + 30.0 * unit(rng);
    const int m = count(rng);
    std::vector<double> pts;
    for (int i = 0; i < 2 * m; ++i) pts.push_back(lo + len * unit(rng));
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> parts;
    for (int i = 0; i < m; ++i)
        if (pts[2 * i + 1] - pts[2 * i] > 1e-6 * len) parts.push_back({pts[2 * i], pts[2 * i + 1]});
    if (parts.empty()) parts.push_back({lo + 0.25 * len, lo + 0.5 * len});
    return {{lo, lo + len}, set_of(parts)};
}

StepFunction random_step(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    std::uniform_real_distribution<double> val(0.1, 3.0);
    const int m = count(rng);
    std::vector<double> pts;
    for (int i = 0; i < 2 * m; ++i) pts.push_back(pos(rng));
    std::sort(pts.begin(), pts.end());
    std::vector<StepCell> cells;
    for (int i = 0; i < m; ++i) cells.push_back({pts[2 * i], pts[2 * i + 1], val(rng)});
    auto f = StepFunction::from_cells(cells);
    return f.empty() ? StepFunction::indicator(set_of({{0, 1}})) : f;
}

std::vector<Instance> extremal_instances() {
    std::mt19937_64 rng(2024);
    std::vector<Instance> out;
    for (int i = 0; i < 200; ++i) out.push_back(random_instance(rng, 6));
    return out;
}

Outcome covering() {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Outcome o;
    Digest d;
    double worst = 0.0;
    int bad_structure = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = random_instance(rng, 8);
        const double tmax = inst.interval.length() / inst.set.measure();
        const double t = 1.0 + (tmax - 1.0) * unit(rng);
        const auto blocks = cover(inst.interval, inst.set, t);
        for (std::size_t n = 0; n < blocks.size(); ++n) {
            const auto& b = blocks[n];
            worst = std::max(worst, std::abs(t * measure_within(inst.set, b.lo, b.hi) - b.length()) / b.length());
            if (b.lo < inst.interval.lo || b.hi > inst.interval.hi || (n > 0 && blocks[n - 1].hi > b.lo))
                ++bad_structure;
            d.add(b.lo);
            d.add(b.hi);
        }
        if (!contains(IntervalUnion::normalize(blocks), inst.set)) ++bad_structure;
    }
    o.pass = worst <= 1e-9 && bad_structure == 0;
    o.detail = fmt::format("1000 instances, max relative identity error {:.3g}, structural violations {}", worst,
                           bad_structure);
    o.digest = d.str();
    return o;
}

Outcome extremal_suite() {
    Outcome o;
    Digest d;
    double worst = 0.0;
    int split = 0;
    int nesting = 0;
    int values = 0;
    for (const auto& inst : extremal_instances()) {
        const auto f = ExtremalFunction::build(inst.interval, inst.set);
        IntervalUnion previous;
        for (int k = 0; k < 50; ++k) {
            const double lambda = 1.0 - (1.0 - f.floor()) * k / 50.0;
            const auto level = f.level_set(lambda);
            for (const auto& J : level.parts()) {
                worst = std::max(worst, std::abs(measure_within(inst.set, J.lo, J.hi) - lambda * J.length()) /
                                            J.length());
                for (const auto& c : inst.set.parts()) {
                    const double inside = std::max(0.0, std::min(c.hi, J.hi) - std::max(c.lo, J.lo));
                    if (inside > 1e-12 * c.length() && inside < c.length() * (1.0 - 1e-12)) ++split;
                }
                d.add(J.lo);
                d.add(J.hi);
            }
            if (!contains(level, previous)) ++nesting;
            previous = level;
        }
        for (const auto& c : inst.set.parts()) {
            for (double x : {c.lo, 0.5 * (c.lo + c.hi), c.hi})
                if (f(x) != 1.0) ++values;
        }
        for (int k = 0; k <= 40; ++k) {
            const double x = std::min(inst.interval.hi, inst.interval.lo + inst.interval.length() * k / 40.0);
            if (f(x) < f.floor() * (1.0 - 1e-12)) ++values;
            d.add(f(x));
        }
    }
    o.pass = worst <= 1e-9 && split == 0 && nesting == 0 && values == 0;
    o.detail = fmt::format("200 instances x 50 levels, max identity error {:.3g}, split {}, nesting {}, value {}",
                           worst, split, nesting, values);
    o.digest = d.str();
    return o;
}

Outcome mean_identities() {
    Outcome o;
    Digest d;
    double worst_dist = 0.0;
    double worst_mean = 0.0;
    for (const auto& inst : extremal_instances()) {
        const auto f = ExtremalFunction::build(inst.interval, inst.set);
        for (int k = 0; k <= 50; ++k) {
            const double lambda = std::min(1.0, f.floor() + (1.0 - f.floor()) * k / 50.0);
            const double m = f.level_set(lambda).measure();
            worst_dist = std::max(worst_dist, std::abs(m - inst.set.measure() / lambda) / m);
            d.add(m);
        }
        const double mean = f.mean_value();
        worst_mean = std::max(worst_mean, std::abs(mean - extremal_mean_formula(f.ratio())));
        d.add(mean);
    }
    o.pass = worst_dist <= 1e-9 && worst_mean <= 1e-9;
    o.detail = fmt::format("max distribution error {:.3g} (relative), max mean error {:.3g}", worst_dist, worst_mean);
    o.digest = d.str();
    return o;
}

Outcome collapse() {
    const auto u = WeightModel::constant(1.0, Domain::line);
    const std::vector<std::pair<std::string, WeightModel>> weights{
        {"t^0", WeightModel::power(0.0)},
        {"t^1", WeightModel::power(1.0)},
        {"t^-1/2", WeightModel::power(-0.5)},
        {"1 then t", WeightModel(Domain::half_line, {{0, 1, 1, 0}}, {1, 1})},
        {"t then 1", WeightModel(Domain::half_line, {{0, 1, 1, 1}}, {1, 0})},
        {"t^-1/2 then 1/2", WeightModel(Domain::half_line, {{0, 4, 1, -0.5}}, {0.5, 0})},
    };
    Outcome o;
    Digest d;
    double worst = 0.0;
    std::string worst_at;
    for (const auto& [name, w] : weights) {
        for (int k = 1; k <= 10; ++k) {
            const double t = std::exp2(k);
            const double searched = wbar_u(u, w, t, {}, 17).value;
            const double exact = wbar(w, t);
            const double rel = std::abs(searched / exact - 1.0);
            if (rel > worst) {
                worst = rel;
                worst_at = fmt::format("{} at t={}", name, t);
            }
            d.add(searched);
        }
    }
    o.pass = worst <= 1e-2;
    o.detail = fmt::format("6 weights x 10 scales, max relative gap {:.3g}{}", worst,
                           worst_at.empty() ? "" : " (" + worst_at + ")");
    o.digest = d.str();
    return o;
}

Outcome power_indices() {
    const auto u = WeightModel::constant(1.0, Domain::line);
    Outcome o;
    Digest d;
    double worst = 0.0;
    for (double a : {-0.5, 0.0, 1.0, 2.0}) {
        for (double p : {1.5, 2.0, 4.0}) {
            const auto est = boyd_indices(u, WeightModel::power(a), p);
            const double target = (a + 1.0) / p;
            worst = std::max({worst, std::abs(est.alpha.exponent - target), std::abs(est.beta.exponent - target)});
            d.add(est.alpha.exponent);
            d.add(est.beta.exponent);
        }
    }
    o.pass = worst <= 1e-2;
    o.detail = fmt::format("12 (a, p) pairs, max |index - (a+1)/p| {:.3g}", worst);
    o.digest = d.str();
    return o;
}

Outcome bp_threshold() {
    Outcome o;
    int mismatched = 0;
    double worst = 0.0;
    int pairs = 0;
    for (double p : {1.25, 1.5, 2.0, 3.0, 4.0}) {
        for (double shift : {-0.5, -0.05, 0.05, 0.5}) {
            const double a = p - 1.0 + shift;
            const auto v = check_Bp(WeightModel::power(a), p, default_class_grid());
            ++pairs;
            const bool expected = p - 1.0 - a > 0.0;
            if (v.holds != expected) ++mismatched;
            if (expected) {
                const double ref = (a + 1.0) / (p - a - 1.0);
                worst = std::max(worst, std::abs(v.constant - ref) / std::max(1.0, ref));
            }
        }
    }
    o.pass = pairs == 20 && mismatched == 0 && worst <= 1e-6;
    o.detail = fmt::format("{} pairs, verdict mismatches {}, max constant error {:.3g}", pairs, mismatched, worst);
    return o;
}

Outcome bstar_constant() {
    Outcome o;
    double worst = 0.0;
    for (double a : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
        const auto v = check_Bstar_inf(WeightModel::power(a), default_class_grid());
        worst = std::max(worst, std::abs(v.constant - 1.0 / (a + 1.0)));
        if (!v.holds) o.pass = false;
    }
    o.pass = o.pass && worst <= 1e-6;
    o.detail = fmt::format("7 exponents, max |constant - 1/(a+1)| {:.3g}", worst);
    return o;
}

Outcome submultiplicativity() {
    const auto u = WeightModel::constant(1.0, Domain::line);
    Outcome o;
    Digest d;
    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(std::exp2(k));
    double worst = 0.0;
    std::size_t pairs = 0;
    for (double a : {-0.5, 0.0, 1.0, 2.0}) {
        const auto w = WeightModel::power(a);
        std::map<double, double> cache;
        const auto phi = [&](double t) {
            auto it = cache.find(t);
            if (it == cache.end()) it = cache.emplace(t, wbar_u(u, w, t, {}, 5).value).first;
            return it->second;
        };
        const auto r = check_submultiplicative(phi, grid, Direction::exact);
        worst = std::max(worst, r.max_excess);
        pairs += r.pairs_checked;
        if (!r.holds) o.pass = false;
        for (const auto& [t, v] : cache) d.add(v);
    }
    SubmultiplicativeSamples s;
    s.arguments = grid;
    for (double t : grid) s.values.push_back(std::pow(t, 0.7));
    const double slope = fit_upper_exponent(s).exponent;
    o.pass = o.pass && std::abs(slope - 0.7) <= 1e-6;
    o.detail = fmt::format("{} pairs, max phi(ts)/(phi(t)phi(s)) {:.12g}; fitted slope {:.12g}", pairs, worst, slope);
    o.digest = d.str();
    return o;
}

Outcome hilbert_exactness() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> pos(-7.0, 7.0);
    Outcome o;
    Digest d;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto f = random_step(rng);
        double x = pos(rng);
        for (double e : f.breakpoints())
            if (std::abs(x - e) < 1e-9) x = e + 1e-9;
        const double h = hilbert(f, x);
        worst = std::max(worst, std::abs(h - oracle::hilbert_quadrature(f, x)));
        d.add(h);
    }
    const double at2 = hilbert(StepFunction::indicator(set_of({{-1, 1}})), 2.0);
    const double formula_gap = std::abs(at2 - std::log(3.0) / std::numbers::pi);
    o.pass = worst <= 1e-6 && formula_gap <= 1e-10;
    o.detail = fmt::format("100 probes, max |H - oracle| {:.3g}; |H chi(-1,1)(2) - log3/pi| {:.3g}", worst,
                           formula_gap);
    o.digest = d.str();
    return o;
}

Outcome maximal_exactness() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> pos(-7.0, 7.0);
    Outcome o;
    Digest d;
    double worst = 0.0;
    int below_oracle = 0;
    for (int i = 0; i < 100; ++i) {
        const auto f = random_step(rng);
        const double x = pos(rng);
        const double m = maximal(f, x);
        const double ref = oracle::maximal_grid(f, x);
        worst = std::max(worst, std::abs(m - ref));
        // Grid sup is a lower bound for M up to rounding in the prefix integrals.
        if (m < ref - 1e-9 * std::max(1.0, ref)) ++below_oracle;
        d.add(m);
    }
    const double at2 = maximal(StepFunction::indicator(set_of({{0, 1}})), 2.0);
    o.pass = worst <= 1e-6 && below_oracle == 0 && at2 == 0.5;
    o.detail = fmt::format("100 probes, max |M - oracle| {:.3g}, oracle exceeded M {} times; M chi(0,1)(2) = {:.17g}",
                           worst, below_oracle, at2);
    o.digest = d.str();
    return o;
}

Outcome weak_certificate() {
    const auto u = WeightModel::constant(1.0, Domain::line);
    const auto w = WeightModel::constant(1.0, Domain::half_line);
    const double e = std::numbers::e;
    const auto c = weak_type_lower_bound(u, w, 2.0, {{{{0, e}, set_of({{0, 1}})}}, e});
    const double expected = 1.0 / std::sqrt(2.0 * e - 1.0);
    Outcome o;
    Digest d;
    d.add(c.lower_bound);

    std::vector<double> scales;
    std::vector<double> measured;
    for (int k = 1; k <= 8; ++k) {
        const double s = std::exp2(k);
        scales.push_back(s);
        measured.push_back(weak_type_lower_bound(u, w, 2.0, {{{{0, s}, set_of({{0, 1}})}}, s}).lower_bound);
        d.add(measured.back());
    }
    // W-bar_u(s) = s exactly here. The implied bound only holds for C at or
    // above the true weak constant, so use the constant measured at the same
    // scale and the largest measured one.
    const double c_max = *std::max_element(measured.begin(), measured.end());
    double worst_margin = INFINITY;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double s = scales[i];
        worst_margin = std::min(worst_margin, wbar_u_bound_from_weak(measured[i], 2.0, s) / s);
        worst_margin = std::min(worst_margin, wbar_u_bound_from_weak(c_max, 2.0, s) / s);
    }
    o.pass = std::abs(c.lower_bound - expected) <= 1e-3 && worst_margin >= 1.0;
    o.detail = fmt::format("lower_bound {:.10f} (expected {:.10f}); min bound/s over s in 2..256 = {:.4f}",
                           c.lower_bound, expected, worst_margin);
    o.digest = d.str();
    return o;
}

Outcome verdict_coherence() {
    const auto u = WeightModel::constant(1.0, Domain::line);
    const auto one = WeightModel::constant(1.0, Domain::half_line);
    Outcome o;
    std::string detail;
    for (double p : {1.5, 2.0, 4.0}) {
        const auto hv = hilbert_verdict(u, one, p, boyd_indices(u, one, p));
        const bool lp = hv.maximal.index_route == Verdict::bounded && hv.maximal.condition_route == Verdict::bounded &&
                        hv.index_route == Verdict::bounded && hv.condition_route == Verdict::bounded;
        const auto steep = WeightModel::power(p - 1.0 + 0.2);
        const auto mv = maximal_verdict(u, steep, p, boyd_indices(u, steep, p));
        const bool bad = mv.index_route == Verdict::not_bounded && mv.condition_route == Verdict::not_bounded;
        if (!lp || !bad) o.pass = false;
        detail += fmt::format("p={}: L^p M {}/{} H {}/{}, steep M {}/{}; ", p, to_string(hv.maximal.index_route),
                              to_string(hv.maximal.condition_route), to_string(hv.index_route),
                              to_string(hv.condition_route), to_string(mv.index_route), to_string(mv.condition_route));
    }
    detail.resize(detail.size() - 2);
    o.detail = detail;
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "covering identity", 5.0, covering},
        {2, "extremal level sets", 10.0, extremal_suite},
        {3, "mean and distribution identities", 0.0, mean_identities},
        {4, "u = 1 collapse", 30.0, collapse},
        {5, "power-weight indices", 30.0, power_indices},
        {6, "B_p threshold", 0.0, bp_threshold},
        {7, "B*_inf constant", 0.0, bstar_constant},
        {8, "submultiplicativity", 0.0, submultiplicativity},
        {9, "Hilbert transform exactness", 0.0, hilbert_exactness},
        {10, "maximal operator exactness", 0.0, maximal_exactness},
        {11, "weak-type certificate", 0.0, weak_certificate},
        {12, "verdict coherence", 60.0, verdict_coherence},
    };

    int failures = 0;
    std::map<int, std::string> digests;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = fmt::format("{:.2f} s", secs);
        if (c.budget_seconds > 0.0) {
            timing += fmt::format(" of {:.0f} s", c.budget_seconds);
            if (secs > c.budget_seconds) o.pass = false;
        }
        if (!o.digest.empty()) digests[c.id] = o.digest;
        if (!o.pass) ++failures;
        std::printf("[%s] %2d %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    timing.c_str());
    }

    // 13: rerun every randomized criterion and compare digests.
    const auto start = std::chrono::steady_clock::now();
    std::vector<int> differing;
    std::string hashes;
    for (const auto& [id, digest] : digests) {
        const auto& c = criteria[static_cast<std::size_t>(id - 1)];
        const auto again = c.run().digest;
        if (again != digest) differing.push_back(id);
        hashes += fmt::format("{}:{:016x} ", id, std::hash<std::string>{}(digest));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool same = differing.empty();
    if (!same) ++failures;
    std::string which;
    for (int id : differing) which += fmt::format(" {}", id);
    std::printf("[%s] 13 determinism: %zu reruns, %s; %s(%.2f s)\n", same ? "PASS" : "FAIL", digests.size(),
                same ? "all byte-identical" : ("differing:" + which).c_str(), hashes.c_str(), secs);

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
