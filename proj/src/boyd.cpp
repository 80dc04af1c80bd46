#include "llab/boyd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "llab/errors.hpp"
#include "llab/parallel.hpp"
#include "llab/trend.hpp"
#include "llab/weight_classes.hpp"

namespace llab {

const char* to_string(Direction d) noexcept { return d == Direction::exact ? "exact" : "lower_bound"; }

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::bounded: return "bounded";
        case Verdict::not_bounded: return "not_bounded";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<double> default_upper_grid() { return geometric_grid(1, 10); }
std::vector<double> default_lower_grid() { return geometric_grid(-10, -1); }

namespace {

IndexEstimate fit_window(const SubmultiplicativeSamples& samples, bool upper_end) {
    if (samples.arguments.size() != samples.values.size())
        throw PreconditionError("samples have mismatched argument and value counts");
    if (samples.arguments.empty()) throw PreconditionError("exponent fit requires at least 4 samples");

    std::vector<std::size_t> window;
    if (upper_end) {
        const double top = *std::max_element(samples.arguments.begin(), samples.arguments.end());
        for (std::size_t i = 0; i < samples.arguments.size(); ++i)
            if (samples.arguments[i] > 1.0 && samples.arguments[i] >= top / 1e4) window.push_back(i);
    } else {
        const double bottom = *std::min_element(samples.arguments.begin(), samples.arguments.end());
        for (std::size_t i = 0; i < samples.arguments.size(); ++i)
            if (samples.arguments[i] < 1.0 && samples.arguments[i] <= bottom * 1e4) window.push_back(i);
    }
    if (window.size() < 4) throw PreconditionError("exponent fit requires at least 4 samples in the fit window");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (auto i : window) {
        const double x = std::log(samples.arguments[i]);
        const double y = std::log(samples.values[i]);
        if (!std::isfinite(y)) throw PreconditionError("exponent fit requires positive finite samples");
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(window.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;

    IndexEstimate est;
    est.exponent = slope;
    est.direction = samples.direction;
    est.samples_used = window.size();
    est.fit_lo = std::numeric_limits<double>::infinity();
    est.fit_hi = 0.0;
    double log_constant = -std::numeric_limits<double>::infinity();
    for (auto i : window) {
        const double x = std::log(samples.arguments[i]);
        const double y = std::log(samples.values[i]);
        est.residual = std::max(est.residual, std::abs(y - (intercept + slope * x)));
        est.fit_lo = std::min(est.fit_lo, samples.arguments[i]);
        est.fit_hi = std::max(est.fit_hi, samples.arguments[i]);
    }
    for (std::size_t i = 0; i < samples.arguments.size(); ++i)
        log_constant = std::max(log_constant, std::log(samples.values[i]) - slope * std::log(samples.arguments[i]));
    est.constant = std::exp(log_constant);
    return est;
}

SubmultiplicativeSamples powered(SubmultiplicativeSamples s, double p) {
    for (auto& v : s.values) v = std::pow(v, 1.0 / p);
    return s;
}

template <typename Search>
SubmultiplicativeSamples sample(const std::vector<double>& grid, const BoydOptions& options, Search&& search) {
    SubmultiplicativeSamples out;
    out.arguments = grid;
    out.values.assign(grid.size(), 0.0);
    out.direction = Direction::lower_bound;
    out.budget = options.budget.level;
    out.seed = options.seed;
    std::vector<char> unresolved(grid.size(), 0);
    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        const auto r = search(grid[i], derive_seed(options.seed, i));
        out.values[i] = r.value;
        unresolved[i] = r.unresolved ? 1 : 0;
    });
    out.unresolved.assign(unresolved.begin(), unresolved.end());
    return out;
}

bool any_unresolved(const SubmultiplicativeSamples& s, const IndexEstimate& e) {
    for (std::size_t i = 0; i < s.arguments.size() && i < s.unresolved.size(); ++i)
        if (s.unresolved[i] && s.arguments[i] >= e.fit_lo && s.arguments[i] <= e.fit_hi) return true;
    return false;
}

}  // namespace

IndexEstimate fit_upper_exponent(const SubmultiplicativeSamples& samples) { return fit_window(samples, true); }
IndexEstimate fit_lower_exponent(const SubmultiplicativeSamples& samples) { return fit_window(samples, false); }

SubmultiplicativeSamples sample_wbar_u(const WeightModel& u, const WeightModel& w, const BoydOptions& options) {
    return sample(options.upper_grid, options,
                  [&](double t, std::uint64_t seed) { return wbar_u(u, w, t, options.budget, seed); });
}

SubmultiplicativeSamples sample_underline_wu(const WeightModel& u, const WeightModel& w, const BoydOptions& options) {
    return sample(options.lower_grid, options,
                  [&](double t, std::uint64_t seed) { return underline_wu(u, w, t, options.budget, seed); });
}

BoydIndices boyd_indices_from_samples(SubmultiplicativeSamples upper, SubmultiplicativeSamples lower, double p) {
    if (!(p > 0.0)) throw PreconditionError("Boyd indices require p > 0");
    BoydIndices out;
    out.p = p;
    out.alpha = fit_upper_exponent(powered(upper, p));
    out.beta = fit_lower_exponent(powered(lower, p));
    out.upper = std::move(upper);
    out.lower = std::move(lower);
    return out;
}

BoydIndices boyd_indices(const WeightModel& u, const WeightModel& w, double p, const BoydOptions& options) {
    if (!(p > 0.0)) throw PreconditionError("Boyd indices require p > 0");
    return boyd_indices_from_samples(sample_wbar_u(u, w, options), sample_underline_wu(u, w, options), p);
}

std::optional<PowerCertificate> certify_power_bound(const SubmultiplicativeSamples& samples, double p) {
    std::optional<PowerCertificate> best;
    for (std::size_t i = 0; i < samples.arguments.size(); ++i) {
        const double t0 = samples.arguments[i];
        const double phi0 = samples.values[i];
        if (!(t0 > 1.0) || !(phi0 < std::pow(t0, p) * (1.0 - 1e-12))) continue;
        // φ(x) <= φ(t0)^{k+1} <= t0^p x^q for x in (t0^k, t0^{k+1}].
        PowerCertificate cert{std::log(phi0) / std::log(t0), std::pow(t0, p), t0};
        bool valid = true;
        for (std::size_t j = 0; j < samples.arguments.size(); ++j) {
            const double x = samples.arguments[j];
            if (x > 1.0 && samples.values[j] > cert.constant * std::pow(x, cert.q) * (1.0 + 1e-9)) valid = false;
        }
        if (!valid) continue;
        if (!best || cert.q < best->q - 1e-12 || (std::abs(cert.q - best->q) <= 1e-12 && cert.constant < best->constant))
            best = cert;
    }
    return best;
}

MaximalVerdict maximal_verdict(const WeightModel& u, const WeightModel& w, double p, const BoydIndices& estimates) {
    MaximalVerdict v;
    v.alpha = estimates.alpha.exponent;
    v.margin = 1.0 - v.alpha;
    const double span = std::log(estimates.alpha.fit_hi / estimates.alpha.fit_lo);
    v.tolerance = 1e-6 + (span > 0.0 ? 2.0 * estimates.alpha.residual / span : 0.0);
    const bool unresolved = any_unresolved(estimates.upper, estimates.alpha);

    auto cert = certify_power_bound(estimates.upper, p);
    if (cert && cert->q < p) v.certificate = cert;

    if (v.alpha > 1.0 + v.tolerance) {
        v.index_route = Verdict::not_bounded;
    } else if (v.alpha < 1.0 - v.tolerance && !unresolved && v.certificate) {
        v.index_route = Verdict::bounded;
    } else {
        v.index_route = Verdict::inconclusive;
    }

    if (v.certificate && !unresolved) {
        v.condition_route = Verdict::bounded;
    } else if (u.is_constant()) {
        v.condition_route = check_Bp(w, p, default_class_grid()).holds ? Verdict::bounded : Verdict::not_bounded;
    } else if (v.alpha > 1.0 + v.tolerance) {
        v.condition_route = Verdict::not_bounded;
    }

    v.verdict = v.index_route;
    if (unresolved) v.note = "W̄_u search did not settle at the ends of its scale range";
    if (v.index_route != Verdict::inconclusive && v.condition_route != Verdict::inconclusive &&
        v.index_route != v.condition_route) {
        if (!v.note.empty()) v.note += "; ";
        v.note += "index route and condition route disagree";
    }
    return v;
}

SubmultiplicativeReport check_submultiplicative(const std::function<double(double)>& phi,
                                                const std::vector<double>& grid, Direction direction) {
    SubmultiplicativeReport report;
    report.asserted = direction == Direction::exact;
    std::vector<double> values;
    values.reserve(grid.size());
    for (double t : grid) values.push_back(phi(t));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double excess = phi(grid[i] * grid[j]) / (values[i] * values[j]);
            report.max_excess = std::max(report.max_excess, excess);
            ++report.pairs_checked;
        }
    }
    report.holds = report.max_excess <= 1.0 + 1e-9;
    return report;
}

}  // namespace llab
