#include "llab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "llab/errors.hpp"

namespace llab {

namespace {

// expm1(y)/y, continuous at 0.
double expm1_ratio(double y) {
    if (std::abs(y) < 1e-8) return 1.0 + y / 2.0;
    return std::expm1(y) / y;
}

// ∫_a^b c x^e dx for 0 <= a < b.
double positive_power_integral(double a, double b, double c, double e) {
    const double x = e + 1.0;
    if (a == 0.0) {
        if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
        return c * std::pow(b, x) / x;
    }
    const double log_ratio = std::log1p((b - a) / a);
    return c * std::pow(a, x) * log_ratio * expm1_ratio(x * log_ratio);
}

}  // namespace

double power_integral(double lo, double hi, double coef, double exp) {
    if (!(lo < hi)) return 0.0;
    if (lo >= 0.0) return positive_power_integral(lo, hi, coef, exp);
    if (hi <= 0.0) return positive_power_integral(-hi, -lo, coef, exp);
    return positive_power_integral(0.0, -lo, coef, exp) + positive_power_integral(0.0, hi, coef, exp);
}

WeightModel::WeightModel(Domain domain, std::vector<PowerSegment> segments, PowerTail tail)
    : domain_(domain), segments_(std::move(segments)), tail_(tail) {
    validate();
}

WeightModel WeightModel::constant(double value, Domain domain) { return {domain, {}, {value, 0.0}}; }

WeightModel WeightModel::power(double exp, double coef, Domain domain) { return {domain, {}, {coef, exp}}; }

void WeightModel::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!(tail_.coef > 0.0) || !finite(tail_.coef) || !finite(tail_.exp))
        throw ConfigError("weight tail must have a positive finite coef and a finite exp");

    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!finite(s.from) || !finite(s.to) || !finite(s.exp) || !finite(s.coef))
            throw ConfigError("weight segment " + std::to_string(i) + " has non-finite fields");
        if (!(s.from < s.to)) throw ConfigError("weight segment " + std::to_string(i) + " violates from < to");
        if (!(s.coef > 0.0)) throw ConfigError("weight segment " + std::to_string(i) + " has coef <= 0");
        if (i > 0 && segments_[i - 1].to != s.from)
            throw ConfigError("weight segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " do not abut");
        const bool touches_origin = s.from <= 0.0 && 0.0 <= s.to;
        if (touches_origin && !(s.exp > -1.0))
            throw ConfigError("weight segment " + std::to_string(i) +
                              " touches 0 with exp <= -1 (not locally integrable)");
    }

    if (domain_ == Domain::half_line && !segments_.empty() && segments_.front().from != 0.0)
        throw ConfigError("half-line weight segments must start at 0");

    bool tail_touches_origin = segments_.empty();
    if (!segments_.empty() && domain_ == Domain::line)
        tail_touches_origin = segments_.front().from >= 0.0 || segments_.back().to <= 0.0;
    if (tail_touches_origin && !(tail_.exp > -1.0))
        throw ConfigError("weight tail touches 0 with exp <= -1 (not locally integrable)");
}

bool WeightModel::is_constant() const noexcept {
    if (tail_.exp != 0.0) return false;
    return std::all_of(segments_.begin(), segments_.end(),
                       [&](const PowerSegment& s) { return s.exp == 0.0 && s.coef == tail_.coef; });
}

double WeightModel::value(double x) const {
    require_in_domain(x, x);
    for (const auto& s : segments_) {
        if (s.from <= x && x < s.to) return s.coef * std::pow(std::abs(x), s.exp);
    }
    if (!segments_.empty() && x == segments_.back().to) {
        const auto& s = segments_.back();
        return s.coef * std::pow(std::abs(x), s.exp);
    }
    return tail_.coef * std::pow(std::abs(x), tail_.exp);
}

std::vector<double> WeightModel::breakpoints() const {
    std::vector<double> out{0.0};
    for (const auto& s : segments_) {
        out.push_back(s.from);
        out.push_back(s.to);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (domain_ == Domain::half_line) std::erase_if(out, [](double b) { return b < 0.0; });
    return out;
}

std::vector<PowerPiece> WeightModel::pieces(double a, double b) const {
    std::vector<PowerPiece> out;
    if (!(a < b)) return out;

    auto emit = [&](double lo, double hi, double coef, double exp) {
        lo = std::max(lo, a);
        hi = std::min(hi, b);
        if (!(lo < hi)) return;
        if (lo < 0.0 && hi > 0.0) {
            out.push_back({lo, 0.0, coef, exp});
            out.push_back({0.0, hi, coef, exp});
        } else {
            out.push_back({lo, hi, coef, exp});
        }
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    if (segments_.empty()) {
        emit(-inf, inf, tail_.coef, tail_.exp);
        return out;
    }
    emit(-inf, segments_.front().from, tail_.coef, tail_.exp);
    for (const auto& s : segments_) emit(s.from, s.to, s.coef, s.exp);
    emit(segments_.back().to, inf, tail_.coef, tail_.exp);
    return out;
}

void WeightModel::require_in_domain(double a, double b) const {
    if (std::isnan(a) || std::isnan(b)) throw ConfigError("NaN coordinate passed to weight");
    if (domain_ == Domain::half_line && (a < 0.0 || b < 0.0))
        throw ConfigError("set escapes the half-line domain of the weight");
}

double WeightModel::integral(double a, double b) const {
    require_in_domain(a, b);
    double total = 0.0;
    for (const auto& p : pieces(a, b)) total += power_integral(p.lo, p.hi, p.coef, p.exp);
    return total;
}

double WeightModel::primitive(double t) const {
    if (domain_ != Domain::half_line) throw ConfigError("primitive W requires a half-line weight");
    if (t < 0.0) throw PreconditionError("primitive requires t >= 0");
    return integral(0.0, t);
}

double WeightModel::measure(const IntervalUnion& set) const {
    double total = 0.0;
    for (const auto& part : set.parts()) total += integral(part.lo, part.hi);
    return total;
}

double WeightModel::tail_moment(double r, double p) const {
    if (domain_ != Domain::half_line) throw ConfigError("tail moment requires a half-line weight");
    if (!(r > 0.0)) throw PreconditionError("tail moment requires r > 0");
    double total = 0.0;
    const double last = segments_.empty() ? r : std::max(r, segments_.back().to);
    for (const auto& piece : pieces(r, last)) total += power_integral(piece.lo, piece.hi, piece.coef, piece.exp - p);
    const double e = tail_.exp - p;
    if (!(e < -1.0)) return std::numeric_limits<double>::infinity();
    total += tail_.coef * std::pow(last, e + 1.0) / (-(e + 1.0));
    return total;
}

}  // namespace llab
