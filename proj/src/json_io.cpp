#include <cmath>
#include <fstream>

#include "llab/errors.hpp"
#include "llab/json_io.hpp"

namespace llab {

namespace {

double read_number(const Json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
    }
    throw ConfigError(std::string("field '") + key + "' must be a number");
}

Json interval_json(const Interval& i) { return Json::array({number(i.lo), number(i.hi)}); }

}  // namespace

Json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

WeightModel weight_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("weight config must be a JSON object");
    Domain domain = Domain::half_line;
    if (j.contains("domain")) {
        const auto& d = j.at("domain");
        if (d == "line") {
            domain = Domain::line;
        } else if (d == "half_line") {
            domain = Domain::half_line;
        } else {
            throw ConfigError("domain must be \"line\" or \"half_line\"");
        }
    }
    std::vector<PowerSegment> segments;
    if (j.contains("segments")) {
        if (!j.at("segments").is_array()) throw ConfigError("segments must be an array");
        for (const auto& s : j.at("segments")) {
            if (!s.is_object()) throw ConfigError("each segment must be an object");
            segments.push_back({read_number(s, "from"), read_number(s, "to"), read_number(s, "coef"),
                                read_number(s, "exp")});
        }
    }
    if (!j.contains("tail") || !j.at("tail").is_object()) throw ConfigError("missing object 'tail'");
    const PowerTail tail{read_number(j.at("tail"), "coef"), read_number(j.at("tail"), "exp")};
    try {
        return WeightModel(domain, std::move(segments), tail);
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

WeightModel load_weight(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open weight config '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
    return weight_from_json(j);
}

Json to_json(const WeightModel& w) {
    Json segments = Json::array();
    for (const auto& s : w.segments())
        segments.push_back({{"from", s.from}, {"to", s.to}, {"coef", s.coef}, {"exp", s.exp}});
    return {{"domain", w.domain() == Domain::line ? "line" : "half_line"},
            {"segments", segments},
            {"tail", {{"coef", w.tail().coef}, {"exp", w.tail().exp}}}};
}

IntervalUnion union_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("interval union must be an array of [lo, hi] pairs");
    std::vector<Interval> parts;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigError("interval must be [lo, hi]");
        parts.push_back({p[0].get<double>(), p[1].get<double>()});
        if (!(parts.back().lo < parts.back().hi)) throw ConfigError("interval must satisfy lo < hi");
    }
    return IntervalUnion::normalize(std::move(parts));
}

Json to_json(const IntervalUnion& set) {
    Json out = Json::array();
    for (const auto& p : set.parts()) out.push_back(interval_json(p));
    return out;
}

StepFunction step_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("step function must be an array of pieces");
    std::vector<StepPiece> pieces;
    for (const auto& p : j) {
        if (!p.is_object() || !p.contains("region")) throw ConfigError("step piece needs 'region' and 'value'");
        pieces.push_back({union_from_json(p.at("region")), read_number(p, "value")});
    }
    try {
        return StepFunction(std::move(pieces));
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

Json to_json(const StepFunction& f) {
    Json out = Json::array();
    for (const auto& p : f.pieces()) out.push_back({{"region", to_json(p.region)}, {"value", number(p.value)}});
    return out;
}

Json to_json(const Configuration& c) {
    Json pairs = Json::array();
    for (const auto& p : c.pairs) pairs.push_back({{"interval", interval_json(p.interval)}, {"subset", to_json(p.subset)}});
    return {{"ratio", number(c.ratio)}, {"pairs", pairs}};
}

Json to_json(const ClassVerdict& v) {
    Json args = Json::array();
    for (double a : v.witness_args) args.push_back(number(a));
    Json scales = Json::array();
    for (double s : v.probe_scales) scales.push_back(number(s));
    Json out = {{"class_name", to_string(v.class_name)},
                {"holds", v.holds},
                {"constant", number(v.constant)},
                {"witness", v.witness},
                {"witness_args", args},
                {"growth_flagged", v.growth_flagged},
                {"probe_scales", scales}};
    if (v.p) out["p"] = number(*v.p);
    if (v.alpha) out["alpha"] = number(*v.alpha);
    return out;
}

Json to_json(const IndexEstimate& e) {
    return {{"exponent", number(e.exponent)}, {"constant", number(e.constant)},  {"residual", number(e.residual)},
            {"fit_lo", number(e.fit_lo)},     {"fit_hi", number(e.fit_hi)},      {"samples_used", e.samples_used},
            {"direction", to_string(e.direction)}};
}

Json to_json(const MaximalVerdict& v) {
    Json out = {{"verdict", to_string(v.verdict)},
                {"index_route", to_string(v.index_route)},
                {"condition_route", to_string(v.condition_route)},
                {"alpha", number(v.alpha)},
                {"margin", number(v.margin)},
                {"tolerance", number(v.tolerance)}};
    if (v.certificate) {
        out["q"] = number(v.certificate->q);
        out["q_constant"] = number(v.certificate->constant);
        out["q_anchor"] = number(v.certificate->anchor);
    }
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

Json to_json(const HilbertVerdict& v) {
    Json out = {{"verdict", to_string(v.verdict)},
                {"index_route", to_string(v.index_route)},
                {"condition_route", to_string(v.condition_route)},
                {"alpha", number(v.alpha)},
                {"beta", number(v.beta)},
                {"beta_tolerance", number(v.beta_tolerance)},
                {"one_sided", v.one_sided}};
    if (!v.one_sided) {
        out["ainf"] = to_json(v.ainf);
        out["bstar_inf"] = to_json(v.bstar);
    }
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

Json to_json(const WeakTypeCertificate& c) {
    return {{"p", number(c.p)},
            {"s", number(c.s)},
            {"threshold", number(c.threshold)},
            {"test_norm", number(c.test_norm)},
            {"superset_mass", number(c.superset_mass)},
            {"subset_mass", number(c.subset_mass)},
            {"lower_bound", number(c.lower_bound)},
            {"part2_constant", number(c.part2_constant)},
            {"family", to_json(c.family)}};
}

}  // namespace llab
