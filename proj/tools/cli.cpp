#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "llab/boyd.hpp"
#include "llab/construction.hpp"
#include "llab/errors.hpp"
#include "llab/json_io.hpp"
#include "llab/operators.hpp"
#include "llab/weight_classes.hpp"

namespace llab::cli {

namespace {

struct Common {
    std::string u_path;
    std::string w_path;
    double p = 2.0;
    unsigned budget = 1;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string output;
};

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", v);
}

std::vector<double> parse_numbers(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "'");
        }
    }
    return out;
}

// "a,b;c,d" → (a, b) ∪ (c, d).
IntervalUnion parse_set(const std::string& text) {
    std::vector<Interval> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) {
        const auto v = parse_numbers(item, ',');
        if (v.size() != 2 || !(v[0] < v[1])) throw ConfigError("set component '" + item + "' must be lo,hi with lo < hi");
        parts.push_back({v[0], v[1]});
    }
    if (parts.empty()) throw ConfigError("empty set");
    return IntervalUnion::normalize(std::move(parts));
}

// "lo,hi:a,b;c,d".
ConfigPair parse_pair(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("pair '" + text + "' must be lo,hi:set");
    const auto iv = parse_numbers(text.substr(0, colon), ',');
    if (iv.size() != 2 || !(iv[0] < iv[1])) throw ConfigError("pair interval must be lo,hi with lo < hi");
    return {{iv[0], iv[1]}, parse_set(text.substr(colon + 1))};
}

WeightModel weight_or_unit(const std::string& path, Domain domain) {
    return path.empty() ? WeightModel::constant(1.0, domain) : load_weight(path);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot write output '" + path + "'");
    file << text;
}

BoydOptions boyd_options(const Common& c) {
    BoydOptions o;
    o.budget.level = c.budget;
    o.seed = c.seed;
    o.threads = c.threads;
    return o;
}

void add_weights(CLI::App* app, Common& c, bool needs_w) {
    app->add_option("--u", c.u_path, "weight u on the line (default u = 1)");
    auto* w = app->add_option("--w", c.w_path, "weight w on the half-line");
    if (needs_w) w->required();
}

void add_search(CLI::App* app, Common& c) {
    app->add_option("--budget", c.budget, "search budget level")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "seed (LLAB_SEED overrides)");
    app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

int cmd_classes(const Common& c, bool have_p, std::ostream& out, std::ostream& err) {
    const auto w = load_weight(c.w_path);
    const auto grid = default_class_grid();
    Json j;
    j["delta2"] = to_json(check_delta2(w, grid));
    if (have_p) j["bp"] = to_json(check_Bp(w, c.p, grid));
    j["bstar_inf"] = to_json(check_Bstar_inf(w, grid));
    if (!c.u_path.empty()) {
        const auto u = load_weight(c.u_path);
        j["a1"] = to_json(check_A1(u, grid));
        j["ainf"] = to_json(check_Ainf(u, default_ainf_probes(u, grid)));
    }
    emit(j.dump(2) + "\n", c.output, out);
    err << "classes: delta2=" << (j["delta2"]["holds"].get<bool>() ? "holds" : "fails")
        << " bstar_inf=" << (j["bstar_inf"]["holds"].get<bool>() ? "holds" : "fails") << '\n';
    return 0;
}

int cmd_indices(const Common& c, std::ostream& out, std::ostream& err) {
    const auto u = weight_or_unit(c.u_path, Domain::line);
    const auto w = load_weight(c.w_path);
    const auto est = boyd_indices(u, w, c.p, boyd_options(c));
    std::string csv = "t,wbar_u,underline_wu,direction,budget,seed\n";
    const auto row = [&](double t, const std::string& upper, const std::string& lower, Direction d) {
        csv += csv_number(t) + ',' + upper + ',' + lower + ',' + to_string(d) + ',' + std::to_string(c.budget) + ',' +
               std::to_string(c.seed) + '\n';
    };
    for (std::size_t i = 0; i < est.lower.arguments.size(); ++i)
        row(est.lower.arguments[i], "", csv_number(est.lower.values[i]), est.lower.direction);
    for (std::size_t i = 0; i < est.upper.arguments.size(); ++i)
        row(est.upper.arguments[i], csv_number(est.upper.values[i]), "", est.upper.direction);
    emit(csv, c.output, out);
    err << "indices: alpha=" << csv_number(est.alpha.exponent) << " beta=" << csv_number(est.beta.exponent) << '\n';
    return 0;
}

int cmd_extremal(const Common& c, const std::vector<double>& interval, const std::string& set_text,
                 std::size_t lambdas, const std::string& summary_path, std::ostream& out, std::ostream& err) {
    if (interval.size() != 2 || !(interval[0] < interval[1]))
        throw ConfigError("--interval takes lo hi with lo < hi");
    const Interval I{interval[0], interval[1]};
    const auto S = parse_set(set_text);
    const auto f = ExtremalFunction::build(I, S);
    double max_error = 0.0;
    std::string csv = "lambda,k,lo,hi,measure_check\n";
    for (std::size_t i = 0; i < lambdas; ++i) {
        const double lambda = lambdas == 1 ? 1.0
                                           : f.floor() + (1.0 - f.floor()) * static_cast<double>(i) /
                                                             static_cast<double>(lambdas - 1);
        const auto level = f.level_set(lambda);
        for (std::size_t k = 0; k < level.size(); ++k) {
            const auto& J = level[k];
            const double check = measure_within(S, J.lo, J.hi) - lambda * J.length();
            max_error = std::max(max_error, std::abs(check) / J.length());
            csv += csv_number(lambda) + ',' + std::to_string(k) + ',' + csv_number(J.lo) + ',' + csv_number(J.hi) +
                   ',' + csv_number(check) + '\n';
        }
        max_error = std::max(max_error, std::abs(level.measure() * lambda - S.measure()) / S.measure());
    }
    emit(csv, c.output, out);
    const double s = f.ratio();
    Json summary = {{"s", number(s)},
                    {"mean", number(f.mean_value())},
                    {"mean_formula", number(extremal_mean_formula(s))},
                    {"max_identity_error", number(max_error)},
                    {"depth", f.depth()}};
    std::string target = summary_path;
    if (target.empty() && !c.output.empty()) target = c.output + ".summary.json";
    if (!target.empty()) emit(summary.dump(2) + "\n", target, out);
    err << "extremal: " << summary.dump() << '\n';
    return 0;
}

int cmd_certify(const Common& c, const std::vector<std::string>& pair_texts, const std::vector<double>& interval,
                const std::string& set_text, std::ostream& out, std::ostream& err) {
    const auto u = weight_or_unit(c.u_path, Domain::line);
    const auto w = load_weight(c.w_path);
    Configuration family;
    for (const auto& t : pair_texts) family.pairs.push_back(parse_pair(t));
    if (!interval.empty() || !set_text.empty()) {
        if (interval.size() != 2 || set_text.empty()) throw ConfigError("--interval needs two numbers and --set");
        family.pairs.push_back({{interval[0], interval[1]}, parse_set(set_text)});
    }
    if (family.pairs.empty()) throw ConfigError("certify needs --pair or --interval/--set");
    std::sort(family.pairs.begin(), family.pairs.end(),
              [](const ConfigPair& a, const ConfigPair& b) { return a.interval.lo < b.interval.lo; });
    family.ratio = family.pairs.front().interval.length() / family.pairs.front().subset.measure();
    const auto cert = weak_type_lower_bound(u, w, c.p, family);
    emit(to_json(cert).dump(2) + "\n", c.output, out);
    err << "certify: s=" << csv_number(cert.s) << " lower_bound=" << csv_number(cert.lower_bound) << '\n';
    return 0;
}

Operator parse_operator(const std::string& name) {
    if (name == "maximal") return Operator::M;
    if (name == "hilbert") return Operator::H;
    if (name == "hstar") return Operator::Hstar;
    if (name == "q") return Operator::Q;
    throw ConfigError("unknown operator '" + name + "'");
}

int cmd_opnorm(const Common& c, const std::string& op_name, const std::string& family_name,
               const std::string& target_name, std::ostream& out, std::ostream& err) {
    const auto u = weight_or_unit(c.u_path, Domain::line);
    const auto w = load_weight(c.w_path);
    const auto op = parse_operator(op_name);
    NormTarget target = NormTarget::strong;
    if (target_name == "weak") {
        target = NormTarget::weak;
    } else if (target_name != "strong") {
        throw ConfigError("--target must be strong or weak");
    }
    const auto family = probe_family(family_name, c.seed);
    const auto report = empirical_opnorm(op, u, w, c.p, family, target, c.threads);
    std::string csv = "test_id,input_norm,output_norm,ratio\n";
    for (const auto& r : report.ratios)
        csv += r.id + ',' + csv_number(r.input_norm) + ',' + csv_number(r.output_norm) + ',' + csv_number(r.ratio) +
               '\n';
    emit(csv, c.output, out);
    err << "opnorm: operator=" << to_string(op) << " target=" << to_string(target)
        << " max_ratio=" << csv_number(report.max_ratio) << (report.approximate ? " (resampled image)" : "") << '\n';
    return 0;
}

int cmd_verdict(const Common& c, std::ostream& out, std::ostream& err) {
    const auto u = weight_or_unit(c.u_path, Domain::line);
    const auto w = load_weight(c.w_path);
    const auto est = boyd_indices(u, w, c.p, boyd_options(c));
    const auto hv = hilbert_verdict(u, w, c.p, est);
    const auto mv = c.p > 1.0 ? hv.maximal : maximal_verdict(u, w, c.p, est);
    Json j = {{"alpha", number(est.alpha.exponent)},
              {"beta", number(est.beta.exponent)},
              {"hilbert", to_string(hv.verdict)},
              {"maximal", to_string(mv.verdict)},
              {"p", number(c.p)},
              {"budget", c.budget},
              {"seed", c.seed},
              {"alpha_estimate", to_json(est.alpha)},
              {"beta_estimate", to_json(est.beta)},
              {"maximal_detail", to_json(mv)},
              {"hilbert_detail", to_json(hv)}};
    emit(j.dump(2) + "\n", c.output, out);
    err << "verdict: alpha=" << csv_number(est.alpha.exponent) << " beta=" << csv_number(est.beta.exponent)
        << " maximal=" << to_string(mv.verdict) << " hilbert=" << to_string(hv.verdict) << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted Lorentz space toolkit"};
    app.require_subcommand(1);
    Common c;
    bool have_p = false;

    auto* classes = app.add_subcommand("classes", "weight-class certifications as JSON");
    add_weights(classes, c, true);
    classes->add_option("--p", c.p, "exponent for the B_p check")->check(CLI::PositiveNumber);
    classes->add_option("--output", c.output);

    auto* indices = app.add_subcommand("indices", "sampled index functions as CSV");
    add_weights(indices, c, true);
    indices->add_option("--p", c.p)->check(CLI::PositiveNumber);
    add_search(indices, c);
    indices->add_option("--output", c.output);

    std::vector<double> interval;
    std::string set_text;
    std::size_t lambdas = 50;
    std::string summary_path;
    auto* extremal = app.add_subcommand("extremal", "level sets of the extremal function");
    extremal->add_option("--interval", interval, "lo hi")->expected(2)->required();
    extremal->add_option("--set", set_text, "subset as \"a,b;c,d\"")->required();
    extremal->add_option("--lambdas", lambdas, "number of levels")->check(CLI::PositiveNumber);
    extremal->add_option("--summary", summary_path, "summary JSON path");
    extremal->add_option("--output", c.output);

    std::vector<std::string> pairs;
    auto* certify = app.add_subcommand("certify", "weak-type lower-bound certificate as JSON");
    add_weights(certify, c, true);
    certify->add_option("--p", c.p)->check(CLI::PositiveNumber);
    certify->add_option("--pair", pairs, "\"lo,hi:a,b;c,d\", repeatable");
    certify->add_option("--interval", interval, "lo hi")->expected(2);
    certify->add_option("--set", set_text);
    certify->add_option("--output", c.output);

    std::string op_name = "maximal";
    std::string family_name = "indicators";
    std::string target_name = "strong";
    auto* opnorm = app.add_subcommand("opnorm", "empirical operator-norm ratios as CSV");
    add_weights(opnorm, c, true);
    opnorm->add_option("--operator", op_name, "maximal|hilbert|hstar|q");
    opnorm->add_option("--p", c.p)->check(CLI::PositiveNumber);
    opnorm->add_option("--family", family_name, "indicators|extremals|random:N");
    opnorm->add_option("--target", target_name, "strong|weak");
    add_search(opnorm, c);
    opnorm->add_option("--output", c.output);

    auto* verdict = app.add_subcommand("verdict", "boundedness verdicts for M and H as JSON");
    add_weights(verdict, c, true);
    verdict->add_option("--p", c.p)->check(CLI::PositiveNumber);
    add_search(verdict, c);
    verdict->add_option("--output", c.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    have_p = classes->count("--p") > 0;
    if (const char* env = std::getenv("LLAB_SEED")) {
        try {
            c.seed = std::stoull(env);
        } catch (const std::exception&) {
            err << "error: LLAB_SEED must be an unsigned integer\n";
            return 2;
        }
    }

    try {
        if (classes->parsed()) return cmd_classes(c, have_p, out, err);
        if (indices->parsed()) return cmd_indices(c, out, err);
        if (extremal->parsed()) return cmd_extremal(c, interval, set_text, lambdas, summary_path, out, err);
        if (certify->parsed()) return cmd_certify(c, pairs, interval, set_text, out, err);
        if (opnorm->parsed()) return cmd_opnorm(c, op_name, family_name, target_name, out, err);
        if (verdict->parsed()) return cmd_verdict(c, out, err);
    } catch (const ConfigError& e) {
        err << "invalid config: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace llab::cli
