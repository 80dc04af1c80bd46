#include <doctest.h>

#include <cmath>

#include "llab/boyd.hpp"
#include "llab/errors.hpp"

using namespace llab;

namespace {

SubmultiplicativeSamples power_samples(double q, const std::vector<double>& grid) {
    SubmultiplicativeSamples s;
    s.arguments = grid;
    for (double t : grid) s.values.push_back(std::pow(t, q));
    s.unresolved.assign(grid.size(), false);
    return s;
}

}  // namespace

TEST_CASE("dilation supremum of power and two-piece weights") {
    for (double a : {-0.5, 0.0, 2.0}) {
        const auto w = WeightModel::power(a);
        CHECK(wbar(w, 8.0) == doctest::Approx(std::pow(8.0, a + 1.0)).epsilon(1e-12));
        CHECK(wbar_lower(w, 0.125) == doctest::Approx(std::pow(0.125, a + 1.0)).epsilon(1e-12));
    }
    // w = 1 on (0, 1), t beyond; the sup of W(st)/W(s) sits at large s.
    const WeightModel mix(Domain::half_line, {{0, 1, 1, 0}}, {1, 1});
    CHECK(wbar(mix, 4.0) == doctest::Approx(16.0).epsilon(1e-6));
    CHECK_THROWS_AS((void)wbar(mix, 0.5), PreconditionError);
}

TEST_CASE("W-bar_u collapses to W-bar for u = 1") {
    const auto u = WeightModel::constant(1.0, Domain::line);
    const WeightModel w(Domain::half_line, {{0, 4, 1, -0.5}}, {0.5, 0});
    for (double t : {2.0, 16.0, 256.0}) {
        const auto r = wbar_u(u, w, t, {}, 3);
        CHECK(r.value == doctest::Approx(wbar(w, t)).epsilon(1e-6));
        validate_configuration(r.witness);
        CHECK(configuration_ratio(u, w, r.witness) == doctest::Approx(r.value).epsilon(1e-12));
        CHECK(r.witness.ratio == doctest::Approx(t));
    }
    const auto low = underline_wu(u, w, 0.25, {}, 3);
    CHECK(low.value == doctest::Approx(wbar_lower(w, 0.25)).epsilon(1e-6));
}

TEST_CASE("search results are monotone in the budget and reproducible") {
    const WeightModel u(Domain::line, {{-1, 1, 1, 0.5}}, {2, 0});
    const auto w = WeightModel::power(0.5);
    const auto a = wbar_u(u, w, 8.0, {1}, 42);
    const auto b = wbar_u(u, w, 8.0, {3}, 42);
    const auto again = wbar_u(u, w, 8.0, {3}, 42);
    CHECK(b.value >= a.value);
    CHECK(again.value == b.value);
    CHECK(again.witness.pairs.size() == b.witness.pairs.size());
}

TEST_CASE("exponent fits") {
    const auto s = power_samples(0.7, default_upper_grid());
    const auto e = fit_upper_exponent(s);
    CHECK(e.exponent == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(e.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.residual < 1e-12);
    CHECK(fit_lower_exponent(power_samples(0.3, default_lower_grid())).exponent == doctest::Approx(0.3));
    auto short_grid = power_samples(0.7, {2.0, 4.0, 8.0});
    CHECK_THROWS_AS((void)fit_upper_exponent(short_grid), PreconditionError);
}

TEST_CASE("power certificate from one sub-threshold sample") {
    const auto s = power_samples(1.2, default_upper_grid());
    const auto c = certify_power_bound(s, 2.0);
    REQUIRE(c);
    CHECK(c->q == doctest::Approx(1.2));
    CHECK_FALSE(certify_power_bound(power_samples(2.5, default_upper_grid()), 2.0));
}

TEST_CASE("Boyd indices of power weights") {
    const auto u = WeightModel::constant(1.0, Domain::line);
    for (double a : {-0.5, 1.0}) {
        const auto est = boyd_indices(u, WeightModel::power(a), 2.0);
        CHECK(est.alpha.exponent == doctest::Approx((a + 1.0) / 2.0).epsilon(1e-9));
        CHECK(est.beta.exponent == doctest::Approx((a + 1.0) / 2.0).epsilon(1e-9));
        CHECK(est.upper.direction == Direction::lower_bound);
    }
}

TEST_CASE("maximal verdicts") {
    const auto u = WeightModel::constant(1.0, Domain::line);
    const auto one = WeightModel::constant(1.0, Domain::half_line);
    const auto l2 = maximal_verdict(u, one, 2.0, boyd_indices(u, one, 2.0));
    CHECK(l2.verdict == Verdict::bounded);
    CHECK(l2.condition_route == Verdict::bounded);
    REQUIRE(l2.certificate);
    CHECK(l2.certificate->q < 2.0);

    const auto edge = WeightModel::power(1.0);
    const auto boundary = maximal_verdict(u, edge, 2.0, boyd_indices(u, edge, 2.0));
    CHECK(boundary.verdict == Verdict::inconclusive);

    const auto steep = WeightModel::power(1.5);
    const auto bad = maximal_verdict(u, steep, 2.0, boyd_indices(u, steep, 2.0));
    CHECK(bad.verdict == Verdict::not_bounded);
    CHECK(bad.condition_route == Verdict::not_bounded);
}

TEST_CASE("submultiplicativity of exact index functions") {
    const auto w = WeightModel::power(0.5);
    std::vector<double> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(std::exp2(k));
    const auto r = check_submultiplicative([&](double t) { return wbar(w, t); }, grid, Direction::exact);
    CHECK(r.holds);
    CHECK(r.pairs_checked == 100);
    CHECK(r.asserted);
}

TEST_CASE("configuration validation names the invariant") {
    Configuration bad{{{{0, 2}, IntervalUnion::normalize({{0, 1}})}, {{1.5, 3.5}, IntervalUnion::normalize({{2, 3}})}},
                      2.0};
    CHECK_THROWS_WITH_AS(validate_configuration(bad), doctest::Contains("disjoint"), PreconditionError);
    Configuration ratio{{{{0, 2}, IntervalUnion::normalize({{0, 0.5}})}}, 2.0};
    CHECK_THROWS_WITH_AS(validate_configuration(ratio), doctest::Contains("t|S_j|"), PreconditionError);
}
