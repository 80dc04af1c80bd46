#include <doctest.h>

#include <cmath>

#include "llab/weight_classes.hpp"

using namespace llab;

TEST_CASE("doubling constant of power weights") {
    for (double a : {-0.5, 0.0, 1.0, 3.0}) {
        const auto v = check_delta2(WeightModel::power(a), default_class_grid());
        CHECK(v.holds);
        CHECK(v.constant == doctest::Approx(std::exp2(a + 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("B_p for power weights") {
    const auto grid = default_class_grid();
    for (double a : {-0.5, 0.0, 0.5}) {
        const auto v = check_Bp(WeightModel::power(a), 2.0, grid);
        CHECK(v.holds);
        CHECK(v.constant == doctest::Approx((a + 1.0) / (1.0 - a)).epsilon(1e-9));
        CHECK(evaluate_witness(v, WeightModel::power(a)) == doctest::Approx(v.constant).epsilon(1e-12));
    }
    const auto fail = check_Bp(WeightModel::power(1.2), 2.0, grid);
    CHECK_FALSE(fail.holds);
    CHECK(std::isinf(fail.constant));
}

TEST_CASE("B_p fails for a weight whose ratio grows") {
    // W(r) ~ r^{1/2} near 0 but the tail t^{p-1} makes the moment diverge.
    const WeightModel w(Domain::half_line, {{0, 1, 1, -0.5}}, {1, 1.0});
    CHECK_FALSE(check_Bp(w, 2.0, default_class_grid()).holds);
}

TEST_CASE("B*_inf for power weights and a logarithmic failure") {
    const auto grid = default_class_grid();
    for (double a : {-0.5, 0.0, 2.0}) {
        const auto v = check_Bstar_inf(WeightModel::power(a), grid);
        CHECK(v.holds);
        CHECK(v.constant == doctest::Approx(1.0 / (a + 1.0)).epsilon(1e-9));
        CHECK(evaluate_witness(v, WeightModel::power(a)) == doctest::Approx(v.constant).epsilon(1e-12));
    }
    const WeightModel flat_tail(Domain::half_line, {{0, 1, 1, 0}}, {1, -1});
    const auto v = check_Bstar_inf(flat_tail, grid);
    CHECK_FALSE(v.holds);
    CHECK(v.growth_flagged);
}

TEST_CASE("A_1 constants") {
    const auto grid = default_class_grid();
    const auto one = check_A1(WeightModel::constant(1.0), grid);
    CHECK(one.holds);
    CHECK(one.constant == doctest::Approx(1.0));
    const WeightModel root(Domain::line, {}, {1, -0.5});
    const auto v = check_A1(root, grid);
    CHECK(v.holds);
    // sup over (-s, r) of the average divided by r^{-1/2}: 1 + √2.
    CHECK(v.constant == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-6));
    CHECK(evaluate_witness(v, root) == doctest::Approx(v.constant).epsilon(1e-9));
    CHECK_FALSE(check_A1(WeightModel(Domain::line, {}, {1, 1}), grid).holds);
}

TEST_CASE("A_inf exponents") {
    const auto grid = default_class_grid();
    const auto one = WeightModel::constant(1.0, Domain::line);
    const auto v1 = check_Ainf(one, default_ainf_probes(one, grid));
    CHECK(v1.holds);
    CHECK(*v1.alpha == doctest::Approx(1.0));

    const WeightModel abs_x(Domain::line, {}, {1, 1});
    const auto v2 = check_Ainf(abs_x, default_ainf_probes(abs_x, grid));
    CHECK(v2.holds);
    CHECK(*v2.alpha > 0.0);
    CHECK(*v2.alpha < 1.0);
    CHECK(evaluate_witness(v2, abs_x) == doctest::Approx(1.0));

    // 1 on [-1, 1] and 1/|x| outside: long intervals see almost no mass
    // difference between halves.
    const WeightModel log_mass(Domain::line, {{-1, 1, 1, 0}}, {1, -1});
    CHECK_FALSE(check_Ainf(log_mass, default_ainf_probes(log_mass, grid)).holds);
}
