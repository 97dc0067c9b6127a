#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "evs/model.hpp"
#include "helpers.hpp"

using namespace evs;
using evs::testing::baseline_spec;

TEST_CASE("vector field at the reference point") {
    const auto spec = baseline_spec(0.1);
    const Vec3 dot = vector_field(spec, {0.1, 0.1, 0.1});
    CHECK(dot[0] == doctest::Approx(-0.002).epsilon(1e-12));
    CHECK(dot[1] == doctest::Approx(0.008).epsilon(1e-12));
    CHECK(dot[2] == doctest::Approx(-0.003).epsilon(1e-12));
}

TEST_CASE("per-capita growth at the reference point") {
    const auto spec = baseline_spec(0.1);
    const Vec3 g = per_capita_growth(spec, {0.1, 0.1, 0.1});
    CHECK(g[0] == doctest::Approx(-0.02).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(g[2] == doctest::Approx(-0.03).epsilon(1e-12));
}

TEST_CASE("per-capita growth at the origin reduces to r") {
    const auto spec = baseline_spec(0.1);
    const Vec3 g = per_capita_growth(spec, {0.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i) CHECK(g[i] == spec.r()[i]);
}

TEST_CASE("origin is a fixed point and extinction planes are invariant") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = evs::testing::random_free_spec(rng);
        const Vec3 zero = vector_field(spec, {0.0, 0.0, 0.0});
        CHECK(zero == Vec3{0.0, 0.0, 0.0});

        Vec3 x = evs::testing::random_state(rng);
        const int plane = static_cast<int>(rng() % 3);
        x[plane] = 0.0;
        CHECK(vector_field(spec, x)[plane] == 0.0);
    }
}

TEST_CASE("vector field is exactly state times per-capita growth") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = evs::testing::random_free_spec(rng);
        const Vec3 x = evs::testing::random_state(rng);
        const Vec3 dot = vector_field(spec, x);
        const Vec3 g = per_capita_growth(spec, x);
        for (int i = 0; i < 3; ++i) CHECK(dot[i] == x[i] * g[i]);
    }
}

TEST_CASE("jacobian matches central differences on random specs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto spec = evs::testing::random_free_spec(rng);
        const Vec3 x = evs::testing::random_state(rng, 0.05, 2.0);
        const Mat3 exact = jacobian(spec, x);
        const Mat3 approx = evs::testing::finite_difference_jacobian(spec, x);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double scale = std::max(1.0, std::fabs(exact[i][j]));
                CHECK(std::fabs(exact[i][j] - approx[i][j]) <= 1e-6 * scale);
            }
        }
    }
}

TEST_CASE("jacobian at the origin is diag(r)") {
    const auto spec = baseline_spec(-0.1);
    const Mat3 jac = jacobian(spec, {0.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(jac[i][j] == (i == j ? spec.r()[i] : 0.0));
        }
    }
}

TEST_CASE("sign template accepts the baseline with either coupling sign") {
    CHECK(validate_template(baseline_spec(0.1)).empty());
    CHECK(validate_template(baseline_spec(-0.1)).empty());
}

TEST_CASE("sign template names the offending entry") {
    Vec3 r{-0.1, -0.1, -0.05};  // r_V flipped
    Mat3 a{{{0.0, 0.7, 0.1}, {-0.3, 0.0, 0.1}, {0.1, 0.1, 0.0}}};
    auto violations = validate_template(r, a);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].entry == "r_V");
    CHECK(violations[0].expected == "> 0");

    r[1] = 0.1;
    a[0][1] = -0.7;  // a_12 flipped
    violations = validate_template(r, a);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].entry == "a_12");
}

TEST_CASE("template-enforcing construction rejects violations") {
    CHECK_THROWS_AS(ModelSpec3({0.1, 0.1, -0.05},
                               {{{0.0, 0.7, 0.1}, {-0.3, 0.0, 0.1}, {0.1, 0.1, 0.0}}}),
                    ContractViolation);
    // Nonzero diagonal requires the unconstrained mode.
    const Mat3 with_diag{{{-0.2, 0.7, 0.1}, {-0.3, 0.0, 0.1}, {0.1, 0.1, 0.0}}};
    CHECK_THROWS_AS(ModelSpec3({-0.1, 0.1, -0.05}, with_diag), ContractViolation);
    CHECK_NOTHROW(ModelSpec3({-0.1, 0.1, -0.05}, with_diag, false));
}

TEST_CASE("non-finite coefficients are rejected in both modes") {
    const double nan = std::nan("");
    CHECK_THROWS_AS(ModelSpec3({nan, 0.1, -0.05},
                               {{{0.0, 0.7, 0.1}, {-0.3, 0.0, 0.1}, {0.1, 0.1, 0.0}}}, false),
                    ContractViolation);
}

TEST_CASE("parameter addresses parse and apply") {
    const auto spec = baseline_spec(0.1);
    CHECK(spec.param(ParamAddress::parse("r_E")) == -0.1);
    CHECK(spec.param(ParamAddress::parse("a_12")) == 0.7);
    CHECK(spec.param(ParamAddress::parse("a31")) == 0.1);
    CHECK(ParamAddress::parse("a_23").str() == "a_23");
    CHECK(ParamAddress::parse("r_S").str() == "r_S");
    CHECK_THROWS_AS(ParamAddress::parse("a_41"), ContractViolation);
    CHECK_THROWS_AS(ParamAddress::parse("q"), ContractViolation);

    const auto moved = spec.with_param(ParamAddress::parse("a_12"), 1.2);
    CHECK(moved.a(0, 1) == 1.2);
    CHECK(moved.a(1, 0) == spec.a(1, 0));
}
