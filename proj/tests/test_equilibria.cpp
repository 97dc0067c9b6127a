#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "evs/equilibria.hpp"
#include "evs/linalg.hpp"
#include "helpers.hpp"

using namespace evs;
using evs::testing::baseline_spec;

namespace {

// Residual of the masked per-capita system at a record's location.
double mask_residual(const ModelSpec3& spec, const FixedPointRecord& rec) {
    const Vec3 g = per_capita_growth(spec, rec.location);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        if (rec.mask[i]) worst = std::max(worst, std::fabs(rec.location[i] * g[i]));
    return worst;
}

}  // namespace

TEST_CASE("EV subsystem equilibrium of the baseline") {
    const auto rec = subsystem_fixed_point(baseline_spec(0.1), complement_mask(Dim::S));
    CHECK(std::fabs(rec.location[0] - 1.0 / 3.0) < 1e-12);
    CHECK(std::fabs(rec.location[1] - 1.0 / 7.0) < 1e-12);
    CHECK(rec.location[2] == 0.0);
    CHECK(rec.in_positive_orthant);
    CHECK(std::fabs(rec.trace) < 1e-12);
    CHECK(rec.determinant == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(rec.classification == Classification::CenterCandidate);
}

TEST_CASE("EV center eigenvalues are purely imaginary") {
    const auto spec = baseline_spec(0.1);
    const auto rec = subsystem_fixed_point(spec, complement_mask(Dim::S));
    const double expected = std::sqrt(-spec.r(Dim::E) * spec.r(Dim::V));
    REQUIRE(rec.eigenvalues.size() == 2);
    for (const auto& ev : rec.eigenvalues) {
        CHECK(std::fabs(ev.real()) < 1e-10);
        CHECK(std::fabs(std::fabs(ev.imag()) - expected) < 1e-10);
    }
}

TEST_CASE("ES subsystem equilibrium of the baseline") {
    const auto rec = subsystem_fixed_point(baseline_spec(0.1), complement_mask(Dim::V));
    CHECK(rec.location[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rec.location[1] == 0.0);
    CHECK(rec.location[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.in_positive_orthant);
}

TEST_CASE("VS subsystem equilibrium leaves the positive orthant") {
    const auto rec = subsystem_fixed_point(baseline_spec(0.1), complement_mask(Dim::E));
    CHECK(rec.location[0] == 0.0);
    CHECK(rec.location[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rec.location[2] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_FALSE(rec.in_positive_orthant);
}

TEST_CASE("interior equilibrium of the baseline") {
    const auto rec = interior_fixed_point(baseline_spec(0.1));
    CHECK(rec.location[0] == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(rec.location[1] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(rec.location[2] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(rec.in_positive_orthant);
}

TEST_CASE("origin record classifies as a saddle for the baseline") {
    const auto rec = origin_fixed_point(baseline_spec(0.1));
    CHECK(rec.location == Vec3{0.0, 0.0, 0.0});
    REQUIRE(rec.eigenvalues.size() == 3);
    CHECK(rec.eigenvalues[0].real() == doctest::Approx(-0.1));
    CHECK(rec.eigenvalues[1].real() == doctest::Approx(0.1));
    CHECK(rec.eigenvalues[2].real() == doctest::Approx(-0.05));
    CHECK(rec.classification == Classification::Saddle);
}

TEST_CASE("negative determinant classifies as a saddle") {
    FixedPointRecord rec;
    rec.mask = {true, true, false};
    rec.trace = 0.3;
    rec.determinant = -0.2;
    CHECK(classify(rec) == Classification::Saddle);
}

TEST_CASE("residuals vanish and the trace/determinant identities hold") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const auto spec = evs::testing::random_template_spec(rng);
        const auto rec = subsystem_fixed_point(spec, complement_mask(Dim::S));
        CHECK(mask_residual(spec, rec) < 1e-12);
        CHECK(std::fabs(rec.trace) < 1e-12);
        const double expected_det = -spec.r(Dim::E) * spec.r(Dim::V);
        CHECK(std::fabs(rec.determinant - expected_det) <= 1e-12 * std::fabs(expected_det));
    }
}

TEST_CASE("interior fixed point scales linearly with the growth rates") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto spec = evs::testing::random_template_spec(rng);
        FixedPointRecord base;
        try {
            base = interior_fixed_point(spec);
        } catch (const NoInteriorFixedPoint&) {
            continue;  // random coupling happened to be singular
        }
        const double c = evs::testing::uniform(rng, 0.5, 4.0);
        const Vec3 scaled_r{c * spec.r()[0], c * spec.r()[1], c * spec.r()[2]};
        const auto scaled = interior_fixed_point(ModelSpec3(scaled_r, spec.a(), false));
        for (int i = 0; i < 3; ++i) {
            CHECK(std::fabs(scaled.location[i] - c * base.location[i]) <=
                  1e-12 * std::max(1.0, std::fabs(c * base.location[i])));
        }
    }
}

TEST_CASE("singular restricted systems raise NoInteriorFixedPoint") {
    // a_23 = a_32 = 0 makes the VS block identically zero.
    const ModelSpec3 spec({-0.1, 0.1, -0.05},
                          {{{0.0, 0.7, 0.1}, {-0.3, 0.0, 0.0}, {0.1, 0.0, 0.0}}}, false);
    CHECK_THROWS_AS(subsystem_fixed_point(spec, complement_mask(Dim::E)), NoInteriorFixedPoint);
    try {
        subsystem_fixed_point(spec, complement_mask(Dim::E));
    } catch (const NoInteriorFixedPoint& err) {
        REQUIRE(err.restricted_matrix.size() == 4);
        CHECK(err.restricted_matrix[1] == 0.0);
        CHECK(err.restricted_matrix[2] == 0.0);
    }

    const ModelSpec3 singular({1.0, 1.0, 1.0},
                              {{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}}, false);
    CHECK_THROWS_AS(interior_fixed_point(singular), NoInteriorFixedPoint);
}

TEST_CASE("subsystem mask must select exactly two dimensions") {
    CHECK_THROWS_AS(subsystem_fixed_point(baseline_spec(0.1), SubsystemMask{true, false, false}),
                    ContractViolation);
}

TEST_CASE("cubic eigenvalue solver satisfies the characteristic identities") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Mat3 m;
        for (auto& row : m)
            for (auto& v : row) v = evs::testing::uniform(rng, -2.0, 2.0);
        const auto eig = eigenvalues_3x3(m);

        const double tr = m[0][0] + m[1][1] + m[2][2];
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        std::complex<double> sum{0.0, 0.0}, prod{1.0, 0.0};
        for (const auto& ev : eig) {
            sum += ev;
            prod *= ev;
        }
        CHECK(std::abs(sum - tr) < 1e-9 * std::max(1.0, std::fabs(tr)));
        CHECK(std::abs(prod - det) < 1e-9 * std::max(1.0, std::fabs(det)));

        // Each eigenvalue is a root of the characteristic cubic.
        const double m01 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        const double m02 = m[0][0] * m[2][2] - m[0][2] * m[2][0];
        const double m12 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
        for (const auto& ev : eig) {
            const auto p = ((ev - tr) * ev + (m01 + m02 + m12)) * ev - det;
            CHECK(std::abs(p) < 1e-8 * std::max(1.0, std::abs(ev * ev * ev)));
        }
    }
}
