#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "evs/sweep.hpp"
#include "helpers.hpp"

using namespace evs;
using evs::testing::baseline_spec;

namespace {

SweepPlan short_plan(double a31, std::size_t count = 5, double horizon = 50.0) {
    SweepPlan plan{.target = ParamAddress::parse("a_12"),
                   .grid = linspace(0.6, 1.5, count),
                   .base = baseline_spec(a31),
                   .x0 = {0.1, 0.1, 0.1},
                   .integrator = {},
                   .summary_window = 0.5};
    plan.integrator.dt = 0.01;
    plan.integrator.horizon = horizon;
    plan.integrator.record_stride = 10;
    return plan;
}

}  // namespace

TEST_CASE("linspace endpoints and spacing") {
    const auto g = linspace(0.6, 1.5, 10);
    REQUIRE(g.size() == 10);
    CHECK(g.front() == 0.6);
    CHECK(g.back() == 1.5);
    CHECK(g[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("shape verdicts on hand-picked columns") {
    CHECK(shape_test(std::vector<double>{1, 3, 2}) == ColumnShape::Hump);
    CHECK(shape_test(std::vector<double>{3, 2, 1}) == ColumnShape::MonotoneDecreasing);
    CHECK(shape_test(std::vector<double>{1, 2, 3}) == ColumnShape::MonotoneIncreasing);
    CHECK(shape_test(std::vector<double>{1, 2, 1, 2}) == ColumnShape::Other);
    CHECK(shape_test(std::vector<double>{2, 3, 3, 1}) == ColumnShape::Other);  // plateau peak
    CHECK(shape_test(std::vector<double>{1, 2, 5, 4, 3}) == ColumnShape::Hump);
    // Ties within tolerance are smoothed away from monotone labels.
    CHECK(shape_test(std::vector<double>{1.0, 1.0 + 1e-12, 2.0}) != ColumnShape::MonotoneIncreasing);
    CHECK_THROWS_AS(shape_test(std::vector<double>{1, 2}), ContractViolation);
}

TEST_CASE("a single-point sweep degenerates to one simulation") {
    SweepPlan plan = short_plan(0.1);
    plan.grid = {0.7};
    const auto result = run_sweep(plan);
    REQUIRE(result.rows.size() == 1);
    const auto row = evaluate_sweep_point(plan, 0);
    CHECK(result.rows[0].final_state == row.final_state);
    CHECK(result.rows[0].mean == row.mean);
    CHECK(result.rows[0].scenario == row.scenario);
}

TEST_CASE("rows are keyed by grid index regardless of evaluation order") {
    const SweepPlan plan = short_plan(-0.1);
    const auto result = run_sweep(plan);
    REQUIRE(result.rows.size() == plan.grid.size());

    std::vector<std::size_t> order(plan.grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), std::mt19937_64(12345));
    std::vector<SweepRow> shuffled(plan.grid.size());
    for (std::size_t idx : order) shuffled[idx] = evaluate_sweep_point(plan, idx);

    for (std::size_t i = 0; i < plan.grid.size(); ++i) {
        CHECK(shuffled[i].value == result.rows[i].value);
        CHECK(shuffled[i].final_state == result.rows[i].final_state);
        CHECK(shuffled[i].mean == result.rows[i].mean);
    }
}

TEST_CASE("repeated runs of a plan are bit-identical") {
    const SweepPlan plan = short_plan(0.1);
    const auto a = run_sweep(plan);
    const auto b = run_sweep(plan);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].final_state == b.rows[i].final_state);
        CHECK(a.rows[i].mean == b.rows[i].mean);
        CHECK(a.rows[i].min == b.rows[i].min);
        CHECK(a.rows[i].max == b.rows[i].max);
    }
}

TEST_CASE("row scenarios come from the per-point classifier") {
    const SweepPlan plan = short_plan(0.1);
    const auto result = run_sweep(plan);
    std::mt19937_64 rng(8);
    for (int probe = 0; probe < 3; ++probe) {
        const std::size_t idx = rng() % plan.grid.size();
        const auto spec = plan.base.with_param(plan.target, plan.grid[idx]);
        CHECK(result.rows[idx].scenario == classify_scenario(spec).scenario);
    }
}

TEST_CASE("a blown-up point is recorded and the sweep continues") {
    // The low end of the coupling grid diverges in finite time under the
    // positive cross-coupling; its row keeps the partial-window statistics.
    SweepPlan plan = short_plan(0.1, 10, 500.0);
    const auto result = run_sweep(plan);
    REQUIRE(result.rows.size() == 10);
    CHECK(result.rows[0].blowup);
    CHECK(std::isfinite(result.rows[0].mean[1]));
    for (std::size_t i = 1; i < result.rows.size(); ++i) CHECK_FALSE(result.rows[i].blowup);
}

TEST_CASE("plan validation rejects malformed grids and windows") {
    SweepPlan plan = short_plan(0.1);
    plan.grid.clear();
    CHECK_THROWS_AS(plan.validate(), ContractViolation);
    plan = short_plan(0.1);
    plan.grid = {0.6, 0.8, 0.7};
    CHECK_THROWS_AS(plan.validate(), ContractViolation);
    plan = short_plan(0.1);
    plan.grid = {0.6, 0.6, 0.7};
    CHECK_THROWS_AS(plan.validate(), ContractViolation);
    plan = short_plan(0.1);
    plan.summary_window = 0.0;
    CHECK_THROWS_AS(plan.validate(), ContractViolation);
    plan = short_plan(0.1);
    plan.summary_window = 1.5;
    CHECK_THROWS_AS(plan.validate(), ContractViolation);
    // A grid point that breaks the enforced sign template is caught upfront.
    plan = short_plan(0.1);
    plan.grid = {-0.5, 0.7};
    CHECK_THROWS_AS(plan.validate(), ContractViolation);
}
