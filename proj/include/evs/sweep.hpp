#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evs/integrate.hpp"
#include "evs/model.hpp"
#include "evs/sustainability.hpp"

namespace evs {

/// Evenly spaced grid from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

struct SweepPlan {
    ParamAddress target;
    std::vector<double> grid;  // non-empty, strictly monotone
    ModelSpec3 base;
    Vec3 x0{0.1, 0.1, 0.1};
    IntegratorConfig integrator;
    double summary_window = 0.5;  // trailing fraction of the horizon

    /// Throws ContractViolation; also checks every grid point yields a
    /// constructible spec.
    void validate() const;
};

struct SweepRow {
    double value = 0.0;          // parameter value at this grid point
    Vec3 final_state{0, 0, 0};   // last finite recorded state
    Vec3 min{0, 0, 0};
    Vec3 max{0, 0, 0};
    Vec3 mean{0, 0, 0};
    std::array<bool, 3> extinct{false, false, false};
    bool blowup = false;         // run ended in NumericalBlowup
    Scenario scenario = Scenario::Indeterminate;
};

struct SweepResult {
    ParamAddress target;
    double summary_window = 0.5;
    std::vector<SweepRow> rows;  // ordered by grid index

    std::vector<double> column_mean(Dim d) const;
    std::vector<double> column_final(Dim d) const;
};

/// Simulates and classifies one grid point. Statistics are taken over the
/// recorded rows inside the trailing summary window; a run that blows up
/// keeps the statistics of whatever recorded rows it reached (falling back
/// to the whole partial trajectory when none land in the window).
SweepRow evaluate_sweep_point(const SweepPlan& plan, std::size_t index);

/// Runs every grid point; rows are keyed by grid index, so the result does
/// not depend on evaluation order. Per-point blowups are recorded in their
/// row and the sweep continues.
SweepResult run_sweep(const SweepPlan& plan);

enum class ColumnShape { Hump, MonotoneIncreasing, MonotoneDecreasing, Other };

const char* to_string(ColumnShape s);

/// Classifies a column of at least three values: `hump` means an interior
/// strict maximum with non-increasing tails on each side; the monotone
/// labels require a strict direction across every consecutive pair. Ties
/// within `tol` are smoothed.
ColumnShape shape_test(std::span<const double> column, double tol = 1e-9);

}  // namespace evs
