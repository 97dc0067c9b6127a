#include "evs/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evs {

std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {start};
    std::vector<double> out(count);
    const double span = stop - start;
    for (std::size_t k = 0; k < count; ++k)
        out[k] = start + span * static_cast<double>(k) / static_cast<double>(count - 1);
    return out;
}

void SweepPlan::validate() const {
    if (grid.empty()) throw ContractViolation("sweep.grid must be non-empty");
    if (grid.size() > 1) {
        const bool increasing = grid[1] > grid[0];
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
            const bool step_up = grid[k + 1] > grid[k];
            if (grid[k + 1] == grid[k] || step_up != increasing)
                throw ContractViolation("sweep.grid must be strictly monotone");
        }
    }
    if (!(summary_window > 0.0) || summary_window > 1.0)
        throw ContractViolation("sweep.summary_window must lie in (0, 1]");
    integrator.validate();
    for (double v : grid) base.with_param(target, v);  // each point must build
}

std::vector<double> SweepResult::column_mean(Dim d) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.mean[dim_index(d)]);
    return out;
}

std::vector<double> SweepResult::column_final(Dim d) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.final_state[dim_index(d)]);
    return out;
}

namespace {

void summarize(const Trajectory& traj, double window_start, SweepRow& row) {
    std::size_t begin = traj.rows();
    for (std::size_t i = 0; i < traj.rows(); ++i) {
        if (traj.times[i] >= window_start) {
            begin = i;
            break;
        }
    }
    if (begin == traj.rows()) begin = 0;  // blown-up run: use what exists

    for (int d = 0; d < 3; ++d) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        double sum = 0.0;
        for (std::size_t i = begin; i < traj.rows(); ++i) {
            const double v = traj.state(i)[d];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        const auto count = static_cast<double>(traj.rows() - begin);
        row.min[d] = lo;
        row.max[d] = hi;
        row.mean[d] = sum / count;
    }
    const auto last = traj.final_state();
    for (int d = 0; d < 3; ++d) row.final_state[d] = last[d];
    for (const auto& ev : traj.events) row.extinct[ev.dimension] = true;
}

}  // namespace

SweepRow evaluate_sweep_point(const SweepPlan& plan, std::size_t index) {
    SweepRow row;
    row.value = plan.grid.at(index);
    const ModelSpec3 spec = plan.base.with_param(plan.target, row.value);
    const double window_start = plan.integrator.horizon * (1.0 - plan.summary_window);

    try {
        const Trajectory traj = simulate(spec, plan.x0, plan.integrator);
        summarize(traj, window_start, row);
    } catch (const NumericalBlowup& blowup) {
        row.blowup = true;
        if (blowup.partial.rows() > 0) summarize(blowup.partial, window_start, row);
    }
    row.scenario = classify_scenario(spec).scenario;
    return row;
}

SweepResult run_sweep(const SweepPlan& plan) {
    plan.validate();
    SweepResult result;
    result.target = plan.target;
    result.summary_window = plan.summary_window;
    result.rows.resize(plan.grid.size());
    for (std::size_t k = 0; k < plan.grid.size(); ++k)
        result.rows[k] = evaluate_sweep_point(plan, k);
    return result;
}

const char* to_string(ColumnShape s) {
    switch (s) {
        case ColumnShape::Hump: return "hump";
        case ColumnShape::MonotoneIncreasing: return "monotone-increasing";
        case ColumnShape::MonotoneDecreasing: return "monotone-decreasing";
        case ColumnShape::Other: return "other";
    }
    return "?";
}

ColumnShape shape_test(std::span<const double> column, double tol) {
    const std::size_t n = column.size();
    if (n < 3) throw ContractViolation("shape_test: need at least 3 points");

    bool inc = true, dec = true;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(column[k + 1] > column[k] + tol)) inc = false;
        if (!(column[k + 1] < column[k] - tol)) dec = false;
    }
    if (inc) return ColumnShape::MonotoneIncreasing;
    if (dec) return ColumnShape::MonotoneDecreasing;

    std::size_t peak = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (column[k] > column[peak]) peak = k;
    if (peak == 0 || peak + 1 == n) return ColumnShape::Other;
    // Strict interior maximum, tails non-increasing away from the peak.
    if (!(column[peak] > column[peak - 1] + tol) || !(column[peak] > column[peak + 1] + tol))
        return ColumnShape::Other;
    for (std::size_t k = 0; k < peak; ++k)
        if (column[k] > column[k + 1] + tol) return ColumnShape::Other;
    for (std::size_t k = peak; k + 1 < n; ++k)
        if (column[k + 1] > column[k] + tol) return ColumnShape::Other;
    return ColumnShape::Hump;
}

}  // namespace evs
