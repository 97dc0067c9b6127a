#include "evs/sustainability.hpp"

#include <cmath>

namespace evs {

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::Sustainable: return "Sustainable";
        case Scenario::Bearable: return "Bearable";
        case Scenario::Equitable: return "Equitable";
        case Scenario::Viable: return "Viable";
        case Scenario::Indeterminate: return "Indeterminate";
    }
    return "?";
}

int scenario_exit_code(Scenario s) {
    switch (s) {
        case Scenario::Sustainable: return 0;
        case Scenario::Bearable: return 10;
        case Scenario::Equitable: return 11;
        case Scenario::Viable: return 12;
        case Scenario::Indeterminate: return 13;
    }
    return 13;
}

RecoveryRecord recovery_sign(const ModelSpec3& spec, Dim dimension) {
    RecoveryRecord rec;
    rec.dimension = dimension;
    try {
        rec.fixed_point = subsystem_fixed_point(spec, complement_mask(dimension));
    } catch (const NoInteriorFixedPoint&) {
        return rec;  // exists stays false, sign 0
    }
    rec.exists = true;
    rec.fixed_point_positive = rec.fixed_point.in_positive_orthant;
    // Per-capita growth of the near-extinct dimension at the embedded
    // equilibrium; the same arithmetic path as the model evaluation.
    rec.value = per_capita_growth(spec, rec.fixed_point.location)[dim_index(dimension)];
    if (std::fabs(rec.value) < kRecoveryTol)
        rec.sign = 0;
    else
        rec.sign = rec.value > 0.0 ? 1 : -1;
    return rec;
}

Scenario scenario_from_signs(const std::array<int, 3>& signs) {
    for (int s : signs)
        if (s == 0) return Scenario::Indeterminate;
    const int negatives = static_cast<int>(signs[0] < 0) + static_cast<int>(signs[1] < 0) +
                          static_cast<int>(signs[2] < 0);
    if (negatives == 0) return Scenario::Sustainable;
    if (negatives > 1) return Scenario::Indeterminate;
    if (signs[0] < 0) return Scenario::Bearable;
    if (signs[1] < 0) return Scenario::Equitable;
    return Scenario::Viable;
}

namespace {

constexpr double kBranchTol = 1e-12;

// One two-branch bound: `value` compared against numerator/selector, the
// relation chosen by the selector's sign (branch 1 when positive).
BoundaryEvaluation evaluate_bound(const char* parameter, Dim governs, double value,
                                  double numerator, double selector, bool branch1_less) {
    BoundaryEvaluation ev;
    ev.parameter = parameter;
    ev.recovery_dimension = governs;
    if (std::fabs(selector) <= kBranchTol) {
        ev.degenerate = true;
        return ev;
    }
    ev.threshold = numerator / selector;
    const bool less = selector > 0.0 ? branch1_less : !branch1_less;
    ev.branch = selector > 0.0 ? 1 : 2;
    ev.relation = less ? "<" : ">";
    ev.satisfied = less ? value < ev.threshold : value > ev.threshold;
    return ev;
}

}  // namespace

std::array<BoundaryEvaluation, 3> boundary_conditions(const ModelSpec3& spec) {
    const double r_e = spec.r(Dim::E), r_v = spec.r(Dim::V), r_s = spec.r(Dim::S);
    const double a12 = spec.a(0, 1), a13 = spec.a(0, 2);
    const double a21 = spec.a(1, 0), a23 = spec.a(1, 2);
    const double a31 = spec.a(2, 0), a32 = spec.a(2, 1);

    // Bound on a_31: selector a13 r_V - a23 r_E, "<" on the positive branch.
    const auto b31 = evaluate_bound("a_31", Dim::V, a31, a12 * a13 * r_s,
                                    a13 * r_v - a23 * r_e, /*branch1_less=*/true);
    // Bound on a_21: selector a32 r_E - a12 r_S, ">" on the positive branch.
    const auto b21 = evaluate_bound("a_21", Dim::S, a21, a31 * a12 * r_v,
                                    a32 * r_e - a12 * r_s, /*branch1_less=*/false);
    // Bound on a_23: same selector, ">" on the positive branch.
    const auto b23 = evaluate_bound("a_23", Dim::E, a23, a32 * a13 * r_v,
                                    a32 * r_e - a12 * r_s, /*branch1_less=*/false);
    return {b31, b21, b23};
}

SustainabilityReport classify_scenario(const ModelSpec3& spec) {
    SustainabilityReport report;
    std::array<int, 3> signs{};
    for (Dim d : all_dims) {
        report.recovery[dim_index(d)] = recovery_sign(spec, d);
        signs[dim_index(d)] = report.recovery[dim_index(d)].sign;
    }
    report.scenario = scenario_from_signs(signs);
    report.boundary = boundary_conditions(spec);
    for (const auto& bound : report.boundary) {
        const int i = dim_index(bound.recovery_dimension);
        CrosscheckEntry entry;
        entry.dimension = bound.recovery_dimension;
        entry.numeric_sign = signs[i];
        entry.boundary_satisfied = bound.satisfied;
        entry.comparable = !bound.degenerate && signs[i] != 0;
        entry.agrees = entry.comparable && (signs[i] > 0) == bound.satisfied;
        report.crosscheck[i] = entry;
    }
    return report;
}

}  // namespace evs
