#pragma once

#include <array>
#include <optional>
#include <string>

#include "evs/equilibria.hpp"
#include "evs/integrate.hpp"
#include "evs/model.hpp"

namespace evs {

/// Recovery per-capita values with magnitude below this are treated as
/// unsigned (the scenario becomes Indeterminate).
inline constexpr double kRecoveryTol = 1e-12;

enum class Scenario { Sustainable, Bearable, Equitable, Viable, Indeterminate };

const char* to_string(Scenario s);

/// CLI exit code for a scenario: 0 / 10 / 11 / 12 / 13.
int scenario_exit_code(Scenario s);

/// The recovery test for one dimension: the per-capita growth the dimension
/// would see at infinitesimal level while the complementary 2D subsystem
/// rests at its interior equilibrium.
struct RecoveryRecord {
    Dim dimension = Dim::E;
    bool exists = false;             // complementary fixed point found
    FixedPointRecord fixed_point;    // meaningful only when exists
    double value = 0.0;              // per-capita growth at that point
    int sign = 0;                    // +1 / -1, 0 when indeterminate
    bool fixed_point_positive = false;  // physicality of the equilibrium used
};

/// One parameter-boundary inequality: a bound on `parameter` whose branch
/// (relation and threshold) is selected by the sign of `branch_lhs - branch_rhs`.
/// `recovery_dimension` names the recovery sign the condition encodes.
struct BoundaryEvaluation {
    std::string parameter;  // "a_31", "a_21", "a_23"
    Dim recovery_dimension = Dim::E;
    int branch = 0;         // 1 or 2; 0 when degenerate
    std::string relation;   // "<" or ">"
    double threshold = 0.0;
    bool satisfied = false;
    bool degenerate = false;  // branch selector / denominator below 1e-12
};

/// Per-dimension agreement between the numeric recovery sign and the
/// corresponding boundary condition. Reported, never asserted.
struct CrosscheckEntry {
    Dim dimension = Dim::E;
    int numeric_sign = 0;
    bool boundary_satisfied = false;
    bool comparable = false;  // both sides determinate
    bool agrees = false;
};

struct SustainabilityReport {
    std::array<RecoveryRecord, 3> recovery;  // indexed by Dim
    Scenario scenario = Scenario::Indeterminate;
    std::optional<double> persistence_horizon;
    std::array<BoundaryEvaluation, 3> boundary;
    std::array<CrosscheckEntry, 3> crosscheck;
};

/// Recovery record for one dimension. A singular complementary subsystem
/// yields exists = false rather than an error.
RecoveryRecord recovery_sign(const ModelSpec3& spec, Dim dimension);

/// The three parameter-boundary inequalities, each evaluated exactly as the
/// branch conditions select (zero denominators marked degenerate):
///   bound on a_31 for the recovery of V at the ES equilibrium,
///   bound on a_21 for the recovery of S at the EV equilibrium,
///   bound on a_23 for the recovery of E at the VS equilibrium.
std::array<BoundaryEvaluation, 3> boundary_conditions(const ModelSpec3& spec);

/// Assembles the three recovery signs into a scenario label, attaches the
/// boundary evaluation and the numeric-vs-boundary crosscheck. All three
/// signs positive is Sustainable; exactly the E / V / S sign negative is
/// Bearable / Equitable / Viable; anything else (a vanishing value, a
/// missing fixed point, or two or more negative signs) is Indeterminate.
SustainabilityReport classify_scenario(const ModelSpec3& spec);

/// Scenario recomputed from three stored signs (0 means indeterminate).
Scenario scenario_from_signs(const std::array<int, 3>& signs);

}  // namespace evs
