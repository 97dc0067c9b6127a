#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "evs/model.hpp"
#include "evs/types.hpp"

namespace evs {

enum class Classification {
    CenterCandidate,
    Saddle,
    StableNodeFocus,
    UnstableNodeFocus,
    Degenerate,
};

const char* to_string(Classification c);

/// Active-dimension mask; true entries are part of the subsystem.
using SubsystemMask = std::array<bool, 3>;

constexpr SubsystemMask kFullMask{true, true, true};

/// The 2D subsystem that omits dimension `d`.
constexpr SubsystemMask complement_mask(Dim d) {
    SubsystemMask m{true, true, true};
    m[dim_index(d)] = false;
    return m;
}

/// An equilibrium of the full system or of a subsystem. Coordinates of
/// masked-out dimensions are exactly zero. The Jacobian summary (trace,
/// determinant, eigenvalues) refers to the system restricted to the mask.
struct FixedPointRecord {
    Vec3 location{0.0, 0.0, 0.0};
    SubsystemMask mask{false, false, false};
    bool in_positive_orthant = false;
    double trace = 0.0;
    double determinant = 0.0;
    std::vector<std::complex<double>> eigenvalues;
    Classification classification = Classification::Degenerate;
};

/// Raised when the restricted linear system r + A x = 0 has no unique
/// solution; carries the restricted matrix for diagnostics.
struct NoInteriorFixedPoint : std::runtime_error {
    NoInteriorFixedPoint(SubsystemMask mask, std::vector<double> restricted);
    SubsystemMask mask;
    std::vector<double> restricted_matrix;  // row-major, active dims only
};

/// Classifies by the trace-determinant plane (2D masks) or by eigenvalue
/// real parts (otherwise). Uses an absolute tolerance of 1e-12 on trace and
/// determinant and 1e-10 on eigenvalue real parts.
Classification classify(const FixedPointRecord& record);

/// Interior fixed point of the 2D subsystem selected by a two-dimension
/// mask, with the complementary coordinate held at zero.
FixedPointRecord subsystem_fixed_point(const ModelSpec3& spec, const SubsystemMask& mask);

/// Interior fixed point of the full 3D system: the solution of A x = -r.
FixedPointRecord interior_fixed_point(const ModelSpec3& spec);

/// The origin, always an equilibrium; Jacobian there is diag(r).
FixedPointRecord origin_fixed_point(const ModelSpec3& spec);

}  // namespace evs
