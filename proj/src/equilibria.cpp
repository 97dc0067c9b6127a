#include "evs/equilibria.hpp"

#include <cmath>

#include "evs/linalg.hpp"

namespace evs {

namespace {

constexpr double kTraceDetTol = 1e-12;
constexpr double kRealPartTol = 1e-10;

int mask_size(const SubsystemMask& mask) {
    return static_cast<int>(mask[0]) + static_cast<int>(mask[1]) + static_cast<int>(mask[2]);
}

bool positive_on_mask(const Vec3& x, const SubsystemMask& mask) {
    bool any = false;
    for (int i = 0; i < 3; ++i) {
        if (!mask[i]) continue;
        any = true;
        if (!(x[i] > 0.0)) return false;
    }
    return any;
}

// Jacobian of the masked subsystem at an embedded point (complementary
// coordinates zero): the corresponding submatrix of the full Jacobian.
void fill_jacobian_summary(const ModelSpec3& spec, FixedPointRecord& rec) {
    const Mat3 full = jacobian(spec, rec.location);
    std::vector<int> active;
    for (int i = 0; i < 3; ++i)
        if (rec.mask[i]) active.push_back(i);

    if (active.size() == 2) {
        const double j00 = full[active[0]][active[0]];
        const double j01 = full[active[0]][active[1]];
        const double j10 = full[active[1]][active[0]];
        const double j11 = full[active[1]][active[1]];
        rec.trace = j00 + j11;
        rec.determinant = j00 * j11 - j01 * j10;
        const auto eig = eigenvalues_2x2(rec.trace, rec.determinant);
        rec.eigenvalues.assign(eig.begin(), eig.end());
    } else if (active.size() == 3) {
        rec.trace = full[0][0] + full[1][1] + full[2][2];
        rec.determinant = full[0][0] * (full[1][1] * full[2][2] - full[1][2] * full[2][1]) -
                          full[0][1] * (full[1][0] * full[2][2] - full[1][2] * full[2][0]) +
                          full[0][2] * (full[1][0] * full[2][1] - full[1][1] * full[2][0]);
        const auto eig = eigenvalues_3x3(full);
        rec.eigenvalues.assign(eig.begin(), eig.end());
    } else {
        // Origin record: Jacobian is diag(r).
        rec.trace = spec.r()[0] + spec.r()[1] + spec.r()[2];
        rec.determinant = spec.r()[0] * spec.r()[1] * spec.r()[2];
        for (double ri : spec.r()) rec.eigenvalues.push_back({ri, 0.0});
    }
    rec.classification = classify(rec);
}

}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::CenterCandidate: return "center-candidate";
        case Classification::Saddle: return "saddle";
        case Classification::StableNodeFocus: return "stable-node/focus";
        case Classification::UnstableNodeFocus: return "unstable-node/focus";
        case Classification::Degenerate: return "degenerate";
    }
    return "?";
}

NoInteriorFixedPoint::NoInteriorFixedPoint(SubsystemMask m, std::vector<double> restricted)
    : std::runtime_error("no interior fixed point: restricted system is singular"),
      mask(m),
      restricted_matrix(std::move(restricted)) {}

Classification classify(const FixedPointRecord& record) {
    if (mask_size(record.mask) == 2) {
        if (std::fabs(record.determinant) <= kTraceDetTol) return Classification::Degenerate;
        if (record.determinant < 0.0) return Classification::Saddle;
        if (std::fabs(record.trace) <= kTraceDetTol) return Classification::CenterCandidate;
        return record.trace < 0.0 ? Classification::StableNodeFocus
                                  : Classification::UnstableNodeFocus;
    }
    bool any_zero_real = false;
    bool any_pos = false;
    bool any_neg = false;
    bool zero_has_imag = false;
    for (const auto& ev : record.eigenvalues) {
        if (std::fabs(ev.real()) <= kRealPartTol) {
            any_zero_real = true;
            if (std::fabs(ev.imag()) > kRealPartTol) zero_has_imag = true;
        } else if (ev.real() > 0.0) {
            any_pos = true;
        } else {
            any_neg = true;
        }
    }
    if (any_zero_real)
        return zero_has_imag ? Classification::CenterCandidate : Classification::Degenerate;
    if (any_pos && any_neg) return Classification::Saddle;
    return any_neg ? Classification::StableNodeFocus : Classification::UnstableNodeFocus;
}

FixedPointRecord subsystem_fixed_point(const ModelSpec3& spec, const SubsystemMask& mask) {
    if (mask_size(mask) != 2)
        throw ContractViolation("subsystem_fixed_point: mask must select exactly two dimensions");
    std::vector<int> active;
    for (int i = 0; i < 3; ++i)
        if (mask[i]) active.push_back(i);

    double m[4] = {spec.a(active[0], active[0]), spec.a(active[0], active[1]),
                   spec.a(active[1], active[0]), spec.a(active[1], active[1])};
    const std::vector<double> restricted(m, m + 4);
    double b[2] = {-spec.r()[active[0]], -spec.r()[active[1]]};
    double sol[2];
    if (!solve_linear(2, m, b, sol)) throw NoInteriorFixedPoint(mask, restricted);

    FixedPointRecord rec;
    rec.mask = mask;
    rec.location = {0.0, 0.0, 0.0};
    rec.location[active[0]] = sol[0];
    rec.location[active[1]] = sol[1];
    rec.in_positive_orthant = positive_on_mask(rec.location, mask);
    fill_jacobian_summary(spec, rec);
    return rec;
}

FixedPointRecord interior_fixed_point(const ModelSpec3& spec) {
    double m[9];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i * 3 + j] = spec.a(i, j);
    const std::vector<double> restricted(m, m + 9);
    double b[3] = {-spec.r()[0], -spec.r()[1], -spec.r()[2]};
    double sol[3];
    if (!solve_linear(3, m, b, sol)) throw NoInteriorFixedPoint(kFullMask, restricted);

    FixedPointRecord rec;
    rec.mask = kFullMask;
    rec.location = {sol[0], sol[1], sol[2]};
    rec.in_positive_orthant = positive_on_mask(rec.location, rec.mask);
    fill_jacobian_summary(spec, rec);
    return rec;
}

FixedPointRecord origin_fixed_point(const ModelSpec3& spec) {
    FixedPointRecord rec;
    rec.mask = {false, false, false};
    rec.location = {0.0, 0.0, 0.0};
    rec.in_positive_orthant = false;
    fill_jacobian_summary(spec, rec);
    return rec;
}

}  // namespace evs
