#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evs/types.hpp"

namespace evs {

/// One sign-template violation: which entry is off and what was expected.
struct TemplateViolation {
    std::string entry;     // "r_V", "a_12", ...
    std::string expected;  // "> 0", "< 0", "= 0"
    double actual = 0.0;
};

/// Checks the baseline sign template directly on raw coefficients:
/// r_E < 0, r_V > 0, r_S < 0; a_12 > 0, a_13 > 0, a_21 < 0, a_23 > 0,
/// a_32 > 0; a_31 free; zero diagonal. Empty result means conforming.
std::vector<TemplateViolation> validate_template(const Vec3& r, const Mat3& a);

/// Addresses a single coefficient of ModelSpec3 ("r_E", "a_12", ...).
struct ParamAddress {
    enum class Kind { GrowthRate, Coupling };
    Kind kind = Kind::GrowthRate;
    int i = 0;  // row (or dimension) index, 0-based
    int j = 0;  // column index, 0-based; unused for growth rates

    static ParamAddress parse(std::string_view text);
    std::string str() const;
};

/// The three-dimensional interaction model: per-unit-time intrinsic growth
/// rates r and the 3x3 coupling matrix A, row i holding the effect of each
/// dimension on dimension i. Immutable after construction. With
/// enforce_template set, construction requires the baseline sign template
/// (including a zero diagonal); without it only finiteness is required.
class ModelSpec3 {
  public:
    ModelSpec3(const Vec3& r, const Mat3& a, bool enforce_template = true);

    const Vec3& r() const { return r_; }
    const Mat3& a() const { return a_; }
    double r(Dim d) const { return r_[dim_index(d)]; }
    double a(int i, int j) const { return a_[i][j]; }
    bool enforce_template() const { return enforce_template_; }

    double param(const ParamAddress& addr) const;
    /// Returns a copy with one coefficient replaced (re-validated).
    ModelSpec3 with_param(const ParamAddress& addr, double value) const;

    bool operator==(const ModelSpec3&) const = default;

  private:
    Vec3 r_;
    Mat3 a_;
    bool enforce_template_;
};

std::vector<TemplateViolation> validate_template(const ModelSpec3& spec);

/// Per-capita growth rates g_i = r_i + sum_j a_ij x_j. The row dot product
/// accumulates in index order; defined even where x_i = 0.
Vec3 per_capita_growth(const ModelSpec3& spec, const Vec3& x);

/// The vector field xdot_i = x_i * g_i(x). Computed as per_capita_growth
/// followed by a componentwise scale, so the definitional identity
/// vector_field(s,x)[i] == x[i] * per_capita_growth(s,x)[i] holds exactly.
Vec3 vector_field(const ModelSpec3& spec, const Vec3& x);

/// Jacobian of the vector field: J_ii = g_i(x) + a_ii x_i, J_ik = x_i a_ik.
Mat3 jacobian(const ModelSpec3& spec, const Vec3& x);

}  // namespace evs
