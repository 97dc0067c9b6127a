#include "evs/model.hpp"

#include <cmath>
#include <sstream>

namespace evs {

namespace {

bool all_finite(const Vec3& r, const Mat3& a) {
    for (double v : r)
        if (!std::isfinite(v)) return false;
    for (const auto& row : a)
        for (double v : row)
            if (!std::isfinite(v)) return false;
    return true;
}

void check_sign(std::vector<TemplateViolation>& out, const std::string& entry, double value,
                bool positive) {
    if (positive ? (value > 0.0) : (value < 0.0)) return;
    out.push_back({entry, positive ? "> 0" : "< 0", value});
}

}  // namespace

std::vector<TemplateViolation> validate_template(const Vec3& r, const Mat3& a) {
    std::vector<TemplateViolation> out;
    check_sign(out, "r_E", r[0], false);
    check_sign(out, "r_V", r[1], true);
    check_sign(out, "r_S", r[2], false);
    check_sign(out, "a_12", a[0][1], true);
    check_sign(out, "a_13", a[0][2], true);
    check_sign(out, "a_21", a[1][0], false);
    check_sign(out, "a_23", a[1][2], true);
    check_sign(out, "a_32", a[2][1], true);
    // a_31 may take either sign; the baseline has no self-interaction.
    for (int i = 0; i < 3; ++i) {
        if (a[i][i] != 0.0) {
            out.push_back({"a_" + std::to_string(i + 1) + std::to_string(i + 1), "= 0", a[i][i]});
        }
    }
    return out;
}

std::vector<TemplateViolation> validate_template(const ModelSpec3& spec) {
    return validate_template(spec.r(), spec.a());
}

ModelSpec3::ModelSpec3(const Vec3& r, const Mat3& a, bool enforce_template)
    : r_(r), a_(a), enforce_template_(enforce_template) {
    if (!all_finite(r_, a_)) throw ContractViolation("ModelSpec3: non-finite coefficient");
    if (enforce_template_) {
        const auto violations = validate_template(r_, a_);
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << "ModelSpec3: sign template violated:";
            for (const auto& v : violations)
                msg << " " << v.entry << " expected " << v.expected << ", got " << v.actual << ";";
            throw ContractViolation(msg.str());
        }
    }
}

ParamAddress ParamAddress::parse(std::string_view text) {
    if (text == "r_E" || text == "rE") return {Kind::GrowthRate, 0, 0};
    if (text == "r_V" || text == "rV") return {Kind::GrowthRate, 1, 0};
    if (text == "r_S" || text == "rS") return {Kind::GrowthRate, 2, 0};
    // a_ij with 1-based indices, underscore optional.
    std::string_view digits = text;
    if (digits.starts_with("a_"))
        digits.remove_prefix(2);
    else if (digits.starts_with("a"))
        digits.remove_prefix(1);
    else
        digits = {};
    if (digits.size() == 2 && digits[0] >= '1' && digits[0] <= '3' && digits[1] >= '1' &&
        digits[1] <= '3') {
        return {Kind::Coupling, digits[0] - '1', digits[1] - '1'};
    }
    throw ContractViolation("unknown parameter address: " + std::string(text));
}

std::string ParamAddress::str() const {
    if (kind == Kind::GrowthRate) return std::string("r_") + dim_name(static_cast<Dim>(i));
    return "a_" + std::to_string(i + 1) + std::to_string(j + 1);
}

double ModelSpec3::param(const ParamAddress& addr) const {
    return addr.kind == ParamAddress::Kind::GrowthRate ? r_[addr.i] : a_[addr.i][addr.j];
}

ModelSpec3 ModelSpec3::with_param(const ParamAddress& addr, double value) const {
    Vec3 r = r_;
    Mat3 a = a_;
    if (addr.kind == ParamAddress::Kind::GrowthRate)
        r[addr.i] = value;
    else
        a[addr.i][addr.j] = value;
    return ModelSpec3(r, a, enforce_template_);
}

Vec3 per_capita_growth(const ModelSpec3& spec, const Vec3& x) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) acc += spec.a(i, j) * x[j];
        g[i] = spec.r()[i] + acc;
    }
    return g;
}

Vec3 vector_field(const ModelSpec3& spec, const Vec3& x) {
    Vec3 g = per_capita_growth(spec, x);
    for (int i = 0; i < 3; ++i) g[i] = x[i] * g[i];
    return g;
}

Mat3 jacobian(const ModelSpec3& spec, const Vec3& x) {
    const Vec3 g = per_capita_growth(spec, x);
    Mat3 jac;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            jac[i][j] = i == j ? g[i] + spec.a(i, i) * x[i] : x[i] * spec.a(i, j);
        }
    }
    return jac;
}

}  // namespace evs
