#pragma once

#include <random>

#include "evs/model.hpp"

namespace evs::testing {

/// The documented default parameterization used throughout the test suite;
/// the E-on-S coupling sign is the interesting knob.
inline ModelSpec3 baseline_spec(double a31 = 0.1) {
    return ModelSpec3({-0.1, 0.1, -0.05},
                      {{{0.0, 0.7, 0.1}, {-0.3, 0.0, 0.1}, {a31, 0.1, 0.0}}});
}

/// A template-conforming spec whose three recovery values are all positive.
inline ModelSpec3 sustainable_spec() {
    return ModelSpec3({-0.1, 0.1, -0.04},
                      {{{0.0, 0.7, 0.1}, {-0.3, 0.0, 0.1}, {0.1, 0.1, 0.0}}});
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Random spec conforming to the sign template, couplings bounded away from
/// zero so every 2D subsystem stays solvable.
inline ModelSpec3 random_template_spec(std::mt19937_64& rng) {
    const double r_e = -uniform(rng, 0.02, 0.5);
    const double r_v = uniform(rng, 0.02, 0.5);
    const double r_s = -uniform(rng, 0.02, 0.5);
    const double a12 = uniform(rng, 0.05, 1.0);
    const double a13 = uniform(rng, 0.05, 1.0);
    const double a21 = -uniform(rng, 0.05, 1.0);
    const double a23 = uniform(rng, 0.05, 1.0);
    const double a32 = uniform(rng, 0.05, 1.0);
    const double a31 = (rng() & 1u ? 1.0 : -1.0) * uniform(rng, 0.05, 1.0);
    return ModelSpec3({r_e, r_v, r_s}, {{{0.0, a12, a13}, {a21, 0.0, a23}, {a31, a32, 0.0}}});
}

/// Unconstrained random spec (template not enforced), for algebraic
/// property tests.
inline ModelSpec3 random_free_spec(std::mt19937_64& rng) {
    Vec3 r;
    Mat3 a;
    for (auto& v : r) v = uniform(rng, -1.0, 1.0);
    for (auto& row : a)
        for (auto& v : row) v = uniform(rng, -1.0, 1.0);
    return ModelSpec3(r, a, /*enforce_template=*/false);
}

inline Vec3 random_state(std::mt19937_64& rng, double lo = 0.05, double hi = 2.0) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

/// Central-difference Jacobian oracle, step h on each coordinate.
inline Mat3 finite_difference_jacobian(const ModelSpec3& spec, const Vec3& x, double h = 1e-6) {
    Mat3 jac;
    for (int j = 0; j < 3; ++j) {
        Vec3 hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        const Vec3 fhi = vector_field(spec, hi);
        const Vec3 flo = vector_field(spec, lo);
        for (int i = 0; i < 3; ++i) jac[i][j] = (fhi[i] - flo[i]) / (2.0 * h);
    }
    return jac;
}

}  // namespace evs::testing
