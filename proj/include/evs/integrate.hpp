#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evs/model.hpp"
#include "evs/types.hpp"

namespace evs {

enum class Method { Rk4Fixed, Rk45Adaptive };

const char* to_string(Method m);
Method method_from_string(std::string_view s);

struct IntegratorConfig {
    Method method = Method::Rk4Fixed;
    double dt = 0.01;  // fixed step, or initial step for the adaptive method
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double horizon = 500.0;
    double extinction_threshold = 1e-6;
    std::size_t record_stride = 10;
    bool log_domain = false;  // integrate u = ln x (interior trajectories only)

    /// Throws ContractViolation naming the offending field.
    void validate() const;
};

enum class EventKind { ExtinctionCrossed };

struct ExtinctionEvent {
    double time = 0.0;
    std::size_t dimension = 0;
    EventKind kind = EventKind::ExtinctionCrossed;
};

/// A recorded trajectory: strictly increasing times starting at 0 and one
/// row of state per recorded time (row-major, `dim` columns).
struct Trajectory {
    std::vector<double> times;
    std::size_t dim = 0;
    std::vector<double> states;
    std::vector<ExtinctionEvent> events;

    std::size_t rows() const { return times.size(); }
    std::span<const double> state(std::size_t i) const {
        return {states.data() + i * dim, dim};
    }
    std::span<const double> final_state() const { return state(rows() - 1); }
};

/// Raised when a state goes non-finite (or negative, which for this system
/// is a numerical artifact) during integration. Carries the trajectory
/// recorded up to the last good step.
struct NumericalBlowup : std::runtime_error {
    NumericalBlowup(double time, Trajectory partial);
    double time;
    Trajectory partial;
};

namespace detail {

/// Dimension-generic vector field of xdot_i = x_i (r_i + sum_j a_ij x_j).
/// Both the 3D and the N-dimensional engines evaluate through this kernel,
/// so reduced N-dimensional runs reproduce 3D runs bit for bit.
struct LvField {
    std::span<const double> r;
    std::span<const double> a;  // row-major n*n
    bool log_domain = false;

    void operator()(std::span<const double> x, std::span<double> dx) const {
        const std::size_t n = r.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = a.data() + i * n;
            double acc = 0.0;
            if (log_domain) {
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * std::exp(x[j]);
                dx[i] = r[i] + acc;
            } else {
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
                dx[i] = x[i] * (r[i] + acc);
            }
        }
    }
};

/// One classical 4-stage Runge-Kutta step; no clamping.
template <class Field>
void rk4_step(const Field& f, std::span<const double> x, double dt,
              std::span<double> out, std::vector<double>& scratch) {
    const std::size_t n = x.size();
    scratch.resize(5 * n);
    std::span<double> k1(scratch.data(), n);
    std::span<double> k2(scratch.data() + n, n);
    std::span<double> k3(scratch.data() + 2 * n, n);
    std::span<double> k4(scratch.data() + 3 * n, n);
    std::span<double> tmp(scratch.data() + 4 * n, n);

    f(x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    f(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    f(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    f(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] + dt * (1.0 / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
}

Trajectory simulate_lv(std::span<const double> r, std::span<const double> a,
                       std::span<const double> x0, const IntegratorConfig& cfg);

}  // namespace detail

/// One RK4 step of the 3D system. dt = 0 returns x unchanged.
Vec3 step(const ModelSpec3& spec, const Vec3& x, double dt);

/// Integrates the 3D system from t = 0 to cfg.horizon. Extinction crossings
/// are annotated, never terminal; a non-finite or negative state raises
/// NumericalBlowup with the partial trajectory attached. Deterministic:
/// identical inputs give a bit-identical Trajectory.
Trajectory simulate(const ModelSpec3& spec, const Vec3& x0, const IntegratorConfig& cfg);

/// Conserved quantity of the exact EV subsystem,
/// H(E,V) = a_12 V + r_E ln V - a_21 E - r_V ln E, used as an integrator
/// accuracy oracle. Requires E > 0, V > 0.
double ev_first_integral(const ModelSpec3& spec, double e, double v);

/// Earliest recorded time after which every component stays above eps for
/// the rest of the run; empty when the trajectory ends at or below eps.
std::optional<double> persistence_check(const Trajectory& traj, double eps);

}  // namespace evs
