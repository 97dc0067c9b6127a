#include "evs/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace evs {

const char* to_string(Method m) {
    return m == Method::Rk4Fixed ? "rk4-fixed" : "rk45-adaptive";
}

Method method_from_string(std::string_view s) {
    if (s == "rk4-fixed") return Method::Rk4Fixed;
    if (s == "rk45-adaptive") return Method::Rk45Adaptive;
    throw ContractViolation("unknown integrator method: " + std::string(s));
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("integrator.dt must be > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ContractViolation("integrator.horizon must be > 0");
    if (!(extinction_threshold > 0.0))
        throw ContractViolation("integrator.extinction_threshold must be > 0");
    if (record_stride == 0) throw ContractViolation("integrator.record_stride must be >= 1");
    if (method == Method::Rk45Adaptive && (!(rel_tol > 0.0) || !(abs_tol > 0.0)))
        throw ContractViolation("integrator.rel_tol and abs_tol must be > 0");
}

NumericalBlowup::NumericalBlowup(double t, Trajectory part)
    : std::runtime_error("numerical blowup at t = " + std::to_string(t)),
      time(t),
      partial(std::move(part)) {}

namespace detail {
namespace {

// Cash-Karp 4(5) embedded pair.
constexpr double kCkA21 = 1.0 / 5.0;
constexpr double kCkA31 = 3.0 / 40.0, kCkA32 = 9.0 / 40.0;
constexpr double kCkA41 = 3.0 / 10.0, kCkA42 = -9.0 / 10.0, kCkA43 = 6.0 / 5.0;
constexpr double kCkA51 = -11.0 / 54.0, kCkA52 = 5.0 / 2.0, kCkA53 = -70.0 / 27.0,
                 kCkA54 = 35.0 / 27.0;
constexpr double kCkA61 = 1631.0 / 55296.0, kCkA62 = 175.0 / 512.0, kCkA63 = 575.0 / 13824.0,
                 kCkA64 = 44275.0 / 110592.0, kCkA65 = 253.0 / 4096.0;
constexpr double kCkB1 = 37.0 / 378.0, kCkB3 = 250.0 / 621.0, kCkB4 = 125.0 / 594.0,
                 kCkB6 = 512.0 / 1771.0;
constexpr double kCkE1 = 37.0 / 378.0 - 2825.0 / 27648.0;
constexpr double kCkE3 = 250.0 / 621.0 - 18575.0 / 48384.0;
constexpr double kCkE4 = 125.0 / 594.0 - 13525.0 / 55296.0;
constexpr double kCkE5 = -277.0 / 14336.0;
constexpr double kCkE6 = 512.0 / 1771.0 - 1.0 / 4.0;

struct Recorder {
    Trajectory traj;
    std::vector<char> crossed;
    double eps;
    bool log_domain;
    std::vector<double> physical;  // scratch for log-domain conversion

    Recorder(std::size_t n, const IntegratorConfig& cfg, std::size_t reserve_rows)
        : eps(cfg.extinction_threshold), log_domain(cfg.log_domain), physical(n) {
        traj.dim = n;
        traj.times.reserve(reserve_rows);
        traj.states.reserve(reserve_rows * n);
        crossed.assign(n, 0);
    }

    std::span<const double> as_physical(std::span<const double> x) {
        if (!log_domain) return x;
        for (std::size_t i = 0; i < x.size(); ++i) physical[i] = std::exp(x[i]);
        return physical;
    }

    // Returns false when the state is no longer valid (blowup).
    bool check(std::span<const double> x) {
        for (double v : x) {
            if (!std::isfinite(v)) return false;
            if (!log_domain && v < 0.0) return false;
        }
        return true;
    }

    void note_events(double t, std::span<const double> prev, std::span<const double> now) {
        for (std::size_t i = 0; i < now.size(); ++i) {
            if (!crossed[i] && prev[i] >= eps && now[i] < eps) {
                crossed[i] = 1;
                traj.events.push_back({t, i, EventKind::ExtinctionCrossed});
            }
        }
    }

    void record(double t, std::span<const double> x) {
        traj.times.push_back(t);
        traj.states.insert(traj.states.end(), x.begin(), x.end());
    }
};

Trajectory run_fixed(const LvField& field, std::vector<double> x,
                     const IntegratorConfig& cfg) {
    const std::size_t n = x.size();
    const auto total = static_cast<std::size_t>(std::ceil(cfg.horizon / cfg.dt - 1e-9));
    Recorder rec(n, cfg, total / cfg.record_stride + 2);

    std::vector<double> scratch;
    std::vector<double> next(n), prev_phys(n), now_phys(n);

    auto phys = rec.as_physical(x);
    std::copy(phys.begin(), phys.end(), prev_phys.begin());
    rec.record(0.0, prev_phys);

    for (std::size_t k = 1; k <= total; ++k) {
        const double t_prev = static_cast<double>(k - 1) * cfg.dt;
        const double dt = std::min(cfg.dt, cfg.horizon - t_prev);
        const double t = k == total ? cfg.horizon : static_cast<double>(k) * cfg.dt;

        rk4_step(field, x, dt, next, scratch);
        std::swap(x, next);
        if (!rec.check(x)) throw NumericalBlowup(t, std::move(rec.traj));

        phys = rec.as_physical(x);
        std::copy(phys.begin(), phys.end(), now_phys.begin());
        rec.note_events(t, prev_phys, now_phys);
        std::swap(prev_phys, now_phys);
        if (k % cfg.record_stride == 0 || k == total) rec.record(t, prev_phys);
    }
    return std::move(rec.traj);
}

Trajectory run_adaptive(const LvField& field, std::vector<double> x,
                        const IntegratorConfig& cfg) {
    const std::size_t n = x.size();
    Recorder rec(n, cfg, 256);

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), tmp(n), next(n);
    std::vector<double> prev_phys(n), now_phys(n);

    auto phys = rec.as_physical(x);
    std::copy(phys.begin(), phys.end(), prev_phys.begin());
    rec.record(0.0, prev_phys);

    double t = 0.0;
    double dt = std::min(cfg.dt, cfg.horizon);
    std::size_t accepted = 0;
    const double dt_floor = cfg.horizon * 1e-14;

    while (t < cfg.horizon) {
        if (cfg.horizon - t <= dt_floor) break;  // done within roundoff
        dt = std::min(dt, cfg.horizon - t);
        field(x, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * kCkA21 * k1[i];
        field(tmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + dt * (kCkA31 * k1[i] + kCkA32 * k2[i]);
        field(tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + dt * (kCkA41 * k1[i] + kCkA42 * k2[i] + kCkA43 * k3[i]);
        field(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + dt * (kCkA51 * k1[i] + kCkA52 * k2[i] + kCkA53 * k3[i] +
                                  kCkA54 * k4[i]);
        field(tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + dt * (kCkA61 * k1[i] + kCkA62 * k2[i] + kCkA63 * k3[i] +
                                  kCkA64 * k4[i] + kCkA65 * k5[i]);
        field(tmp, k6);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = x[i] + dt * (kCkB1 * k1[i] + kCkB3 * k3[i] + kCkB4 * k4[i] + kCkB6 * k6[i]);
            const double ei =
                dt * (kCkE1 * k1[i] + kCkE3 * k3[i] + kCkE4 * k4[i] + kCkE5 * k5[i] +
                      kCkE6 * k6[i]);
            const double scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(x[i]), std::fabs(next[i]));
            err = std::max(err, std::fabs(ei) / scale);
        }

        if (!std::isfinite(err)) throw NumericalBlowup(t + dt, std::move(rec.traj));
        if (err > 1.0) {
            dt *= std::max(0.2, 0.9 * std::pow(err, -0.25));
            if (dt < dt_floor) throw NumericalBlowup(t, std::move(rec.traj));
            continue;
        }

        t += dt;
        std::swap(x, next);
        ++accepted;
        if (!rec.check(x)) throw NumericalBlowup(t, std::move(rec.traj));

        phys = rec.as_physical(x);
        std::copy(phys.begin(), phys.end(), now_phys.begin());
        rec.note_events(t, prev_phys, now_phys);
        std::swap(prev_phys, now_phys);
        if (accepted % cfg.record_stride == 0) rec.record(t, prev_phys);

        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        dt *= std::clamp(grow, 0.2, 5.0);
    }
    if (rec.traj.times.back() != t) rec.record(t, prev_phys);
    return std::move(rec.traj);
}

}  // namespace

Trajectory simulate_lv(std::span<const double> r, std::span<const double> a,
                       std::span<const double> x0, const IntegratorConfig& cfg) {
    cfg.validate();
    const std::size_t n = x0.size();
    if (r.size() != n || a.size() != n * n)
        throw ContractViolation("simulate: dimension mismatch between r, A and x0");
    for (double v : x0) {
        if (!std::isfinite(v)) throw ContractViolation("simulate: non-finite initial state");
        if (v < 0.0) throw ContractViolation("simulate: negative initial state");
        if (cfg.log_domain && v <= 0.0)
            throw ContractViolation("simulate: log_domain requires strictly positive x0");
    }

    LvField field{r, a, cfg.log_domain};
    std::vector<double> x(x0.begin(), x0.end());
    if (cfg.log_domain)
        for (double& v : x) v = std::log(v);
    return cfg.method == Method::Rk4Fixed ? run_fixed(field, std::move(x), cfg)
                                          : run_adaptive(field, std::move(x), cfg);
}

}  // namespace detail

Vec3 step(const ModelSpec3& spec, const Vec3& x, double dt) {
    if (!(dt >= 0.0)) throw ContractViolation("step: dt must be >= 0");
    for (double v : x)
        if (!std::isfinite(v)) throw ContractViolation("step: non-finite state");

    std::array<double, 9> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i * 3 + j] = spec.a(i, j);
    detail::LvField field{spec.r(), a, false};

    Vec3 out;
    std::vector<double> scratch;
    detail::rk4_step(field, x, dt, out, scratch);
    for (double v : out)
        if (!std::isfinite(v)) throw NumericalBlowup(dt, Trajectory{});
    return out;
}

Trajectory simulate(const ModelSpec3& spec, const Vec3& x0, const IntegratorConfig& cfg) {
    std::array<double, 9> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i * 3 + j] = spec.a(i, j);
    return detail::simulate_lv(spec.r(), a, x0, cfg);
}

double ev_first_integral(const ModelSpec3& spec, double e, double v) {
    if (!(e > 0.0) || !(v > 0.0))
        throw ContractViolation("ev_first_integral: requires E > 0 and V > 0");
    return spec.a(0, 1) * v + spec.r()[0] * std::log(v) - spec.a(1, 0) * e -
           spec.r()[1] * std::log(e);
}

std::optional<double> persistence_check(const Trajectory& traj, double eps) {
    if (traj.rows() == 0) throw ContractViolation("persistence_check: empty trajectory");
    std::size_t first_good = traj.rows();  // first index of the clean tail
    for (std::size_t i = traj.rows(); i-- > 0;) {
        bool above = true;
        for (double v : traj.state(i)) {
            if (!(v > eps)) {
                above = false;
                break;
            }
        }
        if (!above) break;
        first_good = i;
    }
    if (first_good == traj.rows()) return std::nullopt;
    return traj.times[first_good];
}

}  // namespace evs
