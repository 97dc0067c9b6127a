// Python bindings for the EVS engine: model evaluation, equilibria,
// integration, scenario classification, sweeps and the N-dimensional
// generalization. Report-like results cross the boundary as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "evs/equilibria.hpp"
#include "evs/integrate.hpp"
#include "evs/io.hpp"
#include "evs/model.hpp"
#include "evs/ndim.hpp"
#include "evs/sustainability.hpp"
#include "evs/sweep.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
            return out;
        }
        default: return py::none();
    }
}

evs::Vec3 to_vec3(const std::vector<double>& values, const char* what) {
    if (values.size() != 3)
        throw evs::ContractViolation(std::string(what) + " must have exactly 3 entries");
    return {values[0], values[1], values[2]};
}

evs::Mat3 to_mat3(const std::vector<std::vector<double>>& rows) {
    if (rows.size() != 3) throw evs::ContractViolation("A must be a 3x3 matrix");
    evs::Mat3 a;
    for (int i = 0; i < 3; ++i) {
        if (rows[i].size() != 3) throw evs::ContractViolation("A must be a 3x3 matrix");
        std::copy(rows[i].begin(), rows[i].end(), a[i].begin());
    }
    return a;
}

evs::IntegratorConfig make_config(const std::string& method, double dt, double horizon,
                                  double extinction_threshold, std::size_t record_stride,
                                  double rel_tol, double abs_tol, bool log_domain) {
    evs::IntegratorConfig cfg;
    cfg.method = evs::method_from_string(method);
    cfg.dt = dt;
    cfg.horizon = horizon;
    cfg.extinction_threshold = extinction_threshold;
    cfg.record_stride = record_stride;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.log_domain = log_domain;
    cfg.validate();
    return cfg;
}

py::dict trajectory_to_dict(const evs::Trajectory& traj) {
    py::dict out;
    out["times"] = traj.times;
    py::list states;
    for (std::size_t i = 0; i < traj.rows(); ++i) {
        const auto row = traj.state(i);
        states.append(std::vector<double>(row.begin(), row.end()));
    }
    out["states"] = states;
    py::list events;
    for (const auto& ev : traj.events) {
        py::dict entry;
        entry["time"] = ev.time;
        entry["dimension"] = ev.dimension;
        entry["kind"] = "extinction-crossed";
        events.append(entry);
    }
    out["events"] = events;
    return out;
}

evs::SubsystemMask parse_mask(const std::string& mask) {
    evs::SubsystemMask out{false, false, false};
    for (char c : mask) {
        if (c == 'E')
            out[0] = true;
        else if (c == 'V')
            out[1] = true;
        else if (c == 'S')
            out[2] = true;
        else
            throw evs::ContractViolation("mask must name dimensions from {E, V, S}");
    }
    return out;
}

constexpr char kIntegratorArgsDoc[] =
    "Integrator keywords: method ('rk4-fixed' | 'rk45-adaptive'), dt, horizon, "
    "extinction_threshold, record_stride, rel_tol, abs_tol, log_domain.";

}  // namespace

PYBIND11_MODULE(evs, m) {
    m.doc() = "Lotka-Volterra economy-environment-society model engine";

    py::register_exception<evs::ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    static py::exception<evs::NumericalBlowup> blowup_exc(m, "NumericalBlowup",
                                                          PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const evs::NumericalBlowup& err) {
            py::set_error(blowup_exc, err.what());
        } catch (const evs::NoInteriorFixedPoint& err) {
            py::set_error(py::reinterpret_borrow<py::object>(PyExc_ArithmeticError), err.what());
        }
    });

    py::class_<evs::ModelSpec3>(m, "ModelSpec3")
        .def(py::init([](const std::vector<double>& r, const std::vector<std::vector<double>>& a,
                         bool enforce_template) {
                 return evs::ModelSpec3(to_vec3(r, "r"), to_mat3(a), enforce_template);
             }),
             py::arg("r"), py::arg("A"), py::arg("enforce_template") = true)
        .def_property_readonly("r",
                               [](const evs::ModelSpec3& s) {
                                   return std::vector<double>(s.r().begin(), s.r().end());
                               })
        .def_property_readonly("A",
                               [](const evs::ModelSpec3& s) {
                                   std::vector<std::vector<double>> rows;
                                   for (const auto& row : s.a())
                                       rows.emplace_back(row.begin(), row.end());
                                   return rows;
                               })
        .def_property_readonly("enforce_template", &evs::ModelSpec3::enforce_template)
        .def("with_param",
             [](const evs::ModelSpec3& s, const std::string& address, double value) {
                 return s.with_param(evs::ParamAddress::parse(address), value);
             },
             py::arg("address"), py::arg("value"))
        .def("to_dict", [](const evs::ModelSpec3& s) { return json_to_py(evs::to_json(s)); })
        .def("__repr__", [](const evs::ModelSpec3& s) {
            return "ModelSpec3(" + evs::to_json(s).dump() + ")";
        });

    m.def("validate_template",
          [](const evs::ModelSpec3& spec) {
              py::list out;
              for (const auto& v : evs::validate_template(spec)) {
                  py::dict entry;
                  entry["entry"] = v.entry;
                  entry["expected"] = v.expected;
                  entry["actual"] = v.actual;
                  out.append(entry);
              }
              return out;
          },
          py::arg("spec"), "Sign-template violations; empty means conforming.");

    m.def("vector_field",
          [](const evs::ModelSpec3& spec, const std::vector<double>& x) {
              const auto out = evs::vector_field(spec, to_vec3(x, "x"));
              return std::vector<double>(out.begin(), out.end());
          },
          py::arg("spec"), py::arg("x"));
    m.def("per_capita_growth",
          [](const evs::ModelSpec3& spec, const std::vector<double>& x) {
              const auto out = evs::per_capita_growth(spec, to_vec3(x, "x"));
              return std::vector<double>(out.begin(), out.end());
          },
          py::arg("spec"), py::arg("x"));
    m.def("jacobian",
          [](const evs::ModelSpec3& spec, const std::vector<double>& x) {
              const auto jac = evs::jacobian(spec, to_vec3(x, "x"));
              std::vector<std::vector<double>> rows;
              for (const auto& row : jac) rows.emplace_back(row.begin(), row.end());
              return rows;
          },
          py::arg("spec"), py::arg("x"));

    m.def("subsystem_fixed_point",
          [](const evs::ModelSpec3& spec, const std::string& mask) {
              return json_to_py(evs::to_json(evs::subsystem_fixed_point(spec, parse_mask(mask))));
          },
          py::arg("spec"), py::arg("mask"),
          "Interior equilibrium of a 2D subsystem; mask like 'EV', 'ES', 'VS'.");
    m.def("interior_fixed_point",
          [](const evs::ModelSpec3& spec) {
              return json_to_py(evs::to_json(evs::interior_fixed_point(spec)));
          },
          py::arg("spec"));
    m.def("origin_fixed_point",
          [](const evs::ModelSpec3& spec) {
              return json_to_py(evs::to_json(evs::origin_fixed_point(spec)));
          },
          py::arg("spec"));

    m.def("simulate",
          [](const evs::ModelSpec3& spec, const std::vector<double>& x0,
             const std::string& method, double dt, double horizon, double extinction_threshold,
             std::size_t record_stride, double rel_tol, double abs_tol, bool log_domain) {
              const auto cfg = make_config(method, dt, horizon, extinction_threshold,
                                           record_stride, rel_tol, abs_tol, log_domain);
              return trajectory_to_dict(evs::simulate(spec, to_vec3(x0, "x0"), cfg));
          },
          py::arg("spec"), py::arg("x0"), py::arg("method") = "rk4-fixed", py::arg("dt") = 0.01,
          py::arg("horizon") = 500.0, py::arg("extinction_threshold") = 1e-6,
          py::arg("record_stride") = 10, py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10,
          py::arg("log_domain") = false, kIntegratorArgsDoc);

    m.def("step",
          [](const evs::ModelSpec3& spec, const std::vector<double>& x, double dt) {
              const auto out = evs::step(spec, to_vec3(x, "x"), dt);
              return std::vector<double>(out.begin(), out.end());
          },
          py::arg("spec"), py::arg("x"), py::arg("dt"));

    m.def("ev_first_integral", &evs::ev_first_integral, py::arg("spec"), py::arg("E"),
          py::arg("V"), "Conserved quantity of the exact EV subsystem.");

    m.def("persistence_horizon",
          [](const std::vector<double>& times, const std::vector<std::vector<double>>& states,
             double eps) -> py::object {
              evs::Trajectory traj;
              traj.times = times;
              traj.dim = states.empty() ? 0 : states[0].size();
              for (const auto& row : states) {
                  if (row.size() != traj.dim)
                      throw evs::ContractViolation("states rows must have equal length");
                  traj.states.insert(traj.states.end(), row.begin(), row.end());
              }
              const auto t1 = evs::persistence_check(traj, eps);
              return t1 ? py::cast(*t1) : py::none();
          },
          py::arg("times"), py::arg("states"), py::arg("eps") = 1e-6);

    m.def("recovery_sign",
          [](const evs::ModelSpec3& spec, const std::string& dimension) {
              if (dimension.size() != 1)
                  throw evs::ContractViolation("dimension must be 'E', 'V' or 'S'");
              const evs::Dim d = dimension == "E"   ? evs::Dim::E
                                 : dimension == "V" ? evs::Dim::V
                                                    : evs::Dim::S;
              const auto rec = evs::recovery_sign(spec, d);
              py::dict out;
              out["dimension"] = evs::dim_name(rec.dimension);
              out["exists"] = rec.exists;
              out["value"] = rec.value;
              out["sign"] = rec.sign;
              out["fixed_point_positive"] = rec.fixed_point_positive;
              if (rec.exists) out["fixed_point"] = json_to_py(evs::to_json(rec.fixed_point));
              return out;
          },
          py::arg("spec"), py::arg("dimension"));

    m.def("classify_scenario",
          [](const evs::ModelSpec3& spec) {
              const auto report = evs::classify_scenario(spec);
              py::dict out = json_to_py(evs::to_json(report)).cast<py::dict>();
              out["exit_code"] = evs::scenario_exit_code(report.scenario);
              return out;
          },
          py::arg("spec"), "Full sustainability report as a dict.");

    m.def("boundary_conditions", [](const evs::ModelSpec3& spec) {
        json out = json::array();
        for (const auto& bound : evs::boundary_conditions(spec)) {
            json entry = {{"parameter", bound.parameter},
                          {"recovery_dimension", evs::dim_name(bound.recovery_dimension)},
                          {"degenerate", bound.degenerate}};
            if (!bound.degenerate) {
                entry["branch"] = bound.branch;
                entry["relation"] = bound.relation;
                entry["threshold"] = bound.threshold;
                entry["satisfied"] = bound.satisfied;
            }
            out.push_back(std::move(entry));
        }
        return json_to_py(out);
    });

    m.def("run_sweep",
          [](const evs::ModelSpec3& base, const std::string& target,
             const std::vector<double>& grid, const std::vector<double>& x0,
             double summary_window, const std::string& method, double dt, double horizon,
             double extinction_threshold, std::size_t record_stride, double rel_tol,
             double abs_tol, bool log_domain) {
              evs::SweepPlan plan{.target = evs::ParamAddress::parse(target),
                                  .grid = grid,
                                  .base = base,
                                  .x0 = to_vec3(x0, "x0"),
                                  .integrator =
                                      make_config(method, dt, horizon, extinction_threshold,
                                                  record_stride, rel_tol, abs_tol, log_domain),
                                  .summary_window = summary_window};
              return json_to_py(evs::to_json(evs::run_sweep(plan)));
          },
          py::arg("base"), py::arg("target"), py::arg("grid"), py::arg("x0"),
          py::arg("summary_window") = 0.5, py::arg("method") = "rk4-fixed", py::arg("dt") = 0.01,
          py::arg("horizon") = 500.0, py::arg("extinction_threshold") = 1e-6,
          py::arg("record_stride") = 10, py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10,
          py::arg("log_domain") = false);

    m.def("shape_test",
          [](const std::vector<double>& column, double tol) {
              return std::string(evs::to_string(evs::shape_test(column, tol)));
          },
          py::arg("column"), py::arg("tol") = 1e-9);

    py::class_<evs::NDimSpec>(m, "NDimSpec")
        .def(py::init([](const py::dict& d) {
                 const json j = json::parse(py::str(py::module_::import("json").attr("dumps")(d))
                                                .cast<std::string>());
                 return evs::ndim_from_json(j, "spec");
             }),
             py::arg("spec"),
             "Build from a dict with keys blocks, r, A and optional labels, weights.")
        .def_property_readonly("blocks", [](const evs::NDimSpec& s) { return s.blocks; })
        .def_property_readonly("labels", [](const evs::NDimSpec& s) { return s.labels; })
        .def_property_readonly("size", [](const evs::NDimSpec& s) { return s.size(); })
        .def("to_dict", [](const evs::NDimSpec& s) { return json_to_py(evs::to_json(s)); })
        .def("__repr__", [](const evs::NDimSpec& s) {
            return "NDimSpec(blocks=[" + std::to_string(s.blocks[0]) + ", " +
                   std::to_string(s.blocks[1]) + ", " + std::to_string(s.blocks[2]) + "])";
        });

    m.def("vector_field_n", &evs::vector_field_n, py::arg("spec"), py::arg("x"));
    m.def("aggregate",
          [](const evs::NDimSpec& spec, const std::vector<double>& x) {
              const auto out = evs::aggregate(spec, x);
              return std::vector<double>(out.begin(), out.end());
          },
          py::arg("spec"), py::arg("x"));
    m.def("extract_subsystem",
          [](const evs::NDimSpec& spec, const std::vector<std::size_t>& indices) {
              return evs::extract_subsystem(spec, indices);
          },
          py::arg("spec"), py::arg("indices"));
    m.def("random_ensemble",
          [](const std::array<std::size_t, 3>& blocks, std::size_t count, std::uint64_t seed,
             double coupling_scale) {
              return evs::random_ensemble(blocks, count, seed, coupling_scale);
          },
          py::arg("blocks"), py::arg("count"), py::arg("seed"), py::arg("coupling_scale"));

    m.def("simulate_n",
          [](const evs::NDimSpec& spec, const std::vector<double>& x0, const std::string& method,
             double dt, double horizon, double extinction_threshold, std::size_t record_stride,
             double rel_tol, double abs_tol, bool log_domain) {
              const auto cfg = make_config(method, dt, horizon, extinction_threshold,
                                           record_stride, rel_tol, abs_tol, log_domain);
              const auto traj = evs::simulate_n(spec, x0, cfg);
              py::dict out = trajectory_to_dict(traj);
              out["aggregate_states"] =
                  trajectory_to_dict(evs::aggregate_trajectory(spec, traj))["states"];
              return out;
          },
          py::arg("spec"), py::arg("x0"), py::arg("method") = "rk4-fixed", py::arg("dt") = 0.01,
          py::arg("horizon") = 500.0, py::arg("extinction_threshold") = 1e-6,
          py::arg("record_stride") = 10, py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10,
          py::arg("log_domain") = false, kIntegratorArgsDoc);
}
