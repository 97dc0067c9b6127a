#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "evs/equilibria.hpp"
#include "evs/integrate.hpp"
#include "evs/model.hpp"
#include "evs/ndim.hpp"
#include "evs/sustainability.hpp"
#include "evs/sweep.hpp"

namespace evs {

/// Configuration parse/validation failure; the message names the offending
/// field by its JSON path (e.g. "model.r").
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- JSON ---------------------------------------------------------------
// ModelSpec3:  {"r": [..3..], "A": [[..3..]x3], "enforce_template": bool}
// NDimSpec:    {"blocks": [n1,n2,n3], "labels": [...], "r": [...],
//               "A": [[...]], "weights": {"E": [...], "V": [...], "S": [...]}}

nlohmann::json to_json(const ModelSpec3& spec);
ModelSpec3 model_from_json(const nlohmann::json& j, const std::string& path = "model");

nlohmann::json to_json(const IntegratorConfig& cfg);
IntegratorConfig integrator_from_json(const nlohmann::json& j,
                                      const std::string& path = "integrator");

nlohmann::json to_json(const NDimSpec& spec);
NDimSpec ndim_from_json(const nlohmann::json& j, const std::string& path = "model");

nlohmann::json to_json(const FixedPointRecord& rec);
nlohmann::json to_json(const SustainabilityReport& report);
nlohmann::json to_json(const SweepResult& result);

// --- CSV (17 significant digits, '\n' line endings) ----------------------

/// Header `t,E,V,S` for three columns, otherwise `t,x1..xN`.
std::string trajectory_to_csv(const Trajectory& traj);

std::string sweep_to_csv(const SweepResult& result);

/// Writes a file, creating parent directories; throws std::runtime_error on
/// I/O failure.
void write_file(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

// Parse helpers shared by the CLI config readers. `path` is the JSON path
// used in error messages.
const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                    const std::string& path);
double require_number(const nlohmann::json& j, const std::string& path);
std::vector<double> require_number_array(const nlohmann::json& j, std::size_t size,
                                         const std::string& path);  // size 0: any

}  // namespace evs
