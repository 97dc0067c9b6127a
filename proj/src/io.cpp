#include "evs/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace evs {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json eigenvalues_json(const std::vector<std::complex<double>>& eig) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& ev : eig) out.push_back({ev.real(), ev.imag()});
    return out;
}

}  // namespace

const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                    const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("missing required field " + (path.empty() ? key : path + "." + key));
    return j.at(key);
}

double require_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + " must be a number");
    return j.get<double>();
}

std::vector<double> require_number_array(const nlohmann::json& j, std::size_t size,
                                         const std::string& path) {
    if (!j.is_array() || (size != 0 && j.size() != size))
        throw ConfigError(path + " must be an array" +
                          (size != 0 ? " of " + std::to_string(size) + " numbers" : ""));
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(require_number(j.at(k), path + "[" + std::to_string(k) + "]"));
    return out;
}

nlohmann::json to_json(const ModelSpec3& spec) {
    nlohmann::json j;
    j["r"] = spec.r();
    j["A"] = {spec.a()[0], spec.a()[1], spec.a()[2]};
    j["enforce_template"] = spec.enforce_template();
    return j;
}

ModelSpec3 model_from_json(const nlohmann::json& j, const std::string& path) {
    const auto rv = require_number_array(require_field(j, "r", path), 3, path + ".r");
    const auto& aj = require_field(j, "A", path);
    if (!aj.is_array() || aj.size() != 3) throw ConfigError(path + ".A must be a 3x3 array");
    Mat3 a;
    for (int i = 0; i < 3; ++i) {
        const auto row =
            require_number_array(aj.at(i), 3, path + ".A[" + std::to_string(i) + "]");
        std::copy(row.begin(), row.end(), a[i].begin());
    }
    bool enforce = true;
    if (j.contains("enforce_template")) {
        if (!j.at("enforce_template").is_boolean())
            throw ConfigError(path + ".enforce_template must be a boolean");
        enforce = j.at("enforce_template").get<bool>();
    }
    try {
        return ModelSpec3({rv[0], rv[1], rv[2]}, a, enforce);
    } catch (const ContractViolation& err) {
        throw ConfigError(path + ": " + err.what());
    }
}

nlohmann::json to_json(const IntegratorConfig& cfg) {
    return {{"method", to_string(cfg.method)},
            {"dt", cfg.dt},
            {"rel_tol", cfg.rel_tol},
            {"abs_tol", cfg.abs_tol},
            {"horizon", cfg.horizon},
            {"extinction_threshold", cfg.extinction_threshold},
            {"record_stride", cfg.record_stride},
            {"log_domain", cfg.log_domain}};
}

IntegratorConfig integrator_from_json(const nlohmann::json& j, const std::string& path) {
    IntegratorConfig cfg;
    if (!j.is_object()) throw ConfigError(path + " must be an object");
    if (j.contains("method")) {
        try {
            cfg.method = method_from_string(j.at("method").get<std::string>());
        } catch (const std::exception&) {
            throw ConfigError(path + ".method must be \"rk4-fixed\" or \"rk45-adaptive\"");
        }
    }
    const auto number = [&](const char* key, double fallback) {
        return j.contains(key) ? require_number(j.at(key), path + "." + key) : fallback;
    };
    cfg.dt = number("dt", cfg.dt);
    cfg.rel_tol = number("rel_tol", cfg.rel_tol);
    cfg.abs_tol = number("abs_tol", cfg.abs_tol);
    cfg.horizon = number("horizon", cfg.horizon);
    cfg.extinction_threshold = number("extinction_threshold", cfg.extinction_threshold);
    if (j.contains("record_stride")) {
        if (!j.at("record_stride").is_number_unsigned() || j.at("record_stride").get<std::uint64_t>() == 0)
            throw ConfigError(path + ".record_stride must be a positive integer");
        cfg.record_stride = j.at("record_stride").get<std::size_t>();
    }
    if (j.contains("log_domain")) {
        if (!j.at("log_domain").is_boolean())
            throw ConfigError(path + ".log_domain must be a boolean");
        cfg.log_domain = j.at("log_domain").get<bool>();
    }
    try {
        cfg.validate();
    } catch (const ContractViolation& err) {
        throw ConfigError(path + ": " + err.what());
    }
    return cfg;
}

nlohmann::json to_json(const NDimSpec& spec) {
    nlohmann::json a = nlohmann::json::array();
    const std::size_t n = spec.size();
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(spec.a_at(i, j));
        a.push_back(std::move(row));
    }
    return {{"blocks", spec.blocks},
            {"labels", spec.labels},
            {"r", spec.r},
            {"A", std::move(a)},
            {"weights", {{"E", spec.weights_e}, {"V", spec.weights_v}, {"S", spec.weights_s}}}};
}

NDimSpec ndim_from_json(const nlohmann::json& j, const std::string& path) {
    NDimSpec spec;
    const auto blocks = require_number_array(require_field(j, "blocks", path), 3, path + ".blocks");
    for (int b = 0; b < 3; ++b) {
        if (blocks[b] < 1.0 || blocks[b] != std::floor(blocks[b]))
            throw ConfigError(path + ".blocks must be positive integers");
        spec.blocks[b] = static_cast<std::size_t>(blocks[b]);
    }
    const std::size_t n = spec.size();
    spec.r = require_number_array(require_field(j, "r", path), n, path + ".r");
    const auto& aj = require_field(j, "A", path);
    if (!aj.is_array() || aj.size() != n)
        throw ConfigError(path + ".A must be a " + std::to_string(n) + "x" + std::to_string(n) +
                          " array");
    spec.a.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = require_number_array(aj.at(i), n, path + ".A[" + std::to_string(i) + "]");
        spec.a.insert(spec.a.end(), row.begin(), row.end());
    }
    if (j.contains("labels")) {
        const auto& lj = j.at("labels");
        if (!lj.is_array() || lj.size() != n)
            throw ConfigError(path + ".labels must be an array of " + std::to_string(n) +
                              " strings");
        for (const auto& item : lj) {
            if (!item.is_string()) throw ConfigError(path + ".labels must contain strings");
            spec.labels.push_back(item.get<std::string>());
        }
    } else {
        spec.labels = default_labels(spec.blocks);
    }
    if (j.contains("weights")) {
        const auto& wj = j.at("weights");
        spec.weights_e =
            require_number_array(require_field(wj, "E", path + ".weights"), spec.blocks[0],
                                 path + ".weights.E");
        spec.weights_v =
            require_number_array(require_field(wj, "V", path + ".weights"), spec.blocks[1],
                                 path + ".weights.V");
        spec.weights_s =
            require_number_array(require_field(wj, "S", path + ".weights"), spec.blocks[2],
                                 path + ".weights.S");
    } else {
        spec.weights_e.assign(spec.blocks[0], 1.0);
        spec.weights_v.assign(spec.blocks[1], 1.0);
        spec.weights_s.assign(spec.blocks[2], 1.0);
    }
    try {
        spec.validate();
    } catch (const ContractViolation& err) {
        throw ConfigError(path + ": " + err.what());
    }
    return spec;
}

nlohmann::json to_json(const FixedPointRecord& rec) {
    nlohmann::json mask = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        if (rec.mask[i]) mask.push_back(dim_name(static_cast<Dim>(i)));
    return {{"location", rec.location},
            {"mask", std::move(mask)},
            {"in_positive_orthant", rec.in_positive_orthant},
            {"trace", rec.trace},
            {"determinant", rec.determinant},
            {"eigenvalues", eigenvalues_json(rec.eigenvalues)},
            {"classification", to_string(rec.classification)}};
}

nlohmann::json to_json(const SustainabilityReport& report) {
    nlohmann::json recovery = nlohmann::json::array();
    for (const auto& rec : report.recovery) {
        nlohmann::json entry = {{"dimension", dim_name(rec.dimension)},
                                {"exists", rec.exists},
                                {"value", rec.value},
                                {"sign", rec.sign},
                                {"fixed_point_positive", rec.fixed_point_positive}};
        if (rec.exists) entry["fixed_point"] = to_json(rec.fixed_point);
        recovery.push_back(std::move(entry));
    }
    nlohmann::json boundary = nlohmann::json::array();
    for (const auto& bound : report.boundary) {
        nlohmann::json entry = {{"parameter", bound.parameter},
                                {"recovery_dimension", dim_name(bound.recovery_dimension)},
                                {"degenerate", bound.degenerate}};
        if (!bound.degenerate) {
            entry["branch"] = bound.branch;
            entry["relation"] = bound.relation;
            entry["threshold"] = bound.threshold;
            entry["satisfied"] = bound.satisfied;
        }
        boundary.push_back(std::move(entry));
    }
    nlohmann::json crosscheck = nlohmann::json::array();
    for (const auto& entry : report.crosscheck) {
        crosscheck.push_back({{"dimension", dim_name(entry.dimension)},
                              {"numeric_sign", entry.numeric_sign},
                              {"boundary_satisfied", entry.boundary_satisfied},
                              {"comparable", entry.comparable},
                              {"agrees", entry.agrees}});
    }
    nlohmann::json j = {{"recovery", std::move(recovery)},
                        {"scenario", to_string(report.scenario)},
                        {"boundary", std::move(boundary)},
                        {"crosscheck", std::move(crosscheck)}};
    j["persistence_horizon"] =
        report.persistence_horizon ? nlohmann::json(*report.persistence_horizon)
                                   : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const SweepResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"value", row.value},
                        {"final_state", row.final_state},
                        {"min", row.min},
                        {"max", row.max},
                        {"mean", row.mean},
                        {"extinct", row.extinct},
                        {"blowup", row.blowup},
                        {"scenario", to_string(row.scenario)}});
    }
    return {{"target", result.target.str()},
            {"summary_window", result.summary_window},
            {"rows", std::move(rows)}};
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out;
    out.reserve(traj.rows() * (traj.dim + 1) * 20 + 16);
    if (traj.dim == 3) {
        out += "t,E,V,S\n";
    } else {
        out += "t";
        for (std::size_t d = 1; d <= traj.dim; ++d) out += ",x" + std::to_string(d);
        out += "\n";
    }
    for (std::size_t i = 0; i < traj.rows(); ++i) {
        out += fmt17(traj.times[i]);
        for (double v : traj.state(i)) {
            out += ',';
            out += fmt17(v);
        }
        out += '\n';
    }
    return out;
}

std::string sweep_to_csv(const SweepResult& result) {
    std::string out = "param";
    for (const char* d : {"E", "V", "S"}) out += std::string(",") + d + "_final";
    for (const char* d : {"E", "V", "S"})
        out += std::string(",") + d + "_min," + d + "_max," + d + "_mean";
    for (const char* d : {"E", "V", "S"}) out += std::string(",") + d + "_extinct";
    out += ",blowup,scenario\n";
    for (const auto& row : result.rows) {
        out += fmt17(row.value);
        for (double v : row.final_state) out += "," + fmt17(v);
        for (int d = 0; d < 3; ++d)
            out += "," + fmt17(row.min[d]) + "," + fmt17(row.max[d]) + "," + fmt17(row.mean[d]);
        for (bool flag : row.extinct) out += flag ? ",1" : ",0";
        out += row.blowup ? ",1," : ",0,";
        out += to_string(row.scenario);
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream stream(p, std::ios::binary);
    if (!stream) throw std::runtime_error("cannot open for writing: " + path);
    stream.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!stream) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

}  // namespace evs
