#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "evs/io.hpp"
#include "helpers.hpp"

using namespace evs;
using evs::testing::baseline_spec;

TEST_CASE("model specs round-trip through JSON") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = evs::testing::random_template_spec(rng);
        const auto parsed = model_from_json(to_json(spec));
        CHECK(parsed == spec);
    }
    const auto spec = baseline_spec(0.1);
    const auto j = to_json(spec);
    CHECK(j.at("r").size() == 3);
    CHECK(j.at("A").size() == 3);
    CHECK(j.at("enforce_template").get<bool>());
}

TEST_CASE("model parsing names the missing or malformed field") {
    nlohmann::json j = {{"A", {{0, 0.7, 0.1}, {-0.3, 0, 0.1}, {0.1, 0.1, 0}}}};
    CHECK_THROWS_WITH_AS(model_from_json(j), "missing required field model.r", ConfigError);

    j["r"] = {0.1, "x", -0.05};
    try {
        model_from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("model.r[1]") != std::string::npos);
    }

    j["r"] = {0.1, 0.1, -0.05};  // violates the sign template
    try {
        model_from_json(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("model") != std::string::npos);
        CHECK(std::string(err.what()).find("r_E") != std::string::npos);
    }
}

TEST_CASE("integrator configs round-trip and validate") {
    IntegratorConfig cfg;
    cfg.method = Method::Rk45Adaptive;
    cfg.dt = 0.2;
    cfg.rel_tol = 1e-9;
    cfg.abs_tol = 1e-11;
    cfg.horizon = 42.0;
    cfg.extinction_threshold = 1e-5;
    cfg.record_stride = 3;
    cfg.log_domain = true;
    const auto parsed = integrator_from_json(to_json(cfg));
    CHECK(parsed.method == cfg.method);
    CHECK(parsed.dt == cfg.dt);
    CHECK(parsed.horizon == cfg.horizon);
    CHECK(parsed.record_stride == cfg.record_stride);
    CHECK(parsed.log_domain == cfg.log_domain);

    nlohmann::json bad = {{"dt", -0.5}};
    CHECK_THROWS_AS(integrator_from_json(bad), ConfigError);
    bad = {{"record_stride", 0}};
    CHECK_THROWS_AS(integrator_from_json(bad), ConfigError);
    bad = {{"method", "euler"}};
    CHECK_THROWS_AS(integrator_from_json(bad), ConfigError);
}

TEST_CASE("ndim specs round-trip through JSON") {
    const auto ensemble = random_ensemble({2, 1, 2}, 3, 15, 0.3);
    for (const auto& spec : ensemble) {
        const auto parsed = ndim_from_json(to_json(spec));
        CHECK(parsed.blocks == spec.blocks);
        CHECK(parsed.r == spec.r);
        CHECK(parsed.a == spec.a);
        CHECK(parsed.labels == spec.labels);
        CHECK(parsed.weights_e == spec.weights_e);
    }
    // Labels and weights default when omitted.
    nlohmann::json j = {{"blocks", {1, 1, 1}},
                        {"r", {-0.1, 0.1, -0.05}},
                        {"A", {{0, 0.7, 0.1}, {-0.3, 0, 0.1}, {0.1, 0.1, 0}}}};
    const auto spec = ndim_from_json(j);
    CHECK(spec.labels == std::vector<std::string>{"E1", "V1", "S1"});
    CHECK(spec.weights_e == std::vector<double>{1.0});
}

TEST_CASE("trajectory CSV uses the named header and full precision") {
    Trajectory traj;
    traj.dim = 3;
    traj.times = {0.0, 0.1};
    traj.states = {0.1, 0.2, 0.30000000000000004, 1.0 / 3.0, 0.5, 0.6};
    const std::string csv = trajectory_to_csv(traj);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t,E,V,S");
    std::getline(lines, line);
    CHECK(line == "0,0.10000000000000001,0.20000000000000001,0.30000000000000004");
    std::getline(lines, line);
    CHECK(line.find("0.33333333333333331") != std::string::npos);

    Trajectory wide;
    wide.dim = 4;
    wide.times = {0.0};
    wide.states = {1, 2, 3, 4};
    CHECK(trajectory_to_csv(wide).substr(0, 14) == "t,x1,x2,x3,x4\n");
}

TEST_CASE("sweep CSV carries stats, flags and the scenario label") {
    SweepResult result;
    result.target = ParamAddress::parse("a_12");
    SweepRow row;
    row.value = 0.7;
    row.final_state = {0.2, 0.3, 0.1};
    row.min = {0.1, 0.1, 0.05};
    row.max = {0.4, 0.5, 0.2};
    row.mean = {0.2, 0.25, 0.1};
    row.extinct = {false, false, true};
    row.scenario = Scenario::Viable;
    result.rows.push_back(row);
    const std::string csv = sweep_to_csv(result);
    std::istringstream lines(csv);
    std::string header, data;
    std::getline(lines, header);
    std::getline(lines, data);
    CHECK(header ==
          "param,E_final,V_final,S_final,E_min,E_max,E_mean,V_min,V_max,V_mean,S_min,S_max,"
          "S_mean,E_extinct,V_extinct,S_extinct,blowup,scenario");
    CHECK(data.find(",0,0,1,0,Viable") != std::string::npos);
}

TEST_CASE("sustainability reports serialize with all sections") {
    const auto report = classify_scenario(baseline_spec(0.1));
    const auto j = to_json(report);
    CHECK(j.at("scenario") == "Viable");
    CHECK(j.at("recovery").size() == 3);
    CHECK(j.at("boundary").size() == 3);
    CHECK(j.at("crosscheck").size() == 3);
    CHECK(j.at("persistence_horizon").is_null());
    CHECK(j.at("boundary").at(0).at("threshold").get<double>() == doctest::Approx(-0.175));
    CHECK(j.at("recovery").at(0).at("fixed_point").at("classification").is_string());
}

TEST_CASE("fixed point records serialize mask names and eigenvalue pairs") {
    const auto rec = subsystem_fixed_point(baseline_spec(0.1), complement_mask(Dim::S));
    const auto j = to_json(rec);
    CHECK(j.at("mask") == nlohmann::json::array({"E", "V"}));
    CHECK(j.at("classification") == "center-candidate");
    CHECK(j.at("eigenvalues").size() == 2);
    CHECK(j.at("eigenvalues").at(0).size() == 2);
}
