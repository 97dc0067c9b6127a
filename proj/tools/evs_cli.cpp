// Batch CLI for the EVS engine: simulation, classification, parameter
// sweeps and the N-dimensional generalization, driven by JSON configs.
//
// Exit codes: 0 success; 2 bad config (diagnostic names the field);
// 3 numerical blowup (partial CSV flushed). `classify` encodes the scenario
// instead: 0 Sustainable, 10 Bearable, 11 Equitable, 12 Viable,
// 13 Indeterminate.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evs/io.hpp"
#include "evs/svg.hpp"

namespace {

using nlohmann::json;

struct Args {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed = 0;
    bool quiet = false;
};

json load_config(const std::string& path) {
    std::string text;
    try {
        text = evs::read_file(path);
    } catch (const std::exception& err) {
        throw evs::ConfigError(err.what());
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw evs::ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
}

std::string resolve_out_dir(const json& cfg, const Args& args) {
    if (!args.out_override.empty()) return args.out_override;
    if (cfg.contains("output_dir")) {
        if (!cfg.at("output_dir").is_string())
            throw evs::ConfigError("output_dir must be a string");
        return cfg.at("output_dir").get<std::string>();
    }
    return ".";
}

std::vector<std::string> parse_outputs(const json& cfg, const std::vector<std::string>& allowed,
                                       const std::vector<std::string>& fallback) {
    if (!cfg.contains("outputs")) return fallback;
    const json& j = cfg.at("outputs");
    if (!j.is_array() || j.empty())
        throw evs::ConfigError("outputs must be a non-empty array of strings");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j.at(k).is_string())
            throw evs::ConfigError("outputs[" + std::to_string(k) + "] must be a string");
        const auto name = j.at(k).get<std::string>();
        bool ok = false;
        for (const auto& candidate : allowed) ok = ok || candidate == name;
        if (!ok)
            throw evs::ConfigError("outputs[" + std::to_string(k) + "]: unknown artifact \"" +
                                   name + "\"");
        out.push_back(name);
    }
    return out;
}

bool wants(const std::vector<std::string>& outputs, const std::string& name) {
    for (const auto& entry : outputs)
        if (entry == name) return true;
    return false;
}

evs::Vec3 parse_x0_3d(const json& cfg) {
    const auto values =
        evs::require_number_array(evs::require_field(cfg, "x0", ""), 3, "x0");
    return {values[0], values[1], values[2]};
}

std::filesystem::path join(const std::string& dir, const char* name) {
    return std::filesystem::path(dir) / name;
}

json event_json(const evs::Trajectory& traj) {
    json events = json::array();
    for (const auto& ev : traj.events) {
        events.push_back({{"time", ev.time},
                          {"dimension", ev.dimension < 3
                                            ? evs::dim_name(static_cast<evs::Dim>(ev.dimension))
                                            : std::to_string(ev.dimension + 1)},
                          {"kind", "extinction-crossed"}});
    }
    return events;
}

// Series split helper for timeseries charts.
evs::Series column_series(const evs::Trajectory& traj, std::size_t col,
                          const std::string& color, const std::string& label) {
    evs::Series s;
    s.color = color;
    s.label = label;
    s.x = traj.times;
    s.y.reserve(traj.rows());
    for (std::size_t i = 0; i < traj.rows(); ++i) s.y.push_back(traj.state(i)[col]);
    return s;
}

std::string phase_svg(const evs::Trajectory& traj) {
    std::vector<double> e, v, s;
    e.reserve(traj.rows());
    v.reserve(traj.rows());
    s.reserve(traj.rows());
    for (std::size_t i = 0; i < traj.rows(); ++i) {
        e.push_back(traj.state(i)[0]);
        v.push_back(traj.state(i)[1]);
        s.push_back(traj.state(i)[2]);
    }
    const auto plane = [](const std::vector<double>& x, const std::vector<double>& y,
                          const char* title, const char* xl, const char* yl) {
        evs::Chart chart;
        chart.title = title;
        chart.x_label = xl;
        chart.y_label = yl;
        chart.series.push_back({x, y, "#1f6fb2", ""});
        return chart;
    };
    const std::vector<evs::Chart> charts{
        plane(e, v, "EV projection", "E", "V"),
        plane(e, s, "ES projection", "E", "S"),
        plane(v, s, "VS projection", "V", "S"),
        evs::projection_chart_3d(e, v, s, "EVS trajectory"),
    };
    return evs::render_panel(charts, 2);
}

std::string timeseries_svg(const evs::Trajectory& traj) {
    const char* colors[3] = {"#1f6fb2", "#2e8540", "#c0392b"};
    const char* names[3] = {"E", "V", "S"};
    std::vector<evs::Chart> charts;
    for (int d = 0; d < 3; ++d) {
        evs::Chart chart;
        chart.title = std::string(names[d]) + " over time";
        chart.x_label = "t";
        chart.y_label = names[d];
        chart.series.push_back(column_series(traj, d, colors[d], ""));
        charts.push_back(std::move(chart));
    }
    return evs::render_panel(charts, 1, 840, 260);
}

std::string sweep_svg(const evs::SweepResult& result) {
    const char* colors[3] = {"#1f6fb2", "#2e8540", "#c0392b"};
    const char* names[3] = {"E", "V", "S"};
    std::vector<double> grid;
    for (const auto& row : result.rows) grid.push_back(row.value);

    std::vector<evs::Chart> charts;
    for (int d = 0; d < 3; ++d) {
        evs::Chart chart;
        chart.title = std::string(names[d]) + " mean vs " + result.target.str();
        chart.x_label = result.target.str();
        chart.y_label = std::string(names[d]) + " mean";
        chart.series.push_back({grid, result.column_mean(static_cast<evs::Dim>(d)), colors[d], ""});
        charts.push_back(std::move(chart));
    }
    evs::Chart finals;
    finals.title = std::string("final state vs ") + result.target.str();
    finals.x_label = result.target.str();
    finals.y_label = "final value";
    for (int d = 0; d < 3; ++d)
        finals.series.push_back(
            {grid, result.column_final(static_cast<evs::Dim>(d)), colors[d], names[d]});
    charts.push_back(std::move(finals));
    return evs::render_panel(charts, 2);
}

int run_simulate(const Args& args) {
    const json cfg = load_config(args.config_path);
    const auto spec = evs::model_from_json(evs::require_field(cfg, "model", ""), "model");
    const evs::Vec3 x0 = parse_x0_3d(cfg);
    evs::IntegratorConfig integrator;
    if (cfg.contains("integrator"))
        integrator = evs::integrator_from_json(cfg.at("integrator"));
    const auto outputs =
        parse_outputs(cfg, {"trajectory-csv", "report-json", "phase-svg", "timeseries-svg"},
                      {"trajectory-csv", "report-json"});
    const std::string out_dir = resolve_out_dir(cfg, args);

    evs::Trajectory traj;
    bool blew_up = false;
    double blowup_time = 0.0;
    try {
        traj = evs::simulate(spec, x0, integrator);
    } catch (const evs::NumericalBlowup& err) {
        blew_up = true;
        blowup_time = err.time;
        traj = err.partial;
    }

    if (wants(outputs, "trajectory-csv"))
        evs::write_file(join(out_dir, "trajectory.csv").string(), trajectory_to_csv(traj));
    if (blew_up) {
        std::cerr << "numerical blowup at t = " << blowup_time << "; partial trajectory flushed\n";
        return 3;
    }

    if (wants(outputs, "report-json")) {
        json report;
        report["final_state"] = {traj.final_state()[0], traj.final_state()[1],
                                 traj.final_state()[2]};
        report["events"] = event_json(traj);
        const auto t1 = evs::persistence_check(traj, integrator.extinction_threshold);
        report["persistence_horizon"] = t1 ? json(*t1) : json(nullptr);
        report["model"] = evs::to_json(spec);
        report["integrator"] = evs::to_json(integrator);
        evs::write_file(join(out_dir, "report.json").string(), report.dump(2) + "\n");
    }
    if (wants(outputs, "phase-svg"))
        evs::write_file(join(out_dir, "phase.svg").string(), phase_svg(traj));
    if (wants(outputs, "timeseries-svg"))
        evs::write_file(join(out_dir, "timeseries.svg").string(), timeseries_svg(traj));

    if (!args.quiet) {
        std::printf("final state: (%.6g, %.6g, %.6g)  events: %zu\n", traj.final_state()[0],
                    traj.final_state()[1], traj.final_state()[2], traj.events.size());
    }
    return 0;
}

int run_classify(const Args& args) {
    const json cfg = load_config(args.config_path);
    const auto spec = evs::model_from_json(evs::require_field(cfg, "model", ""), "model");
    auto report = evs::classify_scenario(spec);

    // A trajectory check is optional: run it when the config provides x0.
    if (cfg.contains("x0")) {
        const evs::Vec3 x0 = parse_x0_3d(cfg);
        evs::IntegratorConfig integrator;
        if (cfg.contains("integrator"))
            integrator = evs::integrator_from_json(cfg.at("integrator"));
        try {
            const auto traj = evs::simulate(spec, x0, integrator);
            report.persistence_horizon =
                evs::persistence_check(traj, integrator.extinction_threshold);
        } catch (const evs::NumericalBlowup&) {
            report.persistence_horizon = std::nullopt;
        }
    }

    const json out = evs::to_json(report);
    if (!args.quiet) std::cout << out.dump(2) << "\n";
    if (cfg.contains("output_dir") || !args.out_override.empty()) {
        const std::string out_dir = resolve_out_dir(cfg, args);
        evs::write_file(join(out_dir, "report.json").string(), out.dump(2) + "\n");
    }
    return evs::scenario_exit_code(report.scenario);
}

int run_sweep(const Args& args) {
    const json cfg = load_config(args.config_path);
    evs::SweepPlan plan{.target = {},
                        .grid = {},
                        .base = evs::model_from_json(
                            evs::require_field(cfg, "base_spec", ""), "base_spec"),
                        .x0 = parse_x0_3d(cfg),
                        .integrator = {},
                        .summary_window = 0.5};
    const json& tj = evs::require_field(cfg, "target", "");
    if (!tj.is_string()) throw evs::ConfigError("target must be a string");
    try {
        plan.target = evs::ParamAddress::parse(tj.get<std::string>());
    } catch (const evs::ContractViolation& err) {
        throw evs::ConfigError(std::string("target: ") + err.what());
    }
    const json& gj = evs::require_field(cfg, "grid", "");
    if (gj.is_array()) {
        plan.grid = evs::require_number_array(gj, 0, "grid");
    } else if (gj.is_object()) {
        const double start = evs::require_number(evs::require_field(gj, "start", "grid"), "grid.start");
        const double stop = evs::require_number(evs::require_field(gj, "stop", "grid"), "grid.stop");
        const double count = evs::require_number(evs::require_field(gj, "count", "grid"), "grid.count");
        if (count < 1.0) throw evs::ConfigError("grid.count must be >= 1");
        plan.grid = evs::linspace(start, stop, static_cast<std::size_t>(count));
    } else {
        throw evs::ConfigError("grid must be an array or a {start, stop, count} object");
    }
    if (cfg.contains("integrator"))
        plan.integrator = evs::integrator_from_json(cfg.at("integrator"));
    if (cfg.contains("summary_window"))
        plan.summary_window = evs::require_number(cfg.at("summary_window"), "summary_window");
    try {
        plan.validate();
    } catch (const evs::ContractViolation& err) {
        throw evs::ConfigError(err.what());
    }

    const auto outputs = parse_outputs(cfg, {"sweep-csv", "sweep-svg", "report-json"},
                                       {"sweep-csv", "sweep-svg"});
    const std::string out_dir = resolve_out_dir(cfg, args);

    const auto result = evs::run_sweep(plan);
    if (wants(outputs, "sweep-csv"))
        evs::write_file(join(out_dir, "sweep.csv").string(), sweep_to_csv(result));
    if (wants(outputs, "sweep-svg"))
        evs::write_file(join(out_dir, "sweep.svg").string(), sweep_svg(result));
    if (wants(outputs, "report-json"))
        evs::write_file(join(out_dir, "sweep.json").string(), evs::to_json(result).dump(2) + "\n");

    const auto verdict = evs::shape_test(result.column_mean(evs::Dim::V));
    if (!args.quiet) std::printf("V mean-over-window shape: %s\n", evs::to_string(verdict));
    return 0;
}

int run_ndim(const Args& args) {
    const json cfg = load_config(args.config_path);
    evs::IntegratorConfig integrator;
    if (cfg.contains("integrator"))
        integrator = evs::integrator_from_json(cfg.at("integrator"));
    const std::string out_dir = resolve_out_dir(cfg, args);

    if (cfg.contains("ensemble")) {
        const json& ej = cfg.at("ensemble");
        const auto blocks_raw = evs::require_number_array(
            evs::require_field(ej, "blocks", "ensemble"), 3, "ensemble.blocks");
        std::array<std::size_t, 3> blocks{};
        for (int b = 0; b < 3; ++b) {
            if (blocks_raw[b] < 1.0)
                throw evs::ConfigError("ensemble.blocks must be positive integers");
            blocks[b] = static_cast<std::size_t>(blocks_raw[b]);
        }
        const double count =
            evs::require_number(evs::require_field(ej, "count", "ensemble"), "ensemble.count");
        const double scale = evs::require_number(
            evs::require_field(ej, "coupling_scale", "ensemble"), "ensemble.coupling_scale");
        double x0_value = 0.1;
        if (ej.contains("x0_value"))
            x0_value = evs::require_number(ej.at("x0_value"), "ensemble.x0_value");
        if (!(x0_value > 0.0)) throw evs::ConfigError("ensemble.x0_value must be > 0");

        std::vector<evs::NDimSpec> ensemble;
        try {
            ensemble = evs::random_ensemble(blocks, static_cast<std::size_t>(count), args.seed,
                                            scale);
        } catch (const evs::ContractViolation& err) {
            throw evs::ConfigError(std::string("ensemble: ") + err.what());
        }

        json runs = json::array();
        std::size_t persisting = 0;
        for (std::size_t k = 0; k < ensemble.size(); ++k) {
            const auto& spec = ensemble[k];
            const std::vector<double> x0(spec.size(), x0_value);
            json entry{{"index", k}};
            try {
                const auto traj = evs::simulate_n(spec, x0, integrator);
                const auto agg = evs::aggregate_trajectory(spec, traj);
                const auto t1 =
                    evs::persistence_check(agg, integrator.extinction_threshold);
                if (t1) ++persisting;
                entry["persistence_horizon"] = t1 ? json(*t1) : json(nullptr);
                entry["final_aggregate"] = {agg.final_state()[0], agg.final_state()[1],
                                            agg.final_state()[2]};
                entry["blowup"] = false;
            } catch (const evs::NumericalBlowup& err) {
                entry["blowup"] = true;
                entry["blowup_time"] = err.time;
                entry["persistence_horizon"] = nullptr;
            }
            runs.push_back(std::move(entry));
        }
        json report{{"count", ensemble.size()},
                    {"seed", args.seed},
                    {"blocks", blocks},
                    {"coupling_scale", scale},
                    {"persisting_fraction",
                     ensemble.empty() ? 0.0
                                      : static_cast<double>(persisting) /
                                            static_cast<double>(ensemble.size())},
                    {"runs", std::move(runs)}};
        evs::write_file(join(out_dir, "ensemble_report.json").string(), report.dump(2) + "\n");
        if (!args.quiet)
            std::printf("ensemble: %zu runs, persisting fraction %.3f\n", ensemble.size(),
                        report.at("persisting_fraction").get<double>());
        return 0;
    }

    const auto spec = evs::ndim_from_json(evs::require_field(cfg, "model", ""), "model");
    const auto x0 = evs::require_number_array(evs::require_field(cfg, "x0", ""), spec.size(), "x0");
    const auto outputs = parse_outputs(
        cfg, {"trajectory-csv", "aggregate-csv", "report-json", "timeseries-svg"},
        {"trajectory-csv", "aggregate-csv"});

    evs::Trajectory traj;
    bool blew_up = false;
    double blowup_time = 0.0;
    try {
        traj = evs::simulate_n(spec, x0, integrator);
    } catch (const evs::NumericalBlowup& err) {
        blew_up = true;
        blowup_time = err.time;
        traj = err.partial;
    }
    if (wants(outputs, "trajectory-csv"))
        evs::write_file(join(out_dir, "trajectory.csv").string(), trajectory_to_csv(traj));
    const auto agg = evs::aggregate_trajectory(spec, traj);
    if (wants(outputs, "aggregate-csv"))
        evs::write_file(join(out_dir, "aggregate.csv").string(), trajectory_to_csv(agg));
    if (blew_up) {
        std::cerr << "numerical blowup at t = " << blowup_time << "; partial trajectory flushed\n";
        return 3;
    }
    if (wants(outputs, "report-json")) {
        json report;
        report["final_state"] = traj.states.empty()
                                    ? json::array()
                                    : json(std::vector<double>(traj.final_state().begin(),
                                                               traj.final_state().end()));
        report["final_aggregate"] = {agg.final_state()[0], agg.final_state()[1],
                                     agg.final_state()[2]};
        const auto t1 = evs::persistence_check(agg, integrator.extinction_threshold);
        report["persistence_horizon"] = t1 ? json(*t1) : json(nullptr);
        report["events"] = event_json(traj);
        report["model"] = evs::to_json(spec);
        evs::write_file(join(out_dir, "report.json").string(), report.dump(2) + "\n");
    }
    if (wants(outputs, "timeseries-svg"))
        evs::write_file(join(out_dir, "timeseries.svg").string(), timeseries_svg(agg));
    if (!args.quiet)
        std::printf("final aggregate: (%.6g, %.6g, %.6g)  events: %zu\n", agg.final_state()[0],
                    agg.final_state()[1], agg.final_state()[2], traj.events.size());
    return 0;
}

void add_common(CLI::App* cmd, Args& args) {
    cmd->add_option("--config", args.config_path, "JSON config path")->required();
    cmd->add_option("--out", args.out_override, "output directory (overrides the config)");
    cmd->add_option("--seed", args.seed, "ensemble seed");
    cmd->add_flag("--quiet", args.quiet, "suppress the summary line");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EVS interaction-model engine"};
    app.require_subcommand(1);
    Args args;

    int (*handler)(const Args&) = nullptr;
    auto* simulate = app.add_subcommand("simulate", "integrate a 3D model and emit artifacts");
    add_common(simulate, args);
    simulate->callback([&] { handler = run_simulate; });
    auto* classify = app.add_subcommand("classify", "scenario classification report");
    add_common(classify, args);
    classify->callback([&] { handler = run_classify; });
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with summary statistics");
    add_common(sweep, args);
    sweep->callback([&] { handler = run_sweep; });
    auto* ndim = app.add_subcommand("ndim", "N-dimensional runs and ensembles");
    add_common(ndim, args);
    ndim->callback([&] { handler = run_ndim; });

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(args);
    } catch (const evs::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const evs::ContractViolation& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
