#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fogplace/baselines.hpp"
#include "fogplace/io.hpp"
#include "fogplace/optimizer.hpp"
#include "fogplace/rng.hpp"
#include "fogplace/scenarios.hpp"
#include "fogplace/version.hpp"

namespace fs = std::filesystem;
using namespace fogplace;

namespace {

constexpr const char* kNormalizationNote =
    "objectives min-max normalized over the union of compared fronts, reference 1.05^3";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    int threads = 0;
    std::string profile;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "scenario file (JSON)")->required();
    cmd->add_option("--seed", args.seed, "master seed override");
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--threads", args.threads, "worker cap (0 = machine parallelism)");
    cmd->add_option("--profile", args.profile, "ci or paper")
        ->check(CLI::IsMember({"ci", "paper"}));
}

std::string resolve_profile(const CommonArgs& args) {
    if (!args.profile.empty()) return args.profile;
    if (const char* env = std::getenv("FOGPLACE_PROFILE")) {
        const std::string value(env);
        if (value == "ci" || value == "paper") return value;
        if (!value.empty()) throw InvalidConfig("FOGPLACE_PROFILE must be ci or paper");
    }
    return "ci";
}

int resolve_threads(const CommonArgs& args) {
    if (args.threads > 0) return args.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct Emitter {
    fs::path dir;
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Emitter(const CommonArgs& args, const std::string& command, std::uint64_t seed) {
        dir = args.out;
        fs::create_directories(dir);
        manifest.command = command;
        manifest.config_path = args.config;
        manifest.seed = seed;
        manifest.engine_version = kVersion;
        manifest.normalization = kNormalizationNote;
        manifest.threads = resolve_threads(args);
        manifest.profile = resolve_profile(args);
    }

    void emit(const std::string& name, const std::string& content) {
        write_text_file(dir / name, content);
        manifest.outputs.push_back((dir / name).string());
    }

    void finish() {
        manifest.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(dir / "manifest.json", manifest);
    }
};

// Names the first violated constraint of the least-violating entry, for the
// exit-2 diagnostic.
std::string first_violation(const Scenario& scenario, const ParetoFront& front) {
    const ParetoFront::Entry* best = nullptr;
    for (const auto& e : front.entries)
        if (!best || e.objectives.violation < best->objectives.violation) best = &e;
    if (!best) return "no placement evaluated";
    const FeasibilityReport report =
        validate_placement(scenario.app, scenario.infra, best->placement, scenario.options);
    return report.per_component.empty() ? "unknown constraint" : report.per_component.front();
}

int cmd_optimize(const CommonArgs& args, std::optional<int> pop, std::optional<std::int64_t> evals,
                 std::optional<std::string> strategy_text) {
    Scenario scenario = load_scenario(args.config, args.seed);
    if (pop) scenario.nsga2.population = *pop;
    if (evals) scenario.nsga2.max_evaluations = *evals;
    SelectionStrategy strategy = scenario.strategy;
    if (strategy_text) {
        if (*strategy_text == "low-latency") {
            strategy = SelectionStrategy::low_latency();
        } else if (strategy_text->rfind("weighted:", 0) == 0) {
            std::array<double, 3> w{};
            if (std::sscanf(strategy_text->c_str(), "weighted:%lf,%lf,%lf", &w[0], &w[1], &w[2]) != 3)
                throw InvalidConfig("expected weighted:w1,w2,w3");
            strategy = SelectionStrategy::weighted_ideal(w);
        } else {
            throw InvalidConfig("unknown strategy: " + *strategy_text);
        }
    }

    Emitter emitter(args, "optimize", scenario.seed);
    const Nsga2Result result = nsga2_run(scenario.app, scenario.infra, scenario.nsga2, scenario.options);
    const bool feasible = !result.front.empty() && result.front.entries.front().objectives.feasible;
    if (!feasible) {
        std::cerr << "no feasible placement found; first violated constraint: "
                  << first_violation(scenario, result.front) << "\n";
        return kExitInfeasible;
    }
    emitter.emit("front.csv", front_csv(result.front));
    emitter.emit("hv_trace.csv", hv_trace_csv(result.stats));
    const ParetoFront::Entry selected = select_placement(result.front, strategy);
    emitter.emit("selected.json", selected_placement_json(selected, strategy).dump(2) + "\n");
    emitter.finish();
    std::cout << "front size " << result.front.size() << ", selected placement "
              << placement_to_string(selected.placement) << " (time "
              << selected.objectives.time << " s)\n";
    return kExitOk;
}

int cmd_baseline(const CommonArgs& args, const std::string& method) {
    Scenario scenario = load_scenario(args.config, args.seed);
    Emitter emitter(args, "baseline", scenario.seed);
    BaselineResult result;
    if (method_from_name(method) == Method::Fspp)
        result = fspp_place(scenario.app, scenario.infra, scenario.options);
    else
        result = edge_ward_place(scenario.app, scenario.infra, scenario.options);
    const std::string file = std::string("baseline_") +
                             (result.method == "FSPP" ? "fspp" : "edge_ward") + ".json";
    emitter.emit(file, baseline_result_json(result).dump(2) + "\n");
    emitter.finish();
    std::cout << result.method << " placed " << placement_to_string(result.placement) << " (time "
              << result.objectives.time << " s, cost " << result.objectives.cost << " ¢)\n";
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args, std::optional<std::string> variable,
              std::optional<int> repetitions, bool raw) {
    Scenario scenario = load_scenario(args.config, args.seed);
    if (!scenario.app_is_template)
        throw InvalidConfig("sweep needs an application.case_study block");
    SweepConfig sweep = scenario.sweep;
    if (variable) sweep.variable = sweep_variable_from_name(*variable);
    if (repetitions)
        sweep.repetitions = *repetitions;
    else if (sweep.repetitions == 1000 && resolve_profile(args) == "ci")
        sweep.repetitions = 100; // desk-scale default; the paper profile keeps 1000
    sweep.keep_raw = sweep.keep_raw || raw;
    sweep.threads = resolve_threads(args);

    Emitter emitter(args, "sweep", scenario.seed);
    const ResultTable table =
        run_sweep(scenario.app_template, scenario.infra_template, sweep, scenario.options);
    emitter.emit("sweep.csv", result_table_csv(table));
    if (sweep.keep_raw) emitter.emit("sweep_raw.csv", raw_rows_csv(table));
    emitter.finish();
    std::cout << "sweep wrote " << table.rows.size() << " rows\n";
    return kExitOk;
}

int cmd_scalability(const CommonArgs& args) {
    Scenario scenario = load_scenario(args.config, args.seed);
    if (!scenario.app_is_template)
        throw InvalidConfig("scalability needs an application.case_study block");
    Emitter emitter(args, "scalability", scenario.seed);
    const ScalabilityResult result = scalability_study(scenario.scalability, scenario.options);
    emitter.emit("scalability.csv", scalability_csv(result));
    // timings are wall-clock metadata: deliberately not a deterministic data file
    write_text_file(emitter.dir / "timings.csv", scalability_timings_csv(result));
    emitter.finish();
    std::cout << "scalability wrote " << (result.by_evaluations.size() + result.by_components.size())
              << " points\n";
    return kExitOk;
}

int cmd_oracle(const CommonArgs& args, std::uint64_t cap) {
    Scenario scenario = load_scenario(args.config, args.seed);
    Emitter emitter(args, "oracle", scenario.seed);
    const ParetoFront exact = brute_force_pareto(scenario.app, scenario.infra, cap, scenario.options);
    const Nsga2Result run = nsga2_run(scenario.app, scenario.infra, scenario.nsga2, scenario.options);

    std::vector<ObjectiveVector> all = exact.objective_vectors();
    const auto found = run.front.objective_vectors();
    all.insert(all.end(), found.begin(), found.end());
    const NormBounds bounds = NormBounds::covering(all);
    const double hv_exact = normalized_hypervolume(exact.objective_vectors(), bounds);
    const double hv_found = normalized_hypervolume(found, bounds);
    const double ratio = hv_exact > 0.0 ? hv_found / hv_exact : (hv_found == 0.0 ? 1.0 : 0.0);

    nlohmann::json out{{"hv_ratio", ratio},
                       {"hv_exact", hv_exact},
                       {"hv_nsga2", hv_found},
                       {"exact_front_size", exact.size()},
                       {"nsga2_front_size", run.front.size()}};
    emitter.emit("oracle.json", out.dump(2) + "\n");
    emitter.finish();
    std::cout << "hv_ratio=" << format_double(ratio) << " (exact front " << exact.size()
              << ", nsga2 front " << run.front.size() << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fog application placement engine"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonArgs optimize_args, baseline_args, sweep_args, scalability_args, oracle_args;

    auto* optimize = app.add_subcommand("optimize", "approximate the Pareto front and pick a placement");
    add_common(optimize, optimize_args);
    std::optional<int> pop;
    std::optional<std::int64_t> evals;
    std::optional<std::string> strategy;
    optimize->add_option("--pop", pop, "population size");
    optimize->add_option("--evals", evals, "evaluation budget");
    optimize->add_option("--strategy", strategy, "low-latency or weighted:w1,w2,w3");

    auto* baseline = app.add_subcommand("baseline", "run a comparison method");
    add_common(baseline, baseline_args);
    std::string method;
    baseline->add_option("--method", method, "fspp or edge-ward")
        ->required()
        ->check(CLI::IsMember({"fspp", "edge-ward"}));

    auto* sweep = app.add_subcommand("sweep", "replicate the experiment tables");
    add_common(sweep, sweep_args);
    std::optional<std::string> sweep_variable;
    std::optional<int> repetitions;
    bool raw = false;
    sweep->add_option("--variable", sweep_variable,
                      "data-size, cpu-workload, components or evaluations");
    sweep->add_option("--repetitions", repetitions, "repetitions per level");
    sweep->add_flag("--raw", raw, "also dump per-repetition rows");

    auto* scalability = app.add_subcommand("scalability", "hypervolume/runtime curves");
    add_common(scalability, scalability_args);

    auto* oracle = app.add_subcommand("oracle", "compare the optimizer to exhaustive enumeration");
    add_common(oracle, oracle_args);
    std::uint64_t cap = 1'000'000;
    oracle->add_option("--cap", cap, "enumeration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (optimize->parsed()) return cmd_optimize(optimize_args, pop, evals, strategy);
        if (baseline->parsed()) return cmd_baseline(baseline_args, method);
        if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_variable, repetitions, raw);
        if (scalability->parsed()) return cmd_scalability(scalability_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args, cap);
    } catch (const InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NoFeasiblePlacement& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NoIspGateway& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const TooLarge& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
