#include "fogplace/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "fogplace/baselines.hpp"
#include "fogplace/rng.hpp"

namespace fogplace {

TierParams default_tier_params(Tier tier) {
    // Published per-tier configuration; GB values are carried as MB (×1000).
    switch (tier) {
        case Tier::Cdc:
            return {{250e3, 250e3}, {32000, 32000}, {512000, 512000}, {1650, 1650},
                    {0.03, 0.03},   {1e-7, 1e-7},   {10000, 10000},   {1300, 1300},
                    {3e-6, 3e-6}};
        case Tier::IspGw:
            return {{65e3, 65e3},   {16000, 16000}, {250000, 250000}, {530, 530},
                    {0.035, 0.035}, {15e-6, 15e-6}, {1000, 2000},     {410, 410},
                    {3.5e-6, 3.5e-6}};
        case Tier::WifiGwBts:
            return {{10e3, 15e3},   {8000, 16000},  {128000, 128000}, {380, 410},
                    {0.04, 0.05},   {10e-6, 20e-6}, {400, 1000},      {1.80, 2.00},
                    {3e-6, 5e-6}};
        case Tier::Me:
            return {{2e3, 10e3},    {500, 2000},    {16000, 64000},   {2.50, 3.20},
                    {0.02, 0.04},   {20e-6, 30e-6}, {250, 400},       {1.00, 1.50},
                    {3e-6, 5e-6}};
    }
    throw InvalidConfig("unknown tier");
}

namespace {

double sample_range(const ParamRange& range, Rng& rng) {
    if (range.lo > range.hi) throw InvalidConfig("parameter range has lo > hi");
    return range.lo == range.hi ? range.lo : rng.uniform_real(range.lo, range.hi);
}

struct TierBlock {
    Tier tier;
    int first = 0;
    int count = 0;
};

} // namespace

Infrastructure build_infrastructure(const InfraConfig& config) {
    if (config.cdc < 0 || config.isp_gw < 0 || config.wifi_gw < 0 || config.me < 0)
        throw InvalidConfig("tier counts must be >= 0");
    const int y = config.cdc + config.isp_gw + config.wifi_gw + config.me;
    if (y < 1) throw InvalidConfig("infrastructure needs at least one device");

    const TierLatencies& lat = config.latencies;
    if (lat.me_iot < 0 || lat.me_wifi < 0 || lat.wifi_isp < 0 || lat.isp_cdc < 0)
        throw InvalidConfig("latencies must be >= 0");

    // Devices numbered top of the hierarchy first; the first ME (the one the
    // IoT source attaches to) becomes the source device.
    std::vector<TierBlock> blocks;
    int next_id = 0;
    for (auto [tier, count] : {std::pair{Tier::Cdc, config.cdc},
                               std::pair{Tier::IspGw, config.isp_gw},
                               std::pair{Tier::WifiGwBts, config.wifi_gw},
                               std::pair{Tier::Me, config.me}}) {
        if (count > 0) {
            blocks.push_back({tier, next_id, count});
            next_id += count;
        }
    }

    auto params_for = [&](Tier tier) -> const TierParams& {
        switch (tier) {
            case Tier::Cdc: return config.cdc_params;
            case Tier::IspGw: return config.isp_params;
            case Tier::WifiGwBts: return config.wifi_params;
            case Tier::Me: return config.me_params;
        }
        throw InvalidConfig("unknown tier");
    };
    auto uplink_latency = [&](Tier tier) {
        switch (tier) {
            case Tier::Cdc: return lat.isp_cdc; // used only for top-tier stars
            case Tier::IspGw: return lat.isp_cdc;
            case Tier::WifiGwBts: return lat.wifi_isp;
            case Tier::Me: return lat.me_wifi;
        }
        throw InvalidConfig("unknown tier");
    };

    Rng rng(config.seed);
    std::vector<Device> devices;
    std::vector<double> iface_bw;
    devices.reserve(y);
    iface_bw.reserve(y);
    for (const TierBlock& block : blocks) {
        const TierParams& tp = params_for(block.tier);
        for (int k = 0; k < block.count; ++k) {
            Device d;
            d.tier = block.tier;
            d.cpu = sample_range(tp.cpu, rng);
            d.mem = sample_range(tp.mem, rng);
            d.stor = sample_range(tp.stor, rng);
            d.p_compute = sample_range(tp.p_compute, rng);
            d.cp = sample_range(tp.cp, rng);
            d.cs = sample_range(tp.cs, rng);
            iface_bw.push_back(sample_range(tp.bw, rng));
            d.p_network = sample_range(tp.p_network, rng);
            d.cr = sample_range(tp.cr, rng);
            d.e_const = tp.e_const;
            d.p_static = tp.p_static;
            devices.push_back(d);
        }
    }

    // Tree edges: every device attaches round-robin to the next populated
    // tier above, the edge latency summing the skipped uplinks. Extra devices
    // in the topmost populated tier star onto its first device.
    struct Edge {
        int parent;
        double latency;
    };
    std::vector<Edge> up(y, Edge{-1, 0.0});
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const TierBlock& block = blocks[b];
        if (b == 0) {
            for (int k = 1; k < block.count; ++k)
                up[block.first + k] = {block.first, 2.0 * uplink_latency(block.tier)};
            continue;
        }
        const TierBlock& parent = blocks[b - 1];
        double hop = 0.0;
        for (int t = static_cast<int>(block.tier); t > static_cast<int>(parent.tier); --t)
            hop += uplink_latency(static_cast<Tier>(t));
        for (int k = 0; k < block.count; ++k)
            up[block.first + k] = {parent.first + k % parent.count, hop};
    }

    // All-pairs latency/bandwidth along the unique tree paths.
    std::vector<Link> links(static_cast<std::size_t>(y) * y, self_link());
    auto path_to_root = [&](int v) {
        std::vector<int> path{v};
        while (up[path.back()].parent >= 0) path.push_back(up[path.back()].parent);
        return path;
    };
    for (int a = 0; a < y; ++a) {
        const std::vector<int> pa = path_to_root(a);
        for (int b = a + 1; b < y; ++b) {
            std::vector<int> pb = path_to_root(b);
            // walk up from b until hitting a's path
            std::vector<int> depth_of(pa.size());
            double latency = 0.0;
            double bw = std::numeric_limits<double>::infinity();
            int meet = -1;
            for (int v : pb) {
                const auto it = std::find(pa.begin(), pa.end(), v);
                if (it != pa.end()) {
                    meet = v;
                    break;
                }
                latency += up[v].latency;
                bw = std::min(bw, iface_bw[v]);
            }
            if (meet < 0) throw InvalidConfig("disconnected topology");
            for (int v : pa) {
                if (v == meet) break;
                latency += up[v].latency;
                bw = std::min(bw, iface_bw[v]);
            }
            bw = std::min(bw, iface_bw[meet]);
            links[static_cast<std::size_t>(a) * y + b] = Link{bw, latency};
            links[static_cast<std::size_t>(b) * y + a] = Link{bw, latency};
        }
    }

    int source = 0;
    for (Tier want : {Tier::Me, Tier::WifiGwBts, Tier::IspGw, Tier::Cdc}) {
        const auto it = std::find_if(devices.begin(), devices.end(),
                                     [&](const Device& d) { return d.tier == want; });
        if (it != devices.end()) {
            source = static_cast<int>(it - devices.begin());
            break;
        }
    }
    return make_infrastructure(std::move(devices), std::move(links), source);
}

std::string_view case_study_name(CaseStudy kind) {
    switch (kind) {
        case CaseStudy::AugmentedReality: return "augmented_reality";
        case CaseStudy::InsulinPump: return "insulin_pump";
        case CaseStudy::MentalHealth: return "mental_health";
    }
    return "?";
}

CaseStudy case_study_from_name(std::string_view name) {
    if (name == "augmented_reality") return CaseStudy::AugmentedReality;
    if (name == "insulin_pump") return CaseStudy::InsulinPump;
    if (name == "mental_health") return CaseStudy::MentalHealth;
    throw InvalidConfig("unknown case study: " + std::string(name));
}

namespace {

struct CaseStudyProfile {
    int components;
    ParamRange instr;
    ParamRange mem;
    ParamRange stor;
};

CaseStudyProfile case_study_profile(CaseStudy kind) {
    switch (kind) {
        case CaseStudy::AugmentedReality: return {5, {100, 2000}, {10, 30}, {256, 512}};
        case CaseStudy::InsulinPump: return {8, {200, 2000}, {10, 60}, {256, 1024}};
        case CaseStudy::MentalHealth: return {7, {200, 2000}, {10, 50}, {256, 512}};
    }
    throw InvalidConfig("unknown case study");
}

} // namespace

Application build_case_study(const CaseStudyConfig& config) {
    const CaseStudyProfile profile = case_study_profile(config.kind);
    if (!config.allow_out_of_range &&
        (config.instr < profile.instr.lo || config.instr > profile.instr.hi))
        throw OutOfRange("instr " + std::to_string(config.instr) +
                         " MI outside the published workload range [" +
                         std::to_string(profile.instr.lo) + ", " +
                         std::to_string(profile.instr.hi) + "]");
    if (config.data < 0.0) throw InvalidConfig("data size must be >= 0");
    const int x = config.component_count.value_or(profile.components);
    if (x < 1) throw InvalidConfig("component count must be >= 1");
    if (config.cpu_req <= 0.0) throw InvalidConfig("cpu_req must be > 0");

    Rng rng(config.seed);
    ApplicationSpec spec;
    spec.name = case_study_name(config.kind);
    spec.components.reserve(x);
    spec.data_in.assign(x, config.data);
    for (int i = 0; i < x; ++i) {
        Component c;
        c.instr = config.instr;
        c.cpu_req = config.cpu_req;
        c.mem_req = sample_range(profile.mem, rng);
        c.stor_req = sample_range(profile.stor, rng);
        spec.components.push_back(c);
    }
    return build_application(std::move(spec));
}

std::string_view method_name(Method method) {
    switch (method) {
        case Method::Mapo: return "MAPO";
        case Method::Fspp: return "FSPP";
        case Method::EdgeWard: return "EW";
    }
    return "?";
}

Method method_from_name(std::string_view name) {
    if (name == "MAPO" || name == "mapo") return Method::Mapo;
    if (name == "FSPP" || name == "fspp") return Method::Fspp;
    if (name == "EW" || name == "ew" || name == "edge_ward" || name == "edge-ward")
        return Method::EdgeWard;
    throw InvalidConfig("unknown method: " + std::string(name));
}

std::string_view sweep_variable_name(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::DataSize: return "data_size";
        case SweepVariable::CpuWorkload: return "cpu_workload";
        case SweepVariable::Components: return "components";
        case SweepVariable::Evaluations: return "evaluations";
    }
    return "?";
}

SweepVariable sweep_variable_from_name(std::string_view name) {
    if (name == "data_size" || name == "data-size") return SweepVariable::DataSize;
    if (name == "cpu_workload" || name == "cpu-workload") return SweepVariable::CpuWorkload;
    if (name == "components") return SweepVariable::Components;
    if (name == "evaluations") return SweepVariable::Evaluations;
    throw InvalidConfig("unknown sweep variable: " + std::string(name));
}

std::vector<double> default_sweep_levels(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::DataSize: return {0.5, 1.0, 4.0};
        case SweepVariable::CpuWorkload: return {250, 500, 1000, 2000};
        case SweepVariable::Components: return {5, 10, 15, 20, 25, 30};
        case SweepVariable::Evaluations: return {1000, 2000, 5000, 7500, 10000, 12500, 14000};
    }
    return {};
}

namespace {

struct CellResult {
    ObjectiveVector objectives;
    bool ok = false;
    std::string error;
};

// One (level, repetition) scenario shared by all methods.
struct Task {
    int level_index;
    int repetition;
    std::uint64_t scenario_seed;
};

CellResult run_method(Method method, const Application& app, const Infrastructure& infra,
                      const Nsga2Params& nsga2, const SelectionStrategy& strategy,
                      const EvalOptions& options) {
    CellResult cell;
    try {
        switch (method) {
            case Method::Mapo: {
                const Nsga2Result run = nsga2_run(app, infra, nsga2, options);
                cell.objectives = select_placement(run.front, strategy).objectives;
                break;
            }
            case Method::Fspp:
                cell.objectives = fspp_place(app, infra, options).objectives;
                break;
            case Method::EdgeWard:
                cell.objectives = edge_ward_place(app, infra, options).objectives;
                break;
        }
        cell.ok = true;
    } catch (const Error& e) {
        cell.error = e.what();
    }
    return cell;
}

void apply_level(SweepVariable variable, double level, CaseStudyConfig& app_cfg,
                 Nsga2Params& nsga2) {
    switch (variable) {
        case SweepVariable::DataSize:
            app_cfg.data = level;
            break;
        case SweepVariable::CpuWorkload:
            app_cfg.instr = level;
            break;
        case SweepVariable::Components:
            app_cfg.component_count = static_cast<int>(level);
            break;
        case SweepVariable::Evaluations:
            nsga2.max_evaluations = static_cast<std::int64_t>(level);
            break;
    }
}

} // namespace

ResultTable run_sweep(const CaseStudyConfig& app_template, const InfraConfig& infra_template,
                      const SweepConfig& sweep, const EvalOptions& options) {
    std::vector<double> levels = sweep.levels.empty() ? default_sweep_levels(sweep.variable)
                                                      : sweep.levels;
    if (levels.empty()) throw InvalidConfig("sweep needs at least one level");
    if (sweep.repetitions < 1) throw InvalidConfig("repetitions must be >= 1");
    if (sweep.methods.empty()) throw InvalidConfig("sweep needs at least one method");

    const int num_levels = static_cast<int>(levels.size());
    const int reps = sweep.repetitions;
    const int num_methods = static_cast<int>(sweep.methods.size());

    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(num_levels) * reps);
    for (int li = 0; li < num_levels; ++li)
        for (int r = 0; r < reps; ++r)
            tasks.push_back({li, r, derive_seed(sweep.seed, 100 + static_cast<std::uint64_t>(li),
                                                static_cast<std::uint64_t>(r))});

    std::vector<CellResult> cells(tasks.size() * num_methods);
    auto run_task = [&](std::size_t t) {
        const Task& task = tasks[t];

        CaseStudyConfig app_cfg = app_template;
        Nsga2Params nsga2 = sweep.nsga2;
        apply_level(sweep.variable, levels[task.level_index], app_cfg, nsga2);
        app_cfg.seed = derive_seed(task.scenario_seed, 1);
        InfraConfig infra_cfg = infra_template;
        infra_cfg.seed = derive_seed(task.scenario_seed, 0);
        nsga2.seed = derive_seed(task.scenario_seed, 2);
        nsga2.record_hv_trace = false;

        const Application app = build_case_study(app_cfg);
        const Infrastructure infra = build_infrastructure(infra_cfg);
        for (int m = 0; m < num_methods; ++m)
            cells[t * num_methods + m] =
                run_method(sweep.methods[m], app, infra, nsga2, sweep.strategy, options);
    };

    const int threads = std::max(1, sweep.threads);
    if (threads == 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                    run_task(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    ResultTable table;
    for (int m = 0; m < num_methods; ++m) {
        for (int li = 0; li < num_levels; ++li) {
            ResultRow row;
            row.method = method_name(sweep.methods[m]);
            row.level = levels[li];
            double sum[3] = {0, 0, 0};
            double sumsq[3] = {0, 0, 0};
            for (int r = 0; r < reps; ++r) {
                const std::size_t t = static_cast<std::size_t>(li) * reps + r;
                const CellResult& cell = cells[t * num_methods + m];
                if (sweep.keep_raw) {
                    table.raw.push_back({row.method, row.level, r, tasks[t].scenario_seed,
                                         cell.objectives, cell.ok, cell.error});
                }
                if (!cell.ok) {
                    ++row.failures;
                    continue;
                }
                const auto v = cell.objectives.values();
                for (int k = 0; k < 3; ++k) {
                    sum[k] += v[k];
                    sumsq[k] += v[k] * v[k];
                }
                ++row.repetitions;
            }
            const int n = row.repetitions;
            auto mean = [&](int k) { return n > 0 ? sum[k] / n : 0.0; };
            auto stdev = [&](int k) {
                if (n < 2) return 0.0;
                const double var = (sumsq[k] - sum[k] * sum[k] / n) / (n - 1);
                return var > 0.0 ? std::sqrt(var) : 0.0;
            };
            row.mean_time = mean(0);
            row.std_time = stdev(0);
            row.mean_energy = mean(1);
            row.std_energy = stdev(1);
            row.mean_cost = mean(2);
            row.std_cost = stdev(2);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

ScalabilityResult scalability_study(const ScalabilityConfig& config, const EvalOptions& options) {
    ScalabilityResult result;

    // One infrastructure per curve keeps the variable under study isolated.
    auto run_point = [&](std::uint64_t curve, std::size_t index, int components,
                         std::int64_t evaluations) {
        InfraConfig infra_cfg = config.infra_template;
        infra_cfg.seed = derive_seed(config.seed, curve, 0);
        CaseStudyConfig app_cfg = config.app_template;
        app_cfg.component_count = components;
        app_cfg.seed = derive_seed(config.seed, curve, 1 + index);
        Nsga2Params nsga2 = config.nsga2;
        nsga2.max_evaluations = evaluations;
        nsga2.seed = derive_seed(config.seed, curve + 10, index);
        nsga2.record_hv_trace = false;

        const Infrastructure infra = build_infrastructure(infra_cfg);
        const Application app = build_case_study(app_cfg);
        const Nsga2Result run = nsga2_run(app, infra, nsga2, options);

        ScalabilityPoint point;
        point.front_size = static_cast<int>(run.front.size());
        point.evaluations_used = run.stats.evaluations_used;
        point.wall_time = run.stats.wall_time;
        // same convention as hv_trace: the run's feasible-objective envelope
        point.hypervolume =
            run.stats.any_feasible
                ? normalized_hypervolume(run.front.objective_vectors(), run.stats.objective_bounds)
                : 0.0;
        return point;
    };

    const int base_components = config.app_template.component_count.value_or(
        case_study_profile(config.app_template.kind).components);
    for (std::size_t i = 0; i < config.evaluations.size(); ++i) {
        ScalabilityPoint p = run_point(1, i, base_components, config.evaluations[i]);
        p.level = static_cast<double>(config.evaluations[i]);
        result.by_evaluations.push_back(p);
    }
    for (std::size_t i = 0; i < config.components.size(); ++i) {
        ScalabilityPoint p = run_point(2, i, config.components[i], config.nsga2.max_evaluations);
        p.level = static_cast<double>(config.components[i]);
        result.by_components.push_back(p);
    }
    return result;
}

} // namespace fogplace
