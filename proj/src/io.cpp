#include "fogplace/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fogplace/rng.hpp"
#include "fogplace/version.hpp"

namespace fogplace {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

double require_number(const json& node, const char* key) {
    if (!node.contains(key) || !node[key].is_number())
        throw InvalidConfig(std::string("missing or non-numeric field: ") + key);
    return node[key].get<double>();
}

double number_or(const json& node, const char* key, double fallback) {
    if (!node.contains(key)) return fallback;
    if (!node[key].is_number()) throw InvalidConfig(std::string("non-numeric field: ") + key);
    return node[key].get<double>();
}

} // namespace

json encode_application(const Application& app) {
    json components = json::array();
    for (const Component& c : app.components) {
        components.push_back({{"instr_mi", c.instr},
                              {"cpu_req_mips", c.cpu_req},
                              {"mem_req_mb", c.mem_req},
                              {"stor_req_mb", c.stor_req}});
    }
    return json{{"name", app.name}, {"components", components}, {"data_in_mbit", app.data_in}};
}

Application decode_application(const json& node) {
    ApplicationSpec spec;
    spec.name = node.value("name", std::string{});
    if (!node.contains("components") || !node["components"].is_array())
        throw InvalidConfig("application.components must be an array");
    for (const json& c : node["components"]) {
        Component comp;
        comp.instr = require_number(c, "instr_mi");
        comp.cpu_req = require_number(c, "cpu_req_mips");
        comp.mem_req = require_number(c, "mem_req_mb");
        comp.stor_req = require_number(c, "stor_req_mb");
        spec.components.push_back(comp);
    }
    if (!node.contains("data_in_mbit") || !node["data_in_mbit"].is_array())
        throw InvalidConfig("application.data_in_mbit must be an array");
    for (const json& d : node["data_in_mbit"]) spec.data_in.push_back(d.get<double>());
    return build_application(std::move(spec));
}

json encode_infrastructure(const Infrastructure& infra) {
    json devices = json::array();
    for (const Device& d : infra.devices) {
        devices.push_back({{"tier", std::string(tier_name(d.tier))},
                           {"cpu_mips", d.cpu},
                           {"mem_mb", d.mem},
                           {"stor_mb", d.stor},
                           {"p_compute_w", d.p_compute},
                           {"p_network_w", d.p_network},
                           {"e_const_j", d.e_const},
                           {"p_static_w", d.p_static},
                           {"cp_cents_per_s", d.cp},
                           {"cs_cents_per_mb", d.cs},
                           {"cr_cents_per_s", d.cr}});
    }
    json links = json::array();
    const int y = infra.size();
    for (int a = 0; a < y; ++a)
        for (int b = a + 1; b < y; ++b) {
            const Link& l = infra.link(a, b);
            links.push_back({{"a", a}, {"b", b}, {"bw_mbps", l.bw}, {"latency_s", l.latency}});
        }
    return json{{"devices", devices},
                {"links", links},
                {"links_complete", true},
                {"source_device", infra.source_device}};
}

Infrastructure decode_infrastructure(const json& node) {
    std::vector<Device> devices;
    if (!node.contains("devices") || !node["devices"].is_array())
        throw InvalidConfig("infrastructure.devices must be an array");
    for (const json& d : node["devices"]) {
        Device dev;
        dev.tier = tier_from_name(d.value("tier", std::string("ME")));
        dev.cpu = require_number(d, "cpu_mips");
        dev.mem = require_number(d, "mem_mb");
        dev.stor = require_number(d, "stor_mb");
        dev.p_compute = number_or(d, "p_compute_w", 0.0);
        dev.p_network = number_or(d, "p_network_w", 0.0);
        dev.e_const = number_or(d, "e_const_j", 0.0);
        dev.p_static = number_or(d, "p_static_w", 0.0);
        dev.cp = number_or(d, "cp_cents_per_s", 0.0);
        dev.cs = number_or(d, "cs_cents_per_mb", 0.0);
        dev.cr = number_or(d, "cr_cents_per_s", 0.0);
        devices.push_back(dev);
    }
    const int y = static_cast<int>(devices.size());
    if (y == 0) throw InvalidConfig("infrastructure needs at least one device");

    struct Edge {
        int to;
        double bw, latency;
    };
    std::vector<std::vector<Edge>> adjacency(y);
    std::vector<Link> links(static_cast<std::size_t>(y) * y, self_link());
    const bool complete = node.value("links_complete", false);
    if (!node.contains("links") || !node["links"].is_array())
        throw InvalidConfig("infrastructure.links must be an array");
    for (const json& l : node["links"]) {
        const int a = l.value("a", -1);
        const int b = l.value("b", -1);
        if (a < 0 || b < 0 || a >= y || b >= y || a == b)
            throw InvalidConfig("link endpoints out of range");
        const double bw = require_number(l, "bw_mbps");
        const double latency = number_or(l, "latency_s", 0.0);
        links[static_cast<std::size_t>(a) * y + b] = Link{bw, latency};
        links[static_cast<std::size_t>(b) * y + a] = Link{bw, latency};
        adjacency[a].push_back({b, bw, latency});
        adjacency[b].push_back({a, bw, latency});
    }
    if (!complete) {
        // Fill non-adjacent pairs with the lowest-latency path: latencies sum,
        // bandwidth is the minimum hop bandwidth on that path.
        for (int start = 0; start < y; ++start) {
            std::vector<double> dist(y, std::numeric_limits<double>::infinity());
            std::vector<double> bw(y, std::numeric_limits<double>::infinity());
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
            dist[start] = 0.0;
            queue.push({0.0, start});
            while (!queue.empty()) {
                const auto [d, v] = queue.top();
                queue.pop();
                if (d > dist[v]) continue;
                for (const Edge& e : adjacency[v]) {
                    const double nd = d + e.latency;
                    if (nd < dist[e.to]) {
                        dist[e.to] = nd;
                        bw[e.to] = std::min(bw[v], e.bw);
                        queue.push({nd, e.to});
                    }
                }
            }
            for (int v = 0; v < y; ++v) {
                if (v == start) continue;
                Link& l = links[static_cast<std::size_t>(start) * y + v];
                if (l.bw > 0.0 && !std::isinf(l.bw)) continue; // direct edge given
                if (std::isinf(dist[v])) throw InvalidConfig("infrastructure graph is disconnected");
                l = Link{bw[v], dist[v]};
            }
        }
    }
    int source = node.value("source_device", -1);
    if (source < 0) {
        source = 0;
        for (int j = 0; j < y; ++j)
            if (devices[j].tier == Tier::Me) {
                source = j;
                break;
            }
    }
    return make_infrastructure(std::move(devices), std::move(links), source);
}

namespace {

ParamRange decode_range(const json& node) {
    if (node.is_number()) return {node.get<double>(), node.get<double>()};
    if (node.is_array() && node.size() == 2)
        return {node[0].get<double>(), node[1].get<double>()};
    throw InvalidConfig("ranges must be a number or a [lo, hi] pair");
}

void decode_tier_params(const json& node, TierParams& params) {
    if (node.contains("cpu_mips")) params.cpu = decode_range(node["cpu_mips"]);
    if (node.contains("mem_mb")) params.mem = decode_range(node["mem_mb"]);
    if (node.contains("stor_mb")) params.stor = decode_range(node["stor_mb"]);
    if (node.contains("p_compute_w")) params.p_compute = decode_range(node["p_compute_w"]);
    if (node.contains("cp_cents_per_s")) params.cp = decode_range(node["cp_cents_per_s"]);
    if (node.contains("cs_cents_per_mb")) params.cs = decode_range(node["cs_cents_per_mb"]);
    if (node.contains("bw_mbps")) params.bw = decode_range(node["bw_mbps"]);
    if (node.contains("p_network_w")) params.p_network = decode_range(node["p_network_w"]);
    if (node.contains("cr_cents_per_s")) params.cr = decode_range(node["cr_cents_per_s"]);
    params.e_const = number_or(node, "e_const_j", params.e_const);
    params.p_static = number_or(node, "p_static_w", params.p_static);
}

InfraConfig decode_infra_config(const json& node) {
    InfraConfig cfg;
    if (node.contains("counts")) {
        const json& counts = node["counts"];
        cfg.cdc = counts.value("cdc", cfg.cdc);
        cfg.isp_gw = counts.value("isp_gw", cfg.isp_gw);
        cfg.wifi_gw = counts.value("wifi_gw_bts", counts.value("wifi_gw", cfg.wifi_gw));
        cfg.me = counts.value("me", cfg.me);
    }
    if (node.contains("latencies_s")) {
        const json& lat = node["latencies_s"];
        cfg.latencies.me_iot = number_or(lat, "me_iot", cfg.latencies.me_iot);
        cfg.latencies.me_wifi = number_or(lat, "me_wifi", cfg.latencies.me_wifi);
        cfg.latencies.wifi_isp = number_or(lat, "wifi_isp", cfg.latencies.wifi_isp);
        cfg.latencies.isp_cdc = number_or(lat, "isp_cdc", cfg.latencies.isp_cdc);
    }
    if (node.contains("tiers")) {
        const json& tiers = node["tiers"];
        if (tiers.contains("cdc")) decode_tier_params(tiers["cdc"], cfg.cdc_params);
        if (tiers.contains("isp_gw")) decode_tier_params(tiers["isp_gw"], cfg.isp_params);
        if (tiers.contains("wifi_gw_bts")) decode_tier_params(tiers["wifi_gw_bts"], cfg.wifi_params);
        if (tiers.contains("me")) decode_tier_params(tiers["me"], cfg.me_params);
    }
    return cfg;
}

CaseStudyConfig decode_case_study(const json& node) {
    CaseStudyConfig cfg;
    cfg.kind = case_study_from_name(node.value("kind", std::string("mental_health")));
    cfg.instr = number_or(node, "instr_mi", cfg.instr);
    cfg.data = number_or(node, "data_mbit", cfg.data);
    if (node.contains("component_count")) cfg.component_count = node["component_count"].get<int>();
    cfg.cpu_req = number_or(node, "cpu_req_mips", cfg.cpu_req);
    cfg.allow_out_of_range = node.value("allow_out_of_range", false);
    return cfg;
}

Nsga2Params decode_nsga2(const json& node, Nsga2Params base) {
    base.population = node.value("population", base.population);
    if (node.contains("max_evaluations"))
        base.max_evaluations = node["max_evaluations"].get<std::int64_t>();
    base.crossover_rate = number_or(node, "crossover_rate", base.crossover_rate);
    if (node.contains("mutation_rate") && !node["mutation_rate"].is_null())
        base.mutation_rate = node["mutation_rate"].get<double>();
    base.archive_cap_factor = node.value("archive_cap_factor", base.archive_cap_factor);
    if (node.contains("seed")) base.seed = node["seed"].get<std::uint64_t>();
    return base;
}

SelectionStrategy decode_strategy(const json& node) {
    const std::string kind = node.value("kind", std::string("low_latency"));
    if (kind == "low_latency" || kind == "low-latency") return SelectionStrategy::low_latency();
    if (kind == "weighted_ideal" || kind == "weighted-ideal") {
        std::array<double, 3> w{1.0, 1.0, 1.0};
        if (node.contains("weights")) {
            const json& jw = node["weights"];
            if (!jw.is_array() || jw.size() != 3)
                throw InvalidConfig("strategy.weights must hold 3 numbers");
            for (int k = 0; k < 3; ++k) w[k] = jw[k].get<double>();
        }
        return SelectionStrategy::weighted_ideal(w);
    }
    throw InvalidConfig("unknown strategy kind: " + kind);
}

} // namespace

Scenario load_scenario(const std::filesystem::path& path,
                       std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot read config file: " + path.string());
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw InvalidConfig("config is not valid JSON: " + std::string(e.what()));
    }
    if (!root.is_object()) throw InvalidConfig("config root must be an object");

    Scenario scenario;
    scenario.seed = root.value("seed", std::uint64_t{0});
    if (seed_override) scenario.seed = *seed_override;

    if (root.contains("options")) {
        const json& opt = root["options"];
        scenario.options.latency_in_transfer =
            opt.value("latency_in_transfer", scenario.options.latency_in_transfer);
        const std::string mode = opt.value("capacity_mode", std::string("per_component"));
        if (mode == "per_component")
            scenario.options.capacity_mode = CapacityMode::PerComponent;
        else if (mode == "aggregate")
            scenario.options.capacity_mode = CapacityMode::Aggregate;
        else
            throw InvalidConfig("unknown capacity_mode: " + mode);
    }

    const json app_node = root.value("application", json::object());
    if (app_node.contains("explicit")) {
        scenario.app = decode_application(app_node["explicit"]);
    } else {
        scenario.app_template = decode_case_study(app_node.value("case_study", json::object()));
        scenario.app_template.seed = derive_seed(scenario.seed, 10);
        scenario.app = build_case_study(scenario.app_template);
        scenario.app_is_template = true;
    }

    const json infra_node = root.value("infrastructure", json::object());
    if (infra_node.contains("explicit")) {
        scenario.infra = decode_infrastructure(infra_node["explicit"]);
    } else {
        scenario.infra_template = decode_infra_config(infra_node.value("generator", json::object()));
        scenario.infra_template.seed = derive_seed(scenario.seed, 11);
        scenario.infra = build_infrastructure(scenario.infra_template);
        scenario.infra_is_template = true;
    }

    scenario.nsga2.seed = derive_seed(scenario.seed, 12);
    if (root.contains("nsga2")) scenario.nsga2 = decode_nsga2(root["nsga2"], scenario.nsga2);
    if (root.contains("strategy")) scenario.strategy = decode_strategy(root["strategy"]);

    scenario.sweep.nsga2 = scenario.nsga2;
    scenario.sweep.seed = scenario.seed;
    if (root.contains("sweep")) {
        const json& node = root["sweep"];
        if (node.contains("variable"))
            scenario.sweep.variable = sweep_variable_from_name(node["variable"].get<std::string>());
        if (node.contains("levels")) {
            scenario.sweep.levels.clear();
            for (const json& l : node["levels"]) scenario.sweep.levels.push_back(l.get<double>());
        }
        scenario.sweep.repetitions = node.value("repetitions", scenario.sweep.repetitions);
        if (node.contains("methods")) {
            scenario.sweep.methods.clear();
            for (const json& m : node["methods"])
                scenario.sweep.methods.push_back(method_from_name(m.get<std::string>()));
        }
        scenario.sweep.keep_raw = node.value("keep_raw", scenario.sweep.keep_raw);
    }

    scenario.scalability.app_template = scenario.app_template;
    scenario.scalability.infra_template = scenario.infra_template;
    scenario.scalability.nsga2 = scenario.nsga2;
    scenario.scalability.seed = scenario.seed;
    if (root.contains("scalability")) {
        const json& node = root["scalability"];
        if (node.contains("components")) {
            scenario.scalability.components.clear();
            for (const json& c : node["components"])
                scenario.scalability.components.push_back(c.get<int>());
        }
        if (node.contains("evaluations")) {
            scenario.scalability.evaluations.clear();
            for (const json& e : node["evaluations"])
                scenario.scalability.evaluations.push_back(e.get<std::int64_t>());
        }
    }
    return scenario;
}

std::string placement_to_string(const Placement& placement) {
    std::string out;
    for (std::size_t i = 0; i < placement.assign.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(placement.assign[i]);
    }
    return out;
}

std::string front_csv(const ParetoFront& front) {
    std::string out = "placement,time_s,energy_j,cost_cents\n";
    for (const auto& e : front.entries) {
        out += placement_to_string(e.placement);
        out += ',' + format_double(e.objectives.time);
        out += ',' + format_double(e.objectives.energy);
        out += ',' + format_double(e.objectives.cost);
        out += '\n';
    }
    return out;
}

std::string hv_trace_csv(const RunStats& stats) {
    std::string out = "evaluations,hypervolume\n";
    for (const auto& [evals, hv] : stats.hv_trace)
        out += std::to_string(evals) + ',' + format_double(hv) + '\n';
    return out;
}

std::string result_table_csv(const ResultTable& table) {
    std::string out =
        "method,level,mean_time_s,std_time_s,mean_energy_j,std_energy_j,"
        "mean_cost_cents,std_cost_cents,repetitions,failures\n";
    for (const auto& row : table.rows) {
        out += row.method;
        out += ',' + format_double(row.level);
        out += ',' + format_double(row.mean_time) + ',' + format_double(row.std_time);
        out += ',' + format_double(row.mean_energy) + ',' + format_double(row.std_energy);
        out += ',' + format_double(row.mean_cost) + ',' + format_double(row.std_cost);
        out += ',' + std::to_string(row.repetitions) + ',' + std::to_string(row.failures);
        out += '\n';
    }
    return out;
}

std::string raw_rows_csv(const ResultTable& table) {
    std::string out = "method,level,repetition,scenario_seed,time_s,energy_j,cost_cents,ok,error\n";
    for (const auto& row : table.raw) {
        std::string error = row.error;
        std::replace(error.begin(), error.end(), ',', ';');
        out += row.method;
        out += ',' + format_double(row.level);
        out += ',' + std::to_string(row.repetition);
        out += ',' + std::to_string(row.scenario_seed);
        out += ',' + format_double(row.objectives.time);
        out += ',' + format_double(row.objectives.energy);
        out += ',' + format_double(row.objectives.cost);
        out += ',' + std::string(row.ok ? "1" : "0");
        out += ',' + error;
        out += '\n';
    }
    return out;
}

namespace {

void append_scalability_rows(std::string& out, const char* curve,
                             const std::vector<ScalabilityPoint>& points, bool timings) {
    for (const auto& p : points) {
        out += curve;
        out += ',' + format_double(p.level);
        if (timings) {
            out += ',' + format_double(p.wall_time);
        } else {
            out += ',' + format_double(p.hypervolume);
            out += ',' + std::to_string(p.front_size);
            out += ',' + std::to_string(p.evaluations_used);
        }
        out += '\n';
    }
}

} // namespace

std::string scalability_csv(const ScalabilityResult& result) {
    std::string out = "curve,level,hypervolume,front_size,evaluations\n";
    append_scalability_rows(out, "evaluations", result.by_evaluations, false);
    append_scalability_rows(out, "components", result.by_components, false);
    return out;
}

std::string scalability_timings_csv(const ScalabilityResult& result) {
    std::string out = "curve,level,wall_time_s\n";
    append_scalability_rows(out, "evaluations", result.by_evaluations, true);
    append_scalability_rows(out, "components", result.by_components, true);
    return out;
}

json selected_placement_json(const ParetoFront::Entry& entry, const SelectionStrategy& strategy) {
    json out{{"placement", entry.placement.assign},
             {"time_s", entry.objectives.time},
             {"energy_j", entry.objectives.energy},
             {"cost_cents", entry.objectives.cost},
             {"feasible", entry.objectives.feasible}};
    if (strategy.kind == SelectionStrategy::Kind::LowLatency) {
        out["strategy"] = "low_latency";
    } else {
        out["strategy"] = "weighted_ideal";
        out["weights"] = strategy.weights;
    }
    return out;
}

json baseline_result_json(const BaselineResult& result) {
    return json{{"method", result.method},
                {"optimal", result.optimal},
                {"placement", result.placement.assign},
                {"time_s", result.objectives.time},
                {"energy_j", result.objectives.energy},
                {"cost_cents", result.objectives.cost},
                {"feasible", result.objectives.feasible}};
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    json out{{"command", manifest.command},
             {"config", manifest.config_path},
             {"seed", manifest.seed},
             {"engine_version", manifest.engine_version},
             {"normalization",
              {{"convention", manifest.normalization},
               {"reference", kNormReference}}},
             {"wall_time_s", manifest.wall_time},
             {"threads", manifest.threads},
             {"profile", manifest.profile},
             {"outputs", manifest.outputs}};
    write_text_file(path, out.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << content;
    if (!out) throw Error("failed writing file: " + path.string());
}

} // namespace fogplace
