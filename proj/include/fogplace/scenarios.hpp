#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fogplace/domain.hpp"
#include "fogplace/optimizer.hpp"

namespace fogplace {

/// Closed interval a parameter is drawn from; lo == hi pins the value.
struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-tier device parameter ranges (canonical units).
struct TierParams {
    ParamRange cpu;       ///< [MIPS]
    ParamRange mem;       ///< [MB]
    ParamRange stor;      ///< [MB]
    ParamRange p_compute; ///< [W]
    ParamRange cp;        ///< [¢/s]
    ParamRange cs;        ///< [¢/MB]
    ParamRange bw;        ///< interface bandwidth [Mbit/s]
    ParamRange p_network; ///< [W]
    ParamRange cr;        ///< [¢/s]
    double e_const = 0.0;
    double p_static = 0.0;
};

/// Published per-tier configuration (cloud data center, ISP gateway,
/// WiFi gateway / cellular BTS, mobile edge).
TierParams default_tier_params(Tier tier);

/// One-way latencies between adjacent hierarchy levels [s].
struct TierLatencies {
    double me_iot = 0.001; ///< source selection context only; no link uses it
    double me_wifi = 0.010;
    double wifi_isp = 0.050;
    double isp_cdc = 0.100;
};

struct InfraConfig {
    int cdc = 1;
    int isp_gw = 1;
    int wifi_gw = 2;
    int me = 11;
    TierLatencies latencies;
    TierParams cdc_params = default_tier_params(Tier::Cdc);
    TierParams isp_params = default_tier_params(Tier::IspGw);
    TierParams wifi_params = default_tier_params(Tier::WifiGwBts);
    TierParams me_params = default_tier_params(Tier::Me);
    std::uint64_t seed = 0;
};

/// Samples devices from their tier ranges and wires the tree topology
/// CDC — ISP GW — WiFi GWs — MEs: non-adjacent pairs get the path-summed
/// latency and the minimum bandwidth along the unique path. Devices are
/// numbered top tier first; source_device is the first ME.
/// Throws InvalidConfig.
Infrastructure build_infrastructure(const InfraConfig& config);

enum class CaseStudy { AugmentedReality, InsulinPump, MentalHealth };

std::string_view case_study_name(CaseStudy kind);
CaseStudy case_study_from_name(std::string_view name);

struct CaseStudyConfig {
    CaseStudy kind = CaseStudy::MentalHealth;
    double instr = 2000.0; ///< per-component workload [MI]
    double data = 4.0;     ///< per-transition data size incl. ingress [Mbit]
    /// Chain length override; defaults: AR 5, insulin pump 8, mental health 7.
    std::optional<int> component_count;
    double cpu_req = 1000.0; ///< per-component speed demand [MIPS]
    std::uint64_t seed = 0;
    /// Accept instr outside the published workload range for this study.
    bool allow_out_of_range = false;
};

/// Builds the case-study chain with uniform instr/data and memory/storage
/// demands sampled from the study's published ranges.
/// Throws OutOfRange unless allow_out_of_range is set.
Application build_case_study(const CaseStudyConfig& config);

enum class Method { Mapo, Fspp, EdgeWard };

std::string_view method_name(Method method); ///< "MAPO" / "FSPP" / "EW"
Method method_from_name(std::string_view name);

enum class SweepVariable { DataSize, CpuWorkload, Components, Evaluations };

std::string_view sweep_variable_name(SweepVariable variable);
SweepVariable sweep_variable_from_name(std::string_view name);

struct SweepConfig {
    SweepVariable variable = SweepVariable::DataSize;
    /// Defaults per variable: data {0.5, 1, 4} Mbit; workload
    /// {250, 500, 1000, 2000} MI; empty means "use the default levels".
    std::vector<double> levels;
    int repetitions = 1000;
    std::vector<Method> methods{Method::Mapo, Method::Fspp, Method::EdgeWard};
    Nsga2Params nsga2;
    SelectionStrategy strategy;
    std::uint64_t seed = 0;
    int threads = 1;
    bool keep_raw = false;
};

std::vector<double> default_sweep_levels(SweepVariable variable);

struct ResultRow {
    std::string method;
    double level = 0.0;
    double mean_time = 0.0, std_time = 0.0;
    double mean_energy = 0.0, std_energy = 0.0;
    double mean_cost = 0.0, std_cost = 0.0;
    int repetitions = 0; ///< successful repetitions aggregated
    int failures = 0;
};

struct RawRow {
    std::string method;
    double level = 0.0;
    int repetition = 0;
    std::uint64_t scenario_seed = 0;
    ObjectiveVector objectives;
    bool ok = true;
    std::string error;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::vector<RawRow> raw; ///< filled only when keep_raw is set
};

/// Runs every method on freshly sampled (application, infrastructure) pairs
/// for each level × repetition. Repetition seeds split off the master seed so
/// all methods at one (level, repetition) see bit-identical scenarios.
/// Method failures become failed cells, never aborts.
ResultTable run_sweep(const CaseStudyConfig& app_template, const InfraConfig& infra_template,
                      const SweepConfig& sweep, const EvalOptions& options = {});

struct ScalabilityPoint {
    double level = 0.0; ///< component count or evaluation budget
    double hypervolume = 0.0;
    double wall_time = 0.0; ///< [s]; timing metadata, not deterministic
    int front_size = 0;
    std::int64_t evaluations_used = 0;
};

struct ScalabilityConfig {
    std::vector<int> components{5, 10, 15, 20, 25, 30};
    std::vector<std::int64_t> evaluations{1000, 2000, 5000, 7500, 10000, 12500, 14000};
    CaseStudyConfig app_template;
    InfraConfig infra_template;
    Nsga2Params nsga2;
    std::uint64_t seed = 0;
};

struct ScalabilityResult {
    std::vector<ScalabilityPoint> by_evaluations;
    std::vector<ScalabilityPoint> by_components;
};

/// One optimizer run per point on seeded synthetic chains: the evaluations
/// curve varies the budget at fixed chain length, the components curve varies
/// chain length at the full budget. Hypervolume uses the per-run min-max
/// normalization convention.
ScalabilityResult scalability_study(const ScalabilityConfig& config,
                                    const EvalOptions& options = {});

} // namespace fogplace
