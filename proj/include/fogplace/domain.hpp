#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "fogplace/errors.hpp"

namespace fogplace {

// Canonical units used throughout the engine:
//   time s, energy J, money ¢, workload MI, speed MIPS, data Mbit,
//   bandwidth Mbit/s, memory/storage MB, power W.
// Data sizes are divided by 8 (Mbit → MB) wherever they meet storage
// capacities or per-MB prices.
inline constexpr double mbit_to_mb(double mbit) { return mbit / 8.0; }

/// Device class in the Cloud-Fog hierarchy, ordered top (cloud) to bottom (edge).
enum class Tier { Cdc, IspGw, WifiGwBts, Me };

std::string_view tier_name(Tier tier);
Tier tier_from_name(std::string_view name);

/// One application component (a state of the execution chain).
struct Component {
    int id = 0;
    double instr = 0.0;    ///< workload [MI]
    double cpu_req = 0.0;  ///< minimal processing speed [MIPS]
    double mem_req = 0.0;  ///< memory demand [MB]
    double stor_req = 0.0; ///< storage demand [MB]
};

/// Chain-structured application: components in execution order, data_in[i]
/// is the data item consumed by component i (data_in[0] arrives from the
/// IoT devices). Values are not mutated after build_application.
struct Application {
    std::string name;
    std::vector<Component> components;
    std::vector<double> data_in; ///< [Mbit], one entry per component

    int size() const { return static_cast<int>(components.size()); }
};

struct ApplicationSpec {
    std::string name;
    std::vector<Component> components;
    std::vector<double> data_in;
};

/// Validates and freezes an application chain.
/// Throws EmptyApplication, NegativeDemand, LengthMismatch.
Application build_application(ApplicationSpec spec);

/// Infrastructure device with capacities, power draws and prices.
struct Device {
    int id = 0;
    Tier tier = Tier::Me;
    double cpu = 0.0;  ///< [MIPS]
    double mem = 0.0;  ///< [MB]
    double stor = 0.0; ///< [MB]
    double p_compute = 0.0; ///< computation power draw [W]
    double p_network = 0.0; ///< receive-side network power draw [W]
    double e_const = 0.0;   ///< per-transfer hardware energy constant [J]
    double p_static = 0.0;  ///< static power draw while executing [W]
    double cp = 0.0; ///< processing price [¢/s]
    double cs = 0.0; ///< storage price [¢/MB]
    double cr = 0.0; ///< ingress communication price [¢/s]
};

/// Pairwise connection. The diagonal uses the self-link sentinel
/// (infinite bandwidth, zero latency) so intra-device transfers cost nothing.
struct Link {
    double bw = 0.0;      ///< [Mbit/s]
    double latency = 0.0; ///< one-way [s]
};

inline constexpr Link self_link() {
    return Link{std::numeric_limits<double>::infinity(), 0.0};
}

/// Device set plus the full y×y symmetric link matrix. source_device is the
/// device adjacent to the IoT data source, where data_in[0] arrives.
struct Infrastructure {
    std::vector<Device> devices;
    std::vector<Link> links; ///< row-major y×y
    int source_device = 0;

    int size() const { return static_cast<int>(devices.size()); }
    const Link& link(int from, int to) const {
        return links[static_cast<std::size_t>(from) * devices.size() + to];
    }
};

/// Validates device fields, link symmetry and the diagonal sentinel.
/// Throws InvalidConfig on any violation.
Infrastructure make_infrastructure(std::vector<Device> devices,
                                   std::vector<Link> links,
                                   int source_device);

/// Total assignment component index → device index.
struct Placement {
    std::vector<int> assign;

    friend bool operator==(const Placement&, const Placement&) = default;
};

enum class CapacityMode {
    PerComponent, ///< each component checked alone (verbatim constraint block)
    Aggregate     ///< mem/data demands of co-located components summed per device
};

struct EvalOptions {
    bool latency_in_transfer = true;
    CapacityMode capacity_mode = CapacityMode::PerComponent;
};

/// Outcome of the resource-constraint check. feasible ⇔ violation == 0.
struct FeasibilityReport {
    bool feasible = true;
    double violation = 0.0;
    std::vector<std::string> per_component; ///< violated-constraint labels
};

/// Checks the constraint block: for every component i on device j,
/// cpu_req < cpu_j, mem_req < mem_j and MB(data_in[i]) < stor_j (strict).
/// violation sums the relative excess demand of violated constraints.
/// Throws ShapeMismatch when |assign| ≠ x or an index is out of range.
FeasibilityReport validate_placement(const Application& app,
                                     const Infrastructure& infra,
                                     const Placement& placement,
                                     const EvalOptions& options = {});

} // namespace fogplace
