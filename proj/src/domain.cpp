#include "fogplace/domain.hpp"

#include <cmath>
#include <sstream>

namespace fogplace {

std::string_view tier_name(Tier tier) {
    switch (tier) {
        case Tier::Cdc: return "CDC";
        case Tier::IspGw: return "ISP_GW";
        case Tier::WifiGwBts: return "WIFI_GW_BTS";
        case Tier::Me: return "ME";
    }
    return "?";
}

Tier tier_from_name(std::string_view name) {
    if (name == "CDC" || name == "cdc") return Tier::Cdc;
    if (name == "ISP_GW" || name == "isp_gw") return Tier::IspGw;
    if (name == "WIFI_GW_BTS" || name == "wifi_gw_bts") return Tier::WifiGwBts;
    if (name == "ME" || name == "me") return Tier::Me;
    throw InvalidConfig("unknown tier name: " + std::string(name));
}

Application build_application(ApplicationSpec spec) {
    if (spec.components.empty())
        throw EmptyApplication("application needs at least one component");
    if (spec.components.size() != spec.data_in.size())
        throw LengthMismatch("data_in has " + std::to_string(spec.data_in.size()) +
                             " entries for " + std::to_string(spec.components.size()) +
                             " components");
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        auto& c = spec.components[i];
        c.id = static_cast<int>(i);
        if (!(c.instr >= 0.0))
            throw NegativeDemand("component " + std::to_string(i) + ": instr must be >= 0");
        if (!(c.cpu_req > 0.0) || !(c.mem_req > 0.0) || !(c.stor_req > 0.0))
            throw NegativeDemand("component " + std::to_string(i) +
                                 ": cpu/mem/stor demands must be > 0");
        if (!(spec.data_in[i] >= 0.0))
            throw NegativeDemand("data_in[" + std::to_string(i) + "] must be >= 0");
    }
    return Application{std::move(spec.name), std::move(spec.components), std::move(spec.data_in)};
}

Infrastructure make_infrastructure(std::vector<Device> devices,
                                   std::vector<Link> links,
                                   int source_device) {
    const auto y = devices.size();
    if (y == 0) throw InvalidConfig("infrastructure needs at least one device");
    if (links.size() != y * y)
        throw InvalidConfig("link matrix must be y*y");
    if (source_device < 0 || static_cast<std::size_t>(source_device) >= y)
        throw InvalidConfig("source_device out of range");

    for (std::size_t j = 0; j < y; ++j) {
        auto& d = devices[j];
        d.id = static_cast<int>(j);
        if (!(d.cpu > 0.0) || !(d.mem > 0.0) || !(d.stor > 0.0))
            throw InvalidConfig("device " + std::to_string(j) + ": capacities must be > 0");
        if (d.p_compute < 0.0 || d.p_network < 0.0 || d.e_const < 0.0 || d.p_static < 0.0 ||
            d.cp < 0.0 || d.cs < 0.0 || d.cr < 0.0)
            throw InvalidConfig("device " + std::to_string(j) + ": power/cost fields must be >= 0");
    }
    for (std::size_t a = 0; a < y; ++a) {
        for (std::size_t b = 0; b < y; ++b) {
            const Link& l = links[a * y + b];
            if (a == b) {
                if (!(std::isinf(l.bw) && l.latency == 0.0))
                    throw InvalidConfig("diagonal link must be the self-link sentinel");
                continue;
            }
            if (!(l.bw > 0.0) || l.latency < 0.0)
                throw InvalidConfig("link " + std::to_string(a) + "," + std::to_string(b) +
                                    ": bw must be > 0 and latency >= 0");
            const Link& r = links[b * y + a];
            if (l.bw != r.bw || l.latency != r.latency)
                throw InvalidConfig("link matrix not symmetric at " + std::to_string(a) + "," +
                                    std::to_string(b));
        }
    }
    return Infrastructure{std::move(devices), std::move(links), source_device};
}

namespace {

// Relative excess of a violated strict constraint. Equality still violates
// the strict inequality but has zero excess; the caller bumps the total in
// that case so feasible ⇔ violation == 0 stays true.
double excess(double demand, double capacity) {
    return demand / capacity - 1.0;
}

void report_violation(FeasibilityReport& report, double demand, double capacity,
                      const std::string& label) {
    report.feasible = false;
    report.violation += excess(demand, capacity);
    report.per_component.push_back(label);
}

std::string describe(int component, const char* what, double demand, double capacity, int device) {
    std::ostringstream os;
    os << "component " << component << ": " << what << " " << demand << " >= " << capacity
       << " on device " << device;
    return os.str();
}

} // namespace

FeasibilityReport validate_placement(const Application& app, const Infrastructure& infra,
                                     const Placement& placement, const EvalOptions& options) {
    const int x = app.size();
    const int y = infra.size();
    if (static_cast<int>(placement.assign.size()) != x)
        throw ShapeMismatch("placement has " + std::to_string(placement.assign.size()) +
                            " entries for " + std::to_string(x) + " components");
    for (int dev : placement.assign)
        if (dev < 0 || dev >= y) throw ShapeMismatch("device index out of range");

    FeasibilityReport report;
    for (int i = 0; i < x; ++i) {
        const Component& c = app.components[i];
        const Device& d = infra.devices[placement.assign[i]];
        const double data_mb = mbit_to_mb(app.data_in[i]);
        if (!(c.cpu_req < d.cpu))
            report_violation(report, c.cpu_req, d.cpu, describe(i, "cpu_req", c.cpu_req, d.cpu, d.id));
        if (options.capacity_mode == CapacityMode::PerComponent) {
            if (!(c.mem_req < d.mem))
                report_violation(report, c.mem_req, d.mem,
                                 describe(i, "mem_req", c.mem_req, d.mem, d.id));
            if (!(data_mb < d.stor))
                report_violation(report, data_mb, d.stor,
                                 describe(i, "data", data_mb, d.stor, d.id));
        }
    }
    if (options.capacity_mode == CapacityMode::Aggregate) {
        std::vector<double> mem_sum(y, 0.0), stor_sum(y, 0.0);
        for (int i = 0; i < x; ++i) {
            mem_sum[placement.assign[i]] += app.components[i].mem_req;
            stor_sum[placement.assign[i]] += mbit_to_mb(app.data_in[i]);
        }
        for (int j = 0; j < y; ++j) {
            const Device& d = infra.devices[j];
            if (mem_sum[j] > 0.0 && !(mem_sum[j] < d.mem)) {
                std::ostringstream os;
                os << "device " << j << ": aggregate mem " << mem_sum[j] << " >= " << d.mem;
                report_violation(report, mem_sum[j], d.mem, os.str());
            }
            if (stor_sum[j] > 0.0 && !(stor_sum[j] < d.stor)) {
                std::ostringstream os;
                os << "device " << j << ": aggregate data " << stor_sum[j] << " >= " << d.stor;
                report_violation(report, stor_sum[j], d.stor, os.str());
            }
        }
    }
    if (!report.feasible && report.violation == 0.0) {
        // demand == capacity: violated with zero relative excess
        report.violation = std::numeric_limits<double>::min();
    }
    return report;
}

} // namespace fogplace
