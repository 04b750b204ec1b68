#include "fogplace/objectives.hpp"

namespace fogplace {

double computation_time(const Component& component, const Device& device) {
    if (component.instr == 0.0) return 0.0;
    return component.instr / device.cpu;
}

double transfer_time(double data_mbit, const Link& link, const EvalOptions& options) {
    if (data_mbit == 0.0) return 0.0; // no data item, no message
    double t = data_mbit / link.bw;
    if (options.latency_in_transfer) t += link.latency;
    return t;
}

namespace detail {

double time_term(const Application& app, const Infrastructure& infra, int index,
                 int prev_device, int device, const EvalOptions& options) {
    return transfer_time(app.data_in[index], infra.link(prev_device, device), options) +
           computation_time(app.components[index], infra.devices[device]);
}

double energy_term(const Application& app, const Infrastructure& infra, int index,
                   int prev_device, int device, const EvalOptions& options) {
    const Device& d = infra.devices[device];
    const double t = computation_time(app.components[index], d);
    double e = d.p_compute * t + d.p_static * t;
    if (prev_device != device && app.data_in[index] > 0.0) {
        const double duration = transfer_time(app.data_in[index], infra.link(prev_device, device), options);
        e += d.p_network * duration + d.e_const;
    }
    return e;
}

double cost_term(const Application& app, const Infrastructure& infra, int index,
                 int prev_device, int device, const EvalOptions& options) {
    const Device& d = infra.devices[device];
    double c = computation_time(app.components[index], d) * d.cp;
    c += mbit_to_mb(app.data_in[index]) * d.cs;
    if (prev_device != device && app.data_in[index] > 0.0)
        c += transfer_time(app.data_in[index], infra.link(prev_device, device), options) * d.cr;
    return c;
}

} // namespace detail

namespace {

void check_shape(const Application& app, const Infrastructure& infra, const Placement& placement) {
    if (placement.assign.size() != app.components.size())
        throw ShapeMismatch("placement length does not match component count");
    for (int dev : placement.assign)
        if (dev < 0 || dev >= infra.size()) throw ShapeMismatch("device index out of range");
}

template <typename Term>
double accumulate_chain(const Infrastructure& infra, const Placement& placement, Term&& term) {
    double acc = 0.0;
    int prev = infra.source_device;
    for (std::size_t i = 0; i < placement.assign.size(); ++i) {
        const int dev = placement.assign[i];
        acc += term(static_cast<int>(i), prev, dev);
        prev = dev;
    }
    return acc;
}

} // namespace

double completion_time(const Application& app, const Infrastructure& infra,
                       const Placement& placement, const EvalOptions& options) {
    check_shape(app, infra, placement);
    return accumulate_chain(infra, placement, [&](int i, int prev, int dev) {
        return detail::time_term(app, infra, i, prev, dev, options);
    });
}

double energy(const Application& app, const Infrastructure& infra,
              const Placement& placement, const EvalOptions& options) {
    check_shape(app, infra, placement);
    return accumulate_chain(infra, placement, [&](int i, int prev, int dev) {
        return detail::energy_term(app, infra, i, prev, dev, options);
    });
}

double cost(const Application& app, const Infrastructure& infra,
            const Placement& placement, const EvalOptions& options) {
    check_shape(app, infra, placement);
    return accumulate_chain(infra, placement, [&](int i, int prev, int dev) {
        return detail::cost_term(app, infra, i, prev, dev, options);
    });
}

ObjectiveVector evaluate(const Application& app, const Infrastructure& infra,
                         const Placement& placement, const EvalOptions& options) {
    ObjectiveVector v;
    v.time = completion_time(app, infra, placement, options);
    v.energy = energy(app, infra, placement, options);
    v.cost = cost(app, infra, placement, options);
    const FeasibilityReport report = validate_placement(app, infra, placement, options);
    v.feasible = report.feasible;
    v.violation = report.violation;
    return v;
}

} // namespace fogplace
