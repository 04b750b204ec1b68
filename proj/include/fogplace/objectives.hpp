#pragma once

#include <array>

#include "fogplace/domain.hpp"

namespace fogplace {

/// The three minimization objectives plus constraint status for one placement.
struct ObjectiveVector {
    double time = 0.0;   ///< completion time [s]
    double energy = 0.0; ///< total energy [J]
    double cost = 0.0;   ///< economic cost [¢]
    bool feasible = true;
    double violation = 0.0;

    std::array<double, 3> values() const { return {time, energy, cost}; }

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Workload over processing speed: instr / cpu [s].
double computation_time(const Component& component, const Device& device);

/// Time to move `data_mbit` across a link: data/bw plus the one-way latency
/// when latency accounting is enabled. A zero-size item needs no message and
/// costs nothing; the self-link sentinel likewise yields 0.
double transfer_time(double data_mbit, const Link& link, const EvalOptions& options = {});

/// End-to-end completion time: the chain recursion unrolled, with data_in[0]
/// entering over the source_device → plc(m_1) link.
double completion_time(const Application& app, const Infrastructure& infra,
                       const Placement& placement, const EvalOptions& options = {});

/// Computation + communication + static energy summed over components.
/// Communication energy is charged to the receiving device's interface.
double energy(const Application& app, const Infrastructure& infra,
              const Placement& placement, const EvalOptions& options = {});

/// Processing + storage + ingress-communication cost summed over components.
double cost(const Application& app, const Infrastructure& infra,
            const Placement& placement, const EvalOptions& options = {});

/// Bundles the three objectives with the feasibility check. Pure and
/// deterministic; infeasible placements still get full objective values.
ObjectiveVector evaluate(const Application& app, const Infrastructure& infra,
                         const Placement& placement, const EvalOptions& options = {});

namespace detail {

/// Per-component contributions, with `prev_device` the device holding the
/// predecessor (the source device for component 0). The full objectives sum
/// these terms in chain order, so partial sums are bit-exact prefixes —
/// the cost-optimal search relies on that.
double time_term(const Application& app, const Infrastructure& infra, int index,
                 int prev_device, int device, const EvalOptions& options);
double energy_term(const Application& app, const Infrastructure& infra, int index,
                   int prev_device, int device, const EvalOptions& options);
double cost_term(const Application& app, const Infrastructure& infra, int index,
                 int prev_device, int device, const EvalOptions& options);

} // namespace detail

} // namespace fogplace
