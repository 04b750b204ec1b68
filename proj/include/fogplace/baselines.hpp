#pragma once

#include <cstdint>
#include <string>

#include "fogplace/objectives.hpp"
#include "fogplace/pareto.hpp"

namespace fogplace {

struct BaselineResult {
    Placement placement;
    ObjectiveVector objectives;
    std::string method;
    bool optimal = false; ///< exact search vs greedy fallback
};

/// Cost-optimal placement. When y^x ≤ cap, a branch-and-bound search returns
/// the exact minimizer of the total economic cost under the resource
/// constraints (optimal = true); ties break by lower completion time, then
/// lexicographically lower assignment. Beyond the cap, a chain-order greedy
/// assigns each component to the feasible device with the lowest per-second
/// processing price (optimal = false). Throws NoFeasiblePlacement.
BaselineResult fspp_place(const Application& app, const Infrastructure& infra,
                          const EvalOptions& options = {},
                          std::uint64_t cap = 1'000'000);

/// Hierarchical best-fit heuristic: the last component is pinned to the
/// highest-cpu ISP gateway; the rest are placed in chain order bottom-up
/// through the tiers ME → WiFi GW/BTS → ISP GW → CDC, taking within a tier
/// the feasible device with the smallest sufficient cpu and escalating when
/// a tier has none. Throws NoIspGateway, NoFeasiblePlacement.
BaselineResult edge_ward_place(const Application& app, const Infrastructure& infra,
                               const EvalOptions& options = {});

} // namespace fogplace
