#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fogplace/pareto.hpp"

namespace fogplace {

struct Nsga2Params {
    int population = 100;
    std::int64_t max_evaluations = 14000;
    double crossover_rate = 0.9;
    /// Per-gene resampling probability; defaults to 1/x when unset.
    std::optional<double> mutation_rate;
    std::uint64_t seed = 0;
    /// Archive keeps at most archive_cap_factor * population entries.
    int archive_cap_factor = 10;
    /// Per-generation hypervolume trace (normalized post-hoc over the whole
    /// run). Disable in bulk sweeps where only the final front matters.
    bool record_hv_trace = true;
};

/// Throws InvalidParams unless population is even and ≥ 4, rates lie in
/// [0, 1] and the evaluation budget covers at least one population.
void validate(const Nsga2Params& params);

struct RunStats {
    std::int64_t evaluations_used = 0;
    double wall_time = 0.0; ///< [s]
    /// (cumulative evaluations, hypervolume) per generation, normalized over
    /// objective_bounds — fixed for the whole run.
    std::vector<std::pair<std::int64_t, double>> hv_trace;
    /// Min-max envelope of every feasible evaluation in the run.
    NormBounds objective_bounds;
    bool any_feasible = false;
};

struct Nsga2Result {
    ParetoFront front;
    RunStats stats;
};

/// Constrained NSGA-II over integer genomes of length x with alleles in
/// [0, y): uniform-random initialization, binary tournaments under Deb's
/// rules, uniform crossover, per-gene resampling mutation, (μ+λ) elitist
/// survival by rank then crowding, plus an external archive of every feasible
/// rank-0 discovery. Fully deterministic for a given seed.
///
/// If no feasible placement is ever found, the returned front holds the
/// least-violating non-dominated individuals flagged infeasible.
Nsga2Result nsga2_run(const Application& app, const Infrastructure& infra,
                      const Nsga2Params& params, const EvalOptions& options = {});

/// A-priori decision rule for picking one placement from a front.
struct SelectionStrategy {
    enum class Kind { LowLatency, WeightedIdeal };
    Kind kind = Kind::LowLatency;
    std::array<double, 3> weights{1.0, 1.0, 1.0};

    static SelectionStrategy low_latency() { return {}; }
    static SelectionStrategy weighted_ideal(const std::array<double, 3>& w) {
        return {Kind::WeightedIdeal, w};
    }
};

/// LowLatency: argmin completion time. WeightedIdeal: argmin of the weighted
/// min-max-normalized objectives. Ties break by energy, cost, then
/// lexicographic placement. Throws EmptyFront.
ParetoFront::Entry select_placement(const ParetoFront& front,
                                    const SelectionStrategy& strategy = {});

} // namespace fogplace
