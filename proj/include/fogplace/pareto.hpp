#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fogplace/domain.hpp"
#include "fogplace/objectives.hpp"

namespace fogplace {

/// Strict Pareto dominance on (time, energy, cost), minimization:
/// a ≤ b componentwise and a < b in at least one component.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Deb's constrained-domination rules: feasible beats infeasible, two
/// infeasibles compare by violation, two feasibles by objective dominance.
bool constrained_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Population partition into non-domination ranks (rank 0 = non-dominated).
struct FrontPartition {
    std::vector<std::vector<int>> fronts;
};

/// Fast non-dominated sorting under constrained domination (which reduces to
/// plain dominance when every member is feasible).
FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> population);

/// Crowding distance within one front: boundary points per objective get
/// +infinity, interior points accumulate normalized neighbor gaps, objectives
/// with zero range contribute nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Exact hypervolume of the region dominated by `points` and bounded by
/// `ref`, for 3 objectives (z-sweep over 2-D staircase areas). Points that do
/// not weakly dominate ref are clipped out. Empty input yields 0.
double hypervolume(std::span<const std::array<double, 3>> points,
                   const std::array<double, 3>& ref);
double hypervolume(std::span<const ObjectiveVector> front, const ObjectiveVector& ref);

/// Reporting convention: objectives min-max normalized over the union of all
/// compared fronts, reference point slightly outside the unit cube.
inline constexpr std::array<double, 3> kNormReference{1.05, 1.05, 1.05};

struct NormBounds {
    std::array<double, 3> lo{0.0, 0.0, 0.0};
    std::array<double, 3> hi{1.0, 1.0, 1.0};

    /// Extends the bounds to cover `v`.
    void absorb(const std::array<double, 3>& v);
    static NormBounds covering(std::span<const ObjectiveVector> points);

    /// Min-max normalization; a zero-range objective maps to 0.
    std::array<double, 3> normalize(const std::array<double, 3>& v) const;
};

/// Hypervolume of a front after normalization, against kNormReference.
double normalized_hypervolume(std::span<const ObjectiveVector> front, const NormBounds& bounds);

/// Mutually non-dominated (placement, objectives) pairs.
struct ParetoFront {
    struct Entry {
        Placement placement;
        ObjectiveVector objectives;
    };
    std::vector<Entry> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
    std::vector<ObjectiveVector> objective_vectors() const;
};

/// Removes dominated entries and deduplicates exact objective-vector
/// duplicates (keeping the lexicographically smallest placement), then sorts
/// by (time, energy, cost, placement) for stable output.
void prune_to_front(std::vector<ParetoFront::Entry>& entries);

/// Exact feasible Pareto set by exhausting all y^x placements.
/// Throws TooLarge when y^x exceeds `cap`.
ParetoFront brute_force_pareto(const Application& app, const Infrastructure& infra,
                               std::uint64_t cap = 1'000'000,
                               const EvalOptions& options = {});

} // namespace fogplace
