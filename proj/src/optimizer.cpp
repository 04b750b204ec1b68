#include "fogplace/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "fogplace/rng.hpp"

namespace fogplace {

void validate(const Nsga2Params& params) {
    if (params.population < 4 || params.population % 2 != 0)
        throw InvalidParams("population must be even and >= 4");
    if (params.crossover_rate < 0.0 || params.crossover_rate > 1.0)
        throw InvalidParams("crossover_rate must lie in [0, 1]");
    if (params.mutation_rate && (*params.mutation_rate < 0.0 || *params.mutation_rate > 1.0))
        throw InvalidParams("mutation_rate must lie in [0, 1]");
    if (params.max_evaluations < params.population)
        throw InvalidParams("max_evaluations must cover at least one population");
    if (params.archive_cap_factor < 1)
        throw InvalidParams("archive_cap_factor must be >= 1");
}

namespace {

struct Individual {
    Placement placement;
    ObjectiveVector objectives;
    int rank = 0;
    double crowding = 0.0;
};

// Tournament preference under Deb's rules; false on full ties.
bool tournament_better(const Individual& a, const Individual& b) {
    if (a.objectives.feasible != b.objectives.feasible) return a.objectives.feasible;
    if (!a.objectives.feasible) return a.objectives.violation < b.objectives.violation;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

void assign_ranks_and_crowding(std::vector<Individual>& population) {
    std::vector<ObjectiveVector> vectors;
    vectors.reserve(population.size());
    for (const auto& ind : population) vectors.push_back(ind.objectives);
    const FrontPartition partition = fast_nondominated_sort(vectors);
    for (std::size_t r = 0; r < partition.fronts.size(); ++r) {
        std::vector<ObjectiveVector> front;
        front.reserve(partition.fronts[r].size());
        for (int idx : partition.fronts[r]) front.push_back(vectors[idx]);
        const std::vector<double> crowd = crowding_distance(front);
        for (std::size_t i = 0; i < partition.fronts[r].size(); ++i) {
            population[partition.fronts[r][i]].rank = static_cast<int>(r);
            population[partition.fronts[r][i]].crowding = crowd[i];
        }
    }
}

class Archive {
public:
    Archive(std::size_t cap) : cap_(cap) {}

    void offer(const Individual& ind) {
        if (!ind.objectives.feasible) return;
        for (const auto& e : entries_) {
            if (e.objectives.values() == ind.objectives.values() ||
                dominates(e.objectives, ind.objectives))
                return;
        }
        std::erase_if(entries_, [&](const ParetoFront::Entry& e) {
            return dominates(ind.objectives, e.objectives);
        });
        entries_.push_back({ind.placement, ind.objectives});
        if (entries_.size() > cap_) prune();
    }

    const std::vector<ParetoFront::Entry>& entries() const { return entries_; }

    std::vector<ObjectiveVector> snapshot() const {
        std::vector<ObjectiveVector> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(e.objectives);
        return out;
    }

private:
    void prune() {
        // Drop the most crowded interior entries; boundary points carry
        // infinite distance and are always kept.
        std::vector<ObjectiveVector> vectors;
        vectors.reserve(entries_.size());
        for (const auto& e : entries_) vectors.push_back(e.objectives);
        const std::vector<double> crowd = crowding_distance(vectors);
        std::vector<std::size_t> order(entries_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return crowd[a] != crowd[b] ? crowd[a] > crowd[b] : a < b;
        });
        std::vector<ParetoFront::Entry> kept;
        kept.reserve(cap_);
        for (std::size_t i = 0; i < cap_; ++i) kept.push_back(entries_[order[i]]);
        entries_ = std::move(kept);
    }

    std::size_t cap_;
    std::vector<ParetoFront::Entry> entries_;
};

} // namespace

Nsga2Result nsga2_run(const Application& app, const Infrastructure& infra,
                      const Nsga2Params& params, const EvalOptions& options) {
    validate(params);
    const auto start = std::chrono::steady_clock::now();

    const int x = app.size();
    const int y = infra.size();
    const int n = params.population;
    const double mutation_rate = params.mutation_rate.value_or(1.0 / x);

    Nsga2Result result;
    auto& stats = result.stats;

    Archive archive(static_cast<std::size_t>(params.archive_cap_factor) * n);
    std::vector<std::vector<ObjectiveVector>> snapshots;
    std::vector<std::int64_t> snapshot_evals;

    constexpr double inf = std::numeric_limits<double>::infinity();
    stats.objective_bounds.lo = {inf, inf, inf};
    stats.objective_bounds.hi = {-inf, -inf, -inf};
    auto evaluate_individual = [&](Individual& ind) {
        ind.objectives = evaluate(app, infra, ind.placement, options);
        ++stats.evaluations_used;
        if (ind.objectives.feasible) {
            stats.any_feasible = true;
            stats.objective_bounds.absorb(ind.objectives.values());
        }
    };

    // Every genome evaluated so far; mating retries against this set so the
    // budget is not burnt on re-evaluating known placements.
    std::set<std::vector<int>> evaluated;

    // Initialization: uniform random genomes.
    std::vector<Individual> population(n);
    {
        Rng rng(derive_seed(params.seed, 0, 0));
        for (auto& ind : population) {
            ind.placement.assign.resize(x);
            for (int g = 0; g < x; ++g)
                ind.placement.assign[g] = static_cast<int>(rng.uniform_below(y));
            evaluated.insert(ind.placement.assign);
            evaluate_individual(ind);
        }
    }
    assign_ranks_and_crowding(population);
    for (const auto& ind : population)
        if (ind.rank == 0) archive.offer(ind);
    if (params.record_hv_trace) {
        snapshots.push_back(archive.snapshot());
        snapshot_evals.push_back(stats.evaluations_used);
    }

    std::int64_t generation = 0;
    while (stats.evaluations_used < params.max_evaluations) {
        Rng rng(derive_seed(params.seed, 1, static_cast<std::uint64_t>(generation)));

        auto tournament = [&]() -> const Individual& {
            const int a = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(n)));
            const int b = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(n)));
            if (tournament_better(population[a], population[b])) return population[a];
            if (tournament_better(population[b], population[a])) return population[b];
            return population[std::min(a, b)];
        };

        // Mating rejects already-evaluated genomes for a few attempts; tiny
        // discrete spaces would otherwise spend most of the budget
        // re-evaluating the same placements.
        std::vector<Individual> offspring;
        offspring.reserve(n);
        while (static_cast<int>(offspring.size()) < n) {
            Individual c1, c2;
            for (int attempt = 0;; ++attempt) {
                const Individual& p1 = tournament();
                const Individual& p2 = tournament();
                c1.placement = p1.placement;
                c2.placement = p2.placement;
                if (rng.bernoulli(params.crossover_rate)) {
                    for (int g = 0; g < x; ++g) {
                        if (rng.bernoulli(0.5))
                            std::swap(c1.placement.assign[g], c2.placement.assign[g]);
                    }
                }
                for (Individual* child : {&c1, &c2})
                    for (int g = 0; g < x; ++g)
                        if (rng.bernoulli(mutation_rate))
                            child->placement.assign[g] = static_cast<int>(rng.uniform_below(y));
                if (attempt >= 9 || !evaluated.contains(c1.placement.assign) ||
                    !evaluated.contains(c2.placement.assign))
                    break;
            }
            for (Individual* child : {&c1, &c2}) {
                evaluated.insert(child->placement.assign);
                evaluate_individual(*child);
                offspring.push_back(std::move(*child));
            }
        }

        // (μ+λ) survival by rank, then crowding within the split front.
        std::vector<Individual> combined = std::move(population);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        assign_ranks_and_crowding(combined);
        for (const auto& ind : combined)
            if (ind.rank == 0) archive.offer(ind);

        std::vector<std::size_t> order(combined.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (combined[a].rank != combined[b].rank) return combined[a].rank < combined[b].rank;
            if (combined[a].crowding != combined[b].crowding)
                return combined[a].crowding > combined[b].crowding;
            return a < b;
        });
        // Survivors prefer distinct genomes; duplicates only pad the tail.
        // Small discrete spaces otherwise flood with copies and stop exploring.
        population.clear();
        population.reserve(n);
        std::set<std::vector<int>> seen;
        std::vector<std::size_t> duplicates;
        for (std::size_t idx : order) {
            if (static_cast<int>(population.size()) == n) break;
            if (seen.insert(combined[idx].placement.assign).second)
                population.push_back(combined[idx]);
            else
                duplicates.push_back(idx);
        }
        for (std::size_t i = 0; static_cast<int>(population.size()) < n; ++i)
            population.push_back(combined[duplicates[i]]);

        if (params.record_hv_trace) {
            snapshots.push_back(archive.snapshot());
            snapshot_evals.push_back(stats.evaluations_used);
        }
        ++generation;
    }

    // Final front: archive merged with the final population's feasible rank 0;
    // with no feasible discovery, fall back to the least-violating rank 0.
    assign_ranks_and_crowding(population);
    std::vector<ParetoFront::Entry> entries = archive.entries();
    for (const auto& ind : population)
        if (ind.rank == 0 && ind.objectives.feasible)
            entries.push_back({ind.placement, ind.objectives});
    if (entries.empty()) {
        for (const auto& ind : population)
            if (ind.rank == 0) entries.push_back({ind.placement, ind.objectives});
    }
    prune_to_front(entries);
    result.front.entries = std::move(entries);

    if (params.record_hv_trace) {
        // One fixed normalization (the run's feasible-objective envelope)
        // keeps trace entries comparable across generations.
        stats.hv_trace.reserve(snapshots.size());
        for (std::size_t i = 0; i < snapshots.size(); ++i) {
            const double hv = stats.any_feasible
                                  ? normalized_hypervolume(snapshots[i], stats.objective_bounds)
                                  : 0.0;
            stats.hv_trace.emplace_back(snapshot_evals[i], hv);
        }
    }

    stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace {

bool lexicographic_less(const ParetoFront::Entry& a, const ParetoFront::Entry& b) {
    const auto va = a.objectives.values();
    const auto vb = b.objectives.values();
    if (va != vb) return va < vb;
    return a.placement.assign < b.placement.assign;
}

} // namespace

ParetoFront::Entry select_placement(const ParetoFront& front, const SelectionStrategy& strategy) {
    if (front.empty()) throw EmptyFront("cannot select from an empty front");
    if (strategy.kind == SelectionStrategy::Kind::LowLatency) {
        const ParetoFront::Entry* best = &front.entries.front();
        for (const auto& e : front.entries)
            if (lexicographic_less(e, *best)) best = &e;
        return *best;
    }
    // WeightedIdeal: weighted sum of the min-max normalized objectives.
    const auto vectors = front.objective_vectors();
    const NormBounds bounds = NormBounds::covering(vectors);
    const ParetoFront::Entry* best = nullptr;
    double best_score = 0.0;
    for (const auto& e : front.entries) {
        const auto norm = bounds.normalize(e.objectives.values());
        const double score =
            strategy.weights[0] * norm[0] + strategy.weights[1] * norm[1] + strategy.weights[2] * norm[2];
        if (!best || score < best_score || (score == best_score && lexicographic_less(e, *best))) {
            best = &e;
            best_score = score;
        }
    }
    return *best;
}

} // namespace fogplace
