#include <doctest.h>

#include <cmath>

#include "fogplace/optimizer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fogplace;
using namespace fogplace::testing;

namespace {

Nsga2Params small_params(std::uint64_t seed) {
    Nsga2Params params;
    params.population = 20;
    params.max_evaluations = 600;
    params.seed = seed;
    return params;
}

ParetoFront::Entry entry(double t, double e, double c, std::vector<int> assign) {
    return {Placement{std::move(assign)}, ObjectiveVector{t, e, c, true, 0.0}};
}

} // namespace

TEST_CASE("parameter validation") {
    Nsga2Params p;
    p.population = 3;
    CHECK_THROWS_AS(validate(p), InvalidParams);
    p.population = 5;
    CHECK_THROWS_AS(validate(p), InvalidParams);
    p = {};
    p.crossover_rate = 1.5;
    CHECK_THROWS_AS(validate(p), InvalidParams);
    p = {};
    p.mutation_rate = -0.1;
    CHECK_THROWS_AS(validate(p), InvalidParams);
    p = {};
    p.max_evaluations = 10;
    CHECK_THROWS_AS(validate(p), InvalidParams);
    CHECK_NOTHROW(validate(Nsga2Params{}));
}

TEST_CASE("tiny search spaces collapse to the exact Pareto set") {
    std::vector<Device> devices{make_device(0, Tier::Me, 5e3, 10.0, 1.0, 0.01),
                                make_device(1, Tier::Me, 8e3, 20.0, 1.0, 0.02),
                                make_device(2, Tier::Me, 2e3, 5.0, 1.0, 0.005)};
    Infrastructure infra = make_infrastructure(std::move(devices), full_mesh(3, 300.0, 0.01), 0);
    ApplicationSpec spec;
    spec.components = {Component{0, 1000.0, 100.0, 10.0, 10.0}};
    spec.data_in = {2.0};
    const Application app = build_application(spec);

    const ParetoFront exact = brute_force_pareto(app, infra, 100);
    const Nsga2Result run = nsga2_run(app, infra, small_params(1));
    REQUIRE(run.front.size() == exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i)
        CHECK(run.front.entries[i].objectives == exact.entries[i].objectives);
}

TEST_CASE("same seed reproduces the run bit for bit") {
    Rng rng(61);
    const Instance inst = random_instance(rng);
    const Nsga2Result a = nsga2_run(inst.app, inst.infra, small_params(42));
    const Nsga2Result b = nsga2_run(inst.app, inst.infra, small_params(42));
    REQUIRE(a.front.size() == b.front.size());
    for (std::size_t i = 0; i < a.front.size(); ++i) {
        CHECK(a.front.entries[i].placement == b.front.entries[i].placement);
        CHECK(a.front.entries[i].objectives == b.front.entries[i].objectives);
    }
    CHECK(a.stats.evaluations_used == b.stats.evaluations_used);
    CHECK(a.stats.hv_trace == b.stats.hv_trace);

    const Nsga2Result c = nsga2_run(inst.app, inst.infra, small_params(43));
    CHECK(a.stats.evaluations_used == c.stats.evaluations_used); // budget independent of seed
}

TEST_CASE("evaluation budget is respected") {
    Rng rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const Instance inst = random_instance(rng);
        Nsga2Params params = small_params(trial);
        params.max_evaluations = 230; // not a population multiple
        const Nsga2Result run = nsga2_run(inst.app, inst.infra, params);
        CHECK(run.stats.evaluations_used <= params.max_evaluations + params.population);
        CHECK(run.stats.evaluations_used >= params.max_evaluations);
    }
}

TEST_CASE("front entries are feasible and unbeaten by any enumerated placement") {
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        const Instance inst = random_instance(rng);
        const Nsga2Result run = nsga2_run(inst.app, inst.infra, small_params(trial));
        const auto everything = enumerate_feasible(inst.app, inst.infra);
        if (everything.empty()) continue;
        for (const auto& e : run.front.entries) {
            CHECK(e.objectives.feasible);
            for (const auto& candidate : everything)
                CHECK_FALSE(dominates(candidate.objectives, e.objectives));
        }
    }
}

TEST_CASE("five-device three-component instance reaches the oracle hypervolume") {
    Rng rng(2024);
    Instance inst = random_instance(rng);
    while (inst.app.size() != 3 || inst.infra.size() != 5 ||
           brute_force_pareto(inst.app, inst.infra).empty())
        inst = random_instance(rng);

    const ParetoFront exact = brute_force_pareto(inst.app, inst.infra);
    Nsga2Params params;
    params.population = 40;
    params.max_evaluations = 5000;
    params.seed = 9;
    const Nsga2Result run = nsga2_run(inst.app, inst.infra, params);

    std::vector<ObjectiveVector> all = exact.objective_vectors();
    const auto found = run.front.objective_vectors();
    all.insert(all.end(), found.begin(), found.end());
    const NormBounds bounds = NormBounds::covering(all);
    const double hv_exact = normalized_hypervolume(exact.objective_vectors(), bounds);
    const double hv_found = normalized_hypervolume(found, bounds);
    CHECK(hv_found >= 0.99 * hv_exact);
}

TEST_CASE("hypervolume trace never falls under its fixed normalization") {
    Rng rng(73);
    const Instance inst = random_instance(rng);
    Nsga2Params params = small_params(5);
    params.max_evaluations = 2000;
    const Nsga2Result run = nsga2_run(inst.app, inst.infra, params);
    REQUIRE(run.stats.hv_trace.size() > 1);
    for (std::size_t i = 1; i < run.stats.hv_trace.size(); ++i) {
        CHECK(run.stats.hv_trace[i].first > run.stats.hv_trace[i - 1].first);
        CHECK(run.stats.hv_trace[i].second >= run.stats.hv_trace[i - 1].second - 1e-12);
    }
}

TEST_CASE("a fully infeasible instance reports least-violating individuals") {
    std::vector<Device> devices{make_device(0, Tier::Me, 1000.0),
                                make_device(1, Tier::Me, 900.0)};
    Infrastructure infra = make_infrastructure(std::move(devices), full_mesh(2, 100.0, 0.0), 0);
    ApplicationSpec spec;
    spec.components = {Component{0, 100.0, 5000.0, 10.0, 10.0}}; // no device is fast enough
    spec.data_in = {1.0};
    const Application app = build_application(spec);

    const Nsga2Result run = nsga2_run(app, infra, small_params(2));
    REQUIRE_FALSE(run.front.empty());
    for (const auto& e : run.front.entries) {
        CHECK_FALSE(e.objectives.feasible);
        CHECK(e.objectives.violation > 0.0);
        CHECK(e.placement.assign[0] == 0); // 5000/1000 beats 5000/900
    }
}

TEST_CASE("select_placement strategies and tie-breaks") {
    ParetoFront front;
    front.entries = {entry(0.1, 50, 0.4, {0}), entry(0.5, 20, 0.2, {1}), entry(0.3, 30, 0.3, {2})};

    const auto low = select_placement(front);
    CHECK(low.placement.assign == std::vector<int>{0});

    const auto weighted =
        select_placement(front, SelectionStrategy::weighted_ideal({0.0, 1.0, 0.0}));
    CHECK(weighted.placement.assign == std::vector<int>{1});

    ParetoFront tie;
    tie.entries = {entry(0.2, 10, 0.9, {0}), entry(0.2, 9, 1.0, {1})};
    CHECK(select_placement(tie).placement.assign == std::vector<int>{1});

    CHECK_THROWS_AS(select_placement(ParetoFront{}), EmptyFront);
}

TEST_CASE("low-latency choice is invariant under monotone transforms") {
    Rng rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        ParetoFront front;
        const int n = 2 + static_cast<int>(rng.uniform_below(6));
        for (int i = 0; i < n; ++i)
            front.entries.push_back(entry(rng.uniform_real(0, 5), rng.uniform_real(0, 100),
                                          rng.uniform_real(0, 1), {i}));
        const auto base = select_placement(front);

        ParetoFront transformed = front;
        for (auto& e : transformed.entries) {
            e.objectives.time = std::exp(e.objectives.time);
            e.objectives.energy = 3.0 * e.objectives.energy + 7.0;
            e.objectives.cost = std::sqrt(e.objectives.cost);
        }
        CHECK(select_placement(transformed).placement == base.placement);
    }
}
