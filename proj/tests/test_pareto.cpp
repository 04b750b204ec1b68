#include <doctest.h>

#include <cmath>

#include "fogplace/pareto.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fogplace;
using namespace fogplace::testing;

namespace {

ObjectiveVector vec(double t, double e, double c) { return {t, e, c, true, 0.0}; }

bool close(double a, double b, double rel = 1e-9) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("dominance on objective triples") {
    CHECK(dominates(vec(1, 2, 3), vec(2, 2, 3)));
    CHECK_FALSE(dominates(vec(1, 2, 3), vec(2, 1, 3)));
    CHECK_FALSE(dominates(vec(2, 1, 3), vec(1, 2, 3)));
    CHECK_FALSE(dominates(vec(1, 2, 3), vec(1, 2, 3)));
}

TEST_CASE("dominance is a strict partial order") {
    Rng rng(3);
    const auto pop = random_vectors(rng, 60);
    for (const auto& a : pop) CHECK_FALSE(dominates(a, a));
    for (const auto& a : pop)
        for (const auto& b : pop)
            if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
    for (std::size_t i = 0; i < pop.size(); ++i)
        for (std::size_t j = 0; j < pop.size(); ++j)
            for (std::size_t k = 0; k < pop.size(); k += 7) {
                if (dominates(pop[i], pop[j]) && dominates(pop[j], pop[k]))
                    CHECK(dominates(pop[i], pop[k]));
            }
}

TEST_CASE("constrained domination follows the feasibility rules") {
    ObjectiveVector feasible = vec(5, 5, 5);
    ObjectiveVector bad = vec(1, 1, 1);
    bad.feasible = false;
    bad.violation = 0.5;
    ObjectiveVector worse = bad;
    worse.violation = 0.9;
    CHECK(constrained_dominates(feasible, bad));
    CHECK_FALSE(constrained_dominates(bad, feasible));
    CHECK(constrained_dominates(bad, worse));
    CHECK_FALSE(constrained_dominates(worse, bad));
}

TEST_CASE("fast non-dominated sort splits into ranks") {
    const std::vector<ObjectiveVector> pop{vec(1, 1, 1), vec(2, 2, 2), vec(1, 2, 2)};
    const FrontPartition partition = fast_nondominated_sort(pop);
    REQUIRE(partition.fronts.size() == 3);
    CHECK(partition.fronts[0] == std::vector<int>{0});
    CHECK(partition.fronts[1] == std::vector<int>{2});
    CHECK(partition.fronts[2] == std::vector<int>{1});

    const std::vector<ObjectiveVector> same(5, vec(1, 2, 3));
    CHECK(fast_nondominated_sort(same).fronts.size() == 1);
}

TEST_CASE("sorting matches the pairwise peeling oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pop = random_vectors(rng, 200, 0.25);
        const FrontPartition partition = fast_nondominated_sort(pop);
        const auto expected = peel_fronts(pop);
        REQUIRE(partition.fronts.size() == expected.size());
        for (std::size_t r = 0; r < expected.size(); ++r) {
            auto got = partition.fronts[r];
            auto want = expected[r];
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
    }
}

TEST_CASE("crowding distance boundary and interior rules") {
    CHECK(crowding_distance(std::vector<ObjectiveVector>{vec(1, 1, 1), vec(2, 2, 2)}) ==
          std::vector<double>{std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity()});

    const std::vector<ObjectiveVector> collinear{vec(0, 0, 0), vec(1, 1, 1), vec(2, 2, 2)};
    const auto d = crowding_distance(collinear);
    CHECK(std::isinf(d[0]));
    CHECK(d[1] == 3.0); // one unit gap per non-degenerate objective
    CHECK(std::isinf(d[2]));

    const std::vector<ObjectiveVector> flat{vec(0, 0, 7), vec(1, 1, 7), vec(2, 2, 7)};
    CHECK(crowding_distance(flat)[1] == 2.0); // constant cost contributes 0
}

TEST_CASE("hypervolume of simple fronts") {
    const std::array<double, 3> ref{1, 1, 1};
    std::vector<std::array<double, 3>> one{{0.5, 0.5, 0.5}};
    CHECK(close(hypervolume(one, ref), 0.125));

    std::vector<std::array<double, 3>> two{{0.2, 0.8, 0.8}, {0.8, 0.2, 0.2}};
    CHECK(close(hypervolume(two, ref), 0.152));

    std::vector<std::array<double, 3>> on_ref{{1, 1, 1}};
    CHECK(hypervolume(on_ref, ref) == 0.0);

    std::vector<std::array<double, 3>> outside{{0.5, 0.5, 1.5}, {0.25, 0.25, 0.25}};
    CHECK(close(hypervolume(outside, ref), 0.75 * 0.75 * 0.75));

    CHECK(hypervolume(std::vector<std::array<double, 3>>{}, ref) == 0.0);
}

TEST_CASE("hypervolume matches inclusion-exclusion on random fronts") {
    Rng rng(29);
    const std::array<double, 3> ref{1.1, 1.1, 1.1};
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_below(10));
        std::vector<std::array<double, 3>> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.uniform_real(0.0, 1.0), rng.uniform_real(0.0, 1.0),
                           rng.uniform_real(0.0, 1.0)});
        CHECK(close(hypervolume(pts, ref), hv_inclusion_exclusion(pts, ref), 1e-9));
    }
}

TEST_CASE("hypervolume grows with non-dominated points and ignores dominated ones") {
    Rng rng(41);
    const std::array<double, 3> ref{1.05, 1.05, 1.05};
    std::vector<std::array<double, 3>> pts{{0.5, 0.5, 0.5}};
    double hv = hypervolume(pts, ref);
    for (int step = 0; step < 300; ++step) {
        const std::array<double, 3> p{rng.uniform_real(0.0, 1.0), rng.uniform_real(0.0, 1.0),
                                      rng.uniform_real(0.0, 1.0)};
        pts.push_back(p);
        const double next = hypervolume(pts, ref);
        CHECK(next >= hv - 1e-12);
        bool dominated = false;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto& q = pts[i];
            if (q[0] <= p[0] && q[1] <= p[1] && q[2] <= p[2]) {
                dominated = true;
                break;
            }
        }
        if (dominated) CHECK(close(next, hv, 1e-12));
        hv = next;
    }
}

TEST_CASE("hypervolume is invariant under shared affine rescaling") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ObjectiveVector> front;
        for (int i = 0; i < 8; ++i)
            front.push_back(vec(rng.uniform_real(0, 4), rng.uniform_real(0, 90),
                                rng.uniform_real(0, 0.7)));
        const NormBounds bounds = NormBounds::covering(front);
        const double scale[3] = {rng.uniform_real(0.5, 3.0), rng.uniform_real(0.5, 3.0),
                                 rng.uniform_real(0.5, 3.0)};
        const double shift[3] = {rng.uniform_real(-1, 1), rng.uniform_real(-1, 1),
                                 rng.uniform_real(-1, 1)};
        std::vector<ObjectiveVector> moved;
        for (const auto& v : front)
            moved.push_back(vec(v.time * scale[0] + shift[0], v.energy * scale[1] + shift[1],
                                v.cost * scale[2] + shift[2]));
        NormBounds moved_bounds;
        for (int k = 0; k < 3; ++k) {
            moved_bounds.lo[k] = bounds.lo[k] * scale[k] + shift[k];
            moved_bounds.hi[k] = bounds.hi[k] * scale[k] + shift[k];
        }
        CHECK(close(normalized_hypervolume(front, bounds),
                    normalized_hypervolume(moved, moved_bounds), 1e-9));
    }
}

TEST_CASE("brute force Pareto enumeration") {
    SUBCASE("single component over three devices with one infeasible") {
        std::vector<Device> devices{make_device(0, Tier::Me, 5e3, 10.0, 1.0, 0.01),
                                    make_device(1, Tier::Me, 8e3, 20.0, 1.0, 0.02),
                                    make_device(2, Tier::Me, 500.0)};
        Infrastructure infra =
            make_infrastructure(std::move(devices), full_mesh(3, 300.0, 0.01), 0);
        ApplicationSpec spec;
        spec.components = {Component{0, 1000.0, 900.0, 10.0, 10.0}}; // device 2 too slow
        spec.data_in = {2.0};
        const Application app = build_application(spec);

        const ParetoFront front = brute_force_pareto(app, infra, 100);
        CHECK(front.size() <= 2);
        CHECK(front.size() >= 1);
        for (const auto& a : front.entries) {
            CHECK(a.objectives.feasible);
            CHECK(a.placement.assign[0] != 2);
            for (const auto& b : front.entries)
                CHECK_FALSE(dominates(a.objectives, b.objectives));
        }
    }
    SUBCASE("matches an independent pairwise scan") {
        Rng rng(53);
        for (int trial = 0; trial < 20; ++trial) {
            const Instance inst = random_instance(rng);
            const ParetoFront front = brute_force_pareto(inst.app, inst.infra);
            const auto everything = enumerate_feasible(inst.app, inst.infra);

            // closure: nothing enumerated dominates a front member
            for (const auto& e : front.entries)
                for (const auto& candidate : everything)
                    CHECK_FALSE(dominates(candidate.objectives, e.objectives));

            // completeness: every non-dominated vector appears
            std::size_t distinct = 0;
            std::vector<std::array<double, 3>> seen;
            for (const auto& candidate : everything) {
                bool dominated = false;
                for (const auto& other : everything)
                    if (dominates(other.objectives, candidate.objectives)) {
                        dominated = true;
                        break;
                    }
                if (dominated) continue;
                const auto v = candidate.objectives.values();
                if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
                    seen.push_back(v);
                    ++distinct;
                }
            }
            CHECK(front.size() == distinct);
        }
    }
    SUBCASE("cap guard") {
        Rng rng(57);
        const Instance inst = random_instance(rng);
        CHECK_THROWS_AS(brute_force_pareto(inst.app, inst.infra, 2), TooLarge);
    }
}
