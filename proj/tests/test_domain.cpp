#include <doctest.h>

#include "fogplace/domain.hpp"
#include "fogplace/scenarios.hpp"
#include "support.hpp"

using namespace fogplace;
using namespace fogplace::testing;

namespace {

ApplicationSpec minimal_spec(int components) {
    ApplicationSpec spec;
    spec.name = "app";
    for (int i = 0; i < components; ++i) {
        spec.components.push_back(Component{0, 2000.0, 100.0, 10.0, 10.0});
        spec.data_in.push_back(4.0);
    }
    return spec;
}

} // namespace

TEST_CASE("build_application validates chains") {
    auto spec = minimal_spec(1);
    spec.data_in = {4.0};
    const Application one = build_application(spec);
    CHECK(one.size() == 1);
    CHECK(one.components[0].instr == 2000.0);

    CHECK(build_application(minimal_spec(8)).size() == 8);

    auto mismatch = minimal_spec(3);
    mismatch.data_in.pop_back();
    CHECK_THROWS_AS(build_application(mismatch), LengthMismatch);

    CHECK_THROWS_AS(build_application(ApplicationSpec{}), EmptyApplication);

    auto negative = minimal_spec(1);
    negative.components[0].instr = -1.0;
    CHECK_THROWS_AS(build_application(negative), NegativeDemand);

    auto zero_cpu = minimal_spec(1);
    zero_cpu.components[0].cpu_req = 0.0;
    CHECK_THROWS_AS(build_application(zero_cpu), NegativeDemand);

    auto ids = build_application(minimal_spec(3));
    CHECK(ids.components[1].id == 1);
}

TEST_CASE("validate_placement applies the strict constraint block") {
    std::vector<Device> devices{make_device(0, Tier::Me, 10000.0)};
    devices[0].mem = 500.0;
    devices[0].stor = 64000.0;
    Infrastructure infra = make_infrastructure(std::move(devices), full_mesh(1, 100.0, 0.0), 0);

    ApplicationSpec spec;
    spec.components = {Component{0, 2000.0, 2000.0, 499.0, 10.0}};
    spec.data_in = {1024.0}; // 128 MB
    const Application app = build_application(spec);

    SUBCASE("inside every bound") {
        const auto report = validate_placement(app, infra, Placement{{0}});
        CHECK(report.feasible);
        CHECK(report.violation == 0.0);
        CHECK(report.per_component.empty());
    }
    SUBCASE("demand equal to capacity is infeasible but has zero excess") {
        ApplicationSpec boundary = spec;
        boundary.components[0].mem_req = 500.0;
        const auto report = validate_placement(build_application(boundary), infra, Placement{{0}});
        CHECK_FALSE(report.feasible);
        CHECK(report.violation > 0.0);
        CHECK(report.per_component.size() == 1);
    }
    SUBCASE("data is compared in MB") {
        ApplicationSpec data_heavy = spec;
        data_heavy.data_in = {64000.0 * 8.0}; // exactly the storage capacity
        const auto report = validate_placement(build_application(data_heavy), infra, Placement{{0}});
        CHECK_FALSE(report.feasible);
    }
    SUBCASE("shape mismatch") {
        CHECK_THROWS_AS(validate_placement(app, infra, Placement{{0, 0}}), ShapeMismatch);
        CHECK_THROWS_AS(validate_placement(app, infra, Placement{{7}}), ShapeMismatch);
    }
}

TEST_CASE("violation is positive exactly on infeasible placements") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = random_instance(rng);
        Placement p;
        for (int i = 0; i < inst.app.size(); ++i)
            p.assign.push_back(static_cast<int>(
                rng.uniform_below(static_cast<std::uint32_t>(inst.infra.size()))));
        const auto report = validate_placement(inst.app, inst.infra, p);
        CHECK(report.feasible == (report.violation == 0.0));
        CHECK(report.feasible == report.per_component.empty());
    }
}

TEST_CASE("raising capacities never breaks feasibility") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst = random_instance(rng);
        Placement p;
        for (int i = 0; i < inst.app.size(); ++i)
            p.assign.push_back(static_cast<int>(
                rng.uniform_below(static_cast<std::uint32_t>(inst.infra.size()))));
        const auto before = validate_placement(inst.app, inst.infra, p);

        Infrastructure bigger = inst.infra;
        for (auto& d : bigger.devices) {
            d.cpu *= 1.5;
            d.mem *= 1.5;
            d.stor *= 1.5;
        }
        const auto after = validate_placement(inst.app, bigger, p);
        if (before.feasible) CHECK(after.feasible);
        CHECK(after.violation <= before.violation);
    }
}

TEST_CASE("aggregate mode sums co-located demands") {
    std::vector<Device> devices{make_device(0, Tier::Me, 10000.0)};
    devices[0].mem = 500.0;
    Infrastructure infra = make_infrastructure(std::move(devices), full_mesh(1, 100.0, 0.0), 0);

    ApplicationSpec spec;
    spec.components = {Component{0, 100.0, 10.0, 300.0, 10.0},
                       Component{1, 100.0, 10.0, 300.0, 10.0}};
    spec.data_in = {0.0, 0.0};
    const Application app = build_application(spec);

    CHECK(validate_placement(app, infra, Placement{{0, 0}}).feasible);

    EvalOptions aggregate;
    aggregate.capacity_mode = CapacityMode::Aggregate;
    const auto report = validate_placement(app, infra, Placement{{0, 0}}, aggregate);
    CHECK_FALSE(report.feasible);
    CHECK(report.violation > 0.0);
}

TEST_CASE("make_infrastructure rejects broken link matrices") {
    std::vector<Device> devices{make_device(0, Tier::Me, 1000.0), make_device(1, Tier::Me, 1000.0)};
    auto links = full_mesh(2, 100.0, 0.01);
    links[1].bw = 200.0; // asymmetric
    CHECK_THROWS_AS(make_infrastructure(std::move(devices), std::move(links), 0), InvalidConfig);

    std::vector<Device> devices2{make_device(0, Tier::Me, 1000.0)};
    auto links2 = full_mesh(1, 100.0, 0.0);
    links2[0] = Link{100.0, 0.0}; // diagonal must stay the sentinel
    CHECK_THROWS_AS(make_infrastructure(std::move(devices2), std::move(links2), 0), InvalidConfig);
}

TEST_CASE("infrastructure links stay symmetric after construction") {
    InfraConfig cfg;
    cfg.seed = 5;
    const Infrastructure infra = build_infrastructure(cfg);
    for (int a = 0; a < infra.size(); ++a)
        for (int b = 0; b < infra.size(); ++b) {
            CHECK(infra.link(a, b).bw == infra.link(b, a).bw);
            CHECK(infra.link(a, b).latency == infra.link(b, a).latency);
        }
}
