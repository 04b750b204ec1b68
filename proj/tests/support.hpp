#pragma once

// Shared fixtures for the test suites: the hand-unrolled two-device chain
// instance, a single-device cloud instance, and a seeded random-instance
// generator for oracle comparisons.

#include <vector>

#include "fogplace/domain.hpp"
#include "fogplace/objectives.hpp"
#include "fogplace/rng.hpp"

namespace fogplace::testing {

inline Device make_device(int id, Tier tier, double cpu, double p_compute = 0.0,
                          double p_network = 0.0, double cp = 0.0, double cs = 0.0,
                          double cr = 0.0) {
    Device d;
    d.id = id;
    d.tier = tier;
    d.cpu = cpu;
    d.mem = 100000.0;
    d.stor = 1000000.0;
    d.p_compute = p_compute;
    d.p_network = p_network;
    d.cp = cp;
    d.cs = cs;
    d.cr = cr;
    return d;
}

inline std::vector<Link> full_mesh(int y, double bw, double latency) {
    std::vector<Link> links(static_cast<std::size_t>(y) * y, self_link());
    for (int a = 0; a < y; ++a)
        for (int b = 0; b < y; ++b)
            if (a != b) links[static_cast<std::size_t>(a) * y + b] = Link{bw, latency};
    return links;
}

struct Instance {
    Application app;
    Infrastructure infra;
};

// Two components 1000 MI each over devices of 10k and 2k MIPS with a
// 250 Mbit/s link: completion 0.604 s, energy 41.504 J,
// cost 0.015000137 ¢ for placement (0, 1).
inline Instance chain_example() {
    std::vector<Device> devices{
        make_device(0, Tier::Me, 10e3, 400.0, 0.0, 0.0, 0.0, 0.0),
        make_device(1, Tier::Me, 2e3, 3.0, 1.0, 0.03, 1e-6, 3e-6),
    };
    Infrastructure infra =
        make_infrastructure(std::move(devices), full_mesh(2, 250.0, 0.0), 0);
    ApplicationSpec spec;
    spec.name = "chain_example";
    spec.components = {Component{0, 1000.0, 100.0, 10.0, 10.0},
                       Component{1, 1000.0, 100.0, 10.0, 10.0}};
    spec.data_in = {0.0, 1.0};
    return {build_application(std::move(spec)), std::move(infra)};
}

// A source ME plus a cloud device behind a high-latency path; the single
// component has no input data, so only its computation time counts.
inline Instance cloud_example() {
    std::vector<Device> devices{
        make_device(0, Tier::Me, 5e3),
        make_device(1, Tier::Cdc, 250e3),
    };
    Infrastructure infra =
        make_infrastructure(std::move(devices), full_mesh(2, 1000.0, 0.160), 0);
    ApplicationSpec spec;
    spec.name = "cloud_example";
    spec.components = {Component{0, 2000.0, 100.0, 10.0, 10.0}};
    spec.data_in = {0.0};
    return {build_application(std::move(spec)), std::move(infra)};
}

// Small mixed-feasibility instance for oracle comparisons: x in [2,4],
// y in [3,6], some (component, device) pairs violate cpu or mem.
inline Instance random_instance(Rng& rng) {
    const int x = 2 + static_cast<int>(rng.uniform_below(3));
    const int y = 3 + static_cast<int>(rng.uniform_below(4));

    std::vector<Device> devices;
    for (int j = 0; j < y; ++j) {
        Device d;
        d.tier = static_cast<Tier>(rng.uniform_below(4));
        d.cpu = rng.uniform_real(1000.0, 100000.0);
        d.mem = rng.uniform_real(200.0, 4000.0);
        d.stor = rng.uniform_real(500.0, 64000.0);
        d.p_compute = rng.uniform_real(1.0, 1500.0);
        d.p_network = rng.uniform_real(0.5, 1000.0);
        d.cp = rng.uniform_real(0.005, 0.06);
        d.cs = rng.uniform_real(1e-7, 3e-5);
        d.cr = rng.uniform_real(1e-6, 5e-6);
        devices.push_back(d);
    }
    std::vector<Link> links(static_cast<std::size_t>(y) * y, self_link());
    for (int a = 0; a < y; ++a)
        for (int b = a + 1; b < y; ++b) {
            const Link l{rng.uniform_real(100.0, 5000.0), rng.uniform_real(0.0, 0.15)};
            links[static_cast<std::size_t>(a) * y + b] = l;
            links[static_cast<std::size_t>(b) * y + a] = l;
        }
    const int source = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(y)));
    Infrastructure infra = make_infrastructure(std::move(devices), std::move(links), source);

    ApplicationSpec spec;
    spec.name = "random_instance";
    for (int i = 0; i < x; ++i) {
        Component c;
        c.instr = rng.uniform_real(0.0, 3000.0);
        c.cpu_req = rng.uniform_real(100.0, 1200.0);
        c.mem_req = rng.uniform_real(10.0, 300.0);
        c.stor_req = rng.uniform_real(64.0, 512.0);
        spec.components.push_back(c);
        spec.data_in.push_back(rng.bernoulli(0.2) ? 0.0 : rng.uniform_real(0.1, 8.0));
    }
    return {build_application(std::move(spec)), std::move(infra)};
}

// Deterministic sequence of random objective vectors (optionally with an
// infeasible share carrying positive violations).
inline std::vector<ObjectiveVector> random_vectors(Rng& rng, int count,
                                                   double infeasible_share = 0.0) {
    std::vector<ObjectiveVector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        ObjectiveVector v;
        v.time = rng.uniform_real(0.0, 10.0);
        v.energy = rng.uniform_real(0.0, 500.0);
        v.cost = rng.uniform_real(0.0, 2.0);
        if (rng.bernoulli(infeasible_share)) {
            v.feasible = false;
            v.violation = rng.uniform_real(1e-6, 3.0);
        }
        out.push_back(v);
    }
    return out;
}

} // namespace fogplace::testing
