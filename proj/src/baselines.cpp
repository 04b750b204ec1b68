#include "fogplace/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fogplace {

namespace {

// Per-component strict resource check (the aggregate variant is enforced by
// the running sums the callers maintain).
bool component_fits(const Component& c, double data_mb, const Device& d) {
    return c.cpu_req < d.cpu && c.mem_req < d.mem && data_mb < d.stor;
}

bool component_fits_aggregate(const Component& c, double data_mb, const Device& d,
                              double mem_used, double stor_used) {
    return c.cpu_req < d.cpu && mem_used + c.mem_req < d.mem && stor_used + data_mb < d.stor;
}

struct BestLeaf {
    bool found = false;
    double cost = 0.0;
    double time = 0.0;
    std::vector<int> assign;

    void consider(double c, double t, const std::vector<int>& a) {
        if (!found || c < cost || (c == cost && t < time) ||
            (c == cost && t == time && a < assign)) {
            found = true;
            cost = c;
            time = t;
            assign = a;
        }
    }
};

class CostSearch {
public:
    CostSearch(const Application& app, const Infrastructure& infra, const EvalOptions& options)
        : app_(app), infra_(infra), options_(options), x_(app.size()), y_(infra.size()) {
        domains_.resize(x_);
        for (int i = 0; i < x_; ++i) {
            const double data_mb = mbit_to_mb(app_.data_in[i]);
            for (int j = 0; j < y_; ++j) {
                // In aggregate mode co-location can only shrink feasibility,
                // so the per-component domain stays a valid superset and the
                // full check happens at the leaves.
                if (component_fits(app_.components[i], data_mb, infra_.devices[j]))
                    domains_[i].push_back(j);
            }
            if (domains_[i].empty())
                throw NoFeasiblePlacement("component " + std::to_string(i) +
                                          " fits no device");
        }
        suffix_lb_.assign(x_ + 1, 0.0);
        for (int i = x_ - 1; i >= 0; --i)
            suffix_lb_[i] = suffix_lb_[i + 1] + term_lower_bound(i);
    }

    Placement run() {
        assign_.assign(x_, 0);
        descend(0, infra_.source_device, 0.0, 0.0);
        if (!best_.found) throw NoFeasiblePlacement("no placement satisfies the constraints");
        return Placement{best_.assign};
    }

private:
    double term_lower_bound(int i) const {
        double lb = std::numeric_limits<double>::infinity();
        for (int j : domains_[i]) {
            double dur = 0.0;
            if (app_.data_in[i] > 0.0) {
                if (i == 0) {
                    dur = transfer_time(app_.data_in[i], infra_.link(infra_.source_device, j), options_);
                } else {
                    dur = 0.0; // predecessor may be co-located
                }
            }
            const Device& d = infra_.devices[j];
            const double term = computation_time(app_.components[i], d) * d.cp +
                                mbit_to_mb(app_.data_in[i]) * d.cs + dur * d.cr;
            lb = std::min(lb, term);
        }
        return lb;
    }

    void descend(int i, int prev, double acc_cost, double acc_time) {
        if (i == x_) {
            if (options_.capacity_mode == CapacityMode::Aggregate &&
                !validate_placement(app_, infra_, Placement{assign_}, options_).feasible)
                return;
            best_.consider(acc_cost, acc_time, assign_);
            return;
        }
        // Keep branches whose bound ties the incumbent: the tie-break on
        // completion time must still see them. The epsilon absorbs the
        // different summation order of the bound.
        const double margin = 1e-12 * std::max(1.0, std::abs(best_.cost));
        if (best_.found && acc_cost + suffix_lb_[i] > best_.cost + margin) return;
        for (int j : domains_[i]) {
            const double term = detail::cost_term(app_, infra_, i, prev, j, options_);
            if (best_.found && acc_cost + term + suffix_lb_[i + 1] > best_.cost + margin) continue;
            assign_[i] = j;
            descend(i + 1, j, acc_cost + term,
                    acc_time + detail::time_term(app_, infra_, i, prev, j, options_));
        }
    }

    const Application& app_;
    const Infrastructure& infra_;
    EvalOptions options_;
    int x_, y_;
    std::vector<std::vector<int>> domains_;
    std::vector<double> suffix_lb_;
    std::vector<int> assign_;
    BestLeaf best_;
};

bool search_space_within(const Application& app, const Infrastructure& infra, std::uint64_t cap) {
    std::uint64_t total = 1;
    const auto y = static_cast<std::uint64_t>(infra.size());
    for (int i = 0; i < app.size(); ++i) {
        if (total > cap / y) return false;
        total *= y;
    }
    return total <= cap;
}

Placement fspp_exact(const Application& app, const Infrastructure& infra,
                     const EvalOptions& options) {
    CostSearch search(app, infra, options);
    return search.run();
}

Placement fspp_greedy(const Application& app, const Infrastructure& infra,
                      const EvalOptions& options) {
    const int x = app.size();
    const int y = infra.size();
    std::vector<double> mem_used(y, 0.0), stor_used(y, 0.0);
    Placement placement;
    placement.assign.reserve(x);
    int prev = infra.source_device;
    for (int i = 0; i < x; ++i) {
        const Component& c = app.components[i];
        const double data_mb = mbit_to_mb(app.data_in[i]);
        int best = -1;
        double best_time = 0.0;
        for (int j = 0; j < y; ++j) {
            const Device& d = infra.devices[j];
            const bool fits = options.capacity_mode == CapacityMode::Aggregate
                                  ? component_fits_aggregate(c, data_mb, d, mem_used[j], stor_used[j])
                                  : component_fits(c, data_mb, d);
            if (!fits) continue;
            const double t = detail::time_term(app, infra, i, prev, j, options);
            if (best < 0 || d.cp < infra.devices[best].cp ||
                (d.cp == infra.devices[best].cp && t < best_time)) {
                best = j;
                best_time = t;
            }
        }
        if (best < 0)
            throw NoFeasiblePlacement("component " + std::to_string(i) + " fits no device");
        placement.assign.push_back(best);
        mem_used[best] += c.mem_req;
        stor_used[best] += data_mb;
        prev = best;
    }
    return placement;
}

} // namespace

BaselineResult fspp_place(const Application& app, const Infrastructure& infra,
                          const EvalOptions& options, std::uint64_t cap) {
    BaselineResult result;
    result.method = "FSPP";
    result.optimal = search_space_within(app, infra, cap);
    result.placement = result.optimal ? fspp_exact(app, infra, options)
                                      : fspp_greedy(app, infra, options);
    result.objectives = evaluate(app, infra, result.placement, options);
    if (!result.objectives.feasible)
        throw NoFeasiblePlacement("search produced an infeasible placement");
    return result;
}

BaselineResult edge_ward_place(const Application& app, const Infrastructure& infra,
                               const EvalOptions& options) {
    const int x = app.size();
    const int y = infra.size();

    int gateway = -1;
    for (int j = 0; j < y; ++j) {
        if (infra.devices[j].tier != Tier::IspGw) continue;
        if (gateway < 0 || infra.devices[j].cpu > infra.devices[gateway].cpu) gateway = j;
    }
    if (gateway < 0) throw NoIspGateway("infrastructure has no ISP gateway");

    std::vector<double> mem_used(y, 0.0), stor_used(y, 0.0);
    const bool aggregate = options.capacity_mode == CapacityMode::Aggregate;

    auto fits = [&](const Component& c, double data_mb, int j) {
        return aggregate
                   ? component_fits_aggregate(c, data_mb, infra.devices[j], mem_used[j], stor_used[j])
                   : component_fits(c, data_mb, infra.devices[j]);
    };
    auto occupy = [&](const Component& c, double data_mb, int j) {
        mem_used[j] += c.mem_req;
        stor_used[j] += data_mb;
    };

    Placement placement;
    placement.assign.assign(x, -1);
    {
        const Component& last = app.components[x - 1];
        const double data_mb = mbit_to_mb(app.data_in[x - 1]);
        if (!fits(last, data_mb, gateway))
            throw NoFeasiblePlacement("last component does not fit the ISP gateway");
        placement.assign[x - 1] = gateway;
        occupy(last, data_mb, gateway);
    }

    static constexpr Tier kEscalation[] = {Tier::Me, Tier::WifiGwBts, Tier::IspGw, Tier::Cdc};
    for (int i = 0; i < x - 1; ++i) {
        const Component& c = app.components[i];
        const double data_mb = mbit_to_mb(app.data_in[i]);
        int chosen = -1;
        for (Tier tier : kEscalation) {
            // best fit: smallest sufficient cpu within the tier
            for (int j = 0; j < y; ++j) {
                if (infra.devices[j].tier != tier || !fits(c, data_mb, j)) continue;
                if (chosen < 0 || infra.devices[j].cpu < infra.devices[chosen].cpu) chosen = j;
            }
            if (chosen >= 0) break;
        }
        if (chosen < 0)
            throw NoFeasiblePlacement("component " + std::to_string(i) + " fits no tier");
        placement.assign[i] = chosen;
        occupy(c, data_mb, chosen);
    }

    BaselineResult result;
    result.method = "EW";
    result.optimal = false;
    result.placement = std::move(placement);
    result.objectives = evaluate(app, infra, result.placement, options);
    if (!result.objectives.feasible)
        throw NoFeasiblePlacement("procedure produced an infeasible placement");
    return result;
}

} // namespace fogplace
