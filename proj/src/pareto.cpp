#include "fogplace/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fogplace {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    const auto va = a.values();
    const auto vb = b.values();
    bool strictly = false;
    for (int k = 0; k < 3; ++k) {
        if (va[k] > vb[k]) return false;
        if (va[k] < vb[k]) strictly = true;
    }
    return strictly;
}

bool constrained_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return a.violation < b.violation;
    return dominates(a, b);
}

FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> population) {
    const int n = static_cast<int>(population.size());
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> domination_count(n, 0);

    FrontPartition partition;
    std::vector<int> current;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (constrained_dominates(population[p], population[q]))
                dominated[p].push_back(q);
            else if (constrained_dominates(population[q], population[p]))
                ++domination_count[p];
        }
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<int> next;
        for (int p : current)
            for (int q : dominated[p])
                if (--domination_count[q] == 0) next.push_back(q);
        partition.fronts.push_back(std::move(current));
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return partition;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const int n = static_cast<int>(front.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<int> order(n);
    for (int k = 0; k < 3; ++k) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const double va = front[a].values()[k];
            const double vb = front[b].values()[k];
            return va != vb ? va < vb : a < b; // index tie-break keeps runs deterministic
        });
        const double lo = front[order.front()].values()[k];
        const double hi = front[order.back()].values()[k];
        if (hi == lo) continue; // degenerate objective contributes nothing
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        for (int i = 1; i + 1 < n; ++i) {
            if (distance[order[i]] == inf) continue;
            distance[order[i]] +=
                (front[order[i + 1]].values()[k] - front[order[i - 1]].values()[k]) / (hi - lo);
        }
    }
    return distance;
}

namespace {

// Area of the union of rectangles [x_i, rx] × [y_i, ry] given the staircase
// of 2-D minimal points sorted by x ascending (y strictly descending).
double staircase_area(const std::vector<std::array<double, 2>>& stairs, double rx, double ry) {
    double area = 0.0;
    double prev_y = ry;
    for (const auto& s : stairs) {
        area += (rx - s[0]) * (prev_y - s[1]);
        prev_y = s[1];
    }
    return area;
}

// Inserts (x, y) into the staircase, dropping points it dominates (2-D,
// minimization). Returns false if the point is itself dominated.
bool staircase_insert(std::vector<std::array<double, 2>>& stairs, double x, double y) {
    auto it = std::lower_bound(stairs.begin(), stairs.end(), x,
                               [](const std::array<double, 2>& s, double v) { return s[0] < v; });
    if (it != stairs.begin()) {
        const auto& left = *(it - 1);
        if (left[1] <= y) return false; // some point with smaller-or-equal x and y
    }
    if (it != stairs.end() && (*it)[0] == x && (*it)[1] <= y) return false;
    auto last = it;
    while (last != stairs.end() && (*last)[1] >= y) ++last;
    it = stairs.erase(it, last);
    stairs.insert(it, {x, y});
    return true;
}

} // namespace

double hypervolume(std::span<const std::array<double, 3>> points,
                   const std::array<double, 3>& ref) {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
        if (p[0] <= ref[0] && p[1] <= ref[1] && p[2] <= ref[2]) pts.push_back(p);
    }
    if (pts.empty()) return 0.0;
    // Sweep slabs upward in z; each slab's area is the staircase union of all
    // points at or below its bottom.
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a[2] < b[2]; });
    double volume = 0.0;
    std::vector<std::array<double, 2>> stairs;
    std::size_t i = 0;
    while (i < pts.size()) {
        const double z = pts[i][2];
        while (i < pts.size() && pts[i][2] == z) {
            staircase_insert(stairs, pts[i][0], pts[i][1]);
            ++i;
        }
        const double z_top = (i < pts.size()) ? pts[i][2] : ref[2];
        volume += staircase_area(stairs, ref[0], ref[1]) * (z_top - z);
    }
    return volume;
}

double hypervolume(std::span<const ObjectiveVector> front, const ObjectiveVector& ref) {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(front.size());
    for (const auto& v : front) pts.push_back(v.values());
    return hypervolume(pts, ref.values());
}

void NormBounds::absorb(const std::array<double, 3>& v) {
    for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
    }
}

NormBounds NormBounds::covering(std::span<const ObjectiveVector> points) {
    NormBounds b;
    constexpr double inf = std::numeric_limits<double>::infinity();
    b.lo = {inf, inf, inf};
    b.hi = {-inf, -inf, -inf};
    for (const auto& p : points) b.absorb(p.values());
    if (points.empty()) b = NormBounds{};
    return b;
}

std::array<double, 3> NormBounds::normalize(const std::array<double, 3>& v) const {
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k)
        out[k] = (hi[k] > lo[k]) ? (v[k] - lo[k]) / (hi[k] - lo[k]) : 0.0;
    return out;
}

double normalized_hypervolume(std::span<const ObjectiveVector> front, const NormBounds& bounds) {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(front.size());
    for (const auto& v : front) pts.push_back(bounds.normalize(v.values()));
    return hypervolume(pts, kNormReference);
}

std::vector<ObjectiveVector> ParetoFront::objective_vectors() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.objectives);
    return out;
}

namespace {

bool entry_less(const ParetoFront::Entry& a, const ParetoFront::Entry& b) {
    const auto va = a.objectives.values();
    const auto vb = b.objectives.values();
    if (va != vb) return va < vb;
    return a.placement.assign < b.placement.assign;
}

} // namespace

void prune_to_front(std::vector<ParetoFront::Entry>& entries) {
    std::sort(entries.begin(), entries.end(), entry_less);
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& a, const auto& b) {
                                  return a.objectives.values() == b.objectives.values();
                              }),
                  entries.end());
    std::vector<ParetoFront::Entry> kept;
    kept.reserve(entries.size());
    for (const auto& e : entries) {
        bool is_dominated = false;
        for (const auto& other : entries) {
            if (constrained_dominates(other.objectives, e.objectives)) {
                is_dominated = true;
                break;
            }
        }
        if (!is_dominated) kept.push_back(e);
    }
    entries = std::move(kept);
}

ParetoFront brute_force_pareto(const Application& app, const Infrastructure& infra,
                               std::uint64_t cap, const EvalOptions& options) {
    const int x = app.size();
    const int y = infra.size();
    std::uint64_t total = 1;
    for (int i = 0; i < x; ++i) {
        if (total > cap / static_cast<std::uint64_t>(y))
            throw TooLarge("y^x exceeds enumeration cap of " + std::to_string(cap));
        total *= static_cast<std::uint64_t>(y);
    }

    // Incremental archive: candidates dominated by the archive are skipped,
    // archive members dominated by a new candidate are evicted.
    std::vector<ParetoFront::Entry> archive;
    Placement placement;
    placement.assign.assign(x, 0);
    bool done = false;
    while (!done) {
        const ObjectiveVector v = evaluate(app, infra, placement, options);
        if (v.feasible) {
            bool skip = false;
            for (const auto& e : archive) {
                if (dominates(e.objectives, v) || e.objectives.values() == v.values()) {
                    skip = true;
                    break;
                }
            }
            if (!skip) {
                std::erase_if(archive, [&](const ParetoFront::Entry& e) {
                    return dominates(v, e.objectives);
                });
                archive.push_back({placement, v});
            }
        }
        // mixed-radix increment
        done = true;
        for (int i = x - 1; i >= 0; --i) {
            if (++placement.assign[i] < y) {
                done = false;
                break;
            }
            placement.assign[i] = 0;
        }
    }
    prune_to_front(archive);
    ParetoFront front;
    front.entries = std::move(archive);
    return front;
}

} // namespace fogplace
