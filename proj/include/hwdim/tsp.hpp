#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hwdim/hierarchy.hpp"

namespace hwdim {

enum class TownSolver { kExactDp, kHeuristic };

// Explicit metric over a small point set (town terminals plus the
// virtual interface point).
struct SmallMetric {
    std::vector<std::vector<double>> d;
    size_t size() const { return d.size(); }
};

// Shared state for one Subset-TSP run: hierarchies are built once on the
// full graph and reused across recursive calls (only K changes).
struct TspContext {
    const DistanceProvider *dp = nullptr;
    double eps = 0;
    int q = 0;                      // dense-level threshold
    TownSolver solver = TownSolver::kExactDp;
    int exact_limit = 18;           // Held-Karp cutoff for sub-instances
    HubHierarchy hubs;
    NetHierarchy nets;
    std::vector<TownDecomposition> towns;  // per level

    // run report
    bool divide_fired = false;
    int recursion_count = 0;
    int patches_applied = 0;        // patching cost bound checked this often
    bool heuristic_used = false;    // some sub-solve was inexact
    bool greedy_matching_used = false;
};

TspContext make_tsp_context(const DistanceProvider &dp, double eps, int q,
                            TownSolver solver = TownSolver::kExactDp);

// Default threshold: max(32, ceil(eps^-5 log2^2(1/eps) s^2)) with s the
// observed sparsity of the level-0 cover, capped at |K|.
int default_q_threshold(const TspContext &ctx, size_t terminal_count);

struct DenseLevel {
    int level;
    Vertex witness;
    std::vector<int> towns;          // town ids within ctx.towns[level]
    int excluded_town = -1;          // the one holding the high-level net point
    Vertex excluded_net_point = -1;
};

// Smallest level i with a ball B(v,(2+4eps)r_i) meeting more than q
// terminal-bearing towns; the (unique) town around the level-
// (i + ceil(log_{1+sigma}(6/eps+8))) net point inside B(v,(3+4eps)r_i)
// is excluded.
std::optional<DenseLevel> find_dense_level(const TspContext &ctx,
                                           const VertexSet &terminals);

struct Interface {
    int level = 0;
    Vertex center = -1;
    VertexSet points;                          // distinct interface hubs
    std::vector<std::pair<int, Vertex>> by_level;  // (j, hub)
};

// I = { x in H_j within (2+eps) r_j of B(v,(2+4eps)r_i),
//       i <= j <= i + log_{1+sigma}(6/eps+8) }.
Interface build_interface(const TspContext &ctx, const DenseLevel &dense);

Vertex nearest_interface_point(const DistanceProvider &dp, const Interface &iface,
                               Vertex u);

struct TownSubInstance {
    int town_id;
    std::vector<Vertex> terminals;  // T ∩ K
    SmallMetric metric;             // terminals + virtual point p (last index)
    std::vector<Vertex> chi;        // nearest interface hub per terminal
};

TownSubInstance make_town_sub_instance(const TspContext &ctx,
                                       const Interface &iface,
                                       const TownDecomposition &towns,
                                       int town_id, const VertexSet &terminals);

// Solves the town tour and unfolds the virtual point into its two
// interface connections; the walk starts and ends on interface hubs.
Walk solve_town(const TspContext &ctx, const TownSubInstance &sub);

struct PatchResult {
    Walk walk;
    double mst_weight = 0;
    double matching_weight = 0;
    bool greedy_matching = false;
};

// Christofides-style patching: red walk-endpoint edges + MST(I) + a
// perfect matching on odd-degree points, Euler tour, red edges replaced
// by their walks. Cost <= sum of walk costs + 2 MST(I) with an exact
// matching (asserted; 3 MST with the flagged greedy fallback).
PatchResult patch_walks(const DistanceProvider &dp,
                        const std::vector<Walk> &walks, const Interface &iface);

// Closed walk visiting every terminal; divide-and-conquer when a dense
// level exists, otherwise one pluggable whole-K solve.
Walk solve_subset_tsp(TspContext &ctx, const VertexSet &terminals);

// Exact optimum (Held-Karp) over |K| <= 11 terminals; test oracle.
Walk tsp_brute_force(const DistanceProvider &dp, const VertexSet &terminals);
double held_karp_cost(const SmallMetric &m);

// Exact MST (Prim) over a point set, as (a,b) index pairs plus weight.
struct MstResult {
    std::vector<std::pair<int, int>> edges;
    double weight = 0;
};
MstResult mst(const DistanceProvider &dp, const std::vector<Vertex> &points);

// Minimum-weight perfect matching: subset DP for <= 20 points, greedy
// shortest-available-pair beyond (flagged).
struct MatchingResult {
    std::vector<std::pair<int, int>> pairs;
    double weight = 0;
    bool greedy = false;
};
MatchingResult min_weight_matching(const DistanceProvider &dp,
                                   const std::vector<Vertex> &points);

}  // namespace hwdim
