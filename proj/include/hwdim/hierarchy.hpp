#pragma once

#include <optional>
#include <vector>

#include "hwdim/nets.hpp"
#include "hwdim/spc.hpp"

namespace hwdim {

// Ordered vertex sequence; consecutive entries are connections whose cost
// is their d_G distance. Closed iff first == last.
struct Walk {
    std::vector<Vertex> seq;

    bool closed() const { return seq.size() >= 2 && seq.front() == seq.back(); }
    size_t connection_count() const { return seq.empty() ? 0 : seq.size() - 1; }
    double cost(const DistanceProvider &dp) const;
    bool visits(Vertex v) const;
};

// Nested hub sets H_0 >= H_1 >= ... >= H_L at scales r_i = (1+sigma)^i,
// sigma = eps/(4+3eps). Each auxiliary H'_i is an inclusion-wise minimal
// (r_i, 1.5 eps)-shortest path cover and H_i = union of H'_j for j >= i.
struct HubHierarchy {
    double eps = 0;
    double sigma = 0;
    int top_level = 0;  // L = ceil(log_{1+sigma} diam); H'_L is empty
    std::vector<double> radii;        // r_i, i in 0..L
    std::vector<VertexSet> h_prime;   // H'_i
    std::vector<VertexSet> h;         // H_i (cumulative)

    double radius(int i) const;  // r_i, defined for any i >= 0
    const VertexSet &hubs(int i) const;  // H_i; empty above the top level
    // Accuracy at which every H_i covers scale r_i.
    double cover_eps() const { return 1.5 * eps; }
    // Level k with d in (r_k, r_{k+1}]; requires d > r_0 = 1.
    int level_of(double d, const DistanceProvider &dp) const;
};

// Top-down construction per level from pluggable per-level covers
// (build_spc_local_search by default). Requires eps in (0, 1/6] and a
// metric with minimum distance > 1 (rescaled input).
HubHierarchy build_hub_hierarchy(const DistanceProvider &dp, double eps,
                                 const SpcBuilder &per_level_spc_builder = {});

// eps * r_i-nets matching the hierarchy's levels. Levels above the top
// stay a single vertex, so walk rewriting can reach level i + 16.
NetHierarchy hierarchy_nets(const DistanceProvider &dp, const HubHierarchy &hh);

struct LevelSparsity {
    int level;
    int ball_hubs;       // max |ball(v,(2+4eps)r_i) ∩ H_i|
    int near_ball_hubs;  // max count of H_i hubs within (2+eps)r_i of that ball
};

// Reported, not asserted (the paper's constants are asymptotic).
std::vector<LevelSparsity> hierarchy_sparsity_report(const DistanceProvider &dp,
                                                     const HubHierarchy &hh);

// Rewrites the walk so every connection with d(u,z) in (r_i, r_{i+1}] has
// both endpoints in N_i: repeatedly take the longest violating connection
// and reroute it through the nearest level-(i+16) net points. Cost grows
// by at most 1+60 eps (asserted).
Walk make_net_respecting(const DistanceProvider &dp, const HubHierarchy &hh,
                         const NetHierarchy &nets, const Walk &walk);

bool is_net_respecting(const DistanceProvider &dp, const HubHierarchy &hh,
                       const NetHierarchy &nets, const Walk &walk);

// Net-respects, then inserts into every connection at scale k a hub of
// H_k with detour <= 1 + 1.5 eps (lowest qualifying id). Cost grows by at
// most 1+77 eps over the input (asserted).
Walk make_hub_net_respecting(const DistanceProvider &dp, const HubHierarchy &hh,
                             const NetHierarchy &nets, const Walk &walk);

struct HubNetViolation {
    int town_level;
    Vertex from;
    Vertex to;
    std::string reason;
};

// Towns of H_l at scale r_l (accuracy 1.5 eps), shared by the checker and
// the TSP divide step.
std::vector<TownDecomposition> towns_per_level(const DistanceProvider &dp,
                                               const HubHierarchy &hh);

// Definition check: every connection leaving a town of level l at length
// scale j (relative to the (1+0.75 eps) r_j grid) starts at a net point
// and ends at a hub of level max(l, j).
std::optional<HubNetViolation> is_hub_net_respecting(
    const DistanceProvider &dp, const HubHierarchy &hh, const NetHierarchy &nets,
    const std::vector<TownDecomposition> &towns, const Walk &walk);

}  // namespace hwdim
