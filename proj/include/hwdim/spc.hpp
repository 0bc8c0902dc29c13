#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hwdim/distance.hpp"

namespace hwdim {

// (r,eps)-shortest path cover: for every pair u,z with
// d(u,z) in (r, (2+eps)r] some hub x satisfies
// d(u,x) + d(x,z) <= (1+eps) d(u,z).
struct ShortestPathCover {
    double r = 0;
    double eps = 0;
    VertexSet hubs;
    bool minimal = false;  // inclusion-wise minimality established
};

struct SpcViolation {
    Vertex u;
    Vertex z;
    double best_detour_ratio;  // min over hubs of (d(u,x)+d(x,z)) / d(u,z)
};

struct Town {
    Vertex center;      // d(center, hubs) > (2+eps) r
    VertexSet members;  // ball(center, r)
};

struct TownDecomposition {
    double r = 0;
    double eps = 0;
    std::vector<Town> towns;  // pairwise disjoint
    VertexSet sprawl;         // V minus all towns
};

// One set S_{u,z} of candidate hubs per affected pair.
struct HittingSetInstance {
    VertexSet universe;
    std::vector<std::vector<Vertex>> sets;
};

enum class HsStrategy {
    kAuto,       // exact when the universe has <= 24 elements, else greedy
    kGreedy,     // (1+ln m)-approximate greedy set cover
    kExactSmall  // branch and bound, universe <= 24 required
};

// ok => nullopt; otherwise a violating pair with its best detour ratio.
std::optional<SpcViolation> verify_spc(const DistanceProvider &dp,
                                       const ShortestPathCover &spc);

// Local search: start from SPC = V, repeatedly pick the vertex v whose
// ball B_v = ball(v, (2+4eps)r) holds the most hubs (ties: lowest id),
// rebuild the hubs inside B_v as a hitting set over the B_v-affected
// pairs, halt when the replacement no longer shrinks the cover.
ShortestPathCover build_spc_local_search(const DistanceProvider &dp, double r,
                                         double eps,
                                         HsStrategy strategy = HsStrategy::kAuto);

// Same local search but with the pair band (r, (2+band_eps) r] decoupled
// from the detour budget 1+detour_eps. The hub hierarchy builds its
// per-level covers with band_eps = 1.5 eps and detour_eps = eps so that
// the merged hub sets stay full (r_i, 1.5 eps)-covers after the
// (eps/4) r_i dedup.
ShortestPathCover build_spc_local_search_banded(const DistanceProvider &dp,
                                                double r, double detour_eps,
                                                double band_eps,
                                                HsStrategy strategy);

// Returned set hits every set of the instance. Greedy picks the element
// covering the most unhit sets (ties: lowest id). Exact requires a
// universe of <= 24 elements.
VertexSet solve_hitting_set(const HittingSetInstance &inst, HsStrategy strategy);

// Subset of the input that stays valid and is inclusion-wise minimal;
// removals are attempted in decreasing vertex id.
ShortestPathCover minimalize_spc(const DistanceProvider &dp,
                                 const ShortestPathCover &spc);

struct LocalSparsity {
    int s = 0;
    Vertex witness = -1;  // attains the max, -1 when there are no hubs
};

// s = max over v of |ball(v, (2+4eps)r) ∩ hubs|.
LocalSparsity local_sparsity(const DistanceProvider &dp,
                             const ShortestPathCover &spc);

// Towns are grown around qualifying centers (d(v,hubs) > (2+eps)r) in
// increasing id order; a qualifying vertex absorbed by an earlier town is
// skipped. Disjointness, diameter, separation and the sprawl-hub bound
// are checked and violation raises InvariantError (only possible for an
// invalid input cover).
TownDecomposition towns_and_sprawl(const DistanceProvider &dp,
                                   const ShortestPathCover &spc);

// Hubs = an (eps/2)r-net of the whole metric; always a valid (r,eps)-SPC.
// eps = 0 is an error (no finite net works).
ShortestPathCover epsnet_spc(const DistanceProvider &dp, double r, double eps);

struct HubBoundEntry {
    Vertex v;
    int near_ball_hubs;   // hubs within (2+eps)r of ball(v, (2+4eps)r)
    int alpha_ball_hubs;  // hubs inside ball(v, (2.8+6eps)r)
};

struct HubBoundReport {
    std::vector<HubBoundEntry> entries;  // one per vertex
    int max_near_ball = 0;
    int max_alpha_ball = 0;
    // vertices exceeding 3s^2 (resp. 2s^2) with s standing in for h(eps)
    std::vector<Vertex> near_ball_flagged;
    std::vector<Vertex> alpha_ball_flagged;
};

// Per-vertex hub counts behind the ball-around-ball and alpha-ball
// bounds; expects a minimal cover.
HubBoundReport verify_hub_bounds(const DistanceProvider &dp,
                                 const ShortestPathCover &spc);

using SpcBuilder =
    std::function<ShortestPathCover(const DistanceProvider &, double r, double eps)>;

}  // namespace hwdim
