#pragma once

#include <vector>

#include "hwdim/distance.hpp"

namespace hwdim {

// Nested nets N_0 >= N_1 >= ... where N_i is a delta_i-net for
// delta_i = base_radius * ratio^i, realized as prefixes of one Gonzales
// order (packing: pairwise > delta_i; covering: every vertex within
// delta_i). Level count is chosen so the top net is a single vertex.
struct NetHierarchy {
    double base_radius = 0;
    double ratio = 0;
    std::vector<VertexSet> levels;
    std::vector<Vertex> gonzales_order;      // permutation of 0..n-1
    std::vector<double> insertion_radii;     // d(x_k, {x_0..x_{k-1}}), inf for x_0

    double delta(int i) const;
    int level_count() const { return static_cast<int>(levels.size()); }
    const VertexSet &net(int i) const;  // levels above the top stay a single vertex
    bool in_net(Vertex v, int i) const;
};

// Greedy farthest-point traversal; the level-i net is the shortest prefix
// whose covering radius is <= base * ratio^i. Ties on the farthest
// distance go to the lowest vertex id. min_levels forces at least that
// many levels (higher levels repeat the single top vertex).
NetHierarchy gonzales_net_hierarchy(const DistanceProvider &dp, double base,
                                    double ratio, int min_levels = 0);

// Gonzales prefix forming a delta-net of the whole metric (first point:
// vertex 0; ties by lowest id).
VertexSet gonzales_net(const DistanceProvider &dp, double delta);

}  // namespace hwdim
