#pragma once

#include <vector>

#include "hwdim/graph.hpp"
#include "hwdim/rng.hpp"

namespace hwdim::gen {

struct Instance {
    WeightedGraph graph;
    std::vector<Vertex> terminals;  // empty unless the kind plants them
};

// Center 0 with `leaves` unit spokes.
Instance star(int leaves);

// side x side grid of unit edges.
Instance grid(int side);

// Center s joined to n pairs (v_i, u_i) by unit edges; each pair closed
// through z_i by edges of weight 1/(7+16 eps).
Instance duostar(int pairs, double eps);

// n points uniform in the unit square, each joined to its k nearest
// neighbors with Euclidean weights; components are stitched by their
// closest point pairs if needed.
Instance random_geometric(int n, int k, uint64_t seed);

// Complete graph over n uniform points in the unit square (Euclidean
// weights); the metric is doubling, exercising the eps-net route.
Instance euclidean_complete(int n, uint64_t seed);

// clusters separated clusters hanging off a central hub at distance
// spoke/2 each, cluster_size vertices tied to the anchor at weight
// `tight`, one terminal per cluster. With clusters > q this forces the
// subset-TSP divide path at the scale where the common ball catches
// every cluster.
Instance clustered_towns(int clusters, int cluster_size, double spoke,
                         double tight, uint64_t seed);

// Random connected graph: spanning tree plus extra random edges, weights
// uniform in [w_lo, w_hi].
Instance random_connected(int n, double extra_edge_factor, uint64_t seed,
                          double w_lo = 1.0, double w_hi = 10.0);

}  // namespace hwdim::gen
