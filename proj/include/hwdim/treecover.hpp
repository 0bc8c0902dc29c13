#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hwdim/spc.hpp"

namespace hwdim {

struct TreeNode {
    Vertex underlying;     // graph vertex this node stands for
    int level;             // -1 for leaves, k for hub copies of step k
    int parent;            // node index, -1 at the root
    double parent_weight;  // d_G(child underlying, hub), or the join weight
};

// One dominating tree T_{q,j}: leaves 0..n-1 are the graph vertices, hub
// copies are appended lazily as representatives attach. Leftover roots
// are chained with edges of weight phi (the diameter), which keeps every
// cross-component tree distance dominating.
struct CoverTree {
    int q = 0;
    int j = 0;
    std::vector<TreeNode> nodes;
    int root = -1;
    std::vector<double> dist_to_root;
    std::vector<int> depth;

    void finalize();  // fills dist_to_root / depth from the parent table
};

// Tree-path distance between two leaves (naive LCA climb; the oracle
// module holds the constant-time structure).
double tree_distance(const CoverTree &tree, Vertex u, Vertex v);

struct TreeCover {
    double eps = 0;
    double delta = 0;  // eps/3
    int levels_k = 0;  // K = ceil(log_{1+delta}(32/eps)), trees per shift class
    double phi = 0;    // diameter
    Vertex n = 0;
    std::vector<double> radii;                   // r_i = (1+delta)^i
    std::vector<std::vector<VertexSet>> groups;  // per level, separated hub groups
    std::vector<CoverTree> trees;
};

// Greedy group partition of one cover: hubs joined in increasing id to
// the first group keeping pairwise distance > (2+4 eps) r_i.
std::vector<VertexSet> partition_spc_groups(const DistanceProvider &dp,
                                            const ShortestPathCover &spc_i);

// Builds the full (1+2 eps)-stretch cover; needs eps in (0,1] and a
// rescaled metric (min distance > 1). threads parallelizes tree builds.
TreeCover build_tree_cover(const DistanceProvider &dp, double eps,
                           const SpcBuilder &per_level_spc_builder = {},
                           int threads = 1);

struct TreeCoverViolation {
    std::string what;
    Vertex u = -1;
    Vertex v = -1;
    double got = 0;
    double bound = 0;
};

// Full pair scan: every tree dominates d_G and the best tree has stretch
// <= 1+2 eps; returns the worst offender on failure. best_out, when
// given, receives the per-pair minimum tree distance.
std::optional<TreeCoverViolation> verify_tree_cover(
    const DistanceProvider &dp, const TreeCover &tc,
    std::vector<std::vector<double>> *best_out = nullptr);

// Versioned binary round trip.
void save_tree_cover(const TreeCover &tc, const std::string &path);
TreeCover load_tree_cover(const std::string &path);
void write_tree_cover(const TreeCover &tc, std::ostream &out);
TreeCover read_tree_cover(std::istream &in);

}  // namespace hwdim
