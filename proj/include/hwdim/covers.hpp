#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hwdim/spc.hpp"

namespace hwdim {

enum class ClusterKind { kHubBall, kTown, kSprawlSingleton };

struct CoverCluster {
    ClusterKind kind;
    Vertex anchor;      // hub for balls, town center for towns
    double radius;      // guaranteed d_G(u, anchor) <= radius for members
    VertexSet members;
};

struct SparseCover {
    double delta = 0;
    double eps = 0;
    double r = 0;                  // delta / (2 alpha), alpha = 2.8 + 6 eps
    double padded_radius = 0;      // beta r with beta = 0.8 + 2 eps (>= delta/8)
    std::vector<CoverCluster> clusters;
    std::vector<int> membership_count;  // per vertex
    int max_membership = 0;
    ShortestPathCover spc;         // minimalized cover behind the balls
};

struct SparsePartitionCover {
    double delta = 0;
    double eps = 0;
    double r = 0;                  // delta / (4 (1+eps))
    double padded_radius = 0;      // eps r
    std::vector<CoverCluster> clusters;
    std::vector<std::vector<int>> partitions;  // cluster ids, partition 0 = towns
    std::vector<int> membership_count;
    int max_membership = 0;
    ShortestPathCover spc;
};

// Balls of radius alpha r around the hubs of a minimal (r,eps)-SPC plus
// all towns. Every vertex's ball of radius beta r (and so delta/8) lies
// inside some cluster. eps in (0, 1/10].
SparseCover sparse_cover(const DistanceProvider &dp, double delta, double eps);

// Partition 0 = towns plus sprawl singletons; hub clusters
// C_x = B(B(x,(2+eps)r), eps r) greedily colored so intersecting clusters
// land in different partitions. Padding radius eps r.
SparsePartitionCover sparse_partition_cover(const DistanceProvider &dp,
                                            double delta, double eps);

struct CoverViolation {
    std::string what;
    Vertex vertex = -1;
    int cluster = -1;
};

// Checks radius-form diameter, padding and the sparsity recount; for
// partition covers additionally per-partition disjointness. The
// induced-subgraph (strong) diameter is reported when requested but never
// asserted (a graph ball need not induce a connected subgraph).
std::optional<CoverViolation> verify_cover(const DistanceProvider &dp,
                                           const std::vector<CoverCluster> &clusters,
                                           double delta, double padded_radius);

std::optional<CoverViolation> verify_partition_cover(
    const DistanceProvider &dp, const SparsePartitionCover &pc);

// Max strong diameter over clusters (inf when some induced cluster is
// disconnected); report-only companion to verify_cover.
double max_induced_diameter(const DistanceProvider &dp,
                            const std::vector<CoverCluster> &clusters);

}  // namespace hwdim
