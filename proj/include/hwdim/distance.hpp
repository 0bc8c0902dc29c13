#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "hwdim/graph.hpp"

namespace hwdim {

// Shortest-path metric d_G over a fixed graph. Rows are cached: for
// n <= apsp_cap the full matrix ends up materialized (every construction
// in this toolkit queries d_G densely); above the cap rows are memoized
// per queried source. Immutable after construction; concurrent queries
// are allowed, cache insertion is serialized.
class DistanceProvider {
  public:
    explicit DistanceProvider(WeightedGraph g, Vertex apsp_cap = 5000);

    Vertex size() const { return g_.vertex_count(); }
    const WeightedGraph &graph() const { return g_; }

    double distance(Vertex u, Vertex v) const;
    const std::vector<double> &row(Vertex src) const;

    double diameter() const;      // max pairwise distance
    double min_distance() const { return g_.min_distance(); }
    double aspect_ratio() const;  // error on a single vertex

    // Absolute slack for floating-point distance comparisons,
    // 1e-9 * (an upper bound on the diameter).
    double slack() const { return slack_; }
    bool leq(double a, double b) const { return a <= b + slack_; }
    bool gt(double a, double b) const { return a > b + slack_; }
    // d in (lo, hi], the covered-pair interval convention.
    bool in_range(double d, double lo, double hi) const {
        return gt(d, lo) && leq(d, hi);
    }

    // Closed ball {u | d(v,u) <= r}, sorted ids.
    VertexSet ball(Vertex v, double r) const;
    double distance_to_set(Vertex v, const VertexSet &s) const;  // inf if empty

  private:
    WeightedGraph g_;
    double slack_;
    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<std::vector<double>>> rows_;
    mutable double diameter_ = -1.0;
};

// Exact shortest-path distances from src (Dijkstra); d[src] = 0.
std::vector<double> single_source_distances(const WeightedGraph &g, Vertex src);

// Shortest-path distance inside the induced subgraph G[S]; infinite if u
// and v are disconnected in G[S]. Both endpoints must lie in S.
double induced_distance(const WeightedGraph &g, const VertexSet &s, Vertex u,
                        Vertex v);

// All induced distances from src within G[S] (by original vertex id;
// vertices outside S get +inf).
std::vector<double> induced_distances_from(const WeightedGraph &g,
                                           const VertexSet &s, Vertex src);

// Max pairwise d_G within S.
double weak_diameter(const DistanceProvider &dp, const VertexSet &s);
// Max pairwise d_{G[S]}; infinite if G[S] is disconnected. Always >= weak.
double strong_diameter(const WeightedGraph &g, const VertexSet &s);

}  // namespace hwdim
