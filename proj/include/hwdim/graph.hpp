#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hwdim/errors.hpp"

namespace hwdim {

using Vertex = int32_t;

constexpr double kInfDist = std::numeric_limits<double>::infinity();

struct Edge {
    Vertex u;
    Vertex v;
    double w;
};

struct LoadReport {
    int dropped_self_loops = 0;
    int collapsed_parallel_edges = 0;
};

// Sorted set of vertex ids without duplicates.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Vertex> ids);

    bool contains(Vertex v) const;
    bool empty() const { return ids_.empty(); }
    size_t size() const { return ids_.size(); }
    void insert(Vertex v);
    void erase(Vertex v);

    const std::vector<Vertex> &ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    Vertex operator[](size_t i) const { return ids_[i]; }
    bool operator==(const VertexSet &o) const { return ids_ == o.ids_; }

    bool is_subset_of(const VertexSet &o) const;
    static VertexSet unite(const VertexSet &a, const VertexSet &b);
    bool intersects(const VertexSet &o) const;

  private:
    std::vector<Vertex> ids_;
};

// Connected undirected graph, nonnegative weights, no self-loops,
// at most one edge per unordered pair, vertex ids 0..n-1.
class WeightedGraph {
  public:
    WeightedGraph() = default;
    // Validates all invariants (throws ParamError / ParseError).
    WeightedGraph(Vertex vertex_count, std::vector<Edge> edges);

    Vertex vertex_count() const { return n_; }
    size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge> &edges() const { return edges_; }

    struct Arc {
        Vertex to;
        double w;
    };
    const std::vector<Arc> &neighbors(Vertex v) const { return adj_[v]; }

    double min_edge_weight() const;
    // Equals the minimum pairwise shortest-path distance (every path has
    // at least one edge, and the lightest edge is itself a shortest path).
    double min_distance() const { return min_edge_weight(); }

    // Returns a copy with all weights multiplied by factor.
    WeightedGraph scaled(double factor) const;

  private:
    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adj_;
};

// Multiplies all weights so the minimum pairwise distance becomes
// slightly larger than 1. Returns the rescaled graph and the factor
// (1 + 1e-6) / min_distance; original = rescaled / factor.
struct RescaledGraph {
    WeightedGraph graph;
    double factor;
};
RescaledGraph rescale_to_unit_min_distance(const WeightedGraph &g);

enum class GraphFormat { kDimacs, kEdgeList };

// DIMACS .gr ("c", "p sp n m", "a u v w" 1-based) or plain 0-based
// edge list "u v w". Parallel edges collapse to the minimum weight and
// self-loops are dropped; both are counted in the report. Disconnected
// input is a structural error naming representatives of two components.
WeightedGraph load_graph(const std::string &path, GraphFormat format,
                         LoadReport *report = nullptr);

WeightedGraph parse_graph(const std::string &content, GraphFormat format,
                          LoadReport *report = nullptr);

}  // namespace hwdim
