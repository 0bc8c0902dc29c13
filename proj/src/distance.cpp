#include "hwdim/distance.hpp"

#include <algorithm>
#include <queue>

using namespace std;

namespace hwdim {

namespace {

using HeapItem = pair<double, Vertex>;
using MinHeap = priority_queue<HeapItem, vector<HeapItem>, greater<>>;

// Dijkstra over an arbitrary neighbor filter.
template <typename Accept>
vector<double> dijkstra(const WeightedGraph &g, Vertex src, Accept accept) {
    vector<double> dist(g.vertex_count(), kInfDist);
    MinHeap heap;
    dist[src] = 0;
    heap.push({0, src});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v])
            continue;
        for (const auto &a : g.neighbors(v)) {
            if (!accept(a.to))
                continue;
            double nd = d + a.w;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, a.to});
            }
        }
    }
    return dist;
}

}  // namespace

vector<double> single_source_distances(const WeightedGraph &g, Vertex src) {
    if (src < 0 || src >= g.vertex_count())
        throw PreconditionError("source vertex out of range");
    return dijkstra(g, src, [](Vertex) { return true; });
}

vector<double> induced_distances_from(const WeightedGraph &g, const VertexSet &s,
                                      Vertex src) {
    if (!s.contains(src))
        throw PreconditionError("source vertex not in the induced set");
    return dijkstra(g, src, [&s](Vertex v) { return s.contains(v); });
}

double induced_distance(const WeightedGraph &g, const VertexSet &s, Vertex u,
                        Vertex v) {
    if (!s.contains(u) || !s.contains(v))
        throw PreconditionError("induced_distance endpoints must lie in S");
    return induced_distances_from(g, s, u)[v];
}

double weak_diameter(const DistanceProvider &dp, const VertexSet &s) {
    if (s.empty())
        throw PreconditionError("weak_diameter of an empty set");
    double best = 0;
    for (Vertex u : s)
        for (Vertex v : s)
            best = max(best, dp.distance(u, v));
    return best;
}

double strong_diameter(const WeightedGraph &g, const VertexSet &s) {
    if (s.empty())
        throw PreconditionError("strong_diameter of an empty set");
    double best = 0;
    for (Vertex u : s) {
        auto dist = induced_distances_from(g, s, u);
        for (Vertex v : s)
            best = max(best, dist[v]);
    }
    return best;
}

//--------------------------- DistanceProvider -----------------------

DistanceProvider::DistanceProvider(WeightedGraph g, Vertex apsp_cap)
    : g_(std::move(g)) {
    rows_.resize(g_.vertex_count());
    if (g_.vertex_count() <= apsp_cap) {
        for (Vertex v = 0; v < g_.vertex_count(); v++)
            rows_[v] = make_unique<vector<double>>(single_source_distances(g_, v));
        slack_ = 1e-9 * max(1.0, diameter());
    } else {
        // crude diameter bound; must stay below the 1e-6 rescale margin
        double max_w = 0;
        for (const Edge &e : g_.edges())
            max_w = max(max_w, e.w);
        slack_ = 1e-9 * max(1.0, max_w);
    }
}

const vector<double> &DistanceProvider::row(Vertex src) const {
    if (src < 0 || src >= size())
        throw PreconditionError("source vertex out of range");
    {
        lock_guard<mutex> lock(mutex_);
        if (rows_[src])
            return *rows_[src];
    }
    auto fresh = make_unique<vector<double>>(single_source_distances(g_, src));
    lock_guard<mutex> lock(mutex_);
    if (!rows_[src])
        rows_[src] = std::move(fresh);
    return *rows_[src];
}

double DistanceProvider::distance(Vertex u, Vertex v) const {
    return row(u)[v];
}

double DistanceProvider::diameter() const {
    {
        lock_guard<mutex> lock(mutex_);
        if (diameter_ >= 0)
            return diameter_;
    }
    double best = 0;
    for (Vertex v = 0; v < size(); v++)
        for (double d : row(v))
            best = max(best, d);
    lock_guard<mutex> lock(mutex_);
    diameter_ = best;
    return diameter_;
}

double DistanceProvider::aspect_ratio() const {
    if (size() < 2)
        throw PreconditionError("aspect ratio needs at least 2 vertices");
    double lo = min_distance();
    if (!(lo > 0))
        throw PreconditionError("aspect ratio undefined: minimum distance is 0");
    return diameter() / lo;
}

VertexSet DistanceProvider::ball(Vertex v, double r) const {
    if (r < 0)
        throw PreconditionError("ball radius must be nonnegative");
    const auto &d = row(v);
    vector<Vertex> ids;
    for (Vertex u = 0; u < size(); u++)
        if (leq(d[u], r))
            ids.push_back(u);
    return VertexSet(std::move(ids));
}

double DistanceProvider::distance_to_set(Vertex v, const VertexSet &s) const {
    double best = kInfDist;
    const auto &d = row(v);
    for (Vertex u : s)
        best = min(best, d[u]);
    return best;
}

}  // namespace hwdim
