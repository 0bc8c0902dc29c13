#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace std;

namespace hwdim::gen {

Instance star(int leaves) {
    if (leaves < 1)
        throw ParamError("star needs at least one leaf");
    vector<Edge> edges;
    for (int l = 1; l <= leaves; l++)
        edges.push_back({0, l, 1.0});
    return {WeightedGraph(leaves + 1, edges), {}};
}

Instance grid(int side) {
    if (side < 1)
        throw ParamError("grid side must be >= 1");
    auto id = [side](int r, int c) { return r * side + c; };
    vector<Edge> edges;
    for (int r = 0; r < side; r++)
        for (int c = 0; c < side; c++) {
            if (c + 1 < side)
                edges.push_back({id(r, c), id(r, c + 1), 1.0});
            if (r + 1 < side)
                edges.push_back({id(r, c), id(r + 1, c), 1.0});
        }
    if (side == 1)
        return {WeightedGraph(1, {}), {}};
    return {WeightedGraph(side * side, edges), {}};
}

Instance duostar(int pairs, double eps) {
    if (pairs < 1)
        throw ParamError("duostar needs at least one pair");
    double alpha = 1.0 / (7 + 16 * eps);
    vector<Edge> edges;
    // ids: 0 = s; pair i uses v=3i+1, u=3i+2, z=3i+3
    for (int i = 0; i < pairs; i++) {
        Vertex v = 3 * i + 1, u = 3 * i + 2, z = 3 * i + 3;
        edges.push_back({0, v, 1.0});
        edges.push_back({0, u, 1.0});
        edges.push_back({v, z, alpha});
        edges.push_back({u, z, alpha});
    }
    return {WeightedGraph(3 * pairs + 1, edges), {}};
}

namespace {

struct Points {
    vector<double> x, y;
    double dist(int a, int b) const {
        return hypot(x[a] - x[b], y[a] - y[b]);
    }
};

Points uniform_points(int n, uint64_t seed) {
    CounterRng rng(seed);
    Points p;
    for (int i = 0; i < n; i++) {
        p.x.push_back(rng.next_double());
        p.y.push_back(rng.next_double());
    }
    return p;
}

int component_of(int v, vector<int> &comp) {
    while (comp[v] != v)
        v = comp[v] = comp[comp[v]];
    return v;
}

}  // namespace

Instance random_geometric(int n, int k, uint64_t seed) {
    if (n < 1)
        throw ParamError("random_geometric needs n >= 1");
    if (n == 1)
        return {WeightedGraph(1, {}), {}};
    Points p = uniform_points(n, seed);
    set<pair<int, int>> picked;
    for (int v = 0; v < n; v++) {
        vector<pair<double, int>> near;
        for (int u = 0; u < n; u++)
            if (u != v)
                near.push_back({p.dist(v, u), u});
        sort(near.begin(), near.end());
        for (int t = 0; t < min<int>(k, static_cast<int>(near.size())); t++)
            picked.insert(minmax(v, near[t].second));
    }
    vector<int> comp(n);
    for (int v = 0; v < n; v++)
        comp[v] = v;
    for (auto [a, b] : picked)
        comp[component_of(a, comp)] = component_of(b, comp);
    // stitch leftover components through their closest pair
    while (true) {
        int root = component_of(0, comp);
        double best = kInfDist;
        pair<int, int> join{-1, -1};
        for (int v = 0; v < n; v++)
            for (int u = 0; u < n; u++)
                if (component_of(v, comp) == root &&
                    component_of(u, comp) != root && p.dist(v, u) < best) {
                    best = p.dist(v, u);
                    join = {v, u};
                }
        if (join.first < 0)
            break;
        picked.insert(minmax(join.first, join.second));
        comp[component_of(join.first, comp)] = component_of(join.second, comp);
    }
    vector<Edge> edges;
    for (auto [a, b] : picked)
        edges.push_back({a, b, max(p.dist(a, b), 1e-9)});
    return {WeightedGraph(n, edges), {}};
}

Instance euclidean_complete(int n, uint64_t seed) {
    if (n < 1)
        throw ParamError("euclidean_complete needs n >= 1");
    Points p = uniform_points(n, seed);
    vector<Edge> edges;
    for (int a = 0; a < n; a++)
        for (int b = a + 1; b < n; b++)
            edges.push_back({a, b, max(p.dist(a, b), 1e-9)});
    if (n == 1)
        return {WeightedGraph(1, {}), {}};
    return {WeightedGraph(n, edges), {}};
}

Instance clustered_towns(int clusters, int cluster_size, double spoke,
                         double tight, uint64_t seed) {
    if (clusters < 2 || cluster_size < 1)
        throw ParamError("clustered_towns needs >= 2 clusters of >= 1 vertex");
    if (!(tight > 0) || !(tight * 16 < spoke))
        throw ParamError("clustered_towns needs tight << spoke");
    CounterRng rng(seed);
    vector<Edge> edges;
    vector<Vertex> terminals;
    Vertex next = 1;  // 0 is the central hub
    for (int c = 0; c < clusters; c++) {
        Vertex anchor = next++;
        edges.push_back({0, anchor, spoke / 2});
        terminals.push_back(anchor);
        for (int m = 1; m < cluster_size; m++) {
            Vertex leaf = next++;
            // small jitter keeps intra-cluster distances distinct
            double w = tight * (1 + 0.25 * rng.next_double());
            edges.push_back({anchor, leaf, w});
        }
    }
    return {WeightedGraph(next, edges), terminals};
}

Instance random_connected(int n, double extra_edge_factor, uint64_t seed,
                          double w_lo, double w_hi) {
    if (n < 1)
        throw ParamError("random_connected needs n >= 1");
    if (n == 1)
        return {WeightedGraph(1, {}), {}};
    CounterRng rng(seed);
    auto weight = [&]() { return w_lo + (w_hi - w_lo) * rng.next_double(); };
    map<pair<Vertex, Vertex>, double> picked;
    for (Vertex v = 1; v < n; v++) {
        Vertex u = static_cast<Vertex>(rng.next_below(v));
        picked[minmax(u, v)] = weight();
    }
    auto extra = static_cast<size_t>(extra_edge_factor * n);
    for (size_t e = 0; e < extra; e++) {
        auto a = static_cast<Vertex>(rng.next_below(n));
        auto b = static_cast<Vertex>(rng.next_below(n));
        if (a == b)
            continue;
        picked.emplace(minmax(a, b), weight());
    }
    vector<Edge> edges;
    for (auto &[key, w] : picked)
        edges.push_back({key.first, key.second, w});
    return {WeightedGraph(n, edges), {}};
}

}  // namespace hwdim::gen
