#include "hwdim/nets.hpp"

#include <algorithm>
#include <cmath>

using namespace std;

namespace hwdim {

double NetHierarchy::delta(int i) const {
    return base_radius * pow(ratio, i);
}

const VertexSet &NetHierarchy::net(int i) const {
    if (i < 0)
        throw PreconditionError("net level must be nonnegative");
    if (i >= level_count())
        return levels.back();
    return levels[i];
}

bool NetHierarchy::in_net(Vertex v, int i) const {
    return net(i).contains(v);
}

namespace {

// Gonzales traversal: x_0 = vertex 0, x_{k+1} the farthest vertex from the
// prefix, ties to the lowest id. insertion_radii[k] = d(x_k, prefix).
void gonzales_order(const DistanceProvider &dp, vector<Vertex> &order,
                    vector<double> &radii) {
    Vertex n = dp.size();
    vector<double> dist_to_prefix(n, kInfDist);
    vector<char> taken(n, 0);
    Vertex cur = 0;
    for (Vertex k = 0; k < n; k++) {
        order.push_back(cur);
        radii.push_back(dist_to_prefix[cur]);
        taken[cur] = 1;
        const auto &row = dp.row(cur);
        for (Vertex v = 0; v < n; v++)
            dist_to_prefix[v] = min(dist_to_prefix[v], row[v]);
        Vertex next = -1;
        double best = -1;
        for (Vertex v = 0; v < n; v++) {
            if (taken[v])
                continue;
            if (dist_to_prefix[v] > best) {
                best = dist_to_prefix[v];
                next = v;
            }
        }
        if (next < 0)
            break;
        cur = next;
    }
}

}  // namespace

NetHierarchy gonzales_net_hierarchy(const DistanceProvider &dp, double base,
                                    double ratio, int min_levels) {
    if (!(ratio > 1))
        throw ParamError("net hierarchy ratio must be > 1");
    if (!(base > 0))
        throw ParamError("net hierarchy base radius must be > 0");
    NetHierarchy h;
    h.base_radius = base;
    h.ratio = ratio;
    gonzales_order(dp, h.gonzales_order, h.insertion_radii);

    // Covering radius of prefix of length k is insertion_radii[k] (the
    // distance of the next inserted point), 0 for the full set.
    Vertex n = dp.size();
    auto covering_radius = [&](Vertex k) {
        return k >= n ? 0.0 : h.insertion_radii[k];
    };
    for (int i = 0;; i++) {
        double delta = base * pow(ratio, i);
        Vertex k = 1;
        while (!dp.leq(covering_radius(k), delta))
            k++;
        vector<Vertex> prefix(h.gonzales_order.begin(), h.gonzales_order.begin() + k);
        h.levels.push_back(VertexSet(std::move(prefix)));
        if (h.levels.back().size() == 1 && i + 1 >= min_levels)
            break;
    }
    return h;
}

VertexSet gonzales_net(const DistanceProvider &dp, double delta) {
    if (!(delta > 0))
        throw ParamError("net radius must be > 0");
    NetHierarchy h = gonzales_net_hierarchy(dp, delta, 2.0, 1);
    return h.levels[0];
}

}  // namespace hwdim
