#include "hwdim/covers.hpp"

#include <algorithm>

using namespace std;

namespace hwdim {

namespace {

vector<int> count_memberships(Vertex n, const vector<CoverCluster> &clusters) {
    vector<int> count(n, 0);
    for (const auto &c : clusters)
        for (Vertex v : c.members)
            count[v]++;
    return count;
}

}  // namespace

SparseCover sparse_cover(const DistanceProvider &dp, double delta, double eps) {
    if (!(eps > 0) || eps > 0.1)
        throw ParamError("sparse cover requires eps in (0, 1/10]");
    if (!(delta > 0))
        throw ParamError("sparse cover requires Delta > 0");
    SparseCover sc;
    sc.delta = delta;
    sc.eps = eps;
    double alpha = 2.8 + 6 * eps;
    double beta = 0.8 + 2 * eps;
    sc.r = delta / (2 * alpha);
    sc.padded_radius = beta * sc.r;
    sc.spc = minimalize_spc(dp, build_spc_local_search(dp, sc.r, eps));

    for (Vertex x : sc.spc.hubs)
        sc.clusters.push_back(
            {ClusterKind::kHubBall, x, alpha * sc.r, dp.ball(x, alpha * sc.r)});
    TownDecomposition towns = towns_and_sprawl(dp, sc.spc);
    for (const Town &t : towns.towns)
        sc.clusters.push_back({ClusterKind::kTown, t.center, sc.r, t.members});

    sc.membership_count = count_memberships(dp.size(), sc.clusters);
    sc.max_membership = sc.clusters.empty()
                            ? 0
                            : *max_element(sc.membership_count.begin(),
                                           sc.membership_count.end());
    if (auto bad = verify_cover(dp, sc.clusters, delta, sc.padded_radius))
        throw InvariantError("sparse cover failed its own check: " + bad->what +
                             " at vertex " + to_string(bad->vertex));
    return sc;
}

SparsePartitionCover sparse_partition_cover(const DistanceProvider &dp,
                                            double delta, double eps) {
    if (!(eps > 0))
        throw ParamError("sparse partition cover requires eps > 0");
    if (!(delta > 0))
        throw ParamError("sparse partition cover requires Delta > 0");
    SparsePartitionCover pc;
    pc.delta = delta;
    pc.eps = eps;
    pc.r = delta / (4 * (1 + eps));
    pc.padded_radius = eps * pc.r;
    pc.spc = minimalize_spc(dp, build_spc_local_search(dp, pc.r, eps));
    TownDecomposition towns = towns_and_sprawl(dp, pc.spc);

    // partition 0: towns and sprawl singletons
    pc.partitions.emplace_back();
    for (const Town &t : towns.towns) {
        pc.partitions[0].push_back(static_cast<int>(pc.clusters.size()));
        pc.clusters.push_back({ClusterKind::kTown, t.center, pc.r, t.members});
    }
    for (Vertex v : towns.sprawl) {
        pc.partitions[0].push_back(static_cast<int>(pc.clusters.size()));
        pc.clusters.push_back(
            {ClusterKind::kSprawlSingleton, v, 0, VertexSet({v})});
    }

    // hub clusters C_x = B(B(x, (2+eps) r), eps r), colored greedily by
    // actual member intersection (increasing hub id, first free color)
    vector<int> hub_cluster_ids;
    for (Vertex x : pc.spc.hubs) {
        VertexSet inner = dp.ball(x, (2 + eps) * pc.r);
        vector<Vertex> members;
        for (Vertex v = 0; v < dp.size(); v++) {
            const auto &row = dp.row(v);
            for (Vertex u : inner)
                if (dp.leq(row[u], eps * pc.r)) {
                    members.push_back(v);
                    break;
                }
        }
        hub_cluster_ids.push_back(static_cast<int>(pc.clusters.size()));
        pc.clusters.push_back({ClusterKind::kHubBall, x, (2 + 2 * eps) * pc.r,
                               VertexSet(std::move(members))});
    }
    for (int cid : hub_cluster_ids) {
        size_t color = 1;
        while (true) {
            if (color >= pc.partitions.size())
                pc.partitions.emplace_back();
            bool clash = false;
            for (int other : pc.partitions[color])
                if (pc.clusters[cid].members.intersects(pc.clusters[other].members)) {
                    clash = true;
                    break;
                }
            if (!clash)
                break;
            color++;
        }
        pc.partitions[color].push_back(cid);
    }

    pc.membership_count = count_memberships(dp.size(), pc.clusters);
    pc.max_membership = pc.clusters.empty()
                            ? 0
                            : *max_element(pc.membership_count.begin(),
                                           pc.membership_count.end());
    if (auto bad = verify_partition_cover(dp, pc))
        throw InvariantError("sparse partition cover failed its own check: " +
                             bad->what + " at vertex " + to_string(bad->vertex));
    return pc;
}

optional<CoverViolation> verify_cover(const DistanceProvider &dp,
                                      const vector<CoverCluster> &clusters,
                                      double delta, double padded_radius) {
    // radius form of the diameter bound: members within the declared
    // radius of the anchor, and the radius within Delta/2
    for (size_t c = 0; c < clusters.size(); c++) {
        const auto &cl = clusters[c];
        if (!dp.leq(2 * cl.radius, delta))
            return CoverViolation{"cluster radius exceeds Delta/2", cl.anchor,
                                  static_cast<int>(c)};
        const auto &row = dp.row(cl.anchor);
        for (Vertex v : cl.members)
            if (!dp.leq(row[v], cl.radius))
                return CoverViolation{"member outside the cluster radius", v,
                                      static_cast<int>(c)};
    }
    // padding: some cluster contains each vertex's padded ball
    for (Vertex v = 0; v < dp.size(); v++) {
        VertexSet ball = dp.ball(v, padded_radius);
        bool covered = false;
        for (const auto &cl : clusters)
            if (ball.is_subset_of(cl.members)) {
                covered = true;
                break;
            }
        if (!covered)
            return CoverViolation{"padded ball not contained in any cluster", v, -1};
    }
    return nullopt;
}

optional<CoverViolation> verify_partition_cover(const DistanceProvider &dp,
                                                const SparsePartitionCover &pc) {
    if (auto bad = verify_cover(dp, pc.clusters, pc.delta, pc.padded_radius))
        return bad;
    vector<char> used(pc.clusters.size(), 0);
    for (const auto &part : pc.partitions) {
        vector<int> owner(dp.size(), -1);
        for (int cid : part) {
            used[cid] = 1;
            for (Vertex v : pc.clusters[cid].members) {
                if (owner[v] >= 0)
                    return CoverViolation{"partition holds intersecting clusters", v,
                                          cid};
                owner[v] = cid;
            }
        }
    }
    for (size_t c = 0; c < used.size(); c++)
        if (!used[c])
            return CoverViolation{"cluster missing from every partition", -1,
                                  static_cast<int>(c)};
    return nullopt;
}

double max_induced_diameter(const DistanceProvider &dp,
                            const vector<CoverCluster> &clusters) {
    double best = 0;
    for (const auto &cl : clusters) {
        if (cl.members.empty())
            continue;
        best = max(best, strong_diameter(dp.graph(), cl.members));
    }
    return best;
}

}  // namespace hwdim
