#include <doctest.h>

#include "generators.hpp"
#include "hwdim/covers.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hwdim;
using namespace hwdim::test;

TEST_SUITE_BEGIN("covers");

TEST_CASE("sparse cover on the star graph") {
    auto inst = gen::star(9);
    DistanceProvider dp(inst.graph);
    double eps = 0.1;
    double delta = 2 * (2.8 + 6 * eps) * 1.0;  // working scale r = 1
    auto sc = sparse_cover(dp, delta, eps);
    CHECK(sc.r == doctest::Approx(1.0));
    // single center hub, no towns: every vertex padded by the one ball
    REQUIRE(sc.clusters.size() == 1);
    CHECK(sc.clusters[0].kind == ClusterKind::kHubBall);
    CHECK(sc.clusters[0].anchor == 0);
    CHECK(sc.max_membership == 1);
    CHECK_FALSE(verify_cover(dp, sc.clusters, sc.delta, sc.padded_radius));
    CHECK_FALSE(verify_cover(dp, sc.clusters, sc.delta, sc.delta / 8));
}

TEST_CASE("towns-only regime pads through town separation") {
    // scale far above the diameter: the cover is empty, every vertex is a
    // town center candidate, towns swallow the graph
    auto inst = gen::clustered_towns(4, 3, 64.0, 1.0, 9);
    DistanceProvider dp(inst.graph);
    double eps = 0.1;
    // pick delta so r lands between cluster diameter and spoke length
    double delta = 2 * (2.8 + 6 * eps) * 4.0;
    auto sc = sparse_cover(dp, delta, eps);
    CHECK_FALSE(verify_cover(dp, sc.clusters, sc.delta, sc.padded_radius));
    bool has_town = false;
    for (const auto &c : sc.clusters)
        has_town |= c.kind == ClusterKind::kTown;
    CHECK(has_town);
}

TEST_CASE("sparse cover invariants on random instances") {
    for (uint64_t seed : {201ULL, 202ULL, 203ULL}) {
        auto inst = gen::random_geometric(60, 4, seed);
        DistanceProvider dp(inst.graph);
        double eps = 0.1;
        for (double frac : {0.25, 0.6}) {
            auto sc = sparse_cover(dp, frac * dp.diameter(), eps);
            CHECK_FALSE(verify_cover(dp, sc.clusters, sc.delta, sc.delta / 8));
            // sparsity equals a direct per-vertex recount
            for (Vertex v = 0; v < dp.size(); v++) {
                int c = 0;
                for (const auto &cl : sc.clusters)
                    if (cl.members.contains(v))
                        c++;
                CHECK(sc.membership_count[v] == c);
            }
            // membership <= hubs within alpha r + 1 (towns are disjoint)
            double alpha_r = (2.8 + 6 * eps) * sc.r;
            for (Vertex v = 0; v < dp.size(); v++) {
                int hubs_near = 0;
                for (Vertex x : sc.spc.hubs)
                    if (dp.distance(v, x) <= alpha_r + 1e-9)
                        hubs_near++;
                CHECK(sc.membership_count[v] <= hubs_near + 1);
            }
        }
    }
}

TEST_CASE("tampered covers are caught") {
    auto inst = gen::random_geometric(50, 4, 11);
    DistanceProvider dp(inst.graph);
    auto sc = sparse_cover(dp, 0.4 * dp.diameter(), 0.1);
    REQUIRE_FALSE(verify_cover(dp, sc.clusters, sc.delta, sc.padded_radius));

    SUBCASE("dropping a cluster breaks padding") {
        auto clusters = sc.clusters;
        clusters.pop_back();
        // removing the last cluster may or may not break padding; removing
        // all balls certainly does when hubs exist
        std::vector<CoverCluster> towns_only;
        for (const auto &c : clusters)
            if (c.kind == ClusterKind::kTown)
                towns_only.push_back(c);
        if (!sc.spc.hubs.empty()) {
            auto bad = verify_cover(dp, towns_only, sc.delta, sc.padded_radius);
            CHECK(bad);
            if (bad)
                CHECK(bad->what.find("padded") != std::string::npos);
        }
    }
    SUBCASE("inflating a member set breaks the radius form") {
        auto clusters = sc.clusters;
        Vertex far = -1;
        const auto &anchor_row = dp.row(clusters[0].anchor);
        for (Vertex v = 0; v < dp.size(); v++)
            if (anchor_row[v] > clusters[0].radius + 1e-6)
                far = v;
        REQUIRE(far >= 0);
        clusters[0].members.insert(far);
        auto bad = verify_cover(dp, clusters, sc.delta, sc.padded_radius);
        REQUIRE(bad);
        CHECK(bad->what.find("radius") != std::string::npos);
    }
}

TEST_CASE("sparse partition cover") {
    SUBCASE("no hubs leaves the towns partition alone") {
        auto inst = gen::clustered_towns(4, 3, 64.0, 1.0, 9);
        DistanceProvider dp(inst.graph);
        double eps = 0.5;
        double delta = 4 * (1 + eps) * 4.0;
        auto pc = sparse_partition_cover(dp, delta, eps);
        CHECK_FALSE(verify_partition_cover(dp, pc));
        if (pc.spc.hubs.empty())
            CHECK(pc.partitions.size() == 1);
    }
    SUBCASE("invariants on random instances") {
        for (uint64_t seed : {31ULL, 32ULL}) {
            auto inst = gen::random_geometric(50, 4, seed);
            DistanceProvider dp(inst.graph);
            double eps = 0.3;
            auto pc = sparse_partition_cover(dp, 0.5 * dp.diameter(), eps);
            CHECK_FALSE(verify_partition_cover(dp, pc));
            CHECK(pc.padded_radius == doctest::Approx(eps * pc.r));
            // greedy color count is at most the max cluster conflict degree
            size_t hub_clusters = 0;
            for (const auto &c : pc.clusters)
                if (c.kind == ClusterKind::kHubBall)
                    hub_clusters++;
            if (hub_clusters > 0) {
                size_t max_conflicts = 0;
                for (const auto &a : pc.clusters) {
                    if (a.kind != ClusterKind::kHubBall)
                        continue;
                    size_t conf = 0;
                    for (const auto &b : pc.clusters)
                        if (b.kind == ClusterKind::kHubBall &&
                            a.members.intersects(b.members))
                            conf++;
                    max_conflicts = std::max(max_conflicts, conf);
                }
                CHECK(pc.partitions.size() - 1 <= max_conflicts);
            }
        }
    }
    SUBCASE("far hubs share a color") {
        auto inst = gen::clustered_towns(3, 4, 256.0, 1.0, 5);
        DistanceProvider dp(inst.graph);
        double eps = 0.4;
        // r around the cluster scale: hub clusters stay within clusters
        double delta = 4 * (1 + eps) * 3.0;
        auto pc = sparse_partition_cover(dp, delta, eps);
        CHECK_FALSE(verify_partition_cover(dp, pc));
        // hub clusters of different clusters are disjoint, so 2 partitions
        // suffice: towns + one color (when any hubs exist at this scale)
        if (!pc.spc.hubs.empty())
            CHECK(pc.partitions.size() <= 2);
    }
    SUBCASE("tampering with a partition is caught") {
        auto inst = gen::random_geometric(40, 4, 33);
        DistanceProvider dp(inst.graph);
        auto pc = sparse_partition_cover(dp, 0.5 * dp.diameter(), 0.3);
        size_t with_two = 0;
        for (const auto &part : pc.partitions)
            if (part.size() >= 2)
                with_two++;
        if (with_two > 0 && pc.partitions.size() >= 2) {
            // move a cluster into a partition where it overlaps
            SparsePartitionCover bad = pc;
            bool mutated = false;
            for (size_t pi = 1; pi < bad.partitions.size() && !mutated; pi++) {
                for (int cid : bad.partitions[pi]) {
                    for (int other : bad.partitions[0]) {
                        if (bad.clusters[cid].members.intersects(
                                bad.clusters[other].members)) {
                            bad.partitions[0].push_back(cid);
                            bad.partitions[pi].erase(
                                std::find(bad.partitions[pi].begin(),
                                          bad.partitions[pi].end(), cid));
                            mutated = true;
                            break;
                        }
                    }
                    if (mutated)
                        break;
                }
            }
            if (mutated)
                CHECK(verify_partition_cover(dp, bad));
        }
    }
}

TEST_CASE("induced diameter report") {
    auto inst = gen::random_geometric(30, 4, 3);
    DistanceProvider dp(inst.graph);
    auto sc = sparse_cover(dp, 0.5 * dp.diameter(), 0.1);
    double induced = max_induced_diameter(dp, sc.clusters);
    CHECK(induced >= 0);
}

TEST_SUITE_END();
