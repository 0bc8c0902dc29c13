#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "hwdim/tsp.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hwdim;
using namespace hwdim::test;

TEST_SUITE_BEGIN("tsp");

namespace {

double walk_cost(const DistanceProvider &dp, const Walk &w) {
    return w.cost(dp);
}

bool valid_tour(const Walk &w, const VertexSet &terminals) {
    if (w.seq.empty())
        return false;
    if (w.seq.size() > 1 && !w.closed())
        return false;
    for (Vertex k : terminals)
        if (!w.visits(k))
            return false;
    return true;
}

}  // namespace

TEST_CASE("brute force oracle") {
    auto inst = gen::random_connected(14, 1.6, 3);
    DistanceProvider dp(inst.graph);
    auto fw = floyd_warshall(inst.graph);
    SUBCASE("three terminals walk the triangle perimeter") {
        VertexSet k({0, 5, 9});
        Walk w = tsp_brute_force(dp, k);
        CHECK(valid_tour(w, k));
        double perim = fw[0][5] + fw[5][9] + fw[9][0];
        CHECK(walk_cost(dp, w) == doctest::Approx(perim));
    }
    SUBCASE("collinear points cost twice the span") {
        DistanceProvider line(path_graph({1, 1, 1}));
        VertexSet k({0, 1, 2, 3});
        Walk w = tsp_brute_force(line, k);
        CHECK(walk_cost(line, w) == doctest::Approx(6));
    }
    SUBCASE("matches the permutation scan on random terminal sets") {
        for (uint64_t seed : {4ULL, 5ULL, 6ULL}) {
            CounterRng rng(seed);
            std::vector<Vertex> pick;
            while (pick.size() < 7) {
                auto v = static_cast<Vertex>(rng.next_below(14));
                if (std::find(pick.begin(), pick.end(), v) == pick.end())
                    pick.push_back(v);
            }
            VertexSet k(pick);
            Walk w = tsp_brute_force(dp, k);
            std::vector<int> terms(k.ids().begin(), k.ids().end());
            CHECK(walk_cost(dp, w) ==
                  doctest::Approx(tsp_permutation_scan(fw, terms)));
        }
    }
    SUBCASE("size limit enforced") {
        VertexSet k;
        for (Vertex v = 0; v < 12; v++)
            k.insert(v);
        CHECK_THROWS_AS(tsp_brute_force(dp, k), PreconditionError);
    }
}

TEST_CASE("mst and matching") {
    auto inst = gen::random_geometric(20, 4, 9);
    DistanceProvider dp(inst.graph);
    auto fw = floyd_warshall(inst.graph);
    SUBCASE("two points") {
        auto t = mst(dp, {3, 7});
        REQUIRE(t.edges.size() == 1);
        CHECK(t.weight == doctest::Approx(fw[3][7]));
        auto m = min_weight_matching(dp, {3, 7});
        REQUIRE(m.pairs.size() == 1);
        CHECK(m.weight == doctest::Approx(fw[3][7]));
    }
    SUBCASE("mst weight is minimal against exhaustive spanning trees") {
        // Cayley-scan on 5 points via Prim re-verification: every spanning
        // tree's weight is at least the Prim weight
        std::vector<Vertex> pts{0, 4, 8, 12, 16};
        auto t = mst(dp, pts);
        CHECK(t.edges.size() == 4);
        // all 5^3 = 125 labeled trees via Pruefer sequences
        double best = kInfDist;
        for (int a = 0; a < 5; a++)
            for (int b = 0; b < 5; b++)
                for (int c = 0; c < 5; c++) {
                    std::vector<int> pruefer{a, b, c};
                    std::vector<int> deg(5, 1);
                    for (int x : pruefer)
                        deg[x]++;
                    double w = 0;
                    std::vector<int> seq = pruefer;
                    std::vector<char> used(5, 0);
                    for (int it = 0; it < 3; it++) {
                        int leaf = -1;
                        for (int v = 0; v < 5 && leaf < 0; v++)
                            if (deg[v] == 1 && !used[v])
                                leaf = v;
                        used[leaf] = 1;
                        w += fw[pts[leaf]][pts[seq[it]]];
                        deg[seq[it]]--;
                        deg[leaf]--;
                    }
                    int e1 = -1, e2 = -1;
                    for (int v = 0; v < 5; v++)
                        if (!used[v]) {
                            if (e1 < 0)
                                e1 = v;
                            else
                                e2 = v;
                        }
                    w += fw[pts[e1]][pts[e2]];
                    best = std::min(best, w);
                }
        CHECK(t.weight == doctest::Approx(best));
    }
    SUBCASE("odd point count is an error") {
        CHECK_THROWS_AS(min_weight_matching(dp, {1, 2, 3}), PreconditionError);
    }
    SUBCASE("matching DP equals exhaustive pairing") {
        for (uint64_t seed : {11ULL, 12ULL}) {
            CounterRng rng(seed);
            std::vector<Vertex> pts;
            while (pts.size() < 8) {
                auto v = static_cast<Vertex>(rng.next_below(20));
                if (std::find(pts.begin(), pts.end(), v) == pts.end())
                    pts.push_back(v);
            }
            auto m = min_weight_matching(dp, pts);
            CHECK_FALSE(m.greedy);
            std::vector<int> idx(pts.begin(), pts.end());
            CHECK(m.weight == doctest::Approx(matching_exhaustive(fw, idx)));
        }
    }
    SUBCASE("square geometry sanity") {
        // 4 points on a metric square: matching takes two opposite sides
        std::vector<Edge> edges{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}};
        DistanceProvider sq(WeightedGraph(4, edges));
        auto t = mst(sq, {0, 1, 2, 3});
        CHECK(t.weight == doctest::Approx(3));
        auto m = min_weight_matching(sq, {0, 1, 2, 3});
        CHECK(m.weight == doctest::Approx(2));
    }
}

TEST_CASE("patching") {
    auto inst = gen::clustered_towns(4, 3, 64.0, 1.0, 7);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    // interface of convenience: the hub plus the four anchors
    Interface iface;
    iface.level = 0;
    iface.center = 0;
    iface.points = VertexSet({0, 1, 4, 7, 10});
    SUBCASE("no walks, a single point") {
        Interface tiny;
        tiny.points = VertexSet({0});
        auto res = patch_walks(dp, {}, tiny);
        CHECK(res.walk.seq == std::vector<Vertex>{0});
        CHECK(res.mst_weight == 0);
    }
    SUBCASE("walks over the interface obey the cost bound") {
        std::vector<Walk> walks;
        walks.push_back(Walk{{1, 2, 1}});       // closed at anchor 1
        walks.push_back(Walk{{4, 5, 7}});       // anchor 4 to anchor 7
        walks.push_back(Walk{{10, 11, 10}});
        double sum = 0;
        for (const auto &w : walks)
            sum += walk_cost(dp, w);
        auto res = patch_walks(dp, walks, iface);
        CHECK(res.walk.closed());
        for (Vertex p : iface.points)
            CHECK(res.walk.visits(p));
        CHECK(walk_cost(dp, res.walk) <= sum + 2 * res.mst_weight + 1e-9);
        CHECK(res.matching_weight <= res.mst_weight + 1e-9);
        // every walk traversed: its interior vertices appear
        for (const auto &w : walks)
            for (Vertex v : w.seq)
                CHECK(res.walk.visits(v));
    }
    SUBCASE("walk endpoints outside the interface are rejected") {
        CHECK_THROWS_AS(patch_walks(dp, {Walk{{2, 3, 2}}}, iface),
                        PreconditionError);
    }
}

TEST_CASE("dense level and interface on the clustered fixture") {
    auto inst = gen::clustered_towns(5, 4, 64.0, 1.0, 3);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    auto ctx = make_tsp_context(dp, 1.0 / 6, 3);
    VertexSet terminals(inst.terminals);

    auto dense = find_dense_level(ctx, terminals);
    REQUIRE(dense);
    CHECK(dense->towns.size() >= 4);  // 5 clusters, at most one excluded
    Interface iface = build_interface(ctx, *dense);
    CHECK(!iface.points.empty());

    SUBCASE("sub-instance metric and chi") {
        const auto &td = ctx.towns[dense->level];
        auto sub = make_town_sub_instance(ctx, iface, td, dense->towns[0],
                                          terminals);
        REQUIRE(sub.terminals.size() == 1);
        size_t m = sub.terminals.size();
        CHECK(sub.metric.d[0][m] ==
              doctest::Approx(dp.distance(sub.terminals[0], sub.chi[0])));
        Walk w = solve_town(ctx, sub);
        CHECK(w.seq.front() == sub.chi[0]);
        CHECK(w.seq.back() == sub.chi[0]);
        CHECK(walk_cost(dp, w) ==
              doctest::Approx(2 * dp.distance(sub.terminals[0], sub.chi[0])));
    }
    SUBCASE("no dense level with a sky-high q") {
        auto lazy_ctx = make_tsp_context(dp, 1.0 / 6, 1000);
        CHECK_FALSE(find_dense_level(lazy_ctx, terminals));
    }
}

TEST_CASE("subset tsp basics") {
    auto inst = gen::random_geometric(30, 4, 15);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    auto ctx = make_tsp_context(dp, 1.0 / 6, 32);
    SUBCASE("single terminal is free") {
        Walk w = solve_subset_tsp(ctx, VertexSet({5}));
        CHECK(w.seq == std::vector<Vertex>{5});
        CHECK(walk_cost(dp, w) == 0);
    }
    SUBCASE("two terminals go out and back") {
        Walk w = solve_subset_tsp(ctx, VertexSet({2, 9}));
        CHECK(valid_tour(w, VertexSet({2, 9})));
        CHECK(walk_cost(dp, w) == doctest::Approx(2 * dp.distance(2, 9)));
    }
    SUBCASE("matches brute force on random 7-terminal sets") {
        CounterRng rng(8);
        for (int t = 0; t < 5; t++) {
            std::vector<Vertex> pick;
            while (pick.size() < 7) {
                auto v = static_cast<Vertex>(rng.next_below(30));
                if (std::find(pick.begin(), pick.end(), v) == pick.end())
                    pick.push_back(v);
            }
            VertexSet k(pick);
            Walk w = solve_subset_tsp(ctx, k);
            CHECK(valid_tour(w, k));
            double opt = walk_cost(dp, tsp_brute_force(dp, k));
            CHECK(walk_cost(dp, w) <= (1 + 1.0 / 6) * opt + 1e-9);
        }
    }
}

TEST_CASE("divide path fires on the clustered fixture and stays near-optimal") {
    auto inst = gen::clustered_towns(5, 4, 64.0, 1.0, 3);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    auto ctx = make_tsp_context(dp, 1.0 / 6, 3);
    VertexSet terminals(inst.terminals);
    REQUIRE(terminals.size() == 5);

    Walk w = solve_subset_tsp(ctx, terminals);
    CHECK(ctx.divide_fired);
    CHECK(ctx.recursion_count >= 1);
    CHECK(valid_tour(w, terminals));
    double opt = walk_cost(dp, tsp_brute_force(dp, terminals));
    CHECK(walk_cost(dp, w) <= (1 + 1.0 / 6) * opt + 1e-9);
    CHECK_FALSE(ctx.heuristic_used);
}

TEST_CASE("default q threshold") {
    auto inst = gen::random_geometric(25, 4, 7);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    auto ctx = make_tsp_context(dp, 1.0 / 6, 32);
    CHECK(default_q_threshold(ctx, 9) == 9);   // capped at |K|
    CHECK(default_q_threshold(ctx, 1000) >= 32);
}

TEST_SUITE_END();
