#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "hwdim/spc.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hwdim;
using namespace hwdim::test;

TEST_SUITE_BEGIN("spc");

TEST_CASE("verify_spc on the star graph") {
    auto inst = gen::star(6);
    DistanceProvider dp(inst.graph);
    SUBCASE("center hub is valid at r=1 eps=0") {
        CHECK_FALSE(verify_spc(dp, {1.0, 0.0, VertexSet({0}), false}));
    }
    SUBCASE("full vertex set is always valid") {
        VertexSet all;
        for (Vertex v = 0; v < dp.size(); v++)
            all.insert(v);
        CHECK_FALSE(verify_spc(dp, {1.0, 0.0, all, false}));
        CHECK_FALSE(verify_spc(dp, {0.37, 0.5, all, false}));
    }
    SUBCASE("a single leaf hub fails on two other leaves") {
        auto bad = verify_spc(dp, {1.0, 0.0, VertexSet({1}), false});
        REQUIRE(bad);
        CHECK(bad->u != 1);
        CHECK(bad->z != 1);
        CHECK(bad->best_detour_ratio > 1);
        // enumerate: the best detour for a leaf pair through hub 1 is 4/2
        CHECK(bad->best_detour_ratio == doctest::Approx(2));
    }
}

TEST_CASE("local search finds the star center") {
    auto inst = gen::star(16);
    DistanceProvider dp(inst.graph);
    for (auto strategy : {HsStrategy::kAuto, HsStrategy::kGreedy}) {
        auto spc = build_spc_local_search(dp, 1.0, 0.0, strategy);
        CHECK(spc.hubs == VertexSet({0}));
        CHECK_FALSE(verify_spc(dp, spc));
    }
}

TEST_CASE("scale beyond the diameter yields an empty cover") {
    auto inst = gen::random_connected(12, 1.5, 2);
    DistanceProvider dp(inst.graph);
    auto spc = build_spc_local_search(dp, dp.diameter() + 1, 0.5);
    CHECK(spc.hubs.empty());
    CHECK_FALSE(verify_spc(dp, spc));
}

TEST_CASE("local search is valid and near-minimal on small graphs") {
    // exact minimum by subset enumeration; greedy factor 1 + ln n
    for (uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        auto inst = gen::random_connected(8, 1.2, seed);
        DistanceProvider dp(inst.graph);
        auto fw = floyd_warshall(inst.graph);
        for (double frac : {0.2, 0.45}) {
            double r = frac * dp.diameter();
            for (double eps : {0.0, 0.5}) {
                auto spc = build_spc_local_search(dp, r, eps);
                CHECK_FALSE(verify_spc(dp, spc));
                CHECK(spc_valid_bruteforce(fw, r, eps, spc.hubs.ids()));
                int opt = min_spc_size_exhaustive(fw, r, eps);
                CHECK(static_cast<double>(spc.hubs.size()) <=
                      (1 + std::log(8.0)) * std::max(opt, 1) + 1e-9);
            }
        }
    }
}

TEST_CASE("local search output is valid on random graphs (fuzz)") {
    for (uint64_t seed = 10; seed < 22; seed++) {
        auto inst = gen::random_connected(24 + 3 * (seed % 5), 1.8, seed);
        DistanceProvider dp(inst.graph);
        double diam = dp.diameter();
        for (double frac : {0.15, 0.4}) {
            for (double eps : {0.0, 1.0 / 6, 0.8}) {
                auto spc = build_spc_local_search(dp, frac * diam, eps);
                CAPTURE(seed);
                CAPTURE(frac);
                CAPTURE(eps);
                CHECK_FALSE(verify_spc(dp, spc));
            }
        }
    }
}

TEST_CASE("hitting set") {
    SUBCASE("single two-element set picks the lowest id") {
        HittingSetInstance inst;
        inst.universe = VertexSet({3, 7});
        inst.sets = {{3, 7}};
        CHECK(solve_hitting_set(inst, HsStrategy::kGreedy) == VertexSet({3}));
        CHECK(solve_hitting_set(inst, HsStrategy::kExactSmall) == VertexSet({3}));
    }
    SUBCASE("triangle system has optimum two") {
        HittingSetInstance inst;
        inst.universe = VertexSet({0, 1, 2});
        inst.sets = {{0, 1}, {1, 2}, {0, 2}};
        CHECK(solve_hitting_set(inst, HsStrategy::kExactSmall).size() == 2);
        CHECK(min_hitting_set_exhaustive({0, 1, 2}, inst.sets) == 2);
    }
    SUBCASE("disjoint singletons need everything") {
        HittingSetInstance inst;
        inst.universe = VertexSet({0, 1, 2});
        inst.sets = {{0}, {1}, {2}};
        CHECK(solve_hitting_set(inst, HsStrategy::kAuto) == VertexSet({0, 1, 2}));
    }
    SUBCASE("empty set is an error") {
        HittingSetInstance inst;
        inst.universe = VertexSet({0});
        inst.sets = {{}};
        CHECK_THROWS_AS(solve_hitting_set(inst, HsStrategy::kGreedy), ParamError);
    }
    SUBCASE("exact matches exhaustive search on random instances") {
        CounterRng rng(42);
        for (int t = 0; t < 30; t++) {
            int u = 4 + static_cast<int>(rng.next_below(8));
            HittingSetInstance inst;
            std::vector<int> uni;
            for (int e = 0; e < u; e++) {
                inst.universe.insert(e);
                uni.push_back(e);
            }
            int m = 2 + static_cast<int>(rng.next_below(10));
            for (int s = 0; s < m; s++) {
                std::vector<Vertex> set;
                for (int e = 0; e < u; e++)
                    if (rng.next_below(3) == 0)
                        set.push_back(e);
                if (set.empty())
                    set.push_back(static_cast<Vertex>(rng.next_below(u)));
                inst.sets.push_back(set);
            }
            auto exact = solve_hitting_set(inst, HsStrategy::kExactSmall);
            std::vector<std::vector<int>> sets_int;
            for (auto &s : inst.sets)
                sets_int.emplace_back(s.begin(), s.end());
            CHECK(static_cast<int>(exact.size()) ==
                  min_hitting_set_exhaustive(uni, sets_int));
        }
    }
}

TEST_CASE("minimalize") {
    auto inst = gen::star(8);
    DistanceProvider dp(inst.graph);
    SUBCASE("full star cover shrinks to the center") {
        VertexSet all;
        for (Vertex v = 0; v < dp.size(); v++)
            all.insert(v);
        auto min_spc = minimalize_spc(dp, {1.0, 0.0, all, false});
        CHECK(min_spc.hubs == VertexSet({0}));
        CHECK(min_spc.minimal);
    }
    SUBCASE("already minimal input is unchanged") {
        auto min_spc = minimalize_spc(dp, {1.0, 0.0, VertexSet({0}), false});
        CHECK(min_spc.hubs == VertexSet({0}));
    }
    SUBCASE("vacuously valid empty cover stays empty") {
        auto min_spc =
            minimalize_spc(dp, {dp.diameter() + 1, 0.0, VertexSet{}, false});
        CHECK(min_spc.hubs.empty());
    }
    SUBCASE("invalid input is a precondition error") {
        CHECK_THROWS_AS(minimalize_spc(dp, {1.0, 0.0, VertexSet({1}), false}),
                        PreconditionError);
    }
    SUBCASE("removal of any hub breaks a minimal cover") {
        auto g = gen::random_connected(18, 1.6, 33);
        DistanceProvider d2(g.graph);
        double r = 0.3 * d2.diameter();
        auto spc = minimalize_spc(d2, build_spc_local_search(d2, r, 0.25));
        CHECK_FALSE(verify_spc(d2, spc));
        for (Vertex x : spc.hubs) {
            ShortestPathCover crippled = spc;
            crippled.hubs.erase(x);
            CHECK(verify_spc(d2, crippled));
        }
    }
}

TEST_CASE("local sparsity") {
    auto inst = gen::star(10);
    DistanceProvider dp(inst.graph);
    SUBCASE("no hubs") {
        auto ls = local_sparsity(dp, {1.0, 0.0, VertexSet{}, false});
        CHECK(ls.s == 0);
    }
    SUBCASE("single center hub") {
        auto ls = local_sparsity(dp, {1.0, 0.0, VertexSet({0}), false});
        CHECK(ls.s == 1);
    }
    SUBCASE("matches a direct recount on a random instance") {
        auto g = gen::random_connected(30, 2.0, 8);
        DistanceProvider d2(g.graph);
        double r = 0.25 * d2.diameter(), eps = 0.3;
        auto spc = build_spc_local_search(d2, r, eps);
        auto ls = local_sparsity(d2, spc);
        int expect = 0;
        for (Vertex v = 0; v < d2.size(); v++) {
            int c = 0;
            for (Vertex x : spc.hubs)
                if (d2.distance(v, x) <= (2 + 4 * eps) * r + 1e-12)
                    c++;
            expect = std::max(expect, c);
        }
        CHECK(ls.s == expect);
    }
}

TEST_CASE("towns and sprawl") {
    SUBCASE("hubs everywhere leave only sprawl") {
        auto inst = gen::random_connected(15, 1.5, 4);
        DistanceProvider dp(inst.graph);
        VertexSet all;
        for (Vertex v = 0; v < dp.size(); v++)
            all.insert(v);
        auto td = towns_and_sprawl(dp, {1.0, 0.0, all, false});
        CHECK(td.towns.empty());
        CHECK(td.sprawl.size() == 15);
    }
    SUBCASE("far clique becomes a town") {
        WeightedGraph g = two_cliques_bridge(4, 10.0);
        DistanceProvider dp(g);
        // hubs = the near endpoint of the bridge; r=1, eps=0
        ShortestPathCover spc{1.0, 0.0, VertexSet({0}), false};
        REQUIRE_FALSE(verify_spc(dp, spc));
        auto td = towns_and_sprawl(dp, spc);
        REQUIRE(td.towns.size() == 1);
        CHECK(td.towns[0].center == 4);  // lowest id in the far clique
        CHECK(td.towns[0].members == VertexSet({4, 5, 6, 7}));
        for (Vertex u : td.towns[0].members)
            for (Vertex w = 0; w < 4; w++)
                CHECK(dp.distance(u, w) > 1);
    }
    SUBCASE("duostar fixture is pure sprawl at r=1") {
        for (double eps : {0.0, 1.0 / 6}) {
            auto inst = gen::duostar(3, eps);
            DistanceProvider dp(inst.graph);
            ShortestPathCover spc{1.0, eps, VertexSet({0}), false};
            CHECK_FALSE(verify_spc(dp, spc));
            auto td = towns_and_sprawl(dp, spc);
            CHECK(td.towns.empty());
            CHECK(td.sprawl.size() == dp.size());
        }
    }
    SUBCASE("town lemma properties on random instances") {
        for (uint64_t seed : {51ULL, 52ULL, 53ULL}) {
            auto inst = gen::random_geometric(40, 3, seed);
            DistanceProvider dp(inst.graph);
            double r = 0.12 * dp.diameter(), eps = 0.2;
            auto spc = build_spc_local_search(dp, r, eps);
            auto td = towns_and_sprawl(dp, spc);
            std::vector<int> town_of(dp.size(), -1);
            size_t covered = 0;
            for (size_t t = 0; t < td.towns.size(); t++)
                for (Vertex v : td.towns[t].members) {
                    CHECK(town_of[v] == -1);
                    town_of[v] = static_cast<int>(t);
                    covered++;
                }
            CHECK(covered + td.sprawl.size() == static_cast<size_t>(dp.size()));
            for (const Town &t : td.towns)
                CHECK(weak_diameter(dp, t.members) <= r + 1e-9);
            for (Vertex v : td.sprawl)
                CHECK(dp.distance_to_set(v, spc.hubs) <= (2 + eps) * r + 1e-9);
        }
    }
}

TEST_CASE("eps-net cover") {
    SUBCASE("eps zero is rejected") {
        DistanceProvider dp(path_graph({1, 1}));
        CHECK_THROWS_AS(epsnet_spc(dp, 1.0, 0.0), ParamError);
    }
    SUBCASE("two far points at r=1 eps=0.5 keep both") {
        DistanceProvider dp(path_graph({10}));
        auto spc = epsnet_spc(dp, 1.0, 0.5);
        CHECK(spc.hubs.size() == 2);
        CHECK_FALSE(verify_spc(dp, spc));
    }
    SUBCASE("always valid and obeys the doubling sparsity bound") {
        for (uint64_t seed : {7ULL, 8ULL}) {
            auto inst = gen::euclidean_complete(60, seed);
            DistanceProvider dp(inst.graph);
            for (double eps : {0.5, 1.0}) {
                for (double frac : {0.1, 0.3}) {
                    double r = frac * dp.diameter();
                    auto spc = epsnet_spc(dp, r, eps);
                    CHECK_FALSE(verify_spc(dp, spc));
                    double bound = std::pow(64 + 32 / eps, 2);
                    CHECK(local_sparsity(dp, spc).s <= bound);
                }
            }
        }
    }
}

TEST_CASE("hub bound report") {
    SUBCASE("no hubs, all counts zero") {
        DistanceProvider dp(path_graph({1, 1}));
        auto rep = verify_hub_bounds(dp, {1.0, 0.0, VertexSet{}, true});
        CHECK(rep.max_near_ball == 0);
        CHECK(rep.max_alpha_ball == 0);
    }
    SUBCASE("star with the center hub") {
        auto inst = gen::star(6);
        DistanceProvider dp(inst.graph);
        auto rep = verify_hub_bounds(dp, {1.0, 0.0, VertexSet({0}), true});
        CHECK(rep.max_near_ball == 1);
        CHECK(rep.max_alpha_ball == 1);
        CHECK(rep.near_ball_flagged.empty());
    }
    SUBCASE("counts equal direct enumeration") {
        auto inst = gen::random_connected(25, 1.8, 23);
        DistanceProvider dp(inst.graph);
        double r = 0.2 * dp.diameter(), eps = 0.25;
        auto spc = minimalize_spc(dp, build_spc_local_search(dp, r, eps));
        auto rep = verify_hub_bounds(dp, spc);
        for (const auto &e : rep.entries) {
            int alpha = 0;
            for (Vertex x : spc.hubs)
                if (dp.distance(e.v, x) <= (2.8 + 6 * eps) * r + 1e-12)
                    alpha++;
            CHECK(e.alpha_ball_hubs == alpha);
        }
    }
}

TEST_SUITE_END();
