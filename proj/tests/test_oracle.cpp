#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "generators.hpp"
#include "hwdim/oracle.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hwdim;
using namespace hwdim::test;

TEST_SUITE_BEGIN("oracle");

namespace {

// reference LCA by explicit ancestor walk
int naive_lca(const CoverTree &t, int a, int b) {
    std::vector<char> is_anc(t.nodes.size(), 0);
    for (int w = a; w >= 0; w = t.nodes[w].parent)
        is_anc[w] = 1;
    for (int w = b; w >= 0; w = t.nodes[w].parent)
        if (is_anc[w])
            return w;
    return -1;
}

DistanceOracle tiny_oracle(const WeightedGraph &g, double eps) {
    DistanceProvider dp(rescale_to_unit_min_distance(g).graph);
    return DistanceOracle(build_tree_cover(dp, eps));
}

}  // namespace

TEST_CASE("lca structure matches the naive walk") {
    auto inst = gen::random_geometric(40, 4, 19);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    auto tc = build_tree_cover(dp, 0.5);
    CounterRng rng(7);
    for (const CoverTree &t : tc.trees) {
        LcaStructure s(t);
        for (int probe = 0; probe < 250; probe++) {
            int a = static_cast<int>(rng.next_below(t.nodes.size()));
            int b = static_cast<int>(rng.next_below(t.nodes.size()));
            CHECK(s.lca(a, b) == naive_lca(t, a, b));
        }
    }
}

TEST_CASE("oracle sandwich on a star") {
    auto inst = gen::star(7);
    auto oracle = tiny_oracle(inst.graph, 1.0);
    DistanceProvider dp(rescale_to_unit_min_distance(inst.graph).graph);
    CHECK(oracle.query(1, 1) == 0);
    for (Vertex u = 0; u < dp.size(); u++)
        for (Vertex v = u + 1; v < dp.size(); v++) {
            double est = oracle.query(u, v);
            CHECK(est >= dp.distance(u, v) - 1e-9);
            CHECK(est <= 3 * dp.distance(u, v) + 1e-9);
        }
    // leaf pairs meet at the center copy: the estimate is exact
    CHECK(oracle.query(1, 2) == doctest::Approx(dp.distance(1, 2)));
}

TEST_CASE("oracle sandwich on random instances against APSP") {
    for (uint64_t seed : {3ULL, 4ULL}) {
        auto inst = gen::random_geometric(60, 4, seed);
        auto scaled = rescale_to_unit_min_distance(inst.graph);
        DistanceProvider dp(scaled.graph);
        auto fw = floyd_warshall(scaled.graph);
        for (double eps : {1.0, 0.25}) {
            auto tc = build_tree_cover(dp, eps);
            REQUIRE_FALSE(verify_tree_cover(dp, tc));
            DistanceOracle oracle(std::move(tc));
            for (Vertex u = 0; u < dp.size(); u++)
                for (Vertex v = u + 1; v < dp.size(); v++) {
                    double est = oracle.query(u, v);
                    CHECK(est >= fw[u][v] - 1e-9);
                    CHECK(est <= (1 + 2 * eps) * fw[u][v] + 1e-9);
                }
        }
    }
}

TEST_CASE("persistence round trip is bit identical") {
    auto inst = gen::random_geometric(35, 4, 67);
    auto oracle = tiny_oracle(inst.graph, 0.5);
    std::string path = "oracle_roundtrip_test.bin";
    oracle.save(path);
    auto back = DistanceOracle::load(path);
    std::remove(path.c_str());
    REQUIRE(back.vertex_count() == oracle.vertex_count());
    REQUIRE(back.tree_count() == oracle.tree_count());
    for (Vertex u = 0; u < oracle.vertex_count(); u++)
        for (Vertex v = 0; v < oracle.vertex_count(); v++) {
            double a = oracle.query(u, v);
            double b = back.query(u, v);
            CHECK(a == b);  // bit identical
        }
}

TEST_CASE("size accounting stays within the sparse-table budget") {
    auto inst = gen::random_geometric(50, 4, 23);
    auto oracle = tiny_oracle(inst.graph, 0.5);
    size_t nodes = 0;
    for (const auto &t : oracle.cover().trees)
        nodes += t.nodes.size();
    double log_n = std::log2(std::max<size_t>(2, nodes));
    CHECK(oracle.size_in_words() <= 16.0 * nodes * log_n);
}

TEST_CASE("bench") {
    auto inst = gen::random_geometric(40, 4, 29);
    auto oracle = tiny_oracle(inst.graph, 1.0);
    SUBCASE("zero queries gives empty stats") {
        auto st = bench_oracle(oracle, 0, 1);
        CHECK(st.queries == 0);
        CHECK(st.mean_ns == 0);
    }
    SUBCASE("fixed seed replays the same checksum") {
        auto a = bench_oracle(oracle, 2000, 5);
        auto b = bench_oracle(oracle, 2000, 5);
        CHECK(a.checksum == b.checksum);
        CHECK(a.queries_per_second > 0);
        CHECK(a.p99_ns >= a.median_ns);
    }
}

TEST_SUITE_END();
