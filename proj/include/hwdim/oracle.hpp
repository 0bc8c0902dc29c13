#pragma once

#include <string>
#include <vector>

#include "hwdim/rng.hpp"
#include "hwdim/treecover.hpp"

namespace hwdim {

// Euler tour + sparse-table range-minimum: O(n log n) words, two
// range-min probes per query.
class LcaStructure {
  public:
    LcaStructure() = default;
    explicit LcaStructure(const CoverTree &tree);

    int lca(int a, int b) const;  // node indices
    double dist_to_root(int node) const { return dist_to_root_[node]; }
    size_t size_in_words() const;

    void write(std::ostream &out) const;
    static LcaStructure read(std::istream &in);

  private:
    std::vector<int32_t> euler_;         // node per tour position, length 2m-1
    std::vector<int32_t> depth_;         // depth per tour position
    std::vector<int32_t> first_;         // first tour position per node
    std::vector<std::vector<int32_t>> table_;  // argmin positions per level
    std::vector<double> dist_to_root_;

    int range_argmin(int lo, int hi) const;
    void build_table();
};

class DistanceOracle {
  public:
    DistanceOracle() = default;
    // Caller contract: tc passed verify_tree_cover.
    explicit DistanceOracle(TreeCover tc);

    double query(Vertex u, Vertex v) const;
    double eps() const { return cover_.eps; }
    Vertex vertex_count() const { return cover_.n; }
    size_t tree_count() const { return cover_.trees.size(); }
    size_t size_in_words() const;
    const TreeCover &cover() const { return cover_; }

    void save(const std::string &path) const;
    static DistanceOracle load(const std::string &path);

  private:
    TreeCover cover_;
    std::vector<LcaStructure> lca_;
};

struct BenchStats {
    size_t queries = 0;
    double mean_ns = 0;
    double median_ns = 0;
    double p99_ns = 0;
    double queries_per_second = 0;
    double checksum = 0;  // sum of estimates, defeats dead-code elimination
};

BenchStats bench_oracle(const DistanceOracle &oracle, size_t query_count,
                        uint64_t seed);

}  // namespace hwdim
