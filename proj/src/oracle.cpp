#include "hwdim/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

using namespace std;

namespace hwdim {

//--------------------------- LcaStructure ---------------------------

LcaStructure::LcaStructure(const CoverTree &tree) {
    size_t m = tree.nodes.size();
    if (tree.root < 0)
        throw PreconditionError("tree has no root");
    vector<vector<int>> children(m);
    for (size_t w = 0; w < m; w++)
        if (tree.nodes[w].parent >= 0)
            children[tree.nodes[w].parent].push_back(static_cast<int>(w));

    first_.assign(m, -1);
    euler_.reserve(2 * m);
    depth_.reserve(2 * m);
    // iterative Euler tour
    struct Frame {
        int node;
        size_t next_child;
    };
    vector<Frame> stack{{tree.root, 0}};
    int d = 0;
    while (!stack.empty()) {
        auto &[node, next_child] = stack.back();
        if (next_child == 0) {
            first_[node] = static_cast<int32_t>(euler_.size());
            euler_.push_back(node);
            depth_.push_back(d);
        }
        if (next_child < children[node].size()) {
            int ch = children[node][next_child++];
            stack.push_back({ch, 0});
            d++;
        } else {
            stack.pop_back();
            d--;
            if (!stack.empty()) {
                euler_.push_back(stack.back().node);
                depth_.push_back(d);
            }
        }
    }
    if (euler_.size() != 2 * m - 1)
        throw InvariantError("tree is not connected (euler tour too short)");
    for (size_t w = 0; w < m; w++)
        if (first_[w] < 0)
            throw InvariantError("tree node unreachable from the root");
    dist_to_root_ = tree.dist_to_root;
    build_table();
}

void LcaStructure::build_table() {
    size_t len = euler_.size();
    int logs = 1;
    while ((1u << logs) <= len)
        logs++;
    table_.assign(logs, vector<int32_t>(len));
    for (size_t i = 0; i < len; i++)
        table_[0][i] = static_cast<int32_t>(i);
    for (int l = 1; l < logs; l++) {
        size_t half = 1u << (l - 1);
        for (size_t i = 0; i + (1u << l) <= len; i++) {
            int a = table_[l - 1][i];
            int b = table_[l - 1][i + half];
            table_[l][i] = depth_[a] <= depth_[b] ? a : b;
        }
    }
}

int LcaStructure::range_argmin(int lo, int hi) const {
    int l = 31 - __builtin_clz(hi - lo + 1);
    int a = table_[l][lo];
    int b = table_[l][hi - (1 << l) + 1];
    return depth_[a] <= depth_[b] ? a : b;
}

int LcaStructure::lca(int a, int b) const {
    int fa = first_[a], fb = first_[b];
    if (fa > fb)
        swap(fa, fb);
    return euler_[range_argmin(fa, fb)];
}

size_t LcaStructure::size_in_words() const {
    size_t words = euler_.size() / 2 + depth_.size() / 2 + first_.size() / 2 +
                   dist_to_root_.size();
    for (const auto &lvl : table_)
        words += lvl.size() / 2;
    return words;
}

//--------------------------- DistanceOracle -------------------------

DistanceOracle::DistanceOracle(TreeCover tc) : cover_(std::move(tc)) {
    lca_.reserve(cover_.trees.size());
    for (const CoverTree &t : cover_.trees)
        lca_.emplace_back(t);
}

double DistanceOracle::query(Vertex u, Vertex v) const {
    if (u < 0 || u >= cover_.n || v < 0 || v >= cover_.n)
        throw PreconditionError("oracle query vertex out of range");
    if (u == v)
        return 0;
    double best = kInfDist;
    for (const auto &s : lca_) {
        int x = s.lca(u, v);
        double d = s.dist_to_root(u) + s.dist_to_root(v) - 2 * s.dist_to_root(x);
        best = min(best, d);
    }
    return best;
}

size_t DistanceOracle::size_in_words() const {
    size_t words = 0;
    for (const auto &s : lca_)
        words += s.size_in_words();
    for (const CoverTree &t : cover_.trees)
        words += t.nodes.size() * 3;  // node table
    return words;
}

//--------------------------- persistence ----------------------------

namespace {

constexpr uint32_t kOracleMagic = 0x4857444F;  // "HWDO"
constexpr uint32_t kOracleVersion = 1;

template <typename T>
void put(ostream &out, const T &v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T get(istream &in) {
    T v;
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in)
        throw ParseError("truncated oracle file");
    return v;
}

template <typename T>
void put_vec(ostream &out, const vector<T> &v) {
    put(out, static_cast<uint64_t>(v.size()));
    out.write(reinterpret_cast<const char *>(v.data()), v.size() * sizeof(T));
}

template <typename T>
vector<T> get_vec(istream &in) {
    uint64_t len = get<uint64_t>(in);
    vector<T> v(len);
    in.read(reinterpret_cast<char *>(v.data()), len * sizeof(T));
    if (!in)
        throw ParseError("truncated oracle file");
    return v;
}

}  // namespace

void LcaStructure::write(ostream &out) const {
    put_vec(out, euler_);
    put_vec(out, depth_);
    put_vec(out, first_);
    put_vec(out, dist_to_root_);
    put(out, static_cast<uint32_t>(table_.size()));
    for (const auto &lvl : table_)
        put_vec(out, lvl);
}

LcaStructure LcaStructure::read(istream &in) {
    LcaStructure s;
    s.euler_ = get_vec<int32_t>(in);
    s.depth_ = get_vec<int32_t>(in);
    s.first_ = get_vec<int32_t>(in);
    s.dist_to_root_ = get_vec<double>(in);
    uint32_t levels = get<uint32_t>(in);
    for (uint32_t l = 0; l < levels; l++)
        s.table_.push_back(get_vec<int32_t>(in));
    return s;
}

void DistanceOracle::save(const string &path) const {
    ofstream out(path, ios::binary);
    if (!out)
        throw ParseError("cannot open " + path + " for writing");
    put(out, kOracleMagic);
    put(out, kOracleVersion);
    write_tree_cover(cover_, out);
    for (const auto &s : lca_)
        s.write(out);
}

DistanceOracle DistanceOracle::load(const string &path) {
    ifstream in(path, ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    if (get<uint32_t>(in) != kOracleMagic)
        throw ParseError("not an oracle file (bad magic)");
    if (get<uint32_t>(in) != kOracleVersion)
        throw ParseError("unsupported oracle version");
    DistanceOracle o;
    o.cover_ = read_tree_cover(in);
    for (size_t t = 0; t < o.cover_.trees.size(); t++)
        o.lca_.push_back(LcaStructure::read(in));
    return o;
}

//--------------------------- bench ----------------------------------

BenchStats bench_oracle(const DistanceOracle &oracle, size_t query_count,
                        uint64_t seed) {
    BenchStats st;
    st.queries = query_count;
    if (query_count == 0)
        return st;
    Vertex n = oracle.vertex_count();
    CounterRng rng(seed);
    vector<pair<Vertex, Vertex>> qs(query_count);
    for (auto &q : qs)
        q = {static_cast<Vertex>(rng.next_below(n)),
             static_cast<Vertex>(rng.next_below(n))};

    vector<double> lat(query_count);
    double checksum = 0;
    auto t0 = chrono::steady_clock::now();
    for (size_t i = 0; i < query_count; i++) {
        auto a = chrono::steady_clock::now();
        checksum += oracle.query(qs[i].first, qs[i].second);
        auto b = chrono::steady_clock::now();
        lat[i] = chrono::duration<double, nano>(b - a).count();
    }
    auto t1 = chrono::steady_clock::now();

    sort(lat.begin(), lat.end());
    double total = 0;
    for (double x : lat)
        total += x;
    st.mean_ns = total / query_count;
    st.median_ns = lat[query_count / 2];
    st.p99_ns = lat[min(query_count - 1, static_cast<size_t>(query_count * 0.99))];
    double wall = chrono::duration<double>(t1 - t0).count();
    st.queries_per_second = wall > 0 ? query_count / wall : 0;
    st.checksum = checksum;
    return st;
}

}  // namespace hwdim
