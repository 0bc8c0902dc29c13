#include "hwdim/treecover.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

using namespace std;

namespace hwdim {

//--------------------------- CoverTree ------------------------------

void CoverTree::finalize() {
    size_t m = nodes.size();
    dist_to_root.assign(m, -1);
    depth.assign(m, -1);
    for (size_t w = 0; w < m; w++) {
        // walk up to a resolved ancestor, then unwind
        vector<int> chain;
        int cur = static_cast<int>(w);
        while (cur >= 0 && depth[cur] < 0) {
            chain.push_back(cur);
            cur = nodes[cur].parent;
        }
        double base_d = cur >= 0 ? dist_to_root[cur] : 0;
        int base_depth = cur >= 0 ? depth[cur] : -1;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            base_depth += 1;
            if (nodes[*it].parent >= 0)
                base_d += nodes[*it].parent_weight;
            depth[*it] = base_depth;
            dist_to_root[*it] = base_d;
        }
    }
}

double tree_distance(const CoverTree &tree, Vertex u, Vertex v) {
    if (u == v)
        return 0;
    int a = u, b = v;
    while (a != b) {
        if (tree.depth[a] >= tree.depth[b])
            a = tree.nodes[a].parent;
        else
            b = tree.nodes[b].parent;
        if (a < 0 || b < 0)
            throw InvariantError("tree_distance walked past the root");
    }
    return tree.dist_to_root[u] + tree.dist_to_root[v] - 2 * tree.dist_to_root[a];
}

//--------------------------- group partition ------------------------

vector<VertexSet> partition_spc_groups(const DistanceProvider &dp,
                                       const ShortestPathCover &spc_i) {
    double sep = (2 + 4 * spc_i.eps) * spc_i.r;
    vector<VertexSet> groups;
    for (Vertex x : spc_i.hubs) {
        bool placed = false;
        for (auto &g : groups) {
            bool close = false;
            for (Vertex y : g)
                if (!dp.gt(dp.distance(x, y), sep)) {
                    close = true;
                    break;
                }
            if (!close) {
                g.insert(x);
                placed = true;
                break;
            }
        }
        if (!placed)
            groups.push_back(VertexSet({x}));
    }
    return groups;
}

//--------------------------- construction ---------------------------

namespace {

CoverTree build_one_tree(const DistanceProvider &dp, const TreeCover &tc, int q,
                         int j) {
    Vertex n = dp.size();
    CoverTree tree;
    tree.q = q;
    tree.j = j;
    tree.nodes.reserve(2 * n);
    for (Vertex v = 0; v < n; v++)
        tree.nodes.push_back({v, -1, -1, 0});

    vector<int> rep(n);
    vector<double> rep_dist(n, 0);  // d_T(v, rep(v)), for the representative claim
    for (Vertex v = 0; v < n; v++)
        rep[v] = v;

    int max_level = static_cast<int>(tc.radii.size()) - 1;
    for (int k = 0;; k++) {
        int i = q + k * tc.levels_k;
        if (i > max_level)
            break;
        const auto &level_groups = tc.groups[i];
        if (j - 1 >= static_cast<int>(level_groups.size()))
            continue;
        const VertexSet &hubs = level_groups[j - 1];
        if (hubs.empty())
            continue;
        double attach_r = (1 + 2 * tc.eps) * tc.radii[i];

        map<int, int> copy_of_hub;   // hub vertex -> node index of x_k
        map<int, int> new_parent;    // representative node -> its new parent
        map<int, double> edge_w;
        for (Vertex v = 0; v < n; v++) {
            int w = rep[v];
            if (new_parent.count(w))
                continue;
            Vertex y = tree.nodes[w].underlying;
            Vertex hub = -1;
            const auto &yrow = dp.row(y);
            for (Vertex x : hubs)
                if (dp.leq(yrow[x], attach_r)) {
                    if (hub >= 0)
                        throw InvariantError(
                            "two qualifying hubs in one group; separation "
                            "invariant broken upstream");
                    hub = x;
                }
            if (hub < 0)
                continue;
            auto [it, fresh] = copy_of_hub.try_emplace(hub, 0);
            if (fresh) {
                it->second = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back({hub, k, -1, 0});
            }
            new_parent[w] = it->second;
            edge_w[w] = yrow[hub];
        }
        for (auto &[w, p] : new_parent) {
            tree.nodes[w].parent = p;
            tree.nodes[w].parent_weight = edge_w[w];
        }
        for (Vertex v = 0; v < n; v++) {
            auto it = new_parent.find(rep[v]);
            if (it == new_parent.end())
                continue;
            rep_dist[v] += edge_w[rep[v]];
            rep[v] = it->second;
            if (!dp.leq(rep_dist[v], 4 * tc.radii[i]))
                throw InvariantError(
                    "representative distance claim failed for leaf " +
                    to_string(v) + " at level " + to_string(i));
        }
    }

    // chain leftover roots so the forest becomes one dominating tree
    vector<int> roots;
    for (size_t w = 0; w < tree.nodes.size(); w++)
        if (tree.nodes[w].parent < 0)
            roots.push_back(static_cast<int>(w));
    double join_w = max(tc.phi, 1.0);
    for (size_t t = 1; t < roots.size(); t++) {
        tree.nodes[roots[t]].parent = roots[t - 1];
        tree.nodes[roots[t]].parent_weight = join_w;
    }
    tree.root = roots.empty() ? -1 : roots[0];
    tree.finalize();
    return tree;
}

}  // namespace

TreeCover build_tree_cover(const DistanceProvider &dp, double eps,
                           const SpcBuilder &per_level_spc_builder, int threads) {
    if (!(eps > 0) || eps > 1)
        throw ParamError("tree cover requires eps in (0, 1]");
    if (dp.size() >= 2 && !(dp.min_distance() > 1.0))
        throw PreconditionError(
            "tree cover requires minimum distance > 1; rescale the graph first");

    SpcBuilder builder = per_level_spc_builder;
    if (!builder)
        builder = [](const DistanceProvider &d, double r, double e) {
            return build_spc_local_search(d, r, e);
        };

    TreeCover tc;
    tc.eps = eps;
    tc.delta = eps / 3;
    tc.levels_k = static_cast<int>(ceil(log(32 / eps) / log(1 + tc.delta)));
    tc.phi = dp.diameter();
    tc.n = dp.size();

    if (tc.n == 1) {
        CoverTree t;
        t.q = 0;
        t.j = 1;
        t.nodes.push_back({0, -1, -1, 0});
        t.root = 0;
        t.finalize();
        tc.trees.push_back(std::move(t));
        return tc;
    }

    int max_level = static_cast<int>(floor(log(tc.phi) / log(1 + tc.delta)));
    for (int i = 0; i <= max_level; i++) {
        tc.radii.push_back(pow(1 + tc.delta, i));
        ShortestPathCover spc = dp.leq(tc.phi, tc.radii[i])
                                    ? ShortestPathCover{tc.radii[i], eps, {}, false}
                                    : builder(dp, tc.radii[i], eps);
        tc.groups.push_back(partition_spc_groups(dp, spc));
    }

    vector<pair<int, int>> plan;  // (q, j) with group j nonempty somewhere
    for (int q = 0; q < tc.levels_k; q++) {
        size_t jmax = 0;
        for (int i = q; i <= max_level; i += tc.levels_k)
            jmax = max(jmax, tc.groups[i].size());
        for (size_t j = 1; j <= jmax; j++)
            plan.emplace_back(q, static_cast<int>(j));
    }

    tc.trees.resize(plan.size());
    threads = max(1, threads);
    auto work = [&](size_t t0, size_t t1) {
        for (size_t t = t0; t < t1; t++)
            tc.trees[t] = build_one_tree(dp, tc, plan[t].first, plan[t].second);
    };
    if (threads == 1 || plan.size() <= 1) {
        work(0, plan.size());
    } else {
        vector<thread> pool;
        size_t chunk = (plan.size() + threads - 1) / threads;
        for (int t = 0; t < threads; t++)
            pool.emplace_back(work, min(t * chunk, plan.size()),
                              min((t + 1) * chunk, plan.size()));
        for (auto &th : pool)
            th.join();
    }
    return tc;
}

//--------------------------- verification ---------------------------

optional<TreeCoverViolation> verify_tree_cover(
    const DistanceProvider &dp, const TreeCover &tc,
    vector<vector<double>> *best_out) {
    Vertex n = dp.size();
    double stretch = 1 + 2 * tc.eps;
    vector<vector<double>> best(n, vector<double>(n, kInfDist));
    for (Vertex v = 0; v < n; v++)
        best[v][v] = 0;

    // fold per-tree leaf distances (DFS from each leaf) into the running min
    for (const CoverTree &tree : tc.trees) {
        size_t m = tree.nodes.size();
        vector<vector<pair<int, double>>> adj(m);
        for (size_t w = 0; w < m; w++)
            if (tree.nodes[w].parent >= 0) {
                adj[w].push_back({tree.nodes[w].parent, tree.nodes[w].parent_weight});
                adj[tree.nodes[w].parent].push_back(
                    {static_cast<int>(w), tree.nodes[w].parent_weight});
            }
        vector<double> dist(m);
        vector<int> stack;
        for (Vertex u = 0; u < n; u++) {
            dist.assign(m, -1);
            dist[u] = 0;
            stack.assign(1, u);
            while (!stack.empty()) {
                int w = stack.back();
                stack.pop_back();
                for (auto [x, wt] : adj[w])
                    if (dist[x] < 0) {
                        dist[x] = dist[w] + wt;
                        stack.push_back(x);
                    }
            }
            const auto &urow = dp.row(u);
            for (Vertex v = u + 1; v < n; v++) {
                if (dist[v] < 0)
                    return TreeCoverViolation{"tree is not connected", u, v, 0, 0};
                if (!dp.leq(urow[v], dist[v]))
                    return TreeCoverViolation{"domination violated", u, v, dist[v],
                                              urow[v]};
                best[u][v] = min(best[u][v], dist[v]);
            }
        }
    }

    optional<TreeCoverViolation> worst;
    for (Vertex u = 0; u < n; u++) {
        const auto &urow = dp.row(u);
        for (Vertex v = u + 1; v < n; v++) {
            best[v][u] = best[u][v];
            double bound = stretch * urow[v];
            if (dp.leq(best[u][v], bound))
                continue;
            if (!worst || best[u][v] / urow[v] > worst->got / worst->bound)
                worst = TreeCoverViolation{"stretch violated", u, v, best[u][v],
                                           bound};
        }
    }
    if (best_out)
        *best_out = std::move(best);
    return worst;
}

//--------------------------- serialization --------------------------

namespace {

constexpr uint32_t kTreeCoverMagic = 0x48575443;  // "HWTC"
constexpr uint32_t kTreeCoverVersion = 1;

template <typename T>
void put(ostream &out, const T &v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T get(istream &in) {
    T v;
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in)
        throw ParseError("truncated tree cover file");
    return v;
}

}  // namespace

void write_tree_cover(const TreeCover &tc, ostream &out) {
    put(out, kTreeCoverMagic);
    put(out, kTreeCoverVersion);
    put(out, tc.eps);
    put(out, tc.phi);
    put(out, static_cast<uint32_t>(tc.n));
    put(out, static_cast<uint32_t>(tc.levels_k));
    put(out, static_cast<uint32_t>(tc.radii.size()));
    for (double r : tc.radii)
        put(out, r);
    put(out, static_cast<uint32_t>(tc.trees.size()));
    for (const CoverTree &t : tc.trees) {
        put(out, static_cast<int32_t>(t.q));
        put(out, static_cast<int32_t>(t.j));
        put(out, static_cast<int32_t>(t.root));
        put(out, static_cast<uint32_t>(t.nodes.size()));
        for (const TreeNode &nd : t.nodes) {
            put(out, nd.underlying);
            put(out, static_cast<int32_t>(nd.level));
            put(out, static_cast<int32_t>(nd.parent));
            put(out, nd.parent_weight);
        }
    }
}

TreeCover read_tree_cover(istream &in) {
    if (get<uint32_t>(in) != kTreeCoverMagic)
        throw ParseError("not a tree cover file (bad magic)");
    if (get<uint32_t>(in) != kTreeCoverVersion)
        throw ParseError("unsupported tree cover version");
    TreeCover tc;
    tc.eps = get<double>(in);
    tc.delta = tc.eps / 3;
    tc.phi = get<double>(in);
    tc.n = static_cast<Vertex>(get<uint32_t>(in));
    tc.levels_k = static_cast<int>(get<uint32_t>(in));
    uint32_t levels = get<uint32_t>(in);
    for (uint32_t i = 0; i < levels; i++)
        tc.radii.push_back(get<double>(in));
    uint32_t tree_count = get<uint32_t>(in);
    for (uint32_t t = 0; t < tree_count; t++) {
        CoverTree tree;
        tree.q = get<int32_t>(in);
        tree.j = get<int32_t>(in);
        tree.root = get<int32_t>(in);
        uint32_t m = get<uint32_t>(in);
        for (uint32_t w = 0; w < m; w++) {
            TreeNode nd;
            nd.underlying = get<Vertex>(in);
            nd.level = get<int32_t>(in);
            nd.parent = get<int32_t>(in);
            nd.parent_weight = get<double>(in);
            tree.nodes.push_back(nd);
        }
        tree.finalize();
        tc.trees.push_back(std::move(tree));
    }
    return tc;
}

void save_tree_cover(const TreeCover &tc, const string &path) {
    ofstream out(path, ios::binary);
    if (!out)
        throw ParseError("cannot open " + path + " for writing");
    write_tree_cover(tc, out);
}

TreeCover load_tree_cover(const string &path) {
    ifstream in(path, ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    return read_tree_cover(in);
}

}  // namespace hwdim
