#include "hwdim/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

using namespace std;

namespace hwdim {

//--------------------------- small-metric solvers -------------------

namespace {

// Held-Karp over an explicit metric; returns the optimal cyclic order.
vector<int> held_karp_tour(const SmallMetric &m, double *cost_out) {
    int n = static_cast<int>(m.size());
    if (n == 1) {
        if (cost_out)
            *cost_out = 0;
        return {0};
    }
    if (n > 20)
        throw PreconditionError("Held-Karp limited to 20 points");
    size_t full = size_t(1) << (n - 1);  // subsets of 1..n-1, anchored at 0
    vector<vector<double>> dp(full, vector<double>(n, kInfDist));
    vector<vector<int16_t>> par(full, vector<int16_t>(n, -1));
    for (int v = 1; v < n; v++)
        dp[size_t(1) << (v - 1)][v] = m.d[0][v];
    for (size_t mask = 1; mask < full; mask++) {
        for (int last = 1; last < n; last++) {
            if (!(mask >> (last - 1) & 1) || dp[mask][last] == kInfDist)
                continue;
            double base = dp[mask][last];
            for (int nxt = 1; nxt < n; nxt++) {
                if (mask >> (nxt - 1) & 1)
                    continue;
                size_t nm = mask | size_t(1) << (nxt - 1);
                double cand = base + m.d[last][nxt];
                if (cand < dp[nm][nxt]) {
                    dp[nm][nxt] = cand;
                    par[nm][nxt] = static_cast<int16_t>(last);
                }
            }
        }
    }
    double best = kInfDist;
    int best_last = 1;
    for (int last = 1; last < n; last++) {
        double c = dp[full - 1][last] + m.d[last][0];
        if (c < best) {
            best = c;
            best_last = last;
        }
    }
    vector<int> tour;
    size_t mask = full - 1;
    int cur = best_last;
    while (cur > 0) {
        tour.push_back(cur);
        int prev = par[mask][cur];
        mask ^= size_t(1) << (cur - 1);
        cur = prev;
        if (cur < 0)
            cur = 0;
    }
    tour.push_back(0);
    reverse(tour.begin(), tour.end());
    if (cost_out)
        *cost_out = best;
    return tour;
}

double tour_cost(const SmallMetric &m, const vector<int> &tour) {
    double c = 0;
    for (size_t i = 0; i < tour.size(); i++)
        c += m.d[tour[i]][tour[(i + 1) % tour.size()]];
    return c;
}

// Nearest neighbor from point 0 plus first-improvement 2-opt.
vector<int> heuristic_tour(const SmallMetric &m) {
    int n = static_cast<int>(m.size());
    vector<int> tour;
    vector<char> used(n, 0);
    int cur = 0;
    used[0] = 1;
    tour.push_back(0);
    for (int step = 1; step < n; step++) {
        int best = -1;
        for (int v = 0; v < n; v++)
            if (!used[v] && (best < 0 || m.d[cur][v] < m.d[cur][best]))
                best = v;
        used[best] = 1;
        tour.push_back(best);
        cur = best;
    }
    bool improved = true;
    int passes = 0;
    while (improved && passes++ < 50) {
        improved = false;
        for (int i = 0; i + 1 < n && !improved; i++) {
            for (int j = i + 2; j < n && !improved; j++) {
                int a = tour[i], b = tour[i + 1];
                int c = tour[j], d = tour[(j + 1) % n];
                if (a == d)
                    continue;
                double delta = m.d[a][c] + m.d[b][d] - m.d[a][b] - m.d[c][d];
                if (delta < -1e-12) {
                    reverse(tour.begin() + i + 1, tour.begin() + j + 1);
                    improved = true;
                }
            }
        }
    }
    return tour;
}

SmallMetric metric_over(const DistanceProvider &dp, const vector<Vertex> &pts) {
    SmallMetric m;
    m.d.assign(pts.size(), vector<double>(pts.size(), 0));
    for (size_t a = 0; a < pts.size(); a++) {
        const auto &row = dp.row(pts[a]);
        for (size_t b = 0; b < pts.size(); b++)
            m.d[a][b] = row[pts[b]];
    }
    return m;
}

}  // namespace

double held_karp_cost(const SmallMetric &m) {
    double c = 0;
    held_karp_tour(m, &c);
    return c;
}

Walk tsp_brute_force(const DistanceProvider &dp, const VertexSet &terminals) {
    if (terminals.empty())
        throw PreconditionError("tsp_brute_force needs terminals");
    if (terminals.size() > 11)
        throw PreconditionError("tsp_brute_force limited to 11 terminals");
    vector<Vertex> pts = terminals.ids();
    if (pts.size() == 1)
        return Walk{{pts[0]}};
    vector<int> tour = held_karp_tour(metric_over(dp, pts), nullptr);
    Walk w;
    for (int idx : tour)
        w.seq.push_back(pts[idx]);
    w.seq.push_back(pts[tour[0]]);
    return w;
}

//--------------------------- MST and matching -----------------------

MstResult mst(const DistanceProvider &dp, const vector<Vertex> &points) {
    MstResult out;
    int n = static_cast<int>(points.size());
    if (n <= 1)
        return out;
    vector<double> key(n, kInfDist);
    vector<int> parent(n, -1);
    vector<char> done(n, 0);
    key[0] = 0;
    for (int it = 0; it < n; it++) {
        int v = -1;
        for (int u = 0; u < n; u++)
            if (!done[u] && (v < 0 || key[u] < key[v]))
                v = u;
        done[v] = 1;
        if (parent[v] >= 0) {
            out.edges.push_back({parent[v], v});
            out.weight += key[v];
        }
        const auto &row = dp.row(points[v]);
        for (int u = 0; u < n; u++)
            if (!done[u] && row[points[u]] < key[u]) {
                key[u] = row[points[u]];
                parent[u] = v;
            }
    }
    return out;
}

MatchingResult min_weight_matching(const DistanceProvider &dp,
                                   const vector<Vertex> &points) {
    MatchingResult out;
    int n = static_cast<int>(points.size());
    if (n % 2 != 0)
        throw PreconditionError("matching needs an even point count");
    if (n == 0)
        return out;
    SmallMetric m = metric_over(dp, points);
    if (n <= 20) {
        size_t full = size_t(1) << n;
        vector<double> dp_mask(full, kInfDist);
        vector<int> choice(full, -1);
        dp_mask[0] = 0;
        for (size_t mask = 0; mask + 1 < full; mask++) {
            if (dp_mask[mask] == kInfDist)
                continue;
            int a = 0;
            while (mask >> a & 1)
                a++;
            for (int b = a + 1; b < n; b++) {
                if (mask >> b & 1)
                    continue;
                size_t nm = mask | size_t(1) << a | size_t(1) << b;
                double cand = dp_mask[mask] + m.d[a][b];
                if (cand < dp_mask[nm]) {
                    dp_mask[nm] = cand;
                    choice[nm] = a * n + b;
                }
            }
        }
        size_t mask = full - 1;
        while (mask) {
            int a = choice[mask] / n, b = choice[mask] % n;
            out.pairs.push_back({a, b});
            out.weight += m.d[a][b];
            mask ^= size_t(1) << a | size_t(1) << b;
        }
        return out;
    }
    // greedy: repeatedly take the globally shortest free pair
    out.greedy = true;
    vector<tuple<double, int, int>> all;
    for (int a = 0; a < n; a++)
        for (int b = a + 1; b < n; b++)
            all.push_back({m.d[a][b], a, b});
    sort(all.begin(), all.end());
    vector<char> used(n, 0);
    for (auto &[d, a, b] : all) {
        if (used[a] || used[b])
            continue;
        used[a] = used[b] = 1;
        out.pairs.push_back({a, b});
        out.weight += d;
    }
    return out;
}

//--------------------------- context --------------------------------

TspContext make_tsp_context(const DistanceProvider &dp, double eps, int q,
                            TownSolver solver) {
    if (q < 2)
        throw ParamError("tsp q threshold must be at least 2");
    TspContext ctx;
    ctx.dp = &dp;
    ctx.eps = eps;
    ctx.q = q;
    ctx.solver = solver;
    ctx.hubs = build_hub_hierarchy(dp, eps);
    ctx.nets = hierarchy_nets(dp, ctx.hubs);
    ctx.towns = towns_per_level(dp, ctx.hubs);
    return ctx;
}

int default_q_threshold(const TspContext &ctx, size_t terminal_count) {
    const DistanceProvider &dp = *ctx.dp;
    int s = local_sparsity(
                dp, {ctx.hubs.radius(0), ctx.hubs.cover_eps(), ctx.hubs.hubs(0), false})
                .s;
    double e = ctx.eps;
    double formula = pow(e, -5) * pow(log2(1 / e), 2) * s * s;
    long long q = max<long long>(32, static_cast<long long>(ceil(formula)));
    q = min<long long>(q, static_cast<long long>(terminal_count));
    return static_cast<int>(max<long long>(2, q));
}

//--------------------------- divide step ----------------------------

optional<DenseLevel> find_dense_level(const TspContext &ctx,
                                      const VertexSet &terminals) {
    const DistanceProvider &dp = *ctx.dp;
    Vertex n = dp.size();
    for (int i = 0; i < static_cast<int>(ctx.towns.size()); i++) {
        const TownDecomposition &td = ctx.towns[i];
        if (td.towns.empty())
            continue;
        vector<int> town_of(n, -1);
        vector<char> has_terminal(td.towns.size(), 0);
        for (size_t t = 0; t < td.towns.size(); t++)
            for (Vertex v : td.towns[t].members)
                town_of[v] = static_cast<int>(t);
        for (Vertex k : terminals)
            if (town_of[k] >= 0)
                has_terminal[town_of[k]] = 1;

        double ball_r = (2 + 4 * ctx.eps) * ctx.hubs.radius(i);
        for (Vertex v = 0; v < n; v++) {
            const auto &row = dp.row(v);
            vector<char> seen(td.towns.size(), 0);
            vector<int> hit;
            for (Vertex u = 0; u < n; u++) {
                if (!dp.leq(row[u], ball_r))
                    continue;
                int t = town_of[u];
                if (t >= 0 && has_terminal[t] && !seen[t]) {
                    seen[t] = 1;
                    hit.push_back(t);
                }
            }
            if (static_cast<int>(hit.size()) <= ctx.q)
                continue;

            DenseLevel dense;
            dense.level = i;
            dense.witness = v;
            sort(hit.begin(), hit.end());

            // exclude the unique town around the level-j net point
            int j = i + static_cast<int>(ceil(
                            log(6 / ctx.eps + 8) / log(1 + ctx.hubs.sigma)));
            double wide_r = (3 + 4 * ctx.eps) * ctx.hubs.radius(i);
            Vertex net_point = -1;
            for (Vertex y : ctx.nets.net(j)) {
                if (!dp.leq(row[y], wide_r))
                    continue;
                if (net_point >= 0)
                    throw InvariantError(
                        "two level-j net points inside one (3+4eps)r_i ball; "
                        "net packing arithmetic violated");
                net_point = y;
            }
            if (net_point >= 0) {
                dense.excluded_net_point = net_point;
                int t = town_of[net_point];
                if (t >= 0 && binary_search(hit.begin(), hit.end(), t)) {
                    dense.excluded_town = t;
                    hit.erase(find(hit.begin(), hit.end(), t));
                }
            }
            dense.towns = std::move(hit);
            return dense;
        }
    }
    return nullopt;
}

Interface build_interface(const TspContext &ctx, const DenseLevel &dense) {
    const DistanceProvider &dp = *ctx.dp;
    int i = dense.level;
    double log_span = log(6 / ctx.eps + 8) / log(1 + ctx.hubs.sigma);
    int jmax = i + static_cast<int>(floor(log_span));
    VertexSet ball = dp.ball(dense.witness, (2 + 4 * ctx.eps) * ctx.hubs.radius(i));

    Interface iface;
    iface.level = i;
    iface.center = dense.witness;
    for (int j = i; j <= min(jmax, ctx.hubs.top_level); j++) {
        double near_r = (2 + ctx.eps) * ctx.hubs.radius(j);
        for (Vertex x : ctx.hubs.hubs(j)) {
            const auto &xrow = dp.row(x);
            for (Vertex u : ball)
                if (dp.leq(xrow[u], near_r)) {
                    iface.by_level.push_back({j, x});
                    iface.points.insert(x);
                    break;
                }
        }
    }

    // close-interface-points claim
    if (dense.towns.size() >= 2) {
        if (iface.points.empty())
            throw InvariantError(
                "interface empty although >= 2 towns are in play; hierarchy bug");
        const TownDecomposition &td = ctx.towns[i];
        double bound = (3 + 8 * ctx.eps) * ctx.hubs.radius(i);
        for (int t : dense.towns)
            for (Vertex u : td.towns[t].members)
                if (!dp.leq(dp.distance_to_set(u, iface.points), bound))
                    throw InvariantError(
                        "town vertex " + to_string(u) +
                        " farther than (3+8eps) r_i from the interface");
    }
    return iface;
}

Vertex nearest_interface_point(const DistanceProvider &dp, const Interface &iface,
                               Vertex u) {
    Vertex best = -1;
    double bd = kInfDist;
    for (Vertex x : iface.points)
        if (dp.distance(u, x) < bd) {
            bd = dp.distance(u, x);
            best = x;
        }
    return best;
}

TownSubInstance make_town_sub_instance(const TspContext &ctx,
                                       const Interface &iface,
                                       const TownDecomposition &towns,
                                       int town_id, const VertexSet &terminals) {
    const DistanceProvider &dp = *ctx.dp;
    TownSubInstance sub;
    sub.town_id = town_id;
    for (Vertex v : towns.towns[town_id].members)
        if (terminals.contains(v))
            sub.terminals.push_back(v);
    if (sub.terminals.empty())
        throw PreconditionError("town sub-instance without terminals");

    size_t m = sub.terminals.size();
    sub.chi.resize(m);
    sub.metric.d.assign(m + 1, vector<double>(m + 1, 0));
    for (size_t a = 0; a < m; a++) {
        sub.chi[a] = nearest_interface_point(dp, iface, sub.terminals[a]);
        const auto &row = dp.row(sub.terminals[a]);
        for (size_t b = 0; b < m; b++)
            sub.metric.d[a][b] = row[sub.terminals[b]];
        sub.metric.d[a][m] = row[sub.chi[a]];
        sub.metric.d[m][a] = row[sub.chi[a]];
    }
    // d_T is a metric; replay the triangle inequality exhaustively
    size_t k = m + 1;
    for (size_t a = 0; a < k; a++)
        for (size_t b = 0; b < k; b++)
            for (size_t c = 0; c < k; c++)
                if (!dp.leq(sub.metric.d[a][b],
                            sub.metric.d[a][c] + sub.metric.d[c][b]))
                    throw InvariantError("town sub-metric violates the triangle "
                                         "inequality");
    return sub;
}

Walk solve_town(const TspContext &ctx, const TownSubInstance &sub) {
    size_t m = sub.terminals.size();
    vector<int> tour;
    if (ctx.solver == TownSolver::kExactDp &&
        sub.metric.size() <= static_cast<size_t>(ctx.exact_limit)) {
        tour = held_karp_tour(sub.metric, nullptr);
    } else {
        tour = heuristic_tour(sub.metric);
    }
    // rotate so the virtual point (index m) sits last
    auto pit = find(tour.begin(), tour.end(), static_cast<int>(m));
    rotate(tour.begin(), pit + 1 == tour.end() ? tour.begin() : pit + 1,
           tour.end());

    if (tour.size() < 2 || tour.back() != static_cast<int>(m))
        throw InvariantError("town tour lost its virtual point");
    Walk w;
    int first = tour[0];
    int last = tour[tour.size() - 2];
    w.seq.push_back(sub.chi[first]);
    for (size_t t = 0; t + 1 < tour.size(); t++)
        w.seq.push_back(sub.terminals[tour[t]]);
    w.seq.push_back(sub.chi[last]);
    return w;
}

//--------------------------- patching -------------------------------

PatchResult patch_walks(const DistanceProvider &dp, const vector<Walk> &walks,
                        const Interface &iface) {
    if (iface.points.empty())
        throw PreconditionError("patching needs a nonempty interface");
    vector<Vertex> pts = iface.points.ids();
    int n = static_cast<int>(pts.size());
    auto idx_of = [&](Vertex v) {
        auto it = lower_bound(pts.begin(), pts.end(), v);
        if (it == pts.end() || *it != v)
            throw PreconditionError("walk endpoint " + to_string(v) +
                                    " is not an interface point");
        return static_cast<int>(it - pts.begin());
    };

    struct MultiEdge {
        int a, b;
        int walk_id;  // -1 for black edges
    };
    vector<MultiEdge> edges;
    double walks_cost = 0;
    for (size_t wi = 0; wi < walks.size(); wi++) {
        const Walk &w = walks[wi];
        if (w.seq.empty())
            throw PreconditionError("cannot patch an empty walk");
        edges.push_back({idx_of(w.seq.front()), idx_of(w.seq.back()),
                         static_cast<int>(wi)});
        walks_cost += w.cost(dp);
    }

    PatchResult out;
    MstResult tree = mst(dp, pts);
    out.mst_weight = tree.weight;
    for (auto [a, b] : tree.edges)
        edges.push_back({a, b, -1});

    vector<int> degree(n, 0);
    for (const auto &e : edges) {
        degree[e.a]++;
        degree[e.b]++;
    }
    vector<Vertex> odd;
    vector<int> odd_idx;
    for (int v = 0; v < n; v++)
        if (degree[v] % 2) {
            odd.push_back(pts[v]);
            odd_idx.push_back(v);
        }
    if (odd.size() % 2)
        throw InvariantError("odd-degree set of odd cardinality");
    MatchingResult match = min_weight_matching(dp, odd);
    out.matching_weight = match.weight;
    out.greedy_matching = match.greedy;
    for (auto [a, b] : match.pairs)
        edges.push_back({odd_idx[a], odd_idx[b], -1});

    if (match.greedy) {
        if (!dp.leq(match.weight, 2 * tree.weight))
            throw InvariantError("greedy matching exceeded twice the MST weight");
    } else if (!dp.leq(match.weight, max(tree.weight, 0.0))) {
        throw InvariantError("exact matching heavier than the MST");
    }

    // Hierholzer over the multigraph (connected: the MST spans I)
    vector<vector<int>> incident(n);
    for (size_t e = 0; e < edges.size(); e++) {
        incident[edges[e].a].push_back(static_cast<int>(e));
        incident[edges[e].b].push_back(static_cast<int>(e));
    }
    vector<char> used(edges.size(), 0);
    vector<size_t> cursor(n, 0);
    vector<int> circuit;           // vertex indices
    vector<int> circuit_edge;      // edge taken to REACH circuit[k]
    vector<pair<int, int>> stack;  // (vertex, edge used to get here)
    stack.push_back({0, -1});
    while (!stack.empty()) {
        auto [v, via] = stack.back();
        bool advanced = false;
        while (cursor[v] < incident[v].size()) {
            int e = incident[v][cursor[v]++];
            if (used[e])
                continue;
            used[e] = 1;
            int to = edges[e].a == v ? edges[e].b : edges[e].a;
            stack.push_back({to, e});
            advanced = true;
            break;
        }
        if (!advanced) {
            circuit.push_back(v);
            circuit_edge.push_back(via);
            stack.pop_back();
        }
    }
    for (char u : used)
        if (!u)
            throw InvariantError("euler tour missed an edge; interface multigraph "
                                 "not connected");

    // circuit is in reverse traversal order; expand red edges into walks
    reverse(circuit.begin(), circuit.end());
    reverse(circuit_edge.begin(), circuit_edge.end());
    Walk result;
    result.seq.push_back(pts[circuit[0]]);
    for (size_t k = 1; k < circuit.size(); k++) {
        int e = circuit_edge[k];
        Vertex to = pts[circuit[k]];
        if (e >= 0 && edges[e].walk_id >= 0) {
            const Walk &w = walks[edges[e].walk_id];
            vector<Vertex> part(w.seq.begin(), w.seq.end());
            if (part.front() != result.seq.back())
                reverse(part.begin(), part.end());
            if (part.front() != result.seq.back() || part.back() != to)
                throw InvariantError("walk endpoints disagree with the euler circuit");
            result.seq.insert(result.seq.end(), part.begin() + 1, part.end());
        } else {
            result.seq.push_back(to);
        }
    }

    double budget = walks_cost + tree.weight + match.weight;
    if (!dp.leq(result.cost(dp), budget))
        throw InvariantError("patched walk costs more than walks + MST + matching");
    out.walk = std::move(result);
    return out;
}

//--------------------------- full solve -----------------------------

namespace {

// splice closed walk b into closed walk a at a shared vertex
Walk splice_at(const Walk &a, const Walk &b, Vertex shared) {
    auto ia = find(a.seq.begin(), a.seq.end(), shared);
    auto ib = find(b.seq.begin(), b.seq.end(), shared);
    if (ia == a.seq.end() || ib == b.seq.end())
        throw InvariantError("splice vertex missing from a walk");
    Walk out;
    out.seq.insert(out.seq.end(), a.seq.begin(), ia + 1);
    // b rotated to start and end at `shared` (closed walk, drop dup tail)
    vector<Vertex> cyc(b.seq.begin(), b.seq.end() - 1);
    size_t start = ib - b.seq.begin();
    for (size_t k = 1; k <= cyc.size(); k++)
        out.seq.push_back(cyc[(start + k) % cyc.size()]);
    out.seq.insert(out.seq.end(), ia + 1, a.seq.end());
    return out;
}

}  // namespace

Walk solve_subset_tsp(TspContext &ctx, const VertexSet &terminals) {
    const DistanceProvider &dp = *ctx.dp;
    if (terminals.empty())
        throw PreconditionError("subset TSP needs at least one terminal");
    if (ctx.recursion_count > dp.size())
        throw InvariantError("subset TSP recursion exceeded the vertex count");
    if (terminals.size() == 1)
        return Walk{{terminals[0]}};

    optional<DenseLevel> dense = find_dense_level(ctx, terminals);
    if (!dense) {
        vector<Vertex> pts = terminals.ids();
        SmallMetric m = metric_over(dp, pts);
        vector<int> tour;
        if (ctx.solver == TownSolver::kExactDp &&
            m.size() <= static_cast<size_t>(ctx.exact_limit)) {
            tour = held_karp_tour(m, nullptr);
        } else {
            ctx.heuristic_used = true;
            tour = heuristic_tour(m);
        }
        Walk w;
        for (int t : tour)
            w.seq.push_back(pts[t]);
        w.seq.push_back(pts[tour[0]]);
        return w;
    }

    ctx.divide_fired = true;
    ctx.recursion_count++;
    Interface iface = build_interface(ctx, *dense);
    const TownDecomposition &td = ctx.towns[dense->level];

    vector<Walk> town_walks;
    double town_cost = 0;
    VertexSet removed;
    for (int t : dense->towns) {
        TownSubInstance sub = make_town_sub_instance(ctx, iface, td, t, terminals);
        if (ctx.solver == TownSolver::kHeuristic ||
            sub.metric.size() > static_cast<size_t>(ctx.exact_limit))
            ctx.heuristic_used = true;
        town_walks.push_back(solve_town(ctx, sub));
        town_cost += town_walks.back().cost(dp);
        removed = VertexSet::unite(removed, td.towns[t].members);
    }

    PatchResult patch = patch_walks(dp, town_walks, iface);
    ctx.greedy_matching_used = ctx.greedy_matching_used || patch.greedy_matching;
    Walk patched_hn = make_hub_net_respecting(dp, ctx.hubs, ctx.nets, patch.walk);

    // shared terminal carried into the remaining instance
    Vertex t_shared = -1;
    for (Vertex k : terminals)
        if (removed.contains(k)) {
            t_shared = k;
            break;
        }
    if (t_shared < 0)
        throw InvariantError("dense towns contain no terminal");

    vector<Vertex> next_terms{t_shared};
    for (Vertex k : terminals)
        if (!removed.contains(k))
            next_terms.push_back(k);
    VertexSet next(next_terms);
    if (next.size() >= terminals.size())
        throw InvariantError("subset TSP recursion failed to shrink K");

    Walk rest = solve_subset_tsp(ctx, next);
    Walk combined = rest.seq.size() == 1 ? patched_hn
                                         : splice_at(patched_hn, rest, t_shared);

    double mst_term = (patch.greedy_matching ? 3.0 : 2.0) * patch.mst_weight;
    double bound =
        rest.cost(dp) + (1 + 77 * ctx.eps) * (town_cost + mst_term);
    if (!dp.leq(combined.cost(dp), bound))
        throw InvariantError("stitched solution exceeded the approx-sol bound");
    for (Vertex k : terminals)
        if (!combined.visits(k))
            throw InvariantError("stitched solution misses terminal " + to_string(k));
    return combined;
}

}  // namespace hwdim
