#include "hwdim/spc.hpp"

#include <algorithm>
#include <cmath>

#include "hwdim/nets.hpp"

using namespace std;

namespace hwdim {

namespace {

struct RangePair {
    Vertex u;
    Vertex z;
    double d;
};

// All pairs u < z with d(u,z) in (r, (2+eps)r].
vector<RangePair> pairs_in_range(const DistanceProvider &dp, double r, double eps) {
    vector<RangePair> out;
    double hi = (2 + eps) * r;
    for (Vertex u = 0; u < dp.size(); u++) {
        const auto &row = dp.row(u);
        for (Vertex z = u + 1; z < dp.size(); z++)
            if (dp.in_range(row[z], r, hi))
                out.push_back({u, z, row[z]});
    }
    return out;
}

bool hub_serves(const DistanceProvider &dp, const RangePair &p, Vertex x,
                double eps) {
    return dp.leq(dp.distance(p.u, x) + dp.distance(x, p.z), (1 + eps) * p.d);
}

}  // namespace

//--------------------------- verification ---------------------------

optional<SpcViolation> verify_spc(const DistanceProvider &dp,
                                  const ShortestPathCover &spc) {
    optional<SpcViolation> worst;
    for (const RangePair &p : pairs_in_range(dp, spc.r, spc.eps)) {
        double best = kInfDist;
        for (Vertex x : spc.hubs) {
            best = min(best, dp.distance(p.u, x) + dp.distance(x, p.z));
            if (dp.leq(best, (1 + spc.eps) * p.d))
                break;
        }
        if (dp.leq(best, (1 + spc.eps) * p.d))
            continue;
        double ratio = best / p.d;
        if (!worst || ratio > worst->best_detour_ratio)
            worst = SpcViolation{p.u, p.z, ratio};
    }
    return worst;
}

//--------------------------- hitting set ----------------------------

VertexSet solve_hitting_set(const HittingSetInstance &inst, HsStrategy strategy) {
    for (const auto &s : inst.sets)
        if (s.empty())
            throw ParamError("hitting set instance contains an empty set");
    if (inst.sets.empty())
        return VertexSet{};

    if (strategy == HsStrategy::kAuto)
        strategy = inst.universe.size() <= 24 ? HsStrategy::kExactSmall
                                              : HsStrategy::kGreedy;

    // Work over dense element indices.
    const auto &uni = inst.universe.ids();
    auto index_of = [&](Vertex v) {
        return static_cast<int>(lower_bound(uni.begin(), uni.end(), v) - uni.begin());
    };
    int m = static_cast<int>(inst.sets.size());
    int usize = static_cast<int>(uni.size());
    vector<vector<int>> sets_of(usize);  // element -> set indices
    for (int si = 0; si < m; si++)
        for (Vertex v : inst.sets[si]) {
            if (!inst.universe.contains(v))
                throw ParamError("set element outside the universe");
            sets_of[index_of(v)].push_back(si);
        }

    auto greedy = [&]() {
        vector<char> hit(m, 0);
        vector<int> count(usize, 0);
        for (int e = 0; e < usize; e++)
            count[e] = static_cast<int>(sets_of[e].size());
        int remaining = m;
        vector<Vertex> chosen;
        while (remaining > 0) {
            int best = -1;
            for (int e = 0; e < usize; e++)
                if (count[e] > 0 && (best < 0 || count[e] > count[best]))
                    best = e;
            if (best < 0)
                throw InvariantError("greedy hitting set ran out of elements");
            chosen.push_back(uni[best]);
            for (int si : sets_of[best]) {
                if (hit[si])
                    continue;
                hit[si] = 1;
                remaining--;
                for (Vertex v : inst.sets[si])
                    count[index_of(v)]--;
            }
        }
        return VertexSet(std::move(chosen));
    };

    if (strategy == HsStrategy::kGreedy)
        return greedy();

    if (usize > 24)
        throw ParamError("exact hitting set limited to universes of size <= 24");

    // Branch and bound on the elements of the first unhit set, greedy
    // solution as the initial upper bound.
    VertexSet best_set = greedy();
    size_t best = best_set.size();
    vector<int> hit_count(m, 0);
    vector<Vertex> stack;
    auto first_unhit = [&]() {
        for (int si = 0; si < m; si++)
            if (hit_count[si] == 0)
                return si;
        return -1;
    };
    auto rec = [&](auto &&self) -> void {
        if (stack.size() >= best)
            return;
        int si = first_unhit();
        if (si < 0) {
            best = stack.size();
            best_set = VertexSet(stack);
            return;
        }
        for (Vertex v : inst.sets[si]) {
            int e = index_of(v);
            stack.push_back(v);
            for (int sj : sets_of[e])
                hit_count[sj]++;
            self(self);
            for (int sj : sets_of[e])
                hit_count[sj]--;
            stack.pop_back();
        }
    };
    rec(rec);
    return best_set;
}

//--------------------------- local search ---------------------------

ShortestPathCover build_spc_local_search(const DistanceProvider &dp, double r,
                                         double eps, HsStrategy strategy) {
    return build_spc_local_search_banded(dp, r, eps, eps, strategy);
}

ShortestPathCover build_spc_local_search_banded(const DistanceProvider &dp,
                                                double r, double eps,
                                                double band_eps,
                                                HsStrategy strategy) {
    if (!(r > 0))
        throw ParamError("SPC scale r must be positive");
    if (eps < 0 || eps > 1 || band_eps < eps)
        throw ParamError("SPC eps must lie in [0,1] with band_eps >= eps");

    Vertex n = dp.size();
    const double ball_r = (2 + 4 * band_eps) * r;
    // Every affected pair lies, with all its candidate hubs, inside this
    // reach: a valid hub x is within (1+eps)(2+band_eps)r of both
    // endpoints and within ball_r of v.
    const double reach_r = ball_r + (1 + eps) * (2 + band_eps) * r;
    const vector<RangePair> pairs = pairs_in_range(dp, r, band_eps);

    vector<char> in_spc(n, 1);
    size_t spc_size = n;

    for (int iter = 0; iter <= n; iter++) {
        // densest ball, ties to the lowest id
        Vertex v_best = 0;
        size_t c_best = 0;
        for (Vertex v = 0; v < n; v++) {
            const auto &row = dp.row(v);
            size_t c = 0;
            for (Vertex x = 0; x < n; x++)
                if (in_spc[x] && dp.leq(row[x], ball_r))
                    c++;
            if (c > c_best) {
                c_best = c;
                v_best = v;
            }
        }

        const auto &vrow = dp.row(v_best);
        vector<Vertex> ball_hubs;
        for (Vertex x = 0; x < n; x++)
            if (in_spc[x] && dp.leq(vrow[x], ball_r))
                ball_hubs.push_back(x);

        // B_v-affected pairs and their candidate-hub sets S_{u,z}
        HittingSetInstance inst;
        vector<Vertex> universe;
        for (const RangePair &p : pairs) {
            if (!dp.leq(vrow[p.u], reach_r) || !dp.leq(vrow[p.z], reach_r))
                continue;
            bool affected = false;
            for (Vertex x : ball_hubs)
                if (hub_serves(dp, p, x, eps)) {
                    affected = true;
                    break;
                }
            if (!affected)
                continue;
            vector<Vertex> candidates;
            const auto &urow = dp.row(p.u);
            const auto &zrow = dp.row(p.z);
            double budget = (1 + eps) * p.d;
            for (Vertex y = 0; y < n; y++)
                if (dp.leq(urow[y] + zrow[y], budget))
                    candidates.push_back(y);
            universe.insert(universe.end(), candidates.begin(), candidates.end());
            inst.sets.push_back(std::move(candidates));
        }
        inst.universe = VertexSet(std::move(universe));

        VertexSet h = solve_hitting_set(inst, strategy);

        // |(SPC \ B_v) ∪ H|
        size_t new_size = spc_size - ball_hubs.size();
        for (Vertex y : h) {
            bool already_kept = in_spc[y] && !dp.leq(vrow[y], ball_r);
            if (!already_kept)
                new_size++;
        }

        if (new_size >= spc_size)
            break;

        for (Vertex x : ball_hubs)
            in_spc[x] = 0;
        for (Vertex y : h)
            in_spc[y] = 1;
        spc_size = new_size;
    }

    vector<Vertex> hubs;
    for (Vertex x = 0; x < n; x++)
        if (in_spc[x])
            hubs.push_back(x);
    return {r, eps, VertexSet(std::move(hubs)), false};
}

//--------------------------- minimalization -------------------------

ShortestPathCover minimalize_spc(const DistanceProvider &dp,
                                 const ShortestPathCover &spc) {
    if (auto bad = verify_spc(dp, spc))
        throw PreconditionError(
            "minimalize_spc: input cover is invalid, counterexample pair (" +
            to_string(bad->u) + "," + to_string(bad->z) + ") with best ratio " +
            to_string(bad->best_detour_ratio));

    const vector<RangePair> pairs = pairs_in_range(dp, spc.r, spc.eps);
    vector<Vertex> hubs = spc.hubs.ids();
    vector<char> in_set(dp.size(), 0);
    for (Vertex x : hubs)
        in_set[x] = 1;

    vector<int> count(pairs.size(), 0);
    for (size_t p = 0; p < pairs.size(); p++)
        for (Vertex x : hubs)
            if (hub_serves(dp, pairs[p], x, spc.eps))
                count[p]++;

    for (auto it = hubs.rbegin(); it != hubs.rend(); ++it) {
        Vertex x = *it;
        bool removable = true;
        for (size_t p = 0; p < pairs.size() && removable; p++)
            if (count[p] == 1 && hub_serves(dp, pairs[p], x, spc.eps))
                removable = false;
        if (!removable)
            continue;
        in_set[x] = 0;
        for (size_t p = 0; p < pairs.size(); p++)
            if (hub_serves(dp, pairs[p], x, spc.eps))
                count[p]--;
    }

    vector<Vertex> kept;
    for (Vertex x : hubs)
        if (in_set[x])
            kept.push_back(x);
    return {spc.r, spc.eps, VertexSet(std::move(kept)), true};
}

//--------------------------- sparsity -------------------------------

LocalSparsity local_sparsity(const DistanceProvider &dp,
                             const ShortestPathCover &spc) {
    LocalSparsity out;
    double ball_r = (2 + 4 * spc.eps) * spc.r;
    for (Vertex v = 0; v < dp.size(); v++) {
        const auto &row = dp.row(v);
        int c = 0;
        for (Vertex x : spc.hubs)
            if (dp.leq(row[x], ball_r))
                c++;
        if (c > out.s) {
            out.s = c;
            out.witness = v;
        }
    }
    return out;
}

//--------------------------- towns ----------------------------------

TownDecomposition towns_and_sprawl(const DistanceProvider &dp,
                                   const ShortestPathCover &spc) {
    TownDecomposition td;
    td.r = spc.r;
    td.eps = spc.eps;
    double qualify_r = (2 + spc.eps) * spc.r;

    vector<int> town_of(dp.size(), -1);
    for (Vertex v = 0; v < dp.size(); v++) {
        if (town_of[v] >= 0)
            continue;  // absorbed by an earlier town
        if (!dp.gt(dp.distance_to_set(v, spc.hubs), qualify_r))
            continue;
        Town t;
        t.center = v;
        t.members = dp.ball(v, spc.r);
        int id = static_cast<int>(td.towns.size());
        for (Vertex u : t.members) {
            if (town_of[u] >= 0)
                throw InvariantError(
                    "towns overlap: vertex " + to_string(u) + " lies in town of " +
                    to_string(td.towns[town_of[u]].center) + " and of " +
                    to_string(v) + " (input cover is not a valid SPC)");
            town_of[u] = id;
        }
        td.towns.push_back(std::move(t));
    }

    vector<Vertex> sprawl;
    for (Vertex v = 0; v < dp.size(); v++)
        if (town_of[v] < 0)
            sprawl.push_back(v);
    td.sprawl = VertexSet(std::move(sprawl));

    // Lemma guarantees for valid covers; violations mean the input lied.
    for (const Town &t : td.towns) {
        for (Vertex u : t.members) {
            const auto &row = dp.row(u);
            for (Vertex w = 0; w < dp.size(); w++) {
                bool inside = town_of[w] >= 0 &&
                              td.towns[town_of[w]].center == t.center;
                if (inside) {
                    if (!dp.leq(row[w], spc.r))
                        throw InvariantError("town of " + to_string(t.center) +
                                             " has diameter > r");
                } else if (!dp.gt(row[w], spc.r)) {
                    throw InvariantError("town of " + to_string(t.center) +
                                         " is not r-separated from vertex " +
                                         to_string(w));
                }
            }
        }
    }
    for (Vertex v : td.sprawl)
        if (!dp.leq(dp.distance_to_set(v, spc.hubs), qualify_r))
            throw InvariantError("sprawl vertex " + to_string(v) +
                                 " has no hub within (2+eps)r");
    return td;
}

//--------------------------- eps-net cover --------------------------

ShortestPathCover epsnet_spc(const DistanceProvider &dp, double r, double eps) {
    if (!(eps > 0))
        throw ParamError(
            "epsnet_spc requires eps > 0 (an exact cover needs infinitely many hubs)");
    if (!(r > 0))
        throw ParamError("SPC scale r must be positive");
    return {r, eps, gonzales_net(dp, 0.5 * eps * r), false};
}

//--------------------------- hub bound report -----------------------

HubBoundReport verify_hub_bounds(const DistanceProvider &dp,
                                 const ShortestPathCover &spc) {
    HubBoundReport rep;
    LocalSparsity ls = local_sparsity(dp, spc);
    long long near_flag = 3LL * ls.s * ls.s;
    long long alpha_flag = 2LL * ls.s * ls.s;
    double ball_r = (2 + 4 * spc.eps) * spc.r;
    double near_r = (2 + spc.eps) * spc.r;
    double alpha_r = (2.8 + 6 * spc.eps) * spc.r;

    for (Vertex v = 0; v < dp.size(); v++) {
        VertexSet bv = dp.ball(v, ball_r);
        HubBoundEntry e{v, 0, 0};
        for (Vertex x : spc.hubs) {
            const auto &xrow = dp.row(x);
            for (Vertex u : bv)
                if (dp.leq(xrow[u], near_r)) {
                    e.near_ball_hubs++;
                    break;
                }
            if (dp.leq(dp.distance(v, x), alpha_r))
                e.alpha_ball_hubs++;
        }
        rep.max_near_ball = max(rep.max_near_ball, e.near_ball_hubs);
        rep.max_alpha_ball = max(rep.max_alpha_ball, e.alpha_ball_hubs);
        if (ls.s > 0 && e.near_ball_hubs > near_flag)
            rep.near_ball_flagged.push_back(v);
        if (ls.s > 0 && e.alpha_ball_hubs > alpha_flag)
            rep.alpha_ball_flagged.push_back(v);
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace hwdim
