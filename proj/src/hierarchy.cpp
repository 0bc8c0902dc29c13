#include "hwdim/hierarchy.hpp"

#include <algorithm>
#include <cmath>

using namespace std;

namespace hwdim {

//--------------------------- Walk -----------------------------------

double Walk::cost(const DistanceProvider &dp) const {
    double c = 0;
    for (size_t i = 0; i + 1 < seq.size(); i++)
        c += dp.distance(seq[i], seq[i + 1]);
    return c;
}

bool Walk::visits(Vertex v) const {
    return find(seq.begin(), seq.end(), v) != seq.end();
}

//--------------------------- HubHierarchy ---------------------------

double HubHierarchy::radius(int i) const {
    if (i < static_cast<int>(radii.size()))
        return radii[i];
    return pow(1 + sigma, i);
}

const VertexSet &HubHierarchy::hubs(int i) const {
    static const VertexSet kEmpty;
    if (i < 0)
        throw PreconditionError("hub level must be nonnegative");
    if (i >= static_cast<int>(h.size()))
        return kEmpty;
    return h[i];
}

int HubHierarchy::level_of(double d, const DistanceProvider &dp) const {
    if (!(d > 1.0))
        throw PreconditionError("level_of requires a distance > 1 (rescaled metric)");
    int k = max(0, static_cast<int>(floor(log(d) / log(1 + sigma))) - 1);
    while (!dp.leq(d, radius(k + 1)))
        k++;
    while (k > 0 && dp.leq(d, radius(k)))
        k--;
    return k;
}

HubHierarchy build_hub_hierarchy(const DistanceProvider &dp, double eps,
                                 const SpcBuilder &per_level_spc_builder) {
    if (!(eps > 0) || eps > 1.0 / 6 + 1e-12)
        throw ParamError("hub hierarchy requires eps in (0, 1/6]");
    if (dp.size() >= 2 && !(dp.min_distance() > 1.0))
        throw PreconditionError(
            "hub hierarchy requires minimum distance > 1; rescale the graph first");

    // Per-level covers must give (1+eps)-detours over the widened band
    // (r_i, (2+1.5 eps) r_i], so the dedup below keeps every H'_i a full
    // (r_i, 1.5 eps)-cover; an (eps/2) r_i-net qualifies too.
    SpcBuilder builder = per_level_spc_builder;
    if (!builder)
        builder = [](const DistanceProvider &d, double r, double e) {
            return build_spc_local_search_banded(d, r, e, 1.5 * e,
                                                 HsStrategy::kAuto);
        };

    HubHierarchy hh;
    hh.eps = eps;
    hh.sigma = eps / (4 + 3 * eps);
    double diam = dp.diameter();
    hh.top_level =
        diam > 1 ? static_cast<int>(ceil(log(diam) / log(1 + hh.sigma))) : 0;
    int lv = hh.top_level;
    for (int i = 0; i <= lv; i++)
        hh.radii.push_back(pow(1 + hh.sigma, i));

    hh.h_prime.assign(lv + 1, VertexSet{});
    const double cover_eps = 1.5 * eps;

    // top-down: H'_L stays empty, lower levels dedup against higher ones
    for (int i = lv - 1; i >= 0; i--) {
        double r_i = hh.radii[i];
        if (dp.leq(diam, r_i))
            continue;  // no pair longer than r_i, cover trivially empty
        ShortestPathCover spc_i = builder(dp, r_i, eps);
        double merge_r = 0.25 * eps * r_i;
        for (Vertex x : spc_i.hubs) {
            const auto &xrow = dp.row(x);
            bool skip = false;
            for (Vertex y : hh.h_prime[i])
                if (dp.leq(xrow[y], merge_r)) {
                    skip = true;
                    break;
                }
            if (skip)
                continue;
            Vertex promoted = -1;
            for (int j = i + 1; j <= lv && promoted < 0; j++)
                for (Vertex y : hh.h_prime[j])
                    if (dp.leq(xrow[y], merge_r)) {
                        promoted = y;
                        break;
                    }
            hh.h_prime[i].insert(promoted >= 0 ? promoted : x);
        }
        hh.h_prime[i] =
            minimalize_spc(dp, {r_i, cover_eps, hh.h_prime[i], false}).hubs;
    }

    hh.h.assign(lv + 1, VertexSet{});
    for (int i = lv; i >= 0; i--) {
        hh.h[i] = i == lv ? hh.h_prime[i]
                          : VertexSet::unite(hh.h[i + 1], hh.h_prime[i]);
        // packing (Hub Packing lemma): pairwise distance > (eps/4) r_i
        const auto &ids = hh.h[i].ids();
        for (size_t a = 0; a < ids.size(); a++)
            for (size_t b = a + 1; b < ids.size(); b++)
                if (!dp.gt(dp.distance(ids[a], ids[b]), 0.25 * eps * hh.radii[i]))
                    throw InvariantError("hub packing violated at level " +
                                         to_string(i) + " by hubs " +
                                         to_string(ids[a]) + "," + to_string(ids[b]));
    }
    return hh;
}

NetHierarchy hierarchy_nets(const DistanceProvider &dp, const HubHierarchy &hh) {
    return gonzales_net_hierarchy(dp, hh.eps, 1 + hh.sigma);
}

vector<LevelSparsity> hierarchy_sparsity_report(const DistanceProvider &dp,
                                                const HubHierarchy &hh) {
    vector<LevelSparsity> out;
    for (int i = 0; i <= hh.top_level; i++) {
        LevelSparsity ls{i, 0, 0};
        double ball_r = (2 + 4 * hh.eps) * hh.radii[i];
        double near_r = (2 + hh.eps) * hh.radii[i];
        for (Vertex v = 0; v < dp.size(); v++) {
            VertexSet bv = dp.ball(v, ball_r);
            int in_ball = 0, near_ball = 0;
            for (Vertex x : hh.h[i]) {
                if (dp.leq(dp.distance(v, x), ball_r))
                    in_ball++;
                const auto &xrow = dp.row(x);
                for (Vertex u : bv)
                    if (dp.leq(xrow[u], near_r)) {
                        near_ball++;
                        break;
                    }
            }
            ls.ball_hubs = max(ls.ball_hubs, in_ball);
            ls.near_ball_hubs = max(ls.near_ball_hubs, near_ball);
        }
        out.push_back(ls);
    }
    return out;
}

//--------------------------- walk transforms ------------------------

namespace {

void drop_repeats(vector<Vertex> &seq) {
    seq.erase(unique(seq.begin(), seq.end()), seq.end());
}

Vertex nearest_in(const DistanceProvider &dp, const VertexSet &s, Vertex v) {
    Vertex best = -1;
    double bd = kInfDist;
    for (Vertex x : s)
        if (dp.distance(v, x) < bd) {
            bd = dp.distance(v, x);
            best = x;
        }
    return best;
}

}  // namespace

bool is_net_respecting(const DistanceProvider &dp, const HubHierarchy &hh,
                       const NetHierarchy &nets, const Walk &walk) {
    for (size_t i = 0; i + 1 < walk.seq.size(); i++) {
        Vertex u = walk.seq[i], z = walk.seq[i + 1];
        if (u == z)
            continue;
        int k = hh.level_of(dp.distance(u, z), dp);
        if (!nets.in_net(u, k) || !nets.in_net(z, k))
            return false;
    }
    return true;
}

Walk make_net_respecting(const DistanceProvider &dp, const HubHierarchy &hh,
                         const NetHierarchy &nets, const Walk &walk) {
    if (dp.size() >= 2 && !(dp.min_distance() > 1.0))
        throw PreconditionError("net-respecting rewrite requires min distance > 1");
    const int c = 16;
    double cost_before = walk.cost(dp);
    vector<Vertex> seq = walk.seq;
    drop_repeats(seq);
    if (seq.size() <= 1)
        return Walk{seq};

    long long guard =
        10LL * max<long long>(1, dp.size()) * (hh.top_level + c + 1);
    for (long long steps = 0;; steps++) {
        if (steps > guard)
            throw InvariantError("net-respecting rewrite exceeded its iteration cap");
        int pos = -1, level = 0;
        double longest = -1;
        for (size_t i = 0; i + 1 < seq.size(); i++) {
            Vertex u = seq[i], z = seq[i + 1];
            if (u == z)
                continue;
            double d = dp.distance(u, z);
            int k = hh.level_of(d, dp);
            bool ok = nets.in_net(u, k) && nets.in_net(z, k);
            if (!ok && d > longest) {
                longest = d;
                pos = static_cast<int>(i);
                level = k;
            }
        }
        if (pos < 0)
            break;
        Vertex u = seq[pos], z = seq[pos + 1];
        const VertexSet &target = nets.net(level + c);
        Vertex u2 = nearest_in(dp, target, u);
        Vertex z2 = nearest_in(dp, target, z);
        vector<Vertex> repl{u, u2, z2, z};
        drop_repeats(repl);
        seq.erase(seq.begin() + pos, seq.begin() + pos + 2);
        seq.insert(seq.begin() + pos, repl.begin(), repl.end());
    }

    Walk out{seq};
    double cost_after = out.cost(dp);
    if (!dp.leq(cost_after, (1 + 60 * hh.eps) * cost_before))
        throw InvariantError("net-respecting rewrite exceeded the 1+60eps bound");
    return out;
}

Walk make_hub_net_respecting(const DistanceProvider &dp, const HubHierarchy &hh,
                             const NetHierarchy &nets, const Walk &walk) {
    double cost_before = walk.cost(dp);
    Walk nr = make_net_respecting(dp, hh, nets, walk);

    vector<Vertex> seq;
    for (size_t i = 0; i + 1 < nr.seq.size(); i++) {
        Vertex u = nr.seq[i], z = nr.seq[i + 1];
        seq.push_back(u);
        if (u == z)
            continue;
        double d = dp.distance(u, z);
        int k = hh.level_of(d, dp);
        Vertex hub = -1;
        for (Vertex x : hh.hubs(k))
            if (dp.leq(dp.distance(u, x) + dp.distance(x, z),
                       (1 + hh.cover_eps()) * d)) {
                hub = x;
                break;
            }
        if (hub < 0)
            throw InvariantError(
                "no qualifying hub for connection (" + to_string(u) + "," +
                to_string(z) + ") at level " + to_string(k) +
                "; H'_k fails its shortest-path-cover contract");
        if (hub != u && hub != z)
            seq.push_back(hub);
    }
    if (!nr.seq.empty())
        seq.push_back(nr.seq.back());
    drop_repeats(seq);

    Walk out{seq};
    if (!dp.leq(out.cost(dp), (1 + 77 * hh.eps) * cost_before))
        throw InvariantError("hub-net-respecting rewrite exceeded the 1+77eps bound");
    return out;
}

//--------------------------- hub-net predicate ----------------------

vector<TownDecomposition> towns_per_level(const DistanceProvider &dp,
                                          const HubHierarchy &hh) {
    vector<TownDecomposition> out;
    for (int l = 0; l <= hh.top_level; l++)
        out.push_back(towns_and_sprawl(
            dp, {hh.radii[l], hh.cover_eps(), hh.hubs(l), false}));
    return out;
}

optional<HubNetViolation> is_hub_net_respecting(
    const DistanceProvider &dp, const HubHierarchy &hh, const NetHierarchy &nets,
    const vector<TownDecomposition> &towns, const Walk &walk) {
    // vertex -> town id per level, -1 for sprawl
    vector<vector<int>> town_of(towns.size(), vector<int>(dp.size(), -1));
    for (size_t l = 0; l < towns.size(); l++)
        for (size_t t = 0; t < towns[l].towns.size(); t++)
            for (Vertex v : towns[l].towns[t].members)
                town_of[l][v] = static_cast<int>(t);

    const double grid = 1 + 0.75 * hh.eps;
    for (size_t i = 0; i + 1 < walk.seq.size(); i++) {
        for (int dir = 0; dir < 2; dir++) {
            Vertex u = dir ? walk.seq[i + 1] : walk.seq[i];
            Vertex x = dir ? walk.seq[i] : walk.seq[i + 1];
            if (u == x)
                continue;
            double d = dp.distance(u, x);
            if (!dp.gt(d, grid * hh.radius(0)))
                continue;  // below the (1+3eps/4) r_0 grid, unconstrained
            int j = hh.level_of(d / grid, dp);
            for (size_t l = 0; l < towns.size(); l++) {
                int tu = town_of[l][u];
                if (tu < 0 || town_of[l][x] == tu)
                    continue;
                int k = max<int>(static_cast<int>(l), j);
                if (!nets.in_net(u, k))
                    return HubNetViolation{static_cast<int>(l), u, x,
                                           "town-leaving endpoint " + to_string(u) +
                                               " not in net level " + to_string(k)};
                if (!hh.hubs(k).contains(x))
                    return HubNetViolation{static_cast<int>(l), u, x,
                                           "connection target " + to_string(x) +
                                               " not a hub of level " + to_string(k)};
            }
        }
    }
    return nullopt;
}

}  // namespace hwdim
