#include "hwdim/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

using namespace std;

namespace hwdim {

double sample_texp(double lambda, double theta1, double theta2, CounterRng &rng) {
    if (!(theta1 < theta2))
        throw ParamError("texp requires theta1 < theta2");
    if (!(lambda > 0))
        throw ParamError("texp requires lambda > 0");
    double u = rng.next_double();
    // e^{-lambda y} = e^{-lambda theta1} (1 - u (1 - e^{-lambda (theta2-theta1)}))
    double y = theta1 - log1p(u * expm1(-lambda * (theta2 - theta1))) / lambda;
    return clamp(y, theta1, theta2);
}

namespace {

constexpr double kShiftT = 0.5;        // town-center support [0, t]
constexpr double kWilsonZ = 2.3263478740408408;  // 99% one-sided

struct ClusterBase {
    double delta, r, eps, lambda;
    ShortestPathCover spc;
    TownDecomposition towns;
    int sparsity;
    std::vector<ShiftedCenter> centers;  // shifts unset
};

ClusterBase make_base(const DistanceProvider &dp, double delta, double eps,
                      double lambda_override) {
    if (eps < 0 || eps > 0.25)
        throw ParamError("padded decomposition requires eps in [0, 1/4]");
    if (!(delta > 0))
        throw ParamError("padded decomposition requires Delta > 0");
    ClusterBase b;
    b.delta = delta;
    b.eps = eps;
    b.r = delta / (6 * (1 + eps));
    b.spc = minimalize_spc(dp, build_spc_local_search(dp, b.r, eps));
    b.towns = towns_and_sprawl(dp, b.spc);
    b.sparsity = local_sparsity(dp, b.spc).s;
    b.lambda = lambda_override > 0
                   ? lambda_override
                   : 4 * (log(2.0 * b.sparsity * b.sparsity + 1) + 1);

    double a = 0.5 + 2 * eps, bb = 1 + 2 * eps;
    int idx = 0;
    for (Vertex x : b.spc.hubs)
        b.centers.push_back({x, CenterKind::kHub, 0, a * b.r, bb * b.r, idx++});
    for (const Town &t : b.towns.towns)
        b.centers.push_back(
            {t.center, CenterKind::kTownCenter, 0, 0, kShiftT * b.r, idx++});
    return b;
}

// Shifts are sampled in the normalized (r = 1) coordinates and scaled,
// so lambda keeps its meaning from the padding bound e^{-4 gamma lambda}.
void sample_shifts(const ClusterBase &b, uint64_t seed,
                   vector<ShiftedCenter> &centers) {
    centers = b.centers;
    CounterRng root(seed);
    for (auto &c : centers) {
        CounterRng stream = root.derive(static_cast<uint64_t>(c.center));
        double lo = c.theta1 / b.r, hi = c.theta2 / b.r;
        if (c.kind == CenterKind::kTownCenter) {
            lo = 0;
            hi = kShiftT;
        }
        c.shift = sample_texp(b.lambda, lo, hi, stream) * b.r;
    }
}

void assign_vertices(const DistanceProvider &dp,
                     const vector<ShiftedCenter> &centers,
                     vector<int> &assignment) {
    Vertex n = dp.size();
    assignment.assign(n, -1);
    vector<const vector<double> *> rows(centers.size());
    for (size_t c = 0; c < centers.size(); c++)
        rows[c] = &dp.row(centers[c].center);
    for (Vertex v = 0; v < n; v++) {
        double best = -kInfDist;
        int best_c = -1;
        for (size_t c = 0; c < centers.size(); c++) {
            double f = centers[c].shift - (*rows[c])[v];
            if (f > best) {
                best = f;
                best_c = static_cast<int>(c);
            }
        }
        assignment[v] = best_c;
    }
}

}  // namespace

PaddedPartition padded_decomposition(const DistanceProvider &dp, double delta,
                                     double eps, uint64_t seed,
                                     double lambda_override) {
    ClusterBase base = make_base(dp, delta, eps, lambda_override);
    PaddedPartition p;
    p.delta = delta;
    p.r = base.r;
    p.eps = eps;
    p.lambda = base.lambda;
    p.seed = seed;
    p.spc = std::move(base.spc);
    p.towns = std::move(base.towns);
    p.sparsity = base.sparsity;
    sample_shifts(base, seed, p.centers);
    assign_vertices(dp, p.centers, p.assignment);

    p.clusters.assign(p.centers.size(), VertexSet{});
    vector<vector<Vertex>> members(p.centers.size());
    for (Vertex v = 0; v < dp.size(); v++)
        members[p.assignment[v]].push_back(v);
    for (size_t c = 0; c < members.size(); c++)
        p.clusters[c] = VertexSet(std::move(members[c]));

    // Claim: the path to the center stays in the cluster, so the induced
    // eccentricity of the center is at most (2+eps) r + b r = delta / 2.
    for (size_t c = 0; c < p.clusters.size(); c++) {
        const VertexSet &cl = p.clusters[c];
        if (cl.empty())
            continue;
        Vertex center = p.centers[c].center;
        if (!cl.contains(center))
            throw InvariantError("nonempty cluster lost its own center " +
                                 to_string(center));
        auto dist = induced_distances_from(dp.graph(), cl, center);
        for (Vertex v : cl)
            if (!dp.leq(2 * dist[v], delta))
                throw InvariantError("cluster of " + to_string(center) +
                                     " breaks the strong diameter bound at " +
                                     to_string(v));
    }
    return p;
}

optional<PartitionViolation> verify_partition(const DistanceProvider &dp,
                                              const PaddedPartition &p) {
    Vertex n = dp.size();
    if (static_cast<Vertex>(p.assignment.size()) != n)
        return PartitionViolation{"assignment does not cover V", -1};

    vector<int> seen(n, -1);
    for (size_t c = 0; c < p.clusters.size(); c++)
        for (Vertex v : p.clusters[c]) {
            if (seen[v] >= 0)
                return PartitionViolation{"vertex in two clusters", v};
            seen[v] = static_cast<int>(c);
        }
    for (Vertex v = 0; v < n; v++) {
        if (seen[v] < 0)
            return PartitionViolation{"vertex in no cluster", v};
        if (seen[v] != p.assignment[v])
            return PartitionViolation{"cluster membership disagrees with assignment", v};
    }

    // argmax replay under the recorded shifts
    vector<int> replay;
    assign_vertices(dp, p.centers, replay);
    for (Vertex v = 0; v < n; v++)
        if (replay[v] != p.assignment[v])
            return PartitionViolation{"assignment is not the argmax of f_v", v};

    // strong diameter, via all-pairs inside the induced cluster
    for (size_t c = 0; c < p.clusters.size(); c++) {
        const VertexSet &cl = p.clusters[c];
        if (cl.empty())
            continue;
        for (Vertex u : cl) {
            auto dist = induced_distances_from(dp.graph(), cl, u);
            for (Vertex v : cl)
                if (!dp.leq(dist[v], p.delta))
                    return PartitionViolation{
                        "cluster of " + to_string(p.centers[c].center) +
                            " has strong diameter > Delta",
                        v};
        }
    }

    // a town-center cluster may only hold members of its own town
    for (Vertex v = 0; v < n; v++) {
        const ShiftedCenter &c = p.centers[p.assignment[v]];
        if (c.kind == CenterKind::kTownCenter) {
            bool own = false;
            for (const Town &t : p.towns.towns)
                if (t.center == c.center) {
                    own = t.members.contains(v);
                    break;
                }
            if (!own)
                return PartitionViolation{
                    "vertex outside town joined town-center cluster", v};
        }
    }
    return nullopt;
}

PaddingEstimate estimate_padding(const DistanceProvider &dp, double delta,
                                 double eps, double gamma, int trials,
                                 uint64_t seed, int threads) {
    if (gamma < 0 || gamma > 0.125)
        throw ParamError("estimate_padding requires gamma in [0, 1/8]");
    if (trials < 1)
        throw ParamError("estimate_padding requires trials >= 1");
    ClusterBase base = make_base(dp, delta, eps, 0);
    Vertex n = dp.size();

    vector<VertexSet> balls(n);
    for (Vertex v = 0; v < n; v++)
        balls[v] = dp.ball(v, gamma * base.r);

    vector<long long> padded(n, 0);
    auto run_range = [&](int t0, int t1, vector<long long> &acc) {
        vector<ShiftedCenter> centers;
        vector<int> assign;
        CounterRng root(seed);
        for (int t = t0; t < t1; t++) {
            uint64_t trial_seed = root.derive(0x7472CA11ULL + t).next_u64();
            sample_shifts(base, trial_seed, centers);
            assign_vertices(dp, centers, assign);
            for (Vertex v = 0; v < n; v++) {
                bool whole = true;
                for (Vertex u : balls[v])
                    if (assign[u] != assign[v]) {
                        whole = false;
                        break;
                    }
                if (whole)
                    acc[v]++;
            }
        }
    };

    threads = max(1, threads);
    if (threads == 1) {
        run_range(0, trials, padded);
    } else {
        vector<vector<long long>> acc(threads, vector<long long>(n, 0));
        vector<thread> pool;
        int chunk = (trials + threads - 1) / threads;
        for (int t = 0; t < threads; t++)
            pool.emplace_back(run_range, min(t * chunk, trials),
                              min((t + 1) * chunk, trials), ref(acc[t]));
        for (auto &th : pool)
            th.join();
        for (const auto &a : acc)
            for (Vertex v = 0; v < n; v++)
                padded[v] += a[v];
    }

    PaddingEstimate est;
    est.gamma = gamma;
    est.lambda = base.lambda;
    est.threshold = exp(-4 * gamma * base.lambda);
    est.trials = trials;
    est.per_vertex.resize(n);
    est.lower_bound.resize(n);
    double sum = 0;
    est.min_probability = 1;
    int above = 0;
    for (Vertex v = 0; v < n; v++) {
        double ph = static_cast<double>(padded[v]) / trials;
        est.per_vertex[v] = ph;
        double z2 = kWilsonZ * kWilsonZ;
        double lb = (ph + z2 / (2.0 * trials) -
                     kWilsonZ * sqrt(ph * (1 - ph) / trials +
                                     z2 / (4.0 * trials * trials))) /
                    (1 + z2 / trials);
        est.lower_bound[v] = max(0.0, lb);
        sum += ph;
        est.min_probability = min(est.min_probability, ph);
        if (est.lower_bound[v] >= est.threshold)
            above++;
    }
    est.mean_probability = n > 0 ? sum / n : 0;
    est.fraction_above_threshold = n > 0 ? static_cast<double>(above) / n : 0;
    return est;
}

}  // namespace hwdim
