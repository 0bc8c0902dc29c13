// Brute-force reference implementations, independent of the library code
// paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hwdim/distance.hpp"

namespace hwdim::test {

// All-pairs shortest paths by Floyd-Warshall (the library uses Dijkstra).
inline std::vector<std::vector<double>> floyd_warshall(const WeightedGraph &g) {
    int n = g.vertex_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInfDist));
    for (int v = 0; v < n; v++)
        d[v][v] = 0;
    for (const Edge &e : g.edges()) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.w);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.w);
    }
    for (int k = 0; k < n; k++)
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// Direct reading of the cover definition, no shared helpers.
inline bool spc_valid_bruteforce(const std::vector<std::vector<double>> &d,
                                 double r, double eps,
                                 const std::vector<int> &hubs) {
    int n = static_cast<int>(d.size());
    for (int u = 0; u < n; u++)
        for (int z = u + 1; z < n; z++) {
            if (!(d[u][z] > r && d[u][z] <= (2 + eps) * r + 1e-12))
                continue;
            bool hit = false;
            for (int x : hubs)
                if (d[u][x] + d[x][z] <= (1 + eps) * d[u][z] + 1e-12) {
                    hit = true;
                    break;
                }
            if (!hit)
                return false;
        }
    return true;
}

// Minimum SPC size by subset enumeration (n <= ~16).
inline int min_spc_size_exhaustive(const std::vector<std::vector<double>> &d,
                                   double r, double eps) {
    int n = static_cast<int>(d.size());
    int best = n;
    for (unsigned mask = 0; mask < (1u << n); mask++) {
        int pop = __builtin_popcount(mask);
        if (pop >= best)
            continue;
        std::vector<int> hubs;
        for (int v = 0; v < n; v++)
            if (mask >> v & 1)
                hubs.push_back(v);
        if (spc_valid_bruteforce(d, r, eps, hubs))
            best = pop;
    }
    return best;
}

// Minimum hitting set size by subset enumeration over the universe.
inline int min_hitting_set_exhaustive(const std::vector<int> &universe,
                                      const std::vector<std::vector<int>> &sets) {
    int u = static_cast<int>(universe.size());
    int best = u;
    for (unsigned mask = 0; mask < (1u << u); mask++) {
        int pop = __builtin_popcount(mask);
        if (pop >= best)
            continue;
        bool all_hit = true;
        for (const auto &s : sets) {
            bool hit = false;
            for (int e : s) {
                auto it = std::find(universe.begin(), universe.end(), e);
                if (it != universe.end() && (mask >> (it - universe.begin()) & 1)) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                all_hit = false;
                break;
            }
        }
        if (all_hit)
            best = pop;
    }
    return best;
}

// Optimal closed-tour cost over terminals by full permutation scan.
inline double tsp_permutation_scan(const std::vector<std::vector<double>> &d,
                                   const std::vector<int> &terminals) {
    std::vector<int> perm(terminals.begin() + 1, terminals.end());
    std::sort(perm.begin(), perm.end());
    double best = kInfDist;
    do {
        double c = d[terminals[0]][perm.front()] + d[perm.back()][terminals[0]];
        for (size_t i = 0; i + 1 < perm.size(); i++)
            c += d[perm[i]][perm[i + 1]];
        best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return terminals.size() == 1 ? 0 : best;
}

// Minimum perfect matching weight by recursive pairing enumeration.
inline double matching_exhaustive(const std::vector<std::vector<double>> &d,
                                  std::vector<int> pts) {
    if (pts.empty())
        return 0;
    int a = pts[0];
    double best = kInfDist;
    for (size_t i = 1; i < pts.size(); i++) {
        std::vector<int> rest;
        for (size_t j = 1; j < pts.size(); j++)
            if (j != i)
                rest.push_back(pts[j]);
        best = std::min(best, d[a][pts[i]] + matching_exhaustive(d, rest));
    }
    return best;
}

// Analytic CDF of the truncated exponential.
inline double texp_cdf(double lambda, double t1, double t2, double y) {
    return (std::exp(-lambda * t1) - std::exp(-lambda * y)) /
           (std::exp(-lambda * t1) - std::exp(-lambda * t2));
}

}  // namespace hwdim::test
