// hwdim: shortest-path covers, hub hierarchies, padded decompositions,
// sparse covers, tree covers, a distance oracle and subset TSP over
// weighted graphs, each paired with its verifier.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "generators.hpp"
#include "hwdim/covers.hpp"
#include "hwdim/decomp.hpp"
#include "hwdim/oracle.hpp"
#include "hwdim/tsp.hpp"

using namespace hwdim;
using json = nlohmann::json;
using std::string;

namespace {

constexpr int kSchemaVersion = 1;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

struct Report {
    json j;
    bool failed = false;

    Report(const string &command, const WeightedGraph &g, double scale) {
        j["schema_version"] = kSchemaVersion;
        j["command"] = command;
        j["input"] = {{"vertices", g.vertex_count()},
                      {"edges", g.edge_count()},
                      {"scale", scale}};
        j["scale"] = scale;
        j["checks"] = json::array();
    }

    void check(const string &name, bool pass, json witness = {}) {
        json c{{"name", name}, {"pass", pass}};
        if (!witness.is_null() && !witness.empty())
            c["witness"] = witness;
        j["checks"].push_back(c);
        failed |= !pass;
    }

    int emit(const string &out_path, double total_ms) {
        j["timings_ms"]["total"] = total_ms;
        string text = j.dump(2);
        if (out_path.empty()) {
            std::cout << text << std::endl;
        } else {
            std::ofstream out(out_path);
            if (!out)
                throw ParseError("cannot open " + out_path + " for writing");
            out << text << std::endl;
        }
        return failed ? 1 : 0;
    }
};

json vec_json(const VertexSet &s) {
    return json(s.ids());
}

json spc_json(const ShortestPathCover &spc, const TownDecomposition *towns,
              int sparsity) {
    json out{{"r", spc.r},
             {"eps", spc.eps},
             {"hubs", vec_json(spc.hubs)},
             {"minimal", spc.minimal},
             {"local_sparsity", sparsity}};
    if (towns) {
        out["towns"] = json::array();
        for (const Town &t : towns->towns)
            out["towns"].push_back(
                {{"center", t.center}, {"members", vec_json(t.members)}});
        out["sprawl"] = vec_json(towns->sprawl);
    }
    return out;
}

WeightedGraph load_input(const string &path, const string &format,
                         LoadReport *rep = nullptr) {
    GraphFormat f =
        format == "edgelist" ? GraphFormat::kEdgeList : GraphFormat::kDimacs;
    return load_graph(path, f, rep);
}

std::vector<Vertex> load_terminals(const string &path, Vertex n) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open terminal file " + path);
    std::vector<Vertex> out;
    long long v;
    while (in >> v) {
        if (v < 0 || v >= n)
            throw ParseError("terminal id " + std::to_string(v) +
                             " out of range 0.." + std::to_string(n - 1));
        out.push_back(static_cast<Vertex>(v));
    }
    if (out.empty())
        throw ParseError("terminal file " + path + " is empty");
    return out;
}

void write_graph_gr(const WeightedGraph &g, const string &path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot open " + path + " for writing");
    out << "p sp " << g.vertex_count() << " " << g.edge_count() << "\n";
    out.precision(17);
    for (const Edge &e : g.edges())
        out << "a " << e.u + 1 << " " << e.v + 1 << " " << e.w << "\n";
}

}  // namespace

//--------------------------- commands -------------------------------

static int cmd_generate(const string &kind, int n, double eps, int q,
                        uint64_t seed, const string &out,
                        const string &terminals_out) {
    gen::Instance inst;
    if (kind == "star")
        inst = gen::star(n);
    else if (kind == "grid")
        inst = gen::grid(n);
    else if (kind == "duostar")
        inst = gen::duostar(n, eps);
    else if (kind == "random-geometric")
        inst = gen::random_geometric(n, 4, seed);
    else if (kind == "clustered-towns")
        inst = gen::clustered_towns(q + 2, std::max(2, n / (q + 2)), 64.0, 1.0,
                                    seed);
    else
        throw ParamError("unknown generator kind " + kind);
    write_graph_gr(inst.graph, out);
    if (!terminals_out.empty()) {
        std::ofstream t(terminals_out);
        for (Vertex v : inst.terminals)
            t << v << "\n";
    }
    std::cout << json{{"kind", kind},
                      {"vertices", inst.graph.vertex_count()},
                      {"edges", inst.graph.edge_count()},
                      {"terminals", inst.terminals.size()},
                      {"out", out}}
                     .dump(2)
              << std::endl;
    return 0;
}

static int cmd_spc(const string &in, const string &format, double r, double eps,
                   const string &strategy, bool minimal, const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    Report rep("spc", g, 1.0);
    DistanceProvider dp(std::move(g));
    HsStrategy hs = strategy == "greedy"  ? HsStrategy::kGreedy
                    : strategy == "exact" ? HsStrategy::kExactSmall
                                          : HsStrategy::kAuto;
    ShortestPathCover spc = build_spc_local_search(dp, r, eps, hs);
    if (minimal)
        spc = minimalize_spc(dp, spc);
    auto ls = local_sparsity(dp, spc);
    auto bad = verify_spc(dp, spc);
    rep.check("spc_valid", !bad,
              bad ? json{{"u", bad->u},
                         {"z", bad->z},
                         {"ratio", bad->best_detour_ratio}}
                  : json{});
    rep.j["type"] = "spc";
    rep.j["result"] = spc_json(spc, nullptr, ls.s);
    rep.j["result"]["sparsity_witness"] = ls.witness;
    return rep.emit(out, timer.ms());
}

static int cmd_towns(const string &in, const string &format, double r,
                     double eps, const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    Report rep("towns", g, 1.0);
    DistanceProvider dp(std::move(g));
    ShortestPathCover spc =
        minimalize_spc(dp, build_spc_local_search(dp, r, eps));
    TownDecomposition towns = towns_and_sprawl(dp, spc);
    auto ls = local_sparsity(dp, spc);
    rep.check("spc_valid", !verify_spc(dp, spc));
    bool town_props = true;
    for (const Town &t : towns.towns) {
        town_props &= dp.leq(weak_diameter(dp, t.members), r);
        for (Vertex u : t.members)
            for (Vertex v = 0; v < dp.size(); v++)
                if (!t.members.contains(v))
                    town_props &= dp.gt(dp.distance(u, v), r);
    }
    for (Vertex v : towns.sprawl)
        town_props &= dp.leq(dp.distance_to_set(v, spc.hubs), (2 + eps) * r);
    rep.check("town_properties", town_props);
    rep.j["type"] = "towns";
    rep.j["result"] = spc_json(spc, &towns, ls.s);
    return rep.emit(out, timer.ms());
}

static int cmd_hierarchy(const string &in, const string &format, double eps,
                         bool epsnet, const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    auto scaled = rescale_to_unit_min_distance(g);
    Report rep("hierarchy", g, scaled.factor);
    DistanceProvider dp(std::move(scaled.graph));
    SpcBuilder builder;
    if (epsnet)
        builder = [](const DistanceProvider &d, double rr, double ee) {
            return epsnet_spc(d, rr, ee);
        };
    HubHierarchy hh = build_hub_hierarchy(dp, eps, builder);
    bool all_valid = true;
    for (int i = 0; i <= hh.top_level; i++)
        all_valid &= !verify_spc(
            dp, {hh.radii[i], hh.cover_eps(), hh.h_prime[i], false});
    rep.check("levels_are_covers", all_valid);
    rep.j["type"] = "hierarchy";
    json levels = json::array();
    auto sparsity = hierarchy_sparsity_report(dp, hh);
    for (int i = 0; i <= hh.top_level; i++)
        levels.push_back({{"i", i},
                          {"r", hh.radii[i]},
                          {"H_prime", vec_json(hh.h_prime[i])},
                          {"H", vec_json(hh.h[i])},
                          {"ball_hubs", sparsity[i].ball_hubs},
                          {"near_ball_hubs", sparsity[i].near_ball_hubs}});
    rep.j["result"] = {{"eps", hh.eps}, {"sigma", hh.sigma}, {"levels", levels}};
    return rep.emit(out, timer.ms());
}

static int cmd_decompose(const string &in, const string &format, double delta,
                         double eps, uint64_t seed, double lambda, int trials,
                         double gamma, int threads, const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    Report rep("decompose", g, 1.0);
    DistanceProvider dp(std::move(g));
    PaddedPartition p = padded_decomposition(dp, delta, eps, seed, lambda);
    auto bad = verify_partition(dp, p);
    rep.check("partition_valid", !bad,
              bad ? json{{"what", bad->what}, {"vertex", bad->vertex}} : json{});
    rep.j["type"] = "partition";
    json clusters = json::array();
    for (size_t c = 0; c < p.clusters.size(); c++) {
        if (p.clusters[c].empty())
            continue;
        clusters.push_back(
            {{"center", p.centers[c].center},
             {"kind", p.centers[c].kind == CenterKind::kHub ? "hub" : "town"},
             {"shift", p.centers[c].shift},
             {"members", vec_json(p.clusters[c])}});
    }
    rep.j["result"] = {{"Delta", p.delta},   {"eps", p.eps},
                       {"lambda", p.lambda}, {"seed", p.seed},
                       {"r", p.r},           {"sparsity", p.sparsity},
                       {"clusters", clusters}};
    if (trials > 0) {
        PaddingEstimate est =
            estimate_padding(dp, delta, eps, gamma, trials, seed, threads);
        rep.j["padding"] = {
            {"gamma", est.gamma},
            {"lambda", est.lambda},
            {"threshold", est.threshold},
            {"trials", est.trials},
            {"min_probability", est.min_probability},
            {"mean_probability", est.mean_probability},
            {"fraction_above_threshold", est.fraction_above_threshold}};
        rep.check("padding_floor", est.fraction_above_threshold >= 0.99,
                  {{"fraction", est.fraction_above_threshold}});
    }
    return rep.emit(out, timer.ms());
}

static int cmd_cover(const string &in, const string &format, double delta,
                     double eps, bool partition_cover, bool induced,
                     const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    Report rep(partition_cover ? "partition-cover" : "cover", g, 1.0);
    DistanceProvider dp(std::move(g));

    auto cluster_json = [](const std::vector<CoverCluster> &clusters) {
        json arr = json::array();
        for (const auto &c : clusters) {
            const char *kind = c.kind == ClusterKind::kHubBall ? "hub-ball"
                               : c.kind == ClusterKind::kTown
                                   ? "town"
                                   : "sprawl-singleton";
            arr.push_back({{"kind", kind},
                           {"anchor", c.anchor},
                           {"radius", c.radius},
                           {"members", vec_json(c.members)}});
        }
        return arr;
    };

    if (partition_cover) {
        SparsePartitionCover pc = sparse_partition_cover(dp, delta, eps);
        auto bad = verify_partition_cover(dp, pc);
        rep.check("cover_valid", !bad,
                  bad ? json{{"what", bad->what}, {"vertex", bad->vertex}}
                      : json{});
        rep.j["type"] = "partition_cover";
        json hist = json::array();
        for (int c : pc.membership_count)
            hist.push_back(c);
        rep.j["result"] = {{"Delta", pc.delta},
                           {"eps", pc.eps},
                           {"r", pc.r},
                           {"padded_radius", pc.padded_radius},
                           {"clusters", cluster_json(pc.clusters)},
                           {"partitions", pc.partitions},
                           {"sparsity",
                            {{"max", pc.max_membership}, {"histogram", hist}}}};
    } else {
        SparseCover sc = sparse_cover(dp, delta, eps);
        auto bad = verify_cover(dp, sc.clusters, sc.delta, sc.delta / 8);
        rep.check("cover_valid", !bad,
                  bad ? json{{"what", bad->what}, {"vertex", bad->vertex}}
                      : json{});
        rep.j["type"] = "cover";
        json hist = json::array();
        for (int c : sc.membership_count)
            hist.push_back(c);
        rep.j["result"] = {{"Delta", sc.delta},
                           {"eps", sc.eps},
                           {"r", sc.r},
                           {"padded_radius", sc.padded_radius},
                           {"clusters", cluster_json(sc.clusters)},
                           {"sparsity",
                            {{"max", sc.max_membership}, {"histogram", hist}}}};
        if (induced)
            rep.j["result"]["max_induced_diameter"] =
                max_induced_diameter(dp, sc.clusters);
    }
    return rep.emit(out, timer.ms());
}

static int cmd_treecover(const string &in, const string &format, double eps,
                         int threads, const string &bin_out, const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    auto scaled = rescale_to_unit_min_distance(g);
    Report rep("treecover", g, scaled.factor);
    DistanceProvider dp(std::move(scaled.graph));
    TreeCover tc = build_tree_cover(dp, eps, {}, threads);
    auto bad = verify_tree_cover(dp, tc);
    rep.check("tree_cover_valid", !bad,
              bad ? json{{"what", bad->what},
                         {"u", bad->u},
                         {"v", bad->v},
                         {"got", bad->got},
                         {"bound", bad->bound}}
                  : json{});
    if (!bin_out.empty())
        save_tree_cover(tc, bin_out);
    rep.j["type"] = "treecover_summary";
    json trees = json::array();
    for (const CoverTree &t : tc.trees)
        trees.push_back({{"q", t.q},
                         {"j", t.j},
                         {"nodes", t.nodes.size()},
                         {"edges", t.nodes.size() - 1}});
    rep.j["result"] = {{"eps", tc.eps},
                       {"K", tc.levels_k},
                       {"levels", tc.radii.size()},
                       {"tree_count", tc.trees.size()},
                       {"trees", trees},
                       {"binary", bin_out}};
    return rep.emit(out, timer.ms());
}

static int cmd_oracle_build(const string &in, const string &format, double eps,
                            int threads, const string &bin_out,
                            const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    auto scaled = rescale_to_unit_min_distance(g);
    Report rep("oracle build", g, scaled.factor);
    DistanceProvider dp(std::move(scaled.graph));
    TreeCover tc = build_tree_cover(dp, eps, {}, threads);
    auto bad = verify_tree_cover(dp, tc);
    rep.check("tree_cover_valid", !bad);
    DistanceOracle oracle(std::move(tc));
    oracle.save(bin_out);
    rep.j["type"] = "oracle_summary";
    rep.j["result"] = {{"eps", oracle.eps()},
                       {"trees", oracle.tree_count()},
                       {"size_words", oracle.size_in_words()},
                       {"binary", bin_out}};
    return rep.emit(out, timer.ms());
}

static int cmd_oracle_query(const string &bin, Vertex u, Vertex v) {
    DistanceOracle oracle = DistanceOracle::load(bin);
    double est = oracle.query(u, v);
    std::cout << json{{"u", u}, {"v", v}, {"estimate", est}}.dump(2)
              << std::endl;
    return 0;
}

static int cmd_oracle_bench(const string &bin, size_t queries, uint64_t seed) {
    DistanceOracle oracle = DistanceOracle::load(bin);
    BenchStats st = bench_oracle(oracle, queries, seed);
    std::cout << json{{"queries", st.queries},
                      {"mean_ns", st.mean_ns},
                      {"median_ns", st.median_ns},
                      {"p99_ns", st.p99_ns},
                      {"queries_per_second", st.queries_per_second}}
                     .dump(2)
              << std::endl;
    return 0;
}

static int cmd_tsp(const string &in, const string &format,
                   const string &terminals_path, double eps, int q,
                   const string &solver, const string &out) {
    Timer timer;
    WeightedGraph g = load_input(in, format);
    auto scaled = rescale_to_unit_min_distance(g);
    Report rep("tsp solve", g, scaled.factor);
    DistanceProvider dp(std::move(scaled.graph));
    VertexSet terminals(load_terminals(terminals_path, dp.size()));

    TownSolver ts =
        solver == "heuristic" ? TownSolver::kHeuristic : TownSolver::kExactDp;
    TspContext ctx = make_tsp_context(dp, eps, std::max(2, q), ts);
    if (q <= 0)
        ctx.q = default_q_threshold(ctx, terminals.size());
    Walk tour = solve_subset_tsp(ctx, terminals);

    bool closed = tour.seq.size() == 1 || tour.closed();
    bool visits_all = true;
    for (Vertex k : terminals)
        visits_all &= tour.visits(k);
    rep.check("tour_closed", closed);
    rep.check("tour_visits_all_terminals", visits_all);

    double cost = tour.cost(dp);
    rep.j["type"] = "tour";
    rep.j["result"] = {{"cost", cost},
                       {"cost_input_units", cost / scaled.factor},
                       {"walk", tour.seq},
                       {"terminals", terminals.ids()},
                       {"eps", eps},
                       {"q", ctx.q},
                       {"divide_fired", ctx.divide_fired},
                       {"recursions", ctx.recursion_count},
                       {"certified", !ctx.heuristic_used},
                       {"greedy_matching_used", ctx.greedy_matching_used}};
    if (terminals.size() <= 11) {
        double opt = tsp_brute_force(dp, terminals).cost(dp);
        rep.j["result"]["ratio_vs_bruteforce"] = opt > 0 ? cost / opt : 1.0;
        rep.check("ratio_within_eps", dp.leq(cost, (1 + eps) * opt));
    }
    return rep.emit(out, timer.ms());
}

static int cmd_verify(const string &artifact, const string &graph_path,
                      const string &format) {
    Timer timer;
    // binary artifacts announce themselves by magic
    std::ifstream probe(artifact, std::ios::binary);
    if (!probe)
        throw ParseError("cannot open " + artifact);
    uint32_t magic = 0;
    probe.read(reinterpret_cast<char *>(&magic), 4);
    probe.close();

    WeightedGraph g = load_input(graph_path, format);
    if (magic == 0x48575443 || magic == 0x4857444F) {  // HWTC / HWDO
        auto scaled = rescale_to_unit_min_distance(g);
        Report rep("verify", g, scaled.factor);
        DistanceProvider dp(std::move(scaled.graph));
        TreeCover tc = magic == 0x48575443
                           ? load_tree_cover(artifact)
                           : DistanceOracle::load(artifact).cover();
        auto bad = verify_tree_cover(dp, tc);
        rep.check("tree_cover_valid", !bad,
                  bad ? json{{"what", bad->what}, {"u", bad->u}, {"v", bad->v}}
                      : json{});
        rep.j["type"] = "verify";
        return rep.emit("", timer.ms());
    }

    std::ifstream jin(artifact);
    json doc = json::parse(jin);
    string type = doc.value("type", "");
    json body = doc.contains("result") ? doc["result"] : doc;
    Report rep("verify", g, doc.value("scale", 1.0));
    rep.j["type"] = "verify";
    DistanceProvider dp(std::move(g));

    auto as_set = [](const json &arr) {
        std::vector<Vertex> ids;
        for (const auto &v : arr)
            ids.push_back(v.get<Vertex>());
        return VertexSet(ids);
    };

    if (type == "spc" || type == "towns") {
        ShortestPathCover spc{body["r"], body["eps"], as_set(body["hubs"]),
                              body.value("minimal", false)};
        auto bad = verify_spc(dp, spc);
        rep.check("spc_valid", !bad,
                  bad ? json{{"u", bad->u}, {"z", bad->z}} : json{});
        if (type == "towns") {
            double r = spc.r, eps = spc.eps;
            bool ok = true;
            json witness;
            for (const auto &t : body["towns"]) {
                VertexSet members = as_set(t["members"]);
                if (!dp.leq(weak_diameter(dp, members), r)) {
                    ok = false;
                    witness = {{"town", t["center"]}, {"what", "diameter"}};
                }
                for (Vertex u : members)
                    for (Vertex v = 0; v < dp.size(); v++)
                        if (!members.contains(v) &&
                            !dp.gt(dp.distance(u, v), r)) {
                            ok = false;
                            witness = {{"town", t["center"]},
                                       {"what", "separation"},
                                       {"vertex", v}};
                        }
            }
            for (const auto &v : body["sprawl"])
                if (!dp.leq(dp.distance_to_set(v.get<Vertex>(), spc.hubs),
                            (2 + eps) * r)) {
                    ok = false;
                    witness = {{"what", "sprawl"}, {"vertex", v}};
                }
            rep.check("town_properties", ok, witness);
        }
    } else if (type == "partition") {
        double delta = body["Delta"];
        std::vector<VertexSet> clusters;
        for (const auto &c : body["clusters"])
            clusters.push_back(as_set(c["members"]));
        bool coverage = true;
        std::vector<char> seen(dp.size(), 0);
        for (const auto &cl : clusters)
            for (Vertex v : cl) {
                coverage &= !seen[v];
                seen[v] = 1;
            }
        for (Vertex v = 0; v < dp.size(); v++)
            coverage &= seen[v] == 1;
        rep.check("partition_covers_v", coverage);
        bool diam_ok = true;
        json witness;
        for (size_t c = 0; c < clusters.size(); c++) {
            if (clusters[c].empty())
                continue;
            double sd = strong_diameter(dp.graph(), clusters[c]);
            if (!dp.leq(sd, delta)) {
                diam_ok = false;
                witness = {{"cluster", c}, {"strong_diameter", sd}};
            }
        }
        rep.check("strong_diameter", diam_ok, witness);
    } else if (type == "cover" || type == "partition_cover") {
        std::vector<CoverCluster> clusters;
        for (const auto &c : body["clusters"]) {
            ClusterKind kind = c["kind"] == "hub-ball" ? ClusterKind::kHubBall
                               : c["kind"] == "town"
                                   ? ClusterKind::kTown
                                   : ClusterKind::kSprawlSingleton;
            clusters.push_back({kind, c["anchor"].get<Vertex>(),
                                c["radius"].get<double>(),
                                as_set(c["members"])});
        }
        auto bad =
            verify_cover(dp, clusters, body["Delta"], body["padded_radius"]);
        rep.check("cover_valid", !bad,
                  bad ? json{{"what", bad->what}, {"vertex", bad->vertex}}
                      : json{});
        if (type == "partition_cover") {
            bool disjoint = true;
            json w2;
            for (const auto &part : body["partitions"]) {
                std::vector<int> owner(dp.size(), -1);
                for (const auto &cid : part) {
                    for (Vertex v : clusters[cid.get<int>()].members) {
                        if (owner[v] >= 0) {
                            disjoint = false;
                            w2 = {{"vertex", v}, {"cluster", cid}};
                        }
                        owner[v] = cid.get<int>();
                    }
                }
            }
            rep.check("partitions_disjoint", disjoint, w2);
        }
    } else if (type == "tour") {
        std::vector<Vertex> walk;
        for (const auto &v : body["walk"])
            walk.push_back(v.get<Vertex>());
        Walk tour{walk};
        VertexSet terminals = as_set(body["terminals"]);
        bool closed = tour.seq.size() == 1 || tour.closed();
        bool visits = true;
        for (Vertex k : terminals)
            visits &= tour.visits(k);
        rep.check("tour_closed", closed);
        rep.check("tour_visits_all_terminals", visits);
        // costs were computed on the rescaled graph
        double scale = doc.value("scale", 1.0);
        DistanceProvider dps(dp.graph().scaled(scale));
        double recomputed = tour.cost(dps);
        rep.check("cost_matches",
                  dps.leq(std::abs(recomputed - body["cost"].get<double>()), 0),
                  {{"recomputed", recomputed}, {"stored", body["cost"]}});
    } else {
        throw ParamError("artifact type '" + type + "' is not verifiable");
    }
    return rep.emit("", timer.ms());
}

//--------------------------- main -----------------------------------

int main(int argc, char **argv) {
    CLI::App app{"highway-dimension metric toolkit"};
    app.require_subcommand(1);

    string in, format = "dimacs", out, bin, terminals, strategy = "auto";
    string kind = "star", solver = "exact", artifact, graph_path;
    double r = 1.0, eps = 0.1, delta = 1.0, gamma = 1.0 / 16, lambda = 0;
    int n = 8, q = 0, trials = 0, threads = 1;
    uint64_t seed = 1;
    size_t queries = 10000;
    Vertex qu = 0, qv = 0;
    bool minimal = false, epsnet = false, induced = false;

    auto add_io = [&](CLI::App *c) {
        c->add_option("--in", in, "input graph path")->required();
        c->add_option("--format", format, "dimacs | edgelist");
        c->add_option("--out", out, "write the JSON report here (default stdout)");
        c->add_option("--threads", threads, "worker thread cap");
    };

    auto *g_cmd = app.add_subcommand("generate", "emit a benchmark instance");
    g_cmd->add_option("--kind", kind,
                      "star | grid | duostar | random-geometric | clustered-towns");
    g_cmd->add_option("--n", n, "size parameter (leaves, side, pairs, points)");
    g_cmd->add_option("--eps", eps, "duostar accuracy");
    g_cmd->add_option("--q", q, "clustered-towns: clusters = q + 2")
        ->default_val(3);
    g_cmd->add_option("--seed", seed, "generator seed");
    g_cmd->add_option("--out", out, "output .gr path")->required();
    g_cmd->add_option("--terminals-out", terminals, "write planted terminals");

    auto *spc_cmd = app.add_subcommand("spc", "build and verify one cover");
    add_io(spc_cmd);
    spc_cmd->add_option("--r", r, "scale")->required();
    spc_cmd->add_option("--eps", eps, "accuracy")->required();
    spc_cmd->add_option("--strategy", strategy, "auto | greedy | exact");
    spc_cmd->add_flag("--minimal", minimal, "minimalize the cover");

    auto *towns_cmd = app.add_subcommand("towns", "cover + town decomposition");
    add_io(towns_cmd);
    towns_cmd->add_option("--r", r, "scale")->required();
    towns_cmd->add_option("--eps", eps, "accuracy")->required();

    auto *h_cmd = app.add_subcommand("hierarchy", "nested hub sets H_i");
    add_io(h_cmd);
    h_cmd->add_option("--eps", eps, "accuracy, in (0, 1/6]")->required();
    h_cmd->add_flag("--epsnet", epsnet, "eps-net per-level covers");

    auto *d_cmd = app.add_subcommand("decompose", "strong padded decomposition");
    add_io(d_cmd);
    d_cmd->add_option("--delta", delta, "diameter bound")->required();
    d_cmd->add_option("--eps", eps, "accuracy, in [0, 1/4]")->required();
    d_cmd->add_option("--seed", seed, "shift seed");
    d_cmd->add_option("--lambda", lambda, "override the shift rate");
    d_cmd->add_option("--trials", trials, "Monte Carlo padding trials");
    d_cmd->add_option("--gamma", gamma, "padding radius fraction, <= 1/8");

    auto *c_cmd = app.add_subcommand("cover", "strong sparse cover");
    add_io(c_cmd);
    c_cmd->add_option("--delta", delta, "diameter bound")->required();
    c_cmd->add_option("--eps", eps, "accuracy, in (0, 1/10]")->required();
    c_cmd->add_flag("--induced", induced, "report induced diameters");

    auto *pc_cmd =
        app.add_subcommand("partition-cover", "sparse partition cover");
    add_io(pc_cmd);
    pc_cmd->add_option("--delta", delta, "diameter bound")->required();
    pc_cmd->add_option("--eps", eps, "accuracy")->required();

    auto *tc_cmd = app.add_subcommand("treecover", "(1+2eps) tree cover");
    add_io(tc_cmd);
    tc_cmd->add_option("--eps", eps, "accuracy, in (0,1]")->required();
    tc_cmd->add_option("--bin", bin, "binary output path");

    auto *o_cmd = app.add_subcommand("oracle", "approximate distance oracle");
    o_cmd->require_subcommand(1);
    auto *ob = o_cmd->add_subcommand("build", "build and persist");
    add_io(ob);
    ob->add_option("--eps", eps, "accuracy, in (0,1]")->required();
    ob->add_option("--bin", bin, "oracle binary path")->required();
    auto *oq = o_cmd->add_subcommand("query", "one distance query");
    oq->add_option("--in", bin, "oracle binary")->required();
    oq->add_option("u", qu, "first vertex")->required();
    oq->add_option("v", qv, "second vertex")->required();
    auto *obench = o_cmd->add_subcommand("bench", "query latency");
    obench->add_option("--in", bin, "oracle binary")->required();
    obench->add_option("--queries", queries, "query count");
    obench->add_option("--seed", seed, "query seed");

    auto *t_cmd = app.add_subcommand("tsp", "subset TSP");
    t_cmd->require_subcommand(1);
    auto *ts = t_cmd->add_subcommand("solve", "divide-and-conquer solve");
    add_io(ts);
    ts->add_option("--terminals", terminals, "terminal id file")->required();
    ts->add_option("--eps", eps, "accuracy, in (0, 1/6]")->required();
    ts->add_option("--q", q, "dense-level threshold (0 = default formula)");
    ts->add_option("--solver", solver, "exact | heuristic");

    auto *v_cmd = app.add_subcommand("verify", "re-check an artifact");
    v_cmd->add_option("--in", artifact, "artifact (JSON or binary)")->required();
    v_cmd->add_option("--graph", graph_path, "the graph it was built from")
        ->required();
    v_cmd->add_option("--format", format, "dimacs | edgelist");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (g_cmd->parsed())
            return cmd_generate(kind, n, eps, q, seed, out, terminals);
        if (spc_cmd->parsed())
            return cmd_spc(in, format, r, eps, strategy, minimal, out);
        if (towns_cmd->parsed())
            return cmd_towns(in, format, r, eps, out);
        if (h_cmd->parsed())
            return cmd_hierarchy(in, format, eps, epsnet, out);
        if (d_cmd->parsed())
            return cmd_decompose(in, format, delta, eps, seed, lambda, trials,
                                 gamma, threads, out);
        if (c_cmd->parsed())
            return cmd_cover(in, format, delta, eps, false, induced, out);
        if (pc_cmd->parsed())
            return cmd_cover(in, format, delta, eps, true, false, out);
        if (tc_cmd->parsed())
            return cmd_treecover(in, format, eps, threads, bin, out);
        if (o_cmd->parsed()) {
            if (ob->parsed())
                return cmd_oracle_build(in, format, eps, threads, bin, out);
            if (oq->parsed())
                return cmd_oracle_query(bin, qu, qv);
            return cmd_oracle_bench(bin, queries, seed);
        }
        if (t_cmd->parsed())
            return cmd_tsp(in, format, terminals, eps, q, solver, out);
        if (v_cmd->parsed())
            return cmd_verify(artifact, graph_path, format);
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const ParamError &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}
