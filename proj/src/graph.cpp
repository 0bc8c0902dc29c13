#include "hwdim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

using namespace std;

namespace hwdim {

//--------------------------- VertexSet ------------------------------

VertexSet::VertexSet(vector<Vertex> ids) : ids_(std::move(ids)) {
    sort(ids_.begin(), ids_.end());
    ids_.erase(unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(Vertex v) const {
    return binary_search(ids_.begin(), ids_.end(), v);
}

void VertexSet::insert(Vertex v) {
    auto it = lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v)
        ids_.insert(it, v);
}

void VertexSet::erase(Vertex v) {
    auto it = lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v)
        ids_.erase(it);
}

bool VertexSet::is_subset_of(const VertexSet &o) const {
    return includes(o.ids_.begin(), o.ids_.end(), ids_.begin(), ids_.end());
}

VertexSet VertexSet::unite(const VertexSet &a, const VertexSet &b) {
    vector<Vertex> merged;
    merged.reserve(a.size() + b.size());
    set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
              back_inserter(merged));
    VertexSet out;
    out.ids_ = std::move(merged);
    return out;
}

bool VertexSet::intersects(const VertexSet &o) const {
    size_t i = 0, j = 0;
    while (i < ids_.size() && j < o.ids_.size()) {
        if (ids_[i] == o.ids_[j])
            return true;
        if (ids_[i] < o.ids_[j])
            i++;
        else
            j++;
    }
    return false;
}

//--------------------------- WeightedGraph --------------------------

static void check_connected(Vertex n, const vector<vector<WeightedGraph::Arc>> &adj) {
    if (n == 0)
        throw ParamError("graph has no vertices");
    vector<char> seen(n, 0);
    queue<Vertex> q;
    q.push(0);
    seen[0] = 1;
    Vertex reached = 1;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (const auto &a : adj[v]) {
            if (!seen[a.to]) {
                seen[a.to] = 1;
                reached++;
                q.push(a.to);
            }
        }
    }
    if (reached < n) {
        Vertex other = -1;
        for (Vertex v = 0; v < n; v++)
            if (!seen[v]) {
                other = v;
                break;
            }
        throw ParseError("graph is disconnected: vertex 0 and vertex " +
                         to_string(other) + " lie in different components");
    }
}

WeightedGraph::WeightedGraph(Vertex vertex_count, vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    adj_.assign(n_, {});
    for (const Edge &e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw ParseError("edge endpoint out of range: " + to_string(e.u) +
                             " " + to_string(e.v) + " (n=" + to_string(n_) + ")");
        if (e.u == e.v)
            throw ParamError("self-loop at vertex " + to_string(e.u));
        if (!(e.w >= 0) || !isfinite(e.w))
            throw ParamError("negative or non-finite edge weight on (" +
                             to_string(e.u) + "," + to_string(e.v) + ")");
        adj_[e.u].push_back({e.v, e.w});
        adj_[e.v].push_back({e.u, e.w});
    }
    // one edge per unordered pair
    for (Vertex v = 0; v < n_; v++) {
        auto nb = adj_[v];
        sort(nb.begin(), nb.end(), [](const Arc &a, const Arc &b) { return a.to < b.to; });
        for (size_t i = 1; i < nb.size(); i++)
            if (nb[i].to == nb[i - 1].to)
                throw ParamError("parallel edges between " + to_string(v) +
                                 " and " + to_string(nb[i].to));
    }
    check_connected(n_, adj_);
}

double WeightedGraph::min_edge_weight() const {
    double m = kInfDist;
    for (const Edge &e : edges_)
        m = min(m, e.w);
    return m;
}

WeightedGraph WeightedGraph::scaled(double factor) const {
    vector<Edge> es = edges_;
    for (Edge &e : es)
        e.w *= factor;
    return WeightedGraph(n_, std::move(es));
}

RescaledGraph rescale_to_unit_min_distance(const WeightedGraph &g) {
    double md = g.min_distance();
    if (!(md > 0))
        throw ParamError("cannot rescale: minimum distance is 0");
    double factor = (1.0 + 1e-6) / md;
    return {g.scaled(factor), factor};
}

//--------------------------- parsing --------------------------------

namespace {

struct EdgeAccumulator {
    map<pair<Vertex, Vertex>, double> best;
    LoadReport report;

    void add(Vertex u, Vertex v, double w, int line) {
        if (u == v) {
            report.dropped_self_loops++;
            return;
        }
        if (w < 0)
            throw ParseError("line " + to_string(line) + ": negative weight");
        auto key = minmax(u, v);
        auto [it, inserted] = best.emplace(key, w);
        if (!inserted) {
            report.collapsed_parallel_edges++;
            it->second = min(it->second, w);
        }
    }

    vector<Edge> edges() const {
        vector<Edge> out;
        out.reserve(best.size());
        for (const auto &[key, w] : best)
            out.push_back({key.first, key.second, w});
        return out;
    }
};

WeightedGraph parse_dimacs(istream &in, LoadReport *report) {
    string line;
    int lineno = 0;
    Vertex n = -1;
    EdgeAccumulator acc;
    while (getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == 'c')
            continue;
        istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'p') {
            string kind;
            long long pn, pm;
            if (!(ls >> kind >> pn >> pm) || kind != "sp")
                throw ParseError("line " + to_string(lineno) +
                                 ": expected 'p sp n m'");
            n = static_cast<Vertex>(pn);
        } else if (tag == 'a') {
            long long u, v;
            double w;
            if (!(ls >> u >> v >> w))
                throw ParseError("line " + to_string(lineno) + ": bad arc line");
            if (n < 0)
                throw ParseError("line " + to_string(lineno) +
                                 ": arc before 'p sp' header");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError("line " + to_string(lineno) +
                                 ": vertex id out of range 1.." + to_string(n));
            acc.add(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w,
                    lineno);
        } else {
            throw ParseError("line " + to_string(lineno) + ": unknown tag '" +
                             string(1, tag) + "'");
        }
    }
    if (n < 0)
        throw ParseError("missing 'p sp n m' header");
    if (report)
        *report = acc.report;
    return WeightedGraph(n, acc.edges());
}

WeightedGraph parse_edge_list(istream &in, LoadReport *report) {
    string line;
    int lineno = 0;
    Vertex max_id = -1;
    EdgeAccumulator acc;
    while (getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == '#')
            continue;
        istringstream ls(line);
        long long u, v;
        double w;
        if (!(ls >> u >> v >> w))
            throw ParseError("line " + to_string(lineno) +
                             ": expected 'u v w'");
        if (u < 0 || v < 0)
            throw ParseError("line " + to_string(lineno) + ": negative vertex id");
        max_id = max<long long>(max_id, max(u, v));
        acc.add(static_cast<Vertex>(u), static_cast<Vertex>(v), w, lineno);
    }
    if (max_id < 0)
        throw ParseError("empty edge list");
    if (report)
        *report = acc.report;
    return WeightedGraph(max_id + 1, acc.edges());
}

}  // namespace

WeightedGraph parse_graph(const string &content, GraphFormat format,
                          LoadReport *report) {
    istringstream in(content);
    return format == GraphFormat::kDimacs ? parse_dimacs(in, report)
                                          : parse_edge_list(in, report);
}

WeightedGraph load_graph(const string &path, GraphFormat format,
                         LoadReport *report) {
    ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    if (format == GraphFormat::kDimacs)
        return parse_dimacs(in, report);
    return parse_edge_list(in, report);
}

}  // namespace hwdim
