#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "crys/crystal.hpp"

namespace crys {

// Explored crystal component.  Edges always mean f~_i(src) = dst.
// Graphs loaded from JSON carry cached data only (no crystal handle).
struct GraphNode {
    Weight wt;
    std::vector<ExtInt> eps, phi;  // indexed parallel to `indices`
    std::string label;
    int depth = 0;
};

struct GraphEdge {
    int src;
    int i;  // index position (into the ambient Cartan datum)
    int dst;
    bool operator<(const GraphEdge& o) const {
        return std::tie(src, i, dst) < std::tie(o.src, o.i, o.dst);
    }
    bool operator==(const GraphEdge& o) const {
        return src == o.src && i == o.i && dst == o.dst;
    }
};

enum class Direction { FOnly, EOnly, Both };

struct CrystalGraph {
    CartanSpec spec;
    std::vector<int> indices;  // index positions carried by the nodes
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::vector<int> sources;
    bool truncated = false;
    bool budget_exceeded = false;
    std::optional<int> depth_limit;

    // present only for graphs produced by explore()
    CrystalPtr crystal;
    std::vector<Elem> elems;

    int size() const { return static_cast<int>(nodes.size()); }
    bool has_handle() const { return crystal != nullptr; }

    int index_slot(int i) const {
        for (size_t k = 0; k < indices.size(); ++k)
            if (indices[k] == i) return static_cast<int>(k);
        throw std::invalid_argument("index not carried by graph");
    }

    // f~_i successor / predecessor inside the graph, -1 if none.
    int out_edge(int node, int i) const {
        auto it = out_.find({node, i});
        return it == out_.end() ? -1 : it->second;
    }
    int in_edge(int node, int i) const {
        auto it = in_.find({node, i});
        return it == in_.end() ? -1 : it->second;
    }
    int in_degree(int node, int i) const {
        auto it = in_count_.find({node, i});
        return it == in_count_.end() ? 0 : it->second;
    }

    void rebuild_adjacency() {
        out_.clear();
        in_.clear();
        in_count_.clear();
        for (const auto& e : edges) {
            out_[{e.src, e.i}] = e.dst;
            // keep the first incoming edge; count the rest
            in_.emplace(std::make_pair(e.dst, e.i), e.src);
            ++in_count_[{e.dst, e.i}];
        }
    }

private:
    std::map<std::pair<int, int>, int> out_, in_;
    std::map<std::pair<int, int>, int> in_count_;
};

struct ExploreOptions {
    std::optional<int> depth;
    Direction direction = Direction::Both;
    size_t budget = 1'000'000;
};

// BFS closure of the seeds under the selected operators.  Node order is
// the deterministic sequential order: BFS layer, then discovery order
// (per node: f~_i in index order, then e~_i in index order).
inline CrystalGraph explore(CrystalPtr B, const std::vector<Elem>& seeds,
                            const ExploreOptions& opt = {}) {
    CrystalGraph g;
    g.spec = B->cartan();
    g.indices = B->index_set();
    g.crystal = B;
    g.depth_limit = opt.depth;

    std::unordered_map<Elem, int, ElemHash> ids;
    std::deque<int> queue;
    auto add_node = [&](const Elem& e, int depth) -> int {
        auto [it, fresh] = ids.emplace(e, static_cast<int>(g.elems.size()));
        if (!fresh) return it->second;
        if (g.elems.size() >= opt.budget) {
            g.budget_exceeded = true;
            g.truncated = true;
            ids.erase(it);
            return -1;
        }
        g.elems.push_back(e);
        GraphNode n;
        n.wt = B->wt(e);
        for (int i : g.indices) {
            n.eps.push_back(B->eps(e, i));
            n.phi.push_back(B->phi(e, i));
        }
        n.label = B->render(e);
        n.depth = depth;
        g.nodes.push_back(std::move(n));
        queue.push_back(it->second);
        return it->second;
    };
    for (const auto& s : seeds) {
        int id = add_node(s, 0);
        if (id >= 0) g.sources.push_back(id);
    }
    const bool use_f =
        opt.direction == Direction::FOnly || opt.direction == Direction::Both;
    const bool use_e =
        opt.direction == Direction::EOnly || opt.direction == Direction::Both;
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        int d = g.nodes[id].depth;
        if (opt.depth && d >= *opt.depth) continue;  // frontier, expanded below
        Elem cur = g.elems[id];
        if (use_f)
            for (int i : g.indices)
                if (auto r = B->lower(cur, i)) add_node(*r, d + 1);
        if (use_e)
            for (int i : g.indices)
                if (auto r = B->raise(cur, i)) add_node(*r, d + 1);
        if (g.budget_exceeded) break;
    }
    // frontier scan: the depth bound truncated the graph iff some node at
    // the bound has an unexplored neighbor
    if (opt.depth && !g.budget_exceeded) {
        for (size_t id = 0; id < g.elems.size() && !g.truncated; ++id) {
            if (g.nodes[id].depth < *opt.depth) continue;
            for (int i : g.indices) {
                if (use_f)
                    if (auto r = B->lower(g.elems[id], i))
                        if (!ids.count(*r)) { g.truncated = true; break; }
                if (use_e)
                    if (auto r = B->raise(g.elems[id], i))
                        if (!ids.count(*r)) { g.truncated = true; break; }
            }
        }
    }
    // edges: f~_i applications landing inside the node set
    for (size_t id = 0; id < g.elems.size(); ++id)
        for (int i : g.indices)
            if (auto r = B->lower(g.elems[id], i)) {
                auto it = ids.find(*r);
                if (it != ids.end())
                    g.edges.push_back({static_cast<int>(id), i, it->second});
            }
    g.rebuild_adjacency();
    return g;
}

// All nodes with e~_i absent for every carried index.
inline std::vector<int> hw_elements(const CrystalGraph& g) {
    std::vector<int> out;
    for (int id = 0; id < g.size(); ++id) {
        bool hw = true;
        if (g.has_handle()) {
            for (int i : g.indices)
                if (g.crystal->raise(g.elems[id], i)) { hw = false; break; }
        } else {
            // cached-data fallback: semi-normal reading of eps
            for (size_t k = 0; k < g.indices.size() && hw; ++k)
                if (g.nodes[id].eps[k] != ExtInt(0)) hw = false;
        }
        if (hw) out.push_back(id);
    }
    return out;
}

// Deterministic certificate of (G, root): BFS renaming expanding edges in
// fixed index order; two connected components with distinguished roots are
// isomorphic as I-edge-labeled weighted graphs iff certificates match.
inline std::string canonical_form(const CrystalGraph& g, int root) {
    const int n = g.size();
    if (root < 0 || root >= n) throw std::invalid_argument("bad root");
    std::vector<int> order(n, -1);
    std::vector<int> visit;
    order[root] = 0;
    visit.push_back(root);
    for (size_t q = 0; q < visit.size(); ++q) {
        int x = visit[q];
        for (int i : g.indices) {
            int y = g.out_edge(x, i);
            if (y >= 0 && order[y] < 0) {
                order[y] = static_cast<int>(visit.size());
                visit.push_back(y);
            }
        }
        for (int i : g.indices) {
            int y = g.in_edge(x, i);
            if (y >= 0 && order[y] < 0) {
                order[y] = static_cast<int>(visit.size());
                visit.push_back(y);
            }
        }
    }
    if (static_cast<int>(visit.size()) != n)
        throw std::invalid_argument("canonical_form: graph is not connected");
    std::ostringstream os;
    os << "crystal-cert-v1 rank=" << g.indices.size() << " nodes=" << n
       << " edges=" << g.edges.size() << "\n";
    auto join = [](const auto& xs, auto f) {
        std::string s;
        for (size_t k = 0; k < xs.size(); ++k) {
            if (k) s += ",";
            s += f(xs[k]);
        }
        return s;
    };
    for (int newid = 0; newid < n; ++newid) {
        int old = visit[newid];
        const auto& nd = g.nodes[old];
        os << "node " << newid << " wt="
           << join(nd.wt.v, [](int x) { return std::to_string(x); })
           << " eps=" << join(nd.eps, [](const ExtInt& x) { return x.str(); })
           << " phi=" << join(nd.phi, [](const ExtInt& x) { return x.str(); })
           << "\n";
    }
    std::vector<GraphEdge> renamed;
    for (const auto& e : g.edges)
        renamed.push_back({order[e.src], e.i, order[e.dst]});
    std::sort(renamed.begin(), renamed.end());
    for (const auto& e : renamed)
        os << "edge " << e.src << " " << e.i << " " << e.dst << "\n";
    return os.str();
}

// --- serialization -------------------------------------------------------

inline nlohmann::json graph_to_json(const CrystalGraph& g) {
    nlohmann::json j;
    j["cartan"] = {{"labels", g.spec.labels}, {"gcm", g.spec.gcm}};
    j["indices"] = g.indices;
    auto ext = [](const ExtInt& x) -> nlohmann::json {
        if (x.is_finite()) return x.value();
        return "-inf";
    };
    j["nodes"] = nlohmann::json::array();
    for (int id = 0; id < g.size(); ++id) {
        const auto& nd = g.nodes[id];
        nlohmann::json eps = nlohmann::json::array(),
                       phi = nlohmann::json::array();
        for (const auto& x : nd.eps) eps.push_back(ext(x));
        for (const auto& x : nd.phi) phi.push_back(ext(x));
        j["nodes"].push_back({{"id", id},
                              {"wt", nd.wt.v},
                              {"eps", eps},
                              {"phi", phi},
                              {"label", nd.label}});
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back(
            {{"src", e.src}, {"i", g.spec.labels[e.i]}, {"dst", e.dst}});
    j["sources"] = g.sources;
    j["truncated"] = g.truncated;
    if (g.depth_limit) j["depth_limit"] = *g.depth_limit;
    if (g.budget_exceeded) j["budget_exceeded"] = true;
    return j;
}

inline CrystalGraph graph_from_json(const nlohmann::json& j) {
    CrystalGraph g;
    g.spec.labels = j.at("cartan").at("labels").get<std::vector<std::string>>();
    g.spec.gcm = j.at("cartan").at("gcm").get<std::vector<std::vector<int>>>();
    g.spec.type_tag = detail::classify_gcm(g.spec);
    if (j.contains("indices"))
        g.indices = j["indices"].get<std::vector<int>>();
    else
        for (int i = 0; i < g.spec.rank(); ++i) g.indices.push_back(i);
    auto ext = [](const nlohmann::json& x) {
        return x.is_number() ? ExtInt(x.get<long long>()) : ExtInt::minus_inf();
    };
    for (const auto& nj : j.at("nodes")) {
        GraphNode nd;
        nd.wt = Weight(nj.at("wt").get<std::vector<int>>());
        for (const auto& x : nj.at("eps")) nd.eps.push_back(ext(x));
        for (const auto& x : nj.at("phi")) nd.phi.push_back(ext(x));
        nd.label = nj.value("label", "");
        g.nodes.push_back(std::move(nd));
    }
    for (const auto& ej : j.at("edges"))
        g.edges.push_back({ej.at("src").get<int>(),
                           g.spec.label_index(ej.at("i").get<std::string>()),
                           ej.at("dst").get<int>()});
    g.sources = j.value("sources", std::vector<int>{});
    g.truncated = j.value("truncated", false);
    g.budget_exceeded = j.value("budget_exceeded", false);
    if (j.contains("depth_limit")) g.depth_limit = j["depth_limit"].get<int>();
    g.rebuild_adjacency();
    // recompute depths from the sources over undirected edges
    if (!g.sources.empty()) {
        std::vector<int> depth(g.size(), -1);
        std::deque<int> q;
        for (int s : g.sources) {
            depth[s] = 0;
            q.push_back(s);
        }
        std::vector<std::vector<int>> adj(g.size());
        for (const auto& e : g.edges) {
            adj[e.src].push_back(e.dst);
            adj[e.dst].push_back(e.src);
        }
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj[x])
                if (depth[y] < 0) {
                    depth[y] = depth[x] + 1;
                    q.push_back(y);
                }
        }
        for (int id = 0; id < g.size(); ++id)
            g.nodes[id].depth = std::max(depth[id], 0);
    }
    return g;
}

inline std::string graph_to_dot(const CrystalGraph& g) {
    std::ostringstream os;
    os << "digraph crystal {\n  rankdir=TB;\n";
    for (int id = 0; id < g.size(); ++id)
        os << "  n" << id << " [label=\"" << g.nodes[id].label << "\"];\n";
    for (const auto& e : g.edges)
        os << "  n" << e.src << " -> n" << e.dst << " [label=\""
           << g.spec.labels[e.i] << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace crys
