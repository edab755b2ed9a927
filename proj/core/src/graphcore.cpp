#include "sgraph/graphcore.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace sgraph {

int SessionGraph::intern(const std::string& resource) {
    auto [it, inserted] = index_.try_emplace(resource, node_count());
    if (inserted) {
        resources_.push_back(resource);
        adjacency_.emplace_back();
        requests_.push_back(0);
        self_loops_.push_back(0);
    }
    return it->second;
}

int SessionGraph::find(const std::string& resource) const {
    auto it = index_.find(resource);
    return it == index_.end() ? -1 : it->second;
}

void SessionGraph::add_transition(int src, int dst) {
    if (src == dst) {
        ++self_loops_[src];
        return;
    }
    auto [it, inserted] = adjacency_[src].try_emplace(dst, 0);
    ++it->second;
    if (inserted) ++edge_count_;
}

std::int64_t SessionGraph::self_loop_count() const {
    return std::accumulate(self_loops_.begin(), self_loops_.end(), std::int64_t{0});
}

std::int64_t SessionGraph::total_weight() const {
    std::int64_t w = 0;
    for (const auto& edges : adjacency_)
        for (const auto& [dst, weight] : edges) w += weight;
    return w;
}

bool SessionGraph::has_edge(int src, int dst) const {
    return adjacency_[src].count(dst) != 0;
}

SessionGraph build_graph(const std::vector<Session>& sessions) {
    SessionGraph g;
    for (const auto& session : sessions) {
        int prev = -1;
        for (const auto& req : session.requests) {
            int node = g.intern(req.resource);
            g.add_request(node);
            if (prev >= 0) g.add_transition(prev, node);
            prev = node;
        }
    }
    return g;
}

DegreeVectors degrees(const SessionGraph& graph) {
    int n = graph.node_count();
    DegreeVectors d;
    d.in.assign(n, 0);
    d.out.assign(n, 0);
    for (int src = 0; src < n; ++src) {
        const auto& edges = graph.out_edges(src);
        d.out[src] = static_cast<std::int64_t>(edges.size());
        for (const auto& [dst, weight] : edges) ++d.in[dst];
    }
    return d;
}

double density_for_counts(std::int64_t nodes, std::int64_t edges) {
    if (nodes < 2) throw DegenerateGraph("density needs at least 2 nodes");
    return static_cast<double>(edges) /
           (static_cast<double>(nodes) * static_cast<double>(nodes - 1));
}

double mean_degree_for_counts(std::int64_t nodes, std::int64_t edges) {
    if (nodes < 1) throw DegenerateGraph("mean degree needs a non-empty graph");
    return static_cast<double>(edges) / static_cast<double>(nodes);
}

double density(const SessionGraph& graph) {
    return density_for_counts(graph.node_count(), graph.edge_count());
}

double mean_degree(const SessionGraph& graph) {
    return mean_degree_for_counts(graph.node_count(), graph.edge_count());
}

double reciprocity(const SessionGraph& graph, ReciprocityMode mode) {
    int n = graph.node_count();
    if (n < 2) throw DegenerateGraph("reciprocity needs at least 2 nodes");
    std::int64_t reciprocated = 0;  // ordered edges whose reverse exists
    for (int src = 0; src < n; ++src)
        for (const auto& [dst, weight] : graph.out_edges(src))
            if (graph.has_edge(dst, src)) ++reciprocated;
    if (mode == ReciprocityMode::EdgeRatio) {
        if (graph.edge_count() == 0) return 0.0;
        return static_cast<double>(reciprocated) /
               static_cast<double>(graph.edge_count());
    }
    // reciprocated counts each mutual pair twice, so #pairs = half.
    return static_cast<double>(reciprocated) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

// Iterative Tarjan; recursion is a stack-overflow hazard on path-like
// session graphs.
std::vector<int> tarjan_scc(const SessionGraph& graph, int& component_count) {
    int n = graph.node_count();
    std::vector<int> dfs_number(n, -1), low(n, 0), component(n, -1);
    std::vector<int> stack, call_stack;
    std::vector<std::map<int, std::int64_t>::const_iterator> iter(n);
    std::vector<bool> on_stack(n, false);
    int next_dfs = 0;
    component_count = 0;

    for (int root = 0; root < n; ++root) {
        if (dfs_number[root] != -1) continue;
        call_stack.push_back(root);
        while (!call_stack.empty()) {
            int v = call_stack.back();
            if (dfs_number[v] == -1) {
                dfs_number[v] = low[v] = next_dfs++;
                stack.push_back(v);
                on_stack[v] = true;
                iter[v] = graph.out_edges(v).begin();
            }
            bool descended = false;
            while (iter[v] != graph.out_edges(v).end()) {
                int w = iter[v]->first;
                ++iter[v];
                if (dfs_number[w] == -1) {
                    call_stack.push_back(w);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], dfs_number[w]);
            }
            if (descended) continue;
            if (low[v] == dfs_number[v]) {
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component[w] = component_count;
                    if (w == v) break;
                }
                ++component_count;
            }
            call_stack.pop_back();
            if (!call_stack.empty()) {
                int parent = call_stack.back();
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return component;
}

std::vector<int> weak_components(const SessionGraph& graph, int& component_count) {
    int n = graph.node_count();
    std::vector<std::vector<int>> undirected(n);
    for (int src = 0; src < n; ++src)
        for (const auto& [dst, weight] : graph.out_edges(src)) {
            undirected[src].push_back(dst);
            undirected[dst].push_back(src);
        }
    std::vector<int> component(n, -1), queue;
    component_count = 0;
    for (int root = 0; root < n; ++root) {
        if (component[root] != -1) continue;
        component[root] = component_count;
        queue.clear();
        queue.push_back(root);
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int w : undirected[v])
                if (component[w] == -1) {
                    component[w] = component_count;
                    queue.push_back(w);
                }
        }
        ++component_count;
    }
    return component;
}

}  // namespace

std::int64_t ComponentPartition::largest() const {
    std::int64_t best = 0;
    for (std::int64_t s : sizes) best = std::max(best, s);
    return best;
}

ComponentPartition connected_components(const SessionGraph& graph,
                                        ConnectivityMode mode) {
    int count = 0;
    std::vector<int> raw = mode == ConnectivityMode::Weak
                               ? weak_components(graph, count)
                               : tarjan_scc(graph, count);

    // Relabel so component ids follow the least member node index.
    std::vector<int> relabel(count, -1);
    int next = 0;
    for (int raw_id : raw)
        if (relabel[raw_id] == -1) relabel[raw_id] = next++;

    ComponentPartition part;
    part.mode = mode;
    part.assignment.resize(raw.size());
    part.sizes.assign(count, 0);
    for (std::size_t v = 0; v < raw.size(); ++v) {
        int id = relabel[raw[v]];
        part.assignment[v] = id;
        ++part.sizes[id];
    }
    return part;
}

ComponentSummary component_summary(const SessionGraph& graph) {
    ComponentSummary s;
    auto wcc = connected_components(graph, ConnectivityMode::Weak);
    auto scc = connected_components(graph, ConnectivityMode::Strong);
    s.wcc_count = wcc.count();
    s.scc_count = scc.count();
    s.largest_wcc = wcc.largest();
    s.largest_scc = scc.largest();
    return s;
}

SessionGraph top_k_degree_subgraph(const SessionGraph& graph, int k) {
    if (k < 1) throw std::invalid_argument("top-k subgraph needs k >= 1");
    int n = graph.node_count();
    auto deg = degrees(graph);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return deg.in[a] + deg.out[a] > deg.in[b] + deg.out[b];
    });
    if (k < n) order.resize(k);

    std::vector<bool> keep(n, false);
    for (int v : order) keep[v] = true;

    SessionGraph sub;
    std::vector<int> remap(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        int nv = sub.intern(graph.resource(v));
        remap[v] = nv;
        for (std::int64_t i = 0; i < graph.requests(v); ++i) sub.add_request(nv);
        for (std::int64_t i = 0; i < graph.self_loops(v); ++i)
            sub.add_transition(nv, nv);
    }
    for (int src = 0; src < n; ++src) {
        if (!keep[src]) continue;
        for (const auto& [dst, weight] : graph.out_edges(src)) {
            if (!keep[dst]) continue;
            for (std::int64_t i = 0; i < weight; ++i)
                sub.add_transition(remap[src], remap[dst]);
        }
    }
    return sub;
}

namespace {

void xml_escape(std::ostream& out, const std::string& s) {
    for (char c : s) {
        switch (c) {
            case '&': out << "&amp;"; break;
            case '<': out << "&lt;"; break;
            case '>': out << "&gt;"; break;
            case '"': out << "&quot;"; break;
            case '\'': out << "&apos;"; break;
            default: out << c;
        }
    }
}

}  // namespace

void write_edge_list_csv(std::ostream& out, const SessionGraph& graph) {
    out << "src_id,dst_id,weight\n";
    for (int src = 0; src < graph.node_count(); ++src)
        for (const auto& [dst, weight] : graph.out_edges(src))
            out << src << ',' << dst << ',' << weight << '\n';
}

void write_node_table_csv(std::ostream& out, const SessionGraph& graph) {
    auto deg = degrees(graph);
    out << "id,resource,requests,in_degree,out_degree,self_loops\n";
    for (int v = 0; v < graph.node_count(); ++v) {
        out << v << ',';
        // CSV-quote the resource, which may contain commas or quotes.
        out << '"';
        for (char c : graph.resource(v)) {
            if (c == '"') out << '"';
            out << c;
        }
        out << '"';
        out << ',' << graph.requests(v) << ',' << deg.in[v] << ',' << deg.out[v]
            << ',' << graph.self_loops(v) << '\n';
    }
}

void write_graphml(std::ostream& out, const SessionGraph& graph) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"resource\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"requests\" attr.type=\"long\"/>\n"
        << "  <key id=\"d2\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (int v = 0; v < graph.node_count(); ++v) {
        out << "    <node id=\"n" << v << "\"><data key=\"d0\">";
        xml_escape(out, graph.resource(v));
        out << "</data><data key=\"d1\">" << graph.requests(v)
            << "</data></node>\n";
    }
    std::int64_t e = 0;
    for (int src = 0; src < graph.node_count(); ++src)
        for (const auto& [dst, weight] : graph.out_edges(src))
            out << "    <edge id=\"e" << e++ << "\" source=\"n" << src
                << "\" target=\"n" << dst << "\"><data key=\"d2\">" << weight
                << "</data></edge>\n";
    out << "  </graph>\n</graphml>\n";
}

}  // namespace sgraph
