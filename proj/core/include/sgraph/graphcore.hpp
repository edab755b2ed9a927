#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgraph/sessionizer.hpp"

namespace sgraph {

struct DegenerateGraph : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Directed graph over resources with one edge per distinct ordered
// within-session transition. Edges are unweighted for the metric set;
// the observed transition multiplicity is kept as the edge weight.
// Self-transitions (r, r) are counted but excluded from the edge set.
class SessionGraph {
public:
    // Node index for a resource, creating it on first sight. Indices
    // follow first-appearance order.
    int intern(const std::string& resource);
    // Lookup without insertion; -1 when the resource is unknown.
    int find(const std::string& resource) const;

    void add_request(int node) { ++requests_[node]; }
    void add_transition(int src, int dst);

    int node_count() const { return static_cast<int>(resources_.size()); }
    std::int64_t edge_count() const { return edge_count_; }

    const std::string& resource(int node) const { return resources_[node]; }
    std::int64_t requests(int node) const { return requests_[node]; }
    std::int64_t self_loops(int node) const { return self_loops_[node]; }
    std::int64_t self_loop_count() const;
    // Sum of edge weights (self-transitions not included).
    std::int64_t total_weight() const;

    // Outgoing edges of a node, ordered by destination index.
    const std::map<int, std::int64_t>& out_edges(int node) const {
        return adjacency_[node];
    }
    bool has_edge(int src, int dst) const;

private:
    std::vector<std::string> resources_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::map<int, std::int64_t>> adjacency_;
    std::vector<std::int64_t> requests_;
    std::vector<std::int64_t> self_loops_;
    std::int64_t edge_count_ = 0;
};

SessionGraph build_graph(const std::vector<Session>& sessions);

struct DegreeVectors {
    std::vector<std::int64_t> in;
    std::vector<std::int64_t> out;
};

// Unweighted in/out degrees (column and row sums of the adjacency
// matrix).
DegreeVectors degrees(const SessionGraph& graph);

// |E| / (|V| (|V|-1)) and |E| / |V| as plain count formulas, shared by
// the graph methods so reported metrics and the formulas cannot drift.
double density_for_counts(std::int64_t nodes, std::int64_t edges);
double mean_degree_for_counts(std::int64_t nodes, std::int64_t edges);

double density(const SessionGraph& graph);      // needs |V| >= 2
double mean_degree(const SessionGraph& graph);  // needs |V| >= 1

enum class ReciprocityMode {
    // 2 * #{unordered pairs linked both ways} / (|V| (|V|-1))
    PairFormula,
    // #{edges whose reverse edge exists} / |E|, 0 when |E| = 0
    EdgeRatio,
};

double reciprocity(const SessionGraph& graph, ReciprocityMode mode);

enum class ConnectivityMode { Weak, Strong };

struct ComponentPartition {
    ConnectivityMode mode;
    std::vector<int> assignment;        // node index -> component id
    std::vector<std::int64_t> sizes;    // component id -> member count

    std::int64_t count() const { return static_cast<std::int64_t>(sizes.size()); }
    std::int64_t largest() const;
};

// Weak: components of the undirected view. Strong: maximal sets with
// mutual directed reachability. Component ids are assigned in order of
// least member node index.
ComponentPartition connected_components(const SessionGraph& graph,
                                        ConnectivityMode mode);

struct ComponentSummary {
    std::int64_t wcc_count = 0;
    std::int64_t scc_count = 0;
    std::int64_t largest_wcc = 0;
    std::int64_t largest_scc = 0;
};

ComponentSummary component_summary(const SessionGraph& graph);

// Induced subgraph on the k nodes of highest total degree (in + out),
// ties broken toward the smaller node index. Node order, weights,
// request counts, and per-node self-transition counts carry over.
SessionGraph top_k_degree_subgraph(const SessionGraph& graph, int k);

// Exports.
void write_edge_list_csv(std::ostream& out, const SessionGraph& graph);
void write_node_table_csv(std::ostream& out, const SessionGraph& graph);
void write_graphml(std::ostream& out, const SessionGraph& graph);

}  // namespace sgraph
