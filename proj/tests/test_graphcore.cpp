#include "sgraph/graphcore.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace sgraph;

namespace {

Session session_of(std::initializer_list<const char*> resources) {
    Session s;
    s.agent = AgentKey{std::string("ua"), std::string("1.1.1.1")};
    std::int64_t ts = 0;
    for (const char* r : resources) s.requests.push_back({r, ts++});
    return s;
}

// The twelve-node worked example used throughout this file:
//   r0->r1 (twice), r1->r1, r1->r2, r2->r0, r3->r0, r3->r4,
//   r5->r6, r6->r5, r6->r7, r8 isolated, r9->r10->r11.
std::vector<Session> worked_example() {
    return {
        session_of({"/r0", "/r1", "/r1", "/r2", "/r0"}),
        session_of({"/r0", "/r1"}),
        session_of({"/r3", "/r0"}),
        session_of({"/r3", "/r4"}),
        session_of({"/r5", "/r6", "/r5"}),
        session_of({"/r6", "/r7"}),
        session_of({"/r8"}),
        session_of({"/r9", "/r10", "/r11"}),
    };
}

std::vector<Session> random_sessions(std::uint64_t seed, int session_count,
                                     int max_len, int resource_pool) {
    std::mt19937_64 g(seed);
    std::vector<Session> out;
    for (int s = 0; s < session_count; ++s) {
        Session sess;
        sess.agent = AgentKey{std::string("ua"), std::nullopt};
        const int len = 1 + static_cast<int>(g() % max_len);
        std::int64_t ts = 0;
        for (int i = 0; i < len; ++i) {
            sess.requests.push_back(
                {"/p" + std::to_string(g() % resource_pool), ts++});
        }
        out.push_back(std::move(sess));
    }
    return out;
}

SessionGraph random_digraph(std::uint64_t seed, int n, int percent) {
    std::mt19937_64 g(seed);
    SessionGraph graph;
    for (int v = 0; v < n; ++v) graph.intern("/n" + std::to_string(v));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && static_cast<int>(g() % 100) < percent)
                graph.add_transition(i, j);
    return graph;
}

testlib::DenseGraph dense_of(const SessionGraph& graph) {
    testlib::DenseGraph d;
    for (int v = 0; v < graph.node_count(); ++v) d.id(graph.resource(v));
    for (int src = 0; src < graph.node_count(); ++src)
        for (const auto& [dst, weight] : graph.out_edges(src))
            d.w[src][dst] = weight;
    return d;
}

}  // namespace

TEST_CASE("worked example matches hand counts") {
    const auto graph = build_graph(worked_example());

    REQUIRE(graph.node_count() == 12);
    for (int v = 0; v < 12; ++v)
        CHECK(graph.resource(v) == "/r" + std::to_string(v));

    CHECK(graph.edge_count() == 10);
    CHECK(graph.total_weight() == 11);  // r0->r1 carries weight 2
    CHECK(graph.self_loop_count() == 1);
    CHECK(graph.self_loops(1) == 1);
    CHECK(graph.self_loops(0) == 0);
    CHECK_FALSE(graph.has_edge(1, 1));  // self loop is not an edge
    CHECK(graph.has_edge(0, 1));
    CHECK_FALSE(graph.has_edge(1, 0));

    CHECK(graph.requests(0) == 4);
    CHECK(graph.requests(1) == 3);
    CHECK(graph.requests(3) == 2);
    CHECK(graph.requests(8) == 1);

    const auto deg = degrees(graph);
    CHECK(deg.in == std::vector<std::int64_t>{2, 1, 1, 0, 1, 1, 1, 1, 0, 0, 1,
                                              1});
    CHECK(deg.out == std::vector<std::int64_t>{1, 1, 1, 2, 0, 1, 2, 0, 0, 1, 1,
                                               0});

    CHECK(density(graph) == doctest::Approx(10.0 / 132.0).epsilon(1e-12));
    CHECK(mean_degree(graph) == doctest::Approx(10.0 / 12.0).epsilon(1e-12));
    CHECK(reciprocity(graph, ReciprocityMode::EdgeRatio) ==
          doctest::Approx(0.2).epsilon(1e-12));
    CHECK(reciprocity(graph, ReciprocityMode::PairFormula) ==
          doctest::Approx(2.0 / 132.0).epsilon(1e-12));
}

TEST_CASE("worked example components") {
    const auto graph = build_graph(worked_example());

    const auto wcc = connected_components(graph, ConnectivityMode::Weak);
    CHECK(wcc.count() == 4);
    CHECK(wcc.largest() == 5);
    CHECK(wcc.assignment ==
          std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 2, 3, 3, 3});
    CHECK(wcc.sizes == std::vector<std::int64_t>{5, 3, 1, 3});

    const auto scc = connected_components(graph, ConnectivityMode::Strong);
    CHECK(scc.count() == 9);
    CHECK(scc.largest() == 3);
    // Ids follow the least member index: {0,1,2}=0, {3}=1, {4}=2,
    // {5,6}=3, {7}=4, {8}=5, {9}=6, {10}=7, {11}=8.
    CHECK(scc.assignment ==
          std::vector<int>{0, 0, 0, 1, 2, 3, 3, 4, 5, 6, 7, 8});
    CHECK(scc.sizes ==
          std::vector<std::int64_t>{3, 1, 1, 2, 1, 1, 1, 1, 1});

    const auto summary = component_summary(graph);
    CHECK(summary.wcc_count == 4);
    CHECK(summary.scc_count == 9);
    CHECK(summary.largest_wcc == 5);
    CHECK(summary.largest_scc == 3);
}

TEST_CASE("worked example top-k subgraph") {
    const auto graph = build_graph(worked_example());
    // Total degrees: r0 and r6 lead with 3; the tie group at 2 starts
    // at r1, so k=3 keeps {r0, r1, r6}.
    const auto top = top_k_degree_subgraph(graph, 3);
    REQUIRE(top.node_count() == 3);
    CHECK(top.resource(0) == "/r0");
    CHECK(top.resource(1) == "/r1");
    CHECK(top.resource(2) == "/r6");
    CHECK(top.edge_count() == 1);  // only r0->r1 survives
    CHECK(top.has_edge(0, 1));
    CHECK(top.out_edges(0).at(1) == 2);  // weight carries over
    CHECK(top.requests(0) == 4);
    CHECK(top.self_loops(1) == 1);

    // k beyond the node count keeps everything.
    CHECK(top_k_degree_subgraph(graph, 50).node_count() == 12);
    CHECK_THROWS(top_k_degree_subgraph(graph, 0));
}

TEST_CASE("graph accumulation agrees with a dense matrix oracle") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto sessions = random_sessions(seed, 30, 8, 12);
        const auto graph = build_graph(sessions);
        const auto dense = testlib::dense_from_sessions(sessions);

        REQUIRE(graph.node_count() == dense.n());
        for (int v = 0; v < dense.n(); ++v) {
            CHECK(graph.resource(v) == dense.names[v]);
            CHECK(graph.requests(v) == dense.requests[v]);
            CHECK(graph.self_loops(v) == dense.w[v][v]);
        }
        CHECK(graph.edge_count() == dense.edge_count());
        CHECK(graph.total_weight() == dense.total_weight());
        CHECK(graph.self_loop_count() == dense.self_loop_total());

        const auto deg = degrees(graph);
        CHECK(deg.in == dense.in_degrees());
        CHECK(deg.out == dense.out_degrees());

        for (int i = 0; i < dense.n(); ++i)
            for (int j = 0; j < dense.n(); ++j) {
                if (i == j) continue;
                CHECK(graph.has_edge(i, j) == (dense.w[i][j] > 0));
                if (dense.w[i][j] > 0)
                    CHECK(graph.out_edges(i).at(j) == dense.w[i][j]);
            }

        if (dense.n() >= 2) {
            const double n = dense.n();
            CHECK(density(graph) ==
                  doctest::Approx(dense.edge_count() / (n * (n - 1)))
                      .epsilon(1e-12));
            CHECK(reciprocity(graph, ReciprocityMode::PairFormula) ==
                  doctest::Approx(dense.reciprocated_edges() / (n * (n - 1)))
                      .epsilon(1e-12));
            if (dense.edge_count() > 0)
                CHECK(reciprocity(graph, ReciprocityMode::EdgeRatio) ==
                      doctest::Approx(static_cast<double>(
                                          dense.reciprocated_edges()) /
                                      dense.edge_count())
                          .epsilon(1e-12));
        }
    }
}

TEST_CASE("components agree with a reachability closure oracle") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int n = 2 + static_cast<int>(seed % 49);
        const int percent = 1 + static_cast<int>((seed * 13) % 12);
        const auto graph = random_digraph(seed, n, percent);
        const auto dense = dense_of(graph);

        for (bool weak : {true, false}) {
            const auto got = connected_components(
                graph, weak ? ConnectivityMode::Weak : ConnectivityMode::Strong);
            const auto expect = testlib::closure_components(dense, weak);
            CHECK(got.assignment == expect);

            std::vector<std::int64_t> sizes(
                *std::max_element(expect.begin(), expect.end()) + 1, 0);
            for (int c : expect) ++sizes[c];
            CHECK(got.sizes == sizes);
            CHECK(got.count() == static_cast<std::int64_t>(sizes.size()));
            CHECK(got.largest() ==
                  *std::max_element(sizes.begin(), sizes.end()));
        }
    }
}

TEST_CASE("top-k selection agrees with a quadratic oracle") {
    for (std::uint64_t seed = 200; seed <= 215; ++seed) {
        const auto graph = random_digraph(seed, 20, 12);
        const auto dense = dense_of(graph);
        for (int k : {1, 3, 7, 20}) {
            const auto top = top_k_degree_subgraph(graph, k);
            const auto keep = testlib::top_k_by_degree(dense, k);
            REQUIRE(top.node_count() == static_cast<int>(keep.size()));
            for (std::size_t i = 0; i < keep.size(); ++i)
                CHECK(top.resource(static_cast<int>(i)) ==
                      graph.resource(keep[i]));
        }
    }
}

TEST_CASE("session order does not change graph metrics") {
    auto sessions = random_sessions(7, 25, 6, 10);
    const auto before = build_graph(sessions);

    std::mt19937_64 g(99);
    std::shuffle(sessions.begin(), sessions.end(), g);
    const auto after = build_graph(sessions);

    CHECK(before.node_count() == after.node_count());
    CHECK(before.edge_count() == after.edge_count());
    CHECK(before.total_weight() == after.total_weight());
    CHECK(before.self_loop_count() == after.self_loop_count());
    CHECK(density(before) == density(after));
    CHECK(reciprocity(before, ReciprocityMode::EdgeRatio) ==
          reciprocity(after, ReciprocityMode::EdgeRatio));
    CHECK(component_summary(before).wcc_count ==
          component_summary(after).wcc_count);
    CHECK(component_summary(before).scc_count ==
          component_summary(after).scc_count);

    auto sorted_degrees = [](const SessionGraph& graph) {
        auto d = degrees(graph);
        std::sort(d.in.begin(), d.in.end());
        std::sort(d.out.begin(), d.out.end());
        return d;
    };
    const auto da = sorted_degrees(before), db = sorted_degrees(after);
    CHECK(da.in == db.in);
    CHECK(da.out == db.out);
}

TEST_CASE("count formulas reproduce published connectivity figures") {
    CHECK(std::fabs(density_for_counts(93655, 118706) - 1.353e-05) <= 1e-8);
    CHECK(std::fabs(mean_degree_for_counts(93655, 118706) - 1.2675) <= 1e-4);
    CHECK(std::fabs(density_for_counts(179432, 377047) - 1.171e-05) <= 1e-8);
    CHECK(std::fabs(mean_degree_for_counts(179432, 377047) - 2.1013) <= 1e-4);
}

TEST_CASE("small graphs reject undefined metrics") {
    SessionGraph empty;
    CHECK_THROWS_AS(mean_degree(empty), DegenerateGraph);
    CHECK_THROWS_AS(density(empty), DegenerateGraph);

    SessionGraph single;
    single.intern("/only");
    CHECK(mean_degree(single) == 0.0);
    CHECK_THROWS_AS(density(single), DegenerateGraph);
    CHECK_THROWS_AS(reciprocity(single, ReciprocityMode::EdgeRatio),
                    DegenerateGraph);

    // Components of the empty graph are defined and empty.
    const auto parts = connected_components(empty, ConnectivityMode::Weak);
    CHECK(parts.count() == 0);
    CHECK(parts.largest() == 0);
}

TEST_CASE("exports serialize ids, weights, and quoting") {
    SessionGraph graph;
    const int a = graph.intern("/a");
    const int b = graph.intern("/with,comma\"quote");
    graph.add_request(a);
    graph.add_request(b);
    graph.add_transition(a, b);
    graph.add_transition(a, b);
    graph.add_transition(b, b);

    std::ostringstream edges;
    write_edge_list_csv(edges, graph);
    CHECK(edges.str() == "src_id,dst_id,weight\n0,1,2\n");

    std::ostringstream nodes;
    write_node_table_csv(nodes, graph);
    CHECK(nodes.str() ==
          "id,resource,requests,in_degree,out_degree,self_loops\n"
          "0,\"/a\",1,0,1,0\n"
          "1,\"/with,comma\"\"quote\",1,1,0,1\n");

    std::ostringstream xml;
    write_graphml(xml, graph);
    const auto text = xml.str();
    CHECK(text.find("<graph id=\"G\" edgedefault=\"directed\">") !=
          std::string::npos);
    CHECK(text.find("<node id=\"n0\">") != std::string::npos);
    CHECK(text.find("source=\"n0\" target=\"n1\"") != std::string::npos);
    CHECK(text.find("<data key=\"d2\">2</data>") != std::string::npos);
}
