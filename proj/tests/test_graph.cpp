#include <doctest.h>

#include <sstream>

#include "graphflow/errors.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/rng.hpp"
#include "support/test_oracles.hpp"

using namespace graphflow;
using graphflow::testing::make_graph;

TEST_SUITE_BEGIN("graph");

TEST_CASE("edge list parsing builds the canonical form") {
    std::istringstream in("0 1\n1 2\n");
    Graph g = from_edge_list(in, false);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    auto nb = g.neighbors(1);
    REQUIRE(nb.size() == 2);
    CHECK(nb[0] == 0);
    CHECK(nb[1] == 2);
}

TEST_CASE("duplicates and self-loops are dropped and counted") {
    std::istringstream in("0 1\n0 1\n0 0\n");
    ParseStats stats;
    Graph g = from_edge_list(in, false, &stats);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(stats.dropped_lines == 2);
}

TEST_CASE("reversed duplicate arcs collapse on undirected graphs") {
    std::istringstream in("0 1\n1 0\n");
    ParseStats stats;
    Graph g = from_edge_list(in, false, &stats);
    CHECK(g.edge_count() == 1);
    CHECK(stats.dropped_lines == 1);
}

TEST_CASE("malformed tokens raise parse errors with line numbers") {
    std::istringstream bad("a b\n");
    CHECK_THROWS_AS(from_edge_list(bad, false), ParseError);
    std::istringstream bad2("0 1\n2 x\n");
    try {
        from_edge_list(bad2, false);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream negative("0 -1\n");
    CHECK_THROWS_AS(from_edge_list(negative, false), ParseError);
    std::istringstream three("0 1 2\n");
    CHECK_THROWS_AS(from_edge_list(three, false), ParseError);
}

TEST_CASE("nodes header pins trailing isolated nodes") {
    std::istringstream in("nodes 5\n0 1\n# comment\n\n");
    Graph g = from_edge_list(in, false);
    CHECK(g.node_count() == 5);
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(4) == 0);
}

TEST_CASE("directed parsing keeps arc direction") {
    std::istringstream in("0 1\n1 0\n1 2\n");
    Graph g = from_edge_list(in, true);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_arc(1, 2));
    CHECK(!g.has_arc(2, 1));
    CHECK(g.in_degree(2) == 1);
    CHECK(g.degree(2) == 0);
}

TEST_CASE("serialization round-trips to an identical graph") {
    rng::Stream stream(99);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = graphflow::testing::random_graph(12, 30, stream);
        std::ostringstream out;
        serialize(g, out);
        std::istringstream in(out.str());
        Graph back = from_edge_list(in, false);
        CHECK(g == back);
    }
}

TEST_CASE("compacting loader remaps sparse ids and persists the sidecar") {
    std::istringstream in("10 900\n900 42\n");
    auto [g, remap] = from_edge_list_compacting(in, false);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    REQUIRE(remap.original_ids.size() == 3);
    CHECK(remap.original_ids[0] == 10);
    CHECK(remap.original_ids[1] == 42);
    CHECK(remap.original_ids[2] == 900);

    std::ostringstream side;
    write_id_remap(remap, side);
    std::istringstream side_in(side.str());
    IdRemap back = read_id_remap(side_in);
    CHECK(back.original_ids == remap.original_ids);
}

TEST_CASE("er with p=0 is empty and p=1 is complete") {
    GraphGenSpec spec;
    spec.kind = GraphKind::erdos_renyi;
    spec.n = 4;
    spec.p = 0.0;
    CHECK(generate(spec, 1).edge_count() == 0);
    spec.p = 1.0;
    CHECK(generate(spec, 1).edge_count() == 6);
}

TEST_CASE("ws with p=0 is the ring lattice") {
    GraphGenSpec spec;
    spec.kind = GraphKind::watts_strogatz;
    spec.n = 10;
    spec.k = 4;
    spec.p = 0.0;
    Graph g = generate(spec, 3);
    CHECK(g.edge_count() == 20);
    for (int v = 0; v < 10; ++v) CHECK(g.degree(v) == 4);
}

TEST_CASE("ws rewiring preserves the edge count") {
    GraphGenSpec spec;
    spec.kind = GraphKind::watts_strogatz;
    spec.n = 40;
    spec.k = 6;
    spec.p = 0.5;
    Graph g = generate(spec, 11);
    CHECK(g.edge_count() == 40 * 3);
}

TEST_CASE("ba seeds a clique and attaches m edges per node") {
    GraphGenSpec spec;
    spec.kind = GraphKind::barabasi_albert;
    spec.n = 6;
    spec.m = 2;
    Graph g = generate(spec, 5);
    // clique on 3 nodes (3 edges) + 3 nodes x 2 attachments
    CHECK(g.edge_count() == 9);
    for (int v = 3; v < 6; ++v) CHECK(g.degree(v) >= 2);
}

TEST_CASE("generators are pure functions of spec and seed") {
    GraphGenSpec spec;
    spec.kind = GraphKind::watts_strogatz;
    spec.n = 30;
    spec.k = 4;
    spec.p = 0.3;
    std::ostringstream a, b, c;
    serialize(generate(spec, 7), a);
    serialize(generate(spec, 7), b);
    serialize(generate(spec, 8), c);
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
}

TEST_CASE("generator parameter violations are configuration errors") {
    GraphGenSpec spec;
    spec.kind = GraphKind::watts_strogatz;
    spec.n = 10;
    spec.k = 3; // odd
    spec.p = 0.1;
    CHECK_THROWS_AS(generate(spec, 1), ConfigError);
    spec.k = 12; // >= n
    CHECK_THROWS_AS(generate(spec, 1), ConfigError);
    spec.kind = GraphKind::barabasi_albert;
    spec.m = 10; // >= n
    CHECK_THROWS_AS(generate(spec, 1), ConfigError);
    spec.kind = GraphKind::erdos_renyi;
    spec.p = 1.5;
    CHECK_THROWS_AS(generate(spec, 1), ConfigError);
}

TEST_CASE("er edge counts concentrate around the expectation") {
    GraphGenSpec spec;
    spec.kind = GraphKind::erdos_renyi;
    spec.n = 100;
    spec.p = 0.1;
    double total = 0.0;
    for (int draw = 0; draw < 200; ++draw) total += generate(spec, 1000 + draw).edge_count();
    double mean = total / 200.0;
    CHECK(mean > 495.0 * 0.95);
    CHECK(mean < 495.0 * 1.05);
}

TEST_CASE("bfs distances on a path") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    auto dist = bfs_distances(g, 0);
    CHECK(dist == std::vector<int>{0, 1, 2});
}

TEST_CASE("bfs marks unreachable nodes") {
    Graph g = make_graph(4, {{0, 1}, {2, 3}});
    auto dist = bfs_distances(g, 0);
    CHECK(dist[1] == 1);
    CHECK(dist[2] == kUnreached);
    CHECK(dist[3] == kUnreached);
}

TEST_CASE("bfs on a star from a leaf") {
    Graph g = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto dist = bfs_distances(g, 3);
    CHECK(dist[3] == 0);
    CHECK(dist[0] == 1);
    CHECK(dist[1] == 2);
    CHECK(dist[2] == 2);
    CHECK(dist[4] == 2);
}

TEST_CASE("bfs rejects out-of-range sources") {
    Graph g = make_graph(2, {{0, 1}});
    CHECK_THROWS_AS(bfs_distances(g, 2), ArgumentError);
    CHECK_THROWS_AS(bfs_distances(g, -1), ArgumentError);
}

TEST_CASE("bfs agrees with floyd-warshall on random graphs") {
    rng::Stream stream(1234);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = graphflow::testing::random_graph(15, 35, stream);
        auto all_pairs = graphflow::testing::floyd_warshall(g);
        for (int s = 0; s < g.node_count(); ++s) {
            auto dist = bfs_distances(g, s);
            for (int v = 0; v < g.node_count(); ++v) {
                int expected = all_pairs[s][v] < 0 ? kUnreached : all_pairs[s][v];
                CHECK(dist[v] == expected);
            }
        }
    }
}

TEST_CASE("canonical invariants hold on generated graphs") {
    GraphGenSpec spec;
    spec.kind = GraphKind::barabasi_albert;
    spec.n = 40;
    spec.m = 3;
    Graph g = generate(spec, 21);
    long long arcs = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        auto nb = g.neighbors(v);
        arcs += static_cast<long long>(nb.size());
        for (std::size_t i = 0; i < nb.size(); ++i) {
            CHECK(nb[i] != v);
            if (i > 0) CHECK(nb[i] > nb[i - 1]);
            CHECK(g.has_arc(nb[i], v)); // undirected symmetry
        }
    }
    CHECK(arcs == 2 * g.edge_count());
}

TEST_SUITE_END();
