#include <doctest.h>

#include <cmath>

#include "graphflow/errors.hpp"
#include "graphflow/rng.hpp"
#include "graphflow/sl.hpp"
#include "support/test_oracles.hpp"

using namespace graphflow;
using graphflow::testing::make_graph;

namespace {

Graph path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
    return make_graph(n, edges);
}

DiffusionConfig si(double beta, int steps) {
    DiffusionConfig c;
    c.kind = ModelKind::si;
    c.beta = beta;
    c.max_steps = steps;
    return c;
}

} // namespace

TEST_SUITE_BEGIN("sl");

TEST_CASE("jordan center of a fully infected path is its midpoint") {
    Graph g = path(5);
    SlResult r = jordan_center(g, Observation{{0, 1, 2, 3, 4}, -1}, 1);
    CHECK(r.predicted == std::vector<int>{2});
    // eccentricities 4,3,2,3,4
    CHECK(r.scores == std::vector<double>{4, 3, 2, 3, 4});
}

TEST_CASE("a single infected node is its own center") {
    Graph g = path(4);
    SlResult r = jordan_center(g, Observation{{2}, -1}, 1);
    CHECK(r.predicted == std::vector<int>{2});
    CHECK(r.scores == std::vector<double>{0});
}

TEST_CASE("two disjoint infected paths get one center each") {
    Graph g = make_graph(8, {{0, 1}, {1, 2}, {5, 6}, {6, 7}});
    SlResult r = jordan_center(g, Observation{{0, 1, 2, 5, 6, 7}, -1}, 2);
    CHECK(r.predicted == std::vector<int>{1, 6});
}

TEST_CASE("jordan rejects infected sets it cannot partition") {
    Graph g = make_graph(4, {{0, 1}, {2, 3}});
    // one requested source but two infected components
    CHECK_THROWS_AS(jordan_center(g, Observation{{0, 1, 2, 3}, -1}, 1), DegenerateError);
    CHECK_THROWS_AS(jordan_center(g, Observation{{0, 1}, -1}, 0), ArgumentError);
    CHECK_THROWS_AS(jordan_center(g, Observation{{0, 1}, -1}, 3), ArgumentError);
    CHECK_THROWS_AS(jordan_center(g, Observation{{}, -1}, 1), ArgumentError);
}

TEST_CASE("jordan matches the brute-force eccentricity minimizer") {
    rng::Stream stream(404);
    int checked = 0;
    while (checked < 40) {
        Graph g = graphflow::testing::random_connected_graph(20, 40, stream);
        std::vector<int> infected =
            graphflow::testing::random_connected_infected(g, 4 + stream.next_below(11), stream);
        if (infected.size() < 2) continue;
        int expected = graphflow::testing::brute_force_center(g, infected);
        REQUIRE(expected >= 0);
        SlResult r = jordan_center(g, Observation{infected, -1}, 1);
        CHECK(r.predicted == std::vector<int>{expected});
        ++checked;
    }
}

TEST_CASE("netsleuth ranks the middle of a partially infected path first") {
    Graph g = path(5);
    SlResult r = netsleuth(g, Observation{{1, 2, 3}, -1}, 1);
    CHECK(r.predicted == std::vector<int>{2});
    CHECK(!r.degenerate);
    // eigenvector of the smallest eigenvalue of [[2,-1,0],[-1,2,-1],[0,-1,2]]
    // is proportional to (1, sqrt(2), 1)
    CHECK(r.scores[1] / r.scores[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(r.scores[2] / r.scores[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("netsleuth on a single infected node returns it") {
    Graph g = path(4);
    SlResult r = netsleuth(g, Observation{{3}, -1}, 1);
    CHECK(r.predicted == std::vector<int>{3});
}

TEST_CASE("a fully infected clique degenerates to the degree fallback") {
    Graph k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    SlResult r = netsleuth(k3, Observation{{0, 1, 2}, -1}, 1);
    CHECK(r.degenerate);
    CHECK(r.predicted == std::vector<int>{0});
}

TEST_CASE("netsleuth multi-source deflation removes picked nodes") {
    Graph g = make_graph(8, {{0, 1}, {1, 2}, {5, 6}, {6, 7}});
    SlResult r = netsleuth(g, Observation{{0, 1, 2, 5, 6, 7}, -1}, 2);
    REQUIRE(r.predicted.size() == 2);
    CHECK(r.predicted[0] != r.predicted[1]);
    // one pick per component
    bool left = r.predicted[0] <= 2;
    bool right = r.predicted[1] >= 5;
    CHECK(left);
    CHECK(right);
}

TEST_CASE("netsleuth prediction maps through an order-preserving relabeling") {
    Graph g = path(6);
    Observation obs{{1, 2, 3, 4}, -1};
    SlResult base = netsleuth(g, obs, 1);

    std::vector<int> pi{0, 1, 2, 4, 5, 3}; // infected {1,2,3,4} -> {1,2,4,5}, order kept
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edge_list()) edges.emplace_back(pi[u], pi[v]);
    Graph h = make_graph(6, edges);
    std::vector<int> mapped;
    for (int v : obs.infected) mapped.push_back(pi[v]);
    std::sort(mapped.begin(), mapped.end());
    SlResult relabeled = netsleuth(h, Observation{mapped, -1}, 1);
    CHECK(relabeled.predicted == std::vector<int>{pi[base.predicted[0]]});
}

TEST_CASE("source distance enumerates the optimal matching") {
    Graph g = path(5);
    CHECK(source_distance(g, std::vector<int>{1, 3}, std::vector<int>{1, 3}) == 0.0);
    // min( d(1,0)+d(3,4), d(1,4)+d(3,0) ) = min(1+1, 3+3) = 2
    CHECK(source_distance(g, std::vector<int>{1, 3}, std::vector<int>{0, 4}) == 2.0);
}

TEST_CASE("unreachable pairs pay the node-count penalty") {
    Graph g = make_graph(4, {{0, 1}});
    CHECK(source_distance(g, std::vector<int>{0}, std::vector<int>{3}) == 4.0);
}

TEST_CASE("source distance is symmetric and zero only at equality") {
    rng::Stream stream(88);
    Graph g = graphflow::testing::random_connected_graph(12, 24, stream);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> a, b;
        while (a.size() < 3) {
            int v = static_cast<int>(stream.next_below(12));
            if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
        }
        while (b.size() < 3) {
            int v = static_cast<int>(stream.next_below(12));
            if (std::find(b.begin(), b.end(), v) == b.end()) b.push_back(v);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        double ab = source_distance(g, a, b);
        CHECK(ab == source_distance(g, b, a));
        CHECK((ab == 0.0) == (a == b));
    }
}

TEST_CASE("source distance guards sizes") {
    Graph g = path(3);
    CHECK_THROWS_AS(source_distance(g, std::vector<int>{0}, std::vector<int>{0, 1}),
                    ArgumentError);
    std::vector<int> seven{0, 1, 2, 0, 1, 2, 0};
    CHECK_THROWS_AS(source_distance(g, seven, seven), CapacityError);
}

TEST_CASE("planted cascades report their sources and snapshot") {
    Graph g = path(6);
    auto [truth, obs] = plant_cascade(g, si(0.0, 5), 2, 9);
    CHECK(truth.ids == obs.infected); // beta=0 spreads nowhere
    CHECK(obs.snapshot_step == 0);

    Graph two = path(2);
    auto [both, obs2] = plant_cascade(two, si(0.5, 3), 2, 1);
    CHECK(both.ids == std::vector<int>{0, 1});
    CHECK(obs2.infected == std::vector<int>{0, 1});
}

TEST_CASE("certain infection reaches exactly the snapshot ball") {
    Graph g = path(8);
    DiffusionConfig c = si(1.0, 2);
    auto [truth, obs] = plant_cascade(g, c, 1, 21);
    REQUIRE(truth.ids.size() == 1);
    auto dist = bfs_distances(g, truth.ids[0]);
    std::vector<int> ball;
    for (int v = 0; v < g.node_count(); ++v)
        if (dist[v] != kUnreached && dist[v] <= 2) ball.push_back(v);
    CHECK(obs.infected == ball);
}

TEST_SUITE_END();
