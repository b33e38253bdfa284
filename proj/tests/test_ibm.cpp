#include <doctest.h>

#include "graphflow/errors.hpp"
#include "graphflow/ibm.hpp"
#include "graphflow/rng.hpp"
#include "support/test_oracles.hpp"

using namespace graphflow;
using graphflow::testing::make_graph;

namespace {

DiffusionConfig ic(double p) {
    DiffusionConfig c;
    c.kind = ModelKind::ic;
    c.p = p;
    return c;
}

DiffusionConfig si(double beta, int steps) {
    DiffusionConfig c;
    c.kind = ModelKind::si;
    c.beta = beta;
    c.max_steps = steps;
    return c;
}

// K3 {0,1,2} - bridge 3 - K3 {4,5,6}
Graph barbell() {
    return make_graph(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 6}});
}

Graph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return make_graph(leaves + 1, edges);
}

} // namespace

TEST_SUITE_BEGIN("ibm");

TEST_CASE("blocking a cut vertex strips its incident arcs only") {
    Graph path = make_graph(3, {{0, 1}, {1, 2}});
    Graph blocked = apply_block(path, BlockSet{{1}, 1});
    CHECK(blocked.node_count() == 3);
    CHECK(blocked.edge_count() == 0);

    Graph same = apply_block(path, BlockSet{{}, 0});
    CHECK(same == path);

    Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    Graph triangle = apply_block(k4, BlockSet{{3}, 1});
    CHECK(triangle.node_count() == 4);
    CHECK(triangle.edge_count() == 3);
    CHECK(triangle.degree(3) == 0);
}

TEST_CASE("block sets refuse protected seeds and bad ids") {
    Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    SeedSet seeds{{1}, 1};
    CHECK_THROWS_AS(BlockSet({{1}, 1}).validate(g, seeds), ArgumentError);
    CHECK_THROWS_AS(BlockSet({{9}, 1}).validate(g, seeds), ArgumentError);
    CHECK_THROWS_AS(apply_block(g, BlockSet{{9}, 1}), ArgumentError);
    CHECK_NOTHROW(BlockSet({{0, 2}, 2}).validate(g, seeds));
}

TEST_CASE("greedy blocking picks the articulation point of the barbell") {
    // candidate spreads from seed 0 under IC p=1:
    // remove 1 -> 6, remove 2 -> 2, remove 3 -> 3, remove 4 -> 4, remove 5/6 -> 6
    BlockSet block = greedy_block(barbell(), ic(1.0), SeedSet{{0}, 1}, 1, 1, 0,
                                  SpreadMode::exact_oracle);
    CHECK(block.removed_nodes == std::vector<int>{2});

    // Monte Carlo route agrees on this deterministic instance.
    BlockSet mc = greedy_block(barbell(), ic(1.0), SeedSet{{0}, 1}, 1, 10, 0);
    CHECK(mc.removed_nodes == std::vector<int>{2});

    // With the whole left clique protected, the bridge is the best cut.
    BlockSet bridge = greedy_block(barbell(), ic(1.0), SeedSet{{0, 1, 2}, 3}, 1, 1, 0,
                                   SpreadMode::exact_oracle);
    CHECK(bridge.removed_nodes == std::vector<int>{3});
}

TEST_CASE("nothing to block falls back to the lowest-id non-seeds") {
    // seed 3 is isolated, so every candidate removal leaves the spread at 1
    Graph g = make_graph(5, {{0, 1}});
    BlockSet block = greedy_block(g, ic(1.0), SeedSet{{3}, 1}, 2, 5, 1);
    CHECK(block.removed_nodes == std::vector<int>{0, 1});
}

TEST_CASE("greedy blocking of a star seed takes the lowest leaves") {
    BlockSet block = greedy_block(star(5), ic(1.0), SeedSet{{0}, 1}, 2, 1, 0,
                                  SpreadMode::exact_oracle);
    CHECK(block.removed_nodes == std::vector<int>{1, 2});
}

TEST_CASE("greedy blocking validates the budget") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(greedy_block(g, ic(0.5), SeedSet{{0}, 1}, 3, 5, 0), ArgumentError);
}

TEST_CASE("proxy blocking removes the hub unless it is protected") {
    BlockSet block = proxy_block(star(5), ProxyKind::degree, SeedSet{{1}, 1}, 1, 0.1, 5);
    CHECK(block.removed_nodes == std::vector<int>{0});

    // all high-degree nodes protected -> next-ranked non-seeds
    Graph g = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}});
    BlockSet next = proxy_block(g, ProxyKind::degree, SeedSet{{0, 1}, 2}, 1, 0.1, 5);
    CHECK(next.removed_nodes == std::vector<int>{2});
}

TEST_CASE("proxy blocking on the symmetric clique uses the tie rule") {
    Graph k4 = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    for (auto proxy : {ProxyKind::degree, ProxyKind::eigen, ProxyKind::pi, ProxyKind::sigma}) {
        BlockSet block = proxy_block(k4, proxy, SeedSet{{0}, 1}, 1, 0.2, 5);
        CHECK(block.removed_nodes == std::vector<int>{1});
    }
}

TEST_CASE("empty block has exactly zero effect under shared streams") {
    rng::Stream stream(31);
    Graph g = graphflow::testing::random_connected_graph(20, 40, stream);
    BlockingEffect e = blocking_effect(g, ic(0.4), SeedSet{{0}, 1}, BlockSet{{}, 0}, 60, 5);
    CHECK(e.effect == doctest::Approx(0.0));
    CHECK(e.baseline.mean == doctest::Approx(e.blocked.mean));
}

TEST_CASE("barbell bridge removal blocks four nodes") {
    BlockingEffect e =
        blocking_effect(barbell(), ic(1.0), SeedSet{{0}, 1}, BlockSet{{3}, 1}, 10, 2);
    CHECK(e.baseline.mean == doctest::Approx(7.0));
    CHECK(e.blocked.mean == doctest::Approx(3.0));
    CHECK(e.effect == doctest::Approx(4.0));
}

TEST_CASE("no diffusion means no effect") {
    BlockingEffect e =
        blocking_effect(barbell(), ic(0.0), SeedSet{{0}, 1}, BlockSet{{3}, 1}, 10, 2);
    CHECK(e.effect == doctest::Approx(0.0));
}

TEST_CASE("per-run coupling keeps the blocked spread below the baseline") {
    rng::Stream stream(17);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = graphflow::testing::random_connected_graph(18, 36, stream);
        SeedSet seeds{{0, 7}, 2};
        BlockSet block{{3, 11}, 2};
        Graph blocked_graph = apply_block(g, block);
        for (auto config : {ic(0.35), si(0.25, 12)}) {
            for (int run = 0; run < 25; ++run) {
                std::uint64_t run_key = rng::derive(900 + trial, {static_cast<std::uint64_t>(run)});
                auto base = simulate(g, config, seeds, run_key).activated_set();
                auto blocked = simulate(blocked_graph, config, seeds, run_key).activated_set();
                CHECK(blocked.size() <= base.size());
            }
        }
    }
}

TEST_CASE("greedy blocking dominates the proxies on oracle instances") {
    rng::Stream stream(23);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = graphflow::testing::random_connected_graph(8, 12, stream);
        SeedSet seeds{{0}, 1};
        for (int budget : {1, 2}) {
            auto exact_effect = [&](const BlockSet& block) {
                return exact_expected_spread(g, ic(0.5), seeds) -
                       exact_expected_spread(apply_block(g, block), ic(0.5), seeds);
            };
            BlockSet greedy =
                greedy_block(g, ic(0.5), seeds, budget, 1, 0, SpreadMode::exact_oracle);
            double greedy_effect = exact_effect(greedy);
            for (auto proxy :
                 {ProxyKind::degree, ProxyKind::eigen, ProxyKind::pi, ProxyKind::sigma}) {
                BlockSet pb = proxy_block(g, proxy, seeds, budget, 0.5, 5);
                CHECK(greedy_effect >= exact_effect(pb) - 1e-9);
            }
        }
    }
}

TEST_SUITE_END();
