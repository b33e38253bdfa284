#include "graphflow/ibm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphflow/errors.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

void BlockSet::validate(const Graph& graph, const SeedSet& seeds) const {
    if (static_cast<int>(removed_nodes.size()) != budget)
        throw ArgumentError("block set size must equal its budget");
    int prev = -1;
    for (int id : removed_nodes) {
        if (id < 0 || id >= graph.node_count()) throw ArgumentError("blocked id out of range");
        if (id <= prev) throw ArgumentError("blocked ids must be sorted and unique");
        if (std::binary_search(seeds.ids.begin(), seeds.ids.end(), id))
            throw ArgumentError("blocking a protected seed is disallowed");
        prev = id;
    }
}

Graph apply_block(const Graph& graph, const BlockSet& block) {
    std::vector<char> blocked(graph.node_count(), 0);
    for (int id : block.removed_nodes) {
        if (id < 0 || id >= graph.node_count()) throw ArgumentError("blocked id out of range");
        blocked[id] = 1;
    }
    std::vector<std::pair<int, int>> kept;
    kept.reserve(static_cast<std::size_t>(graph.edge_count()));
    for (const auto& [u, v] : graph.edge_list()) {
        if (!blocked[u] && !blocked[v]) kept.emplace_back(u, v);
    }
    return Graph::from_arcs(graph.node_count(), kept, graph.directed());
}

namespace {

double spread_estimate(const Graph& graph, const DiffusionConfig& config, const SeedSet& seeds,
                       int sims, std::uint64_t key, SpreadMode mode) {
    if (mode == SpreadMode::exact_oracle) return exact_expected_spread(graph, config, seeds);
    return expected_spread(graph, config, seeds, sims, key).mean;
}

} // namespace

BlockSet greedy_block(const Graph& graph, const DiffusionConfig& config, const SeedSet& seeds,
                      int budget, int sims_per_eval, std::uint64_t rng_seed, SpreadMode mode) {
    seeds.validate(graph);
    config.validate();
    if (budget < 1 || budget > graph.node_count() - static_cast<int>(seeds.ids.size()))
        throw ArgumentError("block budget out of range");
    if (mode == SpreadMode::monte_carlo && sims_per_eval < 1)
        throw ArgumentError("sims_per_eval must be >= 1");

    std::vector<int> removed;
    Graph current = graph;
    for (int round = 0; round < budget; ++round) {
        int best = -1;
        double best_spread = 0.0;
        for (int v = 0; v < graph.node_count(); ++v) {
            if (std::binary_search(seeds.ids.begin(), seeds.ids.end(), v)) continue;
            if (std::binary_search(removed.begin(), removed.end(), v)) continue;
            BlockSet candidate{{v}, 1};
            Graph blocked = apply_block(current, candidate);
            double s = spread_estimate(blocked, config, seeds, sims_per_eval,
                                       rng::derive(rng_seed, {static_cast<std::uint64_t>(round),
                                                              static_cast<std::uint64_t>(v)}),
                                       mode);
            if (best == -1 || s < best_spread) {
                best = v;
                best_spread = s;
            }
        }
        removed.insert(std::lower_bound(removed.begin(), removed.end(), best), best);
        current = apply_block(current, BlockSet{{best}, 1});
    }
    BlockSet result{std::move(removed), budget};
    result.validate(graph, seeds);
    return result;
}

BlockSet proxy_block(const Graph& graph, ProxyKind proxy, const SeedSet& seeds, int budget,
                     double beta_hat, int horizon) {
    seeds.validate(graph);
    if (budget < 1 || budget > graph.node_count() - static_cast<int>(seeds.ids.size()))
        throw ArgumentError("block budget out of range");

    std::vector<double> scores = proxy_scores(graph, proxy, beta_hat, horizon);
    // Push seeds below every candidate so the ranking never picks them.
    for (int id : seeds.ids) scores[id] = -std::numeric_limits<double>::infinity();
    std::vector<int> picked = top_k_by_score(scores, budget);
    std::sort(picked.begin(), picked.end());
    BlockSet result{std::move(picked), budget};
    result.validate(graph, seeds);
    return result;
}

BlockingEffect blocking_effect(const Graph& graph, const DiffusionConfig& config,
                               const SeedSet& seeds, const BlockSet& block, int runs,
                               std::uint64_t rng_seed) {
    if (runs < 1) throw ArgumentError("blocking_effect: runs must be >= 1");
    seeds.validate(graph);
    block.validate(graph, seeds);

    const Graph blocked_graph = apply_block(graph, block);
    double sum_base = 0.0, sq_base = 0.0, sum_blk = 0.0, sq_blk = 0.0;
    for (int run = 0; run < runs; ++run) {
        const std::uint64_t run_key = rng::derive(rng_seed, {static_cast<std::uint64_t>(run)});
        double base = 0.0, blk = 0.0;
        const Trace base_trace = simulate(graph, config, seeds, run_key);
        for (std::uint8_t st : base_trace.final_state())
            base += (st != kStateSusceptible) ? 1.0 : 0.0;
        const Trace blocked_trace = simulate(blocked_graph, config, seeds, run_key);
        for (std::uint8_t st : blocked_trace.final_state())
            blk += (st != kStateSusceptible) ? 1.0 : 0.0;
        sum_base += base;
        sq_base += base * base;
        sum_blk += blk;
        sq_blk += blk * blk;
    }
    auto finish = [runs](double sum, double sq) {
        SpreadEstimate est;
        est.runs = runs;
        est.mean = sum / runs;
        if (runs > 1) est.std = std::sqrt(std::max(0.0, (sq - sum * sum / runs) / (runs - 1)));
        return est;
    };
    BlockingEffect effect;
    effect.baseline = finish(sum_base, sq_base);
    effect.blocked = finish(sum_blk, sq_blk);
    effect.effect = effect.baseline.mean - effect.blocked.mean;
    return effect;
}

} // namespace graphflow
