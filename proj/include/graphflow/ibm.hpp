#pragma once

#include <cstdint>
#include <vector>

#include "graphflow/diffusion.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/im.hpp"
#include "graphflow/seeding.hpp"

namespace graphflow {

/// The set of nodes to isolate. Blocking a protected seed is disallowed.
struct BlockSet {
    std::vector<int> removed_nodes; // sorted
    int budget = 0;

    void validate(const Graph& graph, const SeedSet& seeds) const; // throws ArgumentError
};

/// New graph with the blocked nodes isolated: every incident arc removed,
/// node ids and node_count preserved so traces stay index-aligned.
Graph apply_block(const Graph& graph, const BlockSet& block);

/// Simulation-based blocker: removes, one at a time, the non-seed node whose
/// removal minimizes the estimated spread on the progressively blocked graph.
/// Lower-id ties; deterministic.
BlockSet greedy_block(const Graph& graph, const DiffusionConfig& config, const SeedSet& seeds,
                      int budget, int sims_per_eval, std::uint64_t rng_seed,
                      SpreadMode mode = SpreadMode::monte_carlo);

/// Top-budget non-seed nodes by proxy score on the original graph.
BlockSet proxy_block(const Graph& graph, ProxyKind proxy, const SeedSet& seeds, int budget,
                     double beta_hat, int horizon);

/// Paired before/after spread estimate. Both arms share the per-run derived
/// streams (common random numbers), so the baseline never falls below the
/// blocked arm within a run for IC/SI and the empty block has effect exactly 0.
struct BlockingEffect {
    SpreadEstimate baseline;
    SpreadEstimate blocked;
    double effect = 0.0; // baseline.mean - blocked.mean; negative for poor blockers
};

BlockingEffect blocking_effect(const Graph& graph, const DiffusionConfig& config,
                               const SeedSet& seeds, const BlockSet& block, int runs,
                               std::uint64_t rng_seed);

} // namespace graphflow
