#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphflow/graph.hpp"

namespace graphflow {

/// The source node set with its budget. ids are sorted, unique, in range,
/// and |ids| == budget.
struct SeedSet {
    std::vector<int> ids;
    int budget = 0;

    void validate(const Graph& graph) const; // throws ArgumentError
};

enum class SeedStrategy { random, degree, eigen };

SeedStrategy seed_strategy_from_name(const std::string& name); // throws ConfigError
std::string seed_strategy_name(SeedStrategy strategy);

struct EigenCentrality {
    std::vector<double> scores;
    bool converged = false;
    int iterations = 0;
};

/// Dominant-eigenvector scores of the adjacency operator. Power iteration
/// from the all-ones vector, renormalized to unit max-norm each round; stops
/// when the successive-iterate max-norm difference drops below `tolerance`.
/// The iterate applies the shifted operator A + I, which shares A's dominant
/// eigenvector but keeps the iteration from oscillating between the +/-
/// eigenvalue pair of bipartite graphs. Edgeless graphs come back uniform
/// with converged=false. On disconnected graphs the iteration settles on the
/// dominant component's eigenvector.
EigenCentrality eigen_centrality(const Graph& graph, double tolerance = 1e-10,
                                 int max_iterations = 1000);

/// random: k distinct uniform nodes. degree / eigen: top-k by score.
/// Every ranking in the engine breaks ties by lower node id.
SeedSet select_seeds(const Graph& graph, SeedStrategy strategy, int budget,
                     std::uint64_t rng_seed);

/// Shared ranking helper: indices of the `count` largest scores, lower id
/// winning ties. Used by seed selection, proxies and source localization.
std::vector<int> top_k_by_score(const std::vector<double>& scores, int count);

} // namespace graphflow
