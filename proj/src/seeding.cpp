#include "graphflow/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphflow/errors.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

void SeedSet::validate(const Graph& graph) const {
    if (budget <= 0 || static_cast<int>(ids.size()) != budget)
        throw ArgumentError("seed set size must equal its budget");
    int prev = -1;
    for (int id : ids) {
        if (id < 0 || id >= graph.node_count()) throw ArgumentError("seed id out of range");
        if (id <= prev) throw ArgumentError("seed ids must be sorted and unique");
        prev = id;
    }
}

SeedStrategy seed_strategy_from_name(const std::string& name) {
    if (name == "random") return SeedStrategy::random;
    if (name == "degree") return SeedStrategy::degree;
    if (name == "eigen") return SeedStrategy::eigen;
    throw ConfigError("unknown seed strategy: " + name);
}

std::string seed_strategy_name(SeedStrategy strategy) {
    switch (strategy) {
    case SeedStrategy::random: return "random";
    case SeedStrategy::degree: return "degree";
    case SeedStrategy::eigen: return "eigen";
    }
    return "?";
}

EigenCentrality eigen_centrality(const Graph& graph, double tolerance, int max_iterations) {
    if (graph.node_count() == 0) throw ArgumentError("eigen_centrality: empty graph");
    if (tolerance <= 0.0) throw ArgumentError("eigen_centrality: tolerance must be positive");

    const int n = graph.node_count();
    std::vector<double> x(n, 1.0), y(n, 0.0);
    for (int it = 1; it <= max_iterations; ++it) {
        double adjacency_norm = 0.0;
        for (int v = 0; v < n; ++v) {
            double sum = 0.0;
            for (int u : graph.in_neighbors(v)) sum += x[u];
            y[v] = sum;
            adjacency_norm = std::max(adjacency_norm, std::abs(sum));
        }
        if (adjacency_norm == 0.0) return {x, false, it}; // zero operator; keep the uniform start
        // Iterate A + I: same dominant eigenvector, but the shift breaks the
        // +/- eigenvalue symmetry of bipartite graphs that stalls plain
        // power iteration.
        double norm = 0.0;
        for (int v = 0; v < n; ++v) {
            y[v] += x[v];
            norm = std::max(norm, std::abs(y[v]));
        }
        double delta = 0.0;
        for (int v = 0; v < n; ++v) {
            y[v] /= norm;
            delta = std::max(delta, std::abs(y[v] - x[v]));
        }
        x.swap(y);
        if (delta < tolerance) return {x, true, it};
    }
    return {x, false, max_iterations};
}

std::vector<int> top_k_by_score(const std::vector<double>& scores, int count) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    order.resize(count);
    return order;
}

SeedSet select_seeds(const Graph& graph, SeedStrategy strategy, int budget,
                     std::uint64_t rng_seed) {
    const int n = graph.node_count();
    if (budget < 1 || budget > n) throw ArgumentError("seed budget out of range");

    std::vector<int> picked;
    switch (strategy) {
    case SeedStrategy::random: {
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        rng::Stream stream(rng::derive(rng_seed, {0x5eed}));
        for (int i = 0; i < budget; ++i) {
            std::size_t j = i + stream.next_below(n - i);
            std::swap(pool[i], pool[j]);
        }
        picked.assign(pool.begin(), pool.begin() + budget);
        break;
    }
    case SeedStrategy::degree: {
        std::vector<double> scores(n);
        for (int v = 0; v < n; ++v) scores[v] = graph.degree(v);
        picked = top_k_by_score(scores, budget);
        break;
    }
    case SeedStrategy::eigen: {
        picked = top_k_by_score(eigen_centrality(graph).scores, budget);
        break;
    }
    }
    std::sort(picked.begin(), picked.end());
    return SeedSet{std::move(picked), budget};
}

} // namespace graphflow
