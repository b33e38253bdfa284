#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphflow/diffusion.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/seeding.hpp"

namespace graphflow {

/// How greedy-style solvers score a candidate set: Monte Carlo estimation
/// (the production path) or the exact live-edge oracle (small IC instances,
/// used by tests and the lazy-evaluation equivalence guarantee).
enum class SpreadMode { monte_carlo, exact_oracle };

struct ImResult {
    SeedSet seeds;
    std::vector<double> marginal_gains; // estimated gain at each pick, in pick order
    double wall_time_seconds = 0.0;
    std::size_t spread_evaluations = 0; // marginal-gain computations performed
};

/// Simulation-based greedy: adds the node with the largest estimated marginal
/// gain each round. Gains are paired per run (same derived stream for S and
/// S+v), so they are non-negative under the coupled estimator. Ties go to the
/// lower id; every candidate evaluation draws a fresh derived stream.
ImResult greedy_im(const Graph& graph, const DiffusionConfig& config, int budget,
                   int sims_per_eval, std::uint64_t rng_seed,
                   SpreadMode mode = SpreadMode::monte_carlo);

/// Lazy greedy over a stale-gain priority queue (CELF); with `lookahead` each
/// entry also caches its gain conditioned on the round's best candidate
/// (CELF++). Under the exact oracle this returns greedy_im's seed set.
ImResult celf_im(const Graph& graph, const DiffusionConfig& config, int budget,
                 int sims_per_eval, std::uint64_t rng_seed, bool lookahead = false,
                 SpreadMode mode = SpreadMode::monte_carlo);

/// Sketch-based solver: samples `num_rr_sets` reverse-reachable sets (each
/// rooted at a uniform node, grown by reverse live-edge BFS), then runs greedy
/// max coverage over them. IC uses arc probability p; SI is folded to a
/// single-attempt arc probability 1-(1-beta)^max_steps. LT/SIR are not
/// supported. marginal_gains report covered-fraction x node_count.
ImResult ris_im(const Graph& graph, const DiffusionConfig& config, int budget, int num_rr_sets,
                std::uint64_t rng_seed);

enum class ProxyKind { degree, eigen, pi, sigma };

ProxyKind proxy_from_name(const std::string& name); // throws ConfigError
std::string proxy_name(ProxyKind kind);

/// Closed-form influence proxies. sigma(v) is the truncated power-series
/// spread sum_{t=1..horizon} (beta_hat A)^t applied to the all-ones vector;
/// pi(v) adds the beta_hat-weighted sigma mass of v's neighborhood.
std::vector<double> proxy_scores(const Graph& graph, ProxyKind proxy, double beta_hat,
                                 int horizon);

/// Top-budget nodes by proxy score, lower-id ties; gains are the scores.
ImResult proxy_im(const Graph& graph, ProxyKind proxy, int budget, double beta_hat, int horizon);

inline constexpr int kDefaultSimsPerEval = 100;
inline constexpr int kDefaultRrSets = 10000;
inline constexpr int kDefaultProxyHorizon = 5;

} // namespace graphflow
