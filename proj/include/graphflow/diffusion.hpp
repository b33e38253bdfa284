#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphflow/graph.hpp"
#include "graphflow/seeding.hpp"

namespace graphflow {

enum class ModelKind { ic, lt, si, sir };

ModelKind model_from_name(const std::string& name); // throws ConfigError
std::string model_name(ModelKind kind);

/// The diffusion model D. All models run in synchronous rounds; a run ends at
/// quiescence or at the step cap. Quiescence means the state is frozen: an
/// empty IC frontier, an LT round with no activation, no reachable
/// susceptible node for SI, no infected node left for SIR. SI/SIR rounds
/// whose draws all fail are not terminal; later rounds redraw.
struct DiffusionConfig {
    ModelKind kind = ModelKind::ic;
    double p = 0.1;     // IC: activation probability per arc attempt
    double beta = 0.1;  // SI/SIR: per-contact infection probability per step
    double gamma = 0.1; // SIR: per-step recovery probability
    int max_steps = 100;

    // SIR evaluates recovery after the step's infection attempts, so a node
    // spreads at least once. Flip for sensitivity studies.
    bool recover_before_infect = false;

    // Testing hook: pins per-node LT thresholds instead of sampling per run.
    std::vector<double> lt_thresholds;

    void validate() const; // throws ConfigError
    std::string label() const;
};

inline constexpr std::uint8_t kStateSusceptible = 0;
inline constexpr std::uint8_t kStateActive = 1;
inline constexpr std::uint8_t kStateRemoved = 2;

/// Per-step node states of one run. steps[0] marks exactly the seeds active;
/// frames are appended only when a round changes something.
struct Trace {
    enum class Termination { quiescent, step_cap };

    std::vector<std::vector<std::uint8_t>> steps;
    std::vector<int> seed_ids;
    Termination terminated_reason = Termination::quiescent;

    const std::vector<std::uint8_t>& final_state() const { return steps.back(); }
    /// The activated subgraph: active nodes, plus removed ones for SIR.
    std::vector<int> activated_set() const;
};

struct SpreadEstimate {
    double mean = 0.0;
    double std = 0.0;
    int runs = 0;
};

/// One synchronous-round simulation. Draws are addressed by event identity
/// (arc, step) from rng_seed, so a fixed seed couples runs across graph
/// perturbations. Deterministic given all inputs.
Trace simulate(const Graph& graph, const DiffusionConfig& config, const SeedSet& seeds,
               std::uint64_t rng_seed);

/// Mean and sample std of the activated-subgraph size over `runs` independent
/// simulations; run i uses the stream derived from (rng_seed, i).
SpreadEstimate expected_spread(const Graph& graph, const DiffusionConfig& config,
                               const SeedSet& seeds, int runs, std::uint64_t rng_seed);

/// Exact IC expectation by live-edge enumeration over all 2^|E| liveness
/// assignments. Guarded to edge_count <= 20; test oracle, not a fast path.
double exact_expected_spread(const Graph& graph, const DiffusionConfig& config,
                             const SeedSet& seeds);

} // namespace graphflow
