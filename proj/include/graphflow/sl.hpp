#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graphflow/diffusion.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/seeding.hpp"

namespace graphflow {

/// The observed activated subgraph at snapshot time.
struct Observation {
    std::vector<int> infected;  // sorted node ids, non-empty
    int snapshot_step = -1;     // -1 = unknown

    void validate(const Graph& graph) const; // throws ArgumentError
};

struct SlResult {
    std::vector<int> predicted;  // sorted, |predicted| == requested source count
    std::vector<double> scores;  // method-specific, aligned with the sorted infected list
    bool degenerate = false;     // netsleuth fell back to degree ranking
};

/// Jordan-center localization over the subgraph induced by the infected set.
/// One source: the infected node of minimum eccentricity (max hop distance to
/// every infected node), lower-id ties. Multiple sources: farthest-point
/// anchor seeding (first anchor = lowest infected id), nearest-anchor cells,
/// then each cell's center. Candidates that cannot reach part of their cell
/// are excluded; if a cell has no valid candidate the instance is degenerate.
/// scores hold each node's eccentricity within its cell.
SlResult jordan_center(const Graph& graph, const Observation& obs, int num_sources);

/// Ranking-based localization: take the principal submatrix of the graph
/// Laplacian restricted to the infected set, rank infected nodes by the
/// absolute components of the smallest-eigenvalue eigenvector, and pick the
/// top. Further sources delete the picked node from the infected set and
/// recompute. A repeated smallest eigenvalue or an uninformative (constant)
/// eigenvector falls back to ranking by degree inside the infected set, with
/// `degenerate` set.
SlResult netsleuth(const Graph& graph, const Observation& obs, int num_sources);

/// Exact matching distance between prediction and truth: minimum over all
/// bijections of the summed full-graph hop distances. Unreachable pairs
/// contribute node_count. Guarded to sets of at most 6 nodes.
double source_distance(const Graph& graph, std::span<const int> predicted,
                       std::span<const int> truth);

/// Benchmark instance generator: uniform random sources, one simulation, and
/// the resulting activated subgraph as the observation.
std::pair<SeedSet, Observation> plant_cascade(const Graph& graph, const DiffusionConfig& config,
                                              int num_sources, std::uint64_t rng_seed);

} // namespace graphflow
