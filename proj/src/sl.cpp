#include "graphflow/sl.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "graphflow/errors.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

void Observation::validate(const Graph& graph) const {
    if (infected.empty()) throw ArgumentError("observation must contain at least one node");
    int prev = -1;
    for (int id : infected) {
        if (id < 0 || id >= graph.node_count())
            throw ArgumentError("observation id out of range");
        if (id <= prev) throw ArgumentError("observation ids must be sorted and unique");
        prev = id;
    }
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

// Adjacency of the subgraph induced by the infected set, in local indices.
struct InducedSubgraph {
    std::vector<int> nodes;                 // local -> global, sorted
    std::vector<std::vector<int>> adjacency; // local indices

    int size() const { return static_cast<int>(nodes.size()); }
};

InducedSubgraph induce(const Graph& graph, const std::vector<int>& infected) {
    InducedSubgraph sub;
    sub.nodes = infected;
    sub.adjacency.resize(infected.size());
    for (int i = 0; i < sub.size(); ++i) {
        for (int v : graph.neighbors(infected[i])) {
            auto it = std::lower_bound(infected.begin(), infected.end(), v);
            if (it != infected.end() && *it == v)
                sub.adjacency[i].push_back(static_cast<int>(it - infected.begin()));
        }
    }
    return sub;
}

std::vector<int> induced_bfs(const InducedSubgraph& sub, int source) {
    std::vector<int> dist(sub.size(), kInf);
    dist[source] = 0;
    std::queue<int> queue;
    queue.push(source);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (int v : sub.adjacency[u]) {
            if (dist[v] == kInf) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

} // namespace

SlResult jordan_center(const Graph& graph, const Observation& obs, int num_sources) {
    obs.validate(graph);
    if (num_sources < 1) throw ArgumentError("num_sources must be >= 1");
    if (num_sources > static_cast<int>(obs.infected.size()))
        throw ArgumentError("num_sources exceeds the observation size");

    const InducedSubgraph sub = induce(graph, obs.infected);
    const int m = sub.size();

    // All pairwise induced-subgraph distances (m is snapshot-sized, not n).
    std::vector<std::vector<int>> dist(m);
    for (int i = 0; i < m; ++i) dist[i] = induced_bfs(sub, i);

    // Farthest-point anchors; distance to a set is the min over its members,
    // with unreachable treated as larger than any finite distance.
    std::vector<int> anchors{0};
    while (static_cast<int>(anchors.size()) < num_sources) {
        int best = -1;
        long long best_dist = -1;
        for (int i = 0; i < m; ++i) {
            if (std::find(anchors.begin(), anchors.end(), i) != anchors.end()) continue;
            long long d = std::numeric_limits<long long>::max();
            for (int a : anchors) d = std::min<long long>(d, dist[a][i]);
            if (d > best_dist) {
                best_dist = d;
                best = i;
            }
        }
        anchors.push_back(best);
    }

    // Nearest-anchor cells; ties go to the anchor with the lower node id
    // (anchors are scanned in discovery order, which starts at the lowest id,
    // so compare against the strict minimum).
    std::vector<int> cell_of(m, -1);
    for (int i = 0; i < m; ++i) {
        long long best_d = std::numeric_limits<long long>::max();
        int best_cell = 0;
        for (int c = 0; c < static_cast<int>(anchors.size()); ++c) {
            long long d = dist[anchors[c]][i];
            int anchor_id = sub.nodes[anchors[c]];
            long long cur_best_id = sub.nodes[anchors[best_cell]];
            if (d < best_d || (d == best_d && anchor_id < cur_best_id)) {
                best_d = d;
                best_cell = c;
            }
        }
        cell_of[i] = best_cell;
    }

    SlResult result;
    result.scores.assign(m, std::numeric_limits<double>::infinity());
    for (int c = 0; c < static_cast<int>(anchors.size()); ++c) {
        int center = -1;
        long long center_ecc = -1;
        for (int i = 0; i < m; ++i) {
            if (cell_of[i] != c) continue;
            long long ecc = 0;
            bool reaches_all = true;
            for (int j = 0; j < m; ++j) {
                if (cell_of[j] != c) continue;
                if (dist[i][j] == kInf) {
                    reaches_all = false;
                    break;
                }
                ecc = std::max<long long>(ecc, dist[i][j]);
            }
            if (!reaches_all) continue;
            result.scores[i] = static_cast<double>(ecc);
            if (center == -1 || ecc < center_ecc) {
                center = i;
                center_ecc = ecc;
            }
        }
        if (center == -1)
            throw DegenerateError("jordan_center: a cell has no node reaching all its members");
        result.predicted.push_back(sub.nodes[center]);
    }
    std::sort(result.predicted.begin(), result.predicted.end());
    return result;
}

namespace {

std::vector<int> degree_within(const InducedSubgraph& sub) {
    std::vector<int> deg(sub.size());
    for (int i = 0; i < sub.size(); ++i) deg[i] = static_cast<int>(sub.adjacency[i].size());
    return deg;
}

struct LaplacianRanking {
    std::vector<double> scores; // |smallest-eigenvector| per local node
    bool degenerate = false;
};

LaplacianRanking rank_by_laplacian(const Graph& graph, const InducedSubgraph& sub) {
    const int m = sub.size();
    LaplacianRanking out;
    if (m == 1) {
        out.scores = {1.0};
        return out;
    }

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        lap(i, i) = graph.degree(sub.nodes[i]); // full-graph degree
        for (int j : sub.adjacency[i]) lap(i, j) = -1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    const auto& values = solver.eigenvalues();
    Eigen::VectorXd vec = solver.eigenvectors().col(0);

    const double scale = std::max(1.0, std::abs(values(m - 1)));
    if (values(1) - values(0) < 1e-9 * scale) out.degenerate = true;
    double lo = vec.cwiseAbs().minCoeff(), hi = vec.cwiseAbs().maxCoeff();
    if (hi - lo < 1e-9) out.degenerate = true; // constant eigenvector carries no ranking

    out.scores.resize(m);
    for (int i = 0; i < m; ++i) out.scores[i] = std::abs(vec(i));
    return out;
}

} // namespace

SlResult netsleuth(const Graph& graph, const Observation& obs, int num_sources) {
    obs.validate(graph);
    if (num_sources < 1) throw ArgumentError("num_sources must be >= 1");
    if (num_sources > static_cast<int>(obs.infected.size()))
        throw ArgumentError("num_sources exceeds the observation size");

    SlResult result;
    std::vector<int> remaining = obs.infected;
    for (int s = 0; s < num_sources; ++s) {
        const InducedSubgraph sub = induce(graph, remaining);
        LaplacianRanking ranking = rank_by_laplacian(graph, sub);
        std::vector<double> scores = ranking.scores;
        if (ranking.degenerate) {
            result.degenerate = true;
            std::vector<int> deg = degree_within(sub);
            scores.assign(deg.begin(), deg.end());
        }
        int top_local = top_k_by_score(scores, 1)[0];
        int top = sub.nodes[top_local];
        if (s == 0) result.scores = scores; // first decomposition's ranking
        result.predicted.push_back(top);
        remaining.erase(std::lower_bound(remaining.begin(), remaining.end(), top));
    }
    std::sort(result.predicted.begin(), result.predicted.end());
    return result;
}

double source_distance(const Graph& graph, std::span<const int> predicted,
                       std::span<const int> truth) {
    if (predicted.size() != truth.size())
        throw ArgumentError("source_distance: sets must have equal size");
    if (predicted.size() > 6)
        throw CapacityError("source_distance: exact matching limited to 6 sources");
    if (predicted.empty()) return 0.0;

    const int penalty = graph.node_count();
    std::vector<std::vector<double>> cost(predicted.size(),
                                          std::vector<double>(truth.size(), 0.0));
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        std::vector<int> dist = bfs_distances(graph, predicted[i]);
        for (std::size_t j = 0; j < truth.size(); ++j) {
            int d = dist[truth[j]];
            cost[i][j] = (d == kUnreached) ? penalty : d;
        }
    }
    std::vector<int> perm(truth.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) total += cost[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::pair<SeedSet, Observation> plant_cascade(const Graph& graph, const DiffusionConfig& config,
                                              int num_sources, std::uint64_t rng_seed) {
    if (num_sources < 1 || num_sources > graph.node_count())
        throw ArgumentError("num_sources out of range");
    SeedSet truth = select_seeds(graph, SeedStrategy::random, num_sources,
                                 rng::derive(rng_seed, {0xcafe}));
    Trace trace = simulate(graph, config, truth, rng::derive(rng_seed, {0xbeef}));
    Observation obs;
    obs.infected = trace.activated_set();
    obs.snapshot_step = static_cast<int>(trace.steps.size()) - 1;
    return {std::move(truth), std::move(obs)};
}

} // namespace graphflow
