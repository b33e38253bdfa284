#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphflow {

inline constexpr int kUnreached = -1; // bfs_distances sentinel for unreachable nodes

/// Immutable adjacency structure (CSR). Neighbor lists are sorted ascending,
/// self-loops and duplicate arcs are removed at construction, and undirected
/// graphs keep both arc directions with edge_count counting unordered pairs.
/// Safe to share read-only across threads.
class Graph {
public:
    Graph() = default;

    /// Builds the canonical form from an arc list. For undirected graphs each
    /// input pair stands for both directions. Out-of-range endpoints throw.
    static Graph from_arcs(int node_count, const std::vector<std::pair<int, int>>& arcs,
                           bool directed);

    int node_count() const { return node_count_; }
    long long edge_count() const { return edge_count_; }
    bool directed() const { return directed_; }

    std::span<const int> neighbors(int v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    /// Arcs pointing into v. Same as neighbors() for undirected graphs.
    std::span<const int> in_neighbors(int v) const {
        if (!directed_) return neighbors(v);
        return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
    }

    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    int in_degree(int v) const {
        return directed_ ? in_offsets_[v + 1] - in_offsets_[v] : degree(v);
    }

    bool has_arc(int u, int v) const;

    /// Unordered pairs (u < v) for undirected graphs, all arcs otherwise.
    std::vector<std::pair<int, int>> edge_list() const;

    bool operator==(const Graph& other) const = default;

private:
    int node_count_ = 0;
    long long edge_count_ = 0;
    bool directed_ = false;
    std::vector<int> offsets_{0};
    std::vector<int> targets_;
    std::vector<int> in_offsets_; // directed graphs only
    std::vector<int> in_targets_;
};

struct ParseStats {
    int dropped_lines = 0; // duplicate arcs and self-loops
};

/// Parses `u v` lines (whitespace separated, `#` comments allowed). An
/// optional `nodes N` header pins the node count for trailing isolated nodes;
/// otherwise node_count = 1 + max id seen. Duplicates and self-loops are
/// dropped and counted in `stats`.
Graph from_edge_list(std::istream& text, bool directed, ParseStats* stats = nullptr);
Graph load_edge_list(const std::string& path, bool directed, ParseStats* stats = nullptr);

/// Canonical text form: `nodes N` header, then sorted `u v` lines with u < v
/// for undirected graphs. Parses back to an identical graph.
void serialize(const Graph& graph, std::ostream& out);
void save_edge_list(const Graph& graph, const std::string& path);

/// Dense-id mapping for ingesting edge lists with sparse external ids:
/// dense id i maps back to original_ids[i]. Persisted as a sidecar file of
/// `dense original` lines next to the compacted graph.
struct IdRemap {
    std::vector<long long> original_ids;
};

/// Like from_edge_list but compacts arbitrary non-negative ids to dense
/// 0-based ids in ascending original order.
std::pair<Graph, IdRemap> from_edge_list_compacting(std::istream& text, bool directed,
                                                    ParseStats* stats = nullptr);
void write_id_remap(const IdRemap& remap, std::ostream& out);
IdRemap read_id_remap(std::istream& in);

/// Arc-reversed copy (used by reverse-reachability sampling).
Graph transpose(const Graph& graph);

enum class GraphKind { erdos_renyi, barabasi_albert, watts_strogatz };

struct GraphGenSpec {
    GraphKind kind = GraphKind::erdos_renyi;
    int n = 0;
    double p = 0.0; // ER edge probability / WS rewiring probability
    int k = 0;      // WS ring degree (even, < n)
    int m = 0;      // BA attachment count (>= 1, < n)

    void validate() const; // throws ConfigError
    std::string label() const;
};

/// Deterministic generators: identical (spec, rng_seed) give byte-identical
/// canonical graphs. ER draws each unordered pair independently; BA starts
/// from a clique on m+1 nodes and attaches new nodes to m distinct targets
/// picked proportional to degree; WS builds the ring lattice and rewires each
/// lattice edge with probability p to a uniform non-duplicate endpoint.
Graph generate(const GraphGenSpec& spec, std::uint64_t rng_seed);

/// Exact hop counts from `source`; kUnreached marks unreachable nodes.
std::vector<int> bfs_distances(const Graph& graph, int source);

} // namespace graphflow
