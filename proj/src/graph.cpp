#include "graphflow/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include "graphflow/errors.hpp"

namespace graphflow {

namespace {

std::vector<int> build_csr(int node_count, std::vector<std::pair<int, int>>& arcs,
                           std::vector<int>& targets) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    std::vector<int> offsets(node_count + 1, 0);
    for (const auto& [u, v] : arcs) offsets[u + 1]++;
    for (int i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
    targets.clear();
    targets.reserve(arcs.size());
    for (const auto& [u, v] : arcs) targets.push_back(v);
    return offsets;
}

} // namespace

Graph Graph::from_arcs(int node_count, const std::vector<std::pair<int, int>>& arcs,
                       bool directed) {
    if (node_count < 0) throw ArgumentError("node_count must be non-negative");
    Graph g;
    g.node_count_ = node_count;
    g.directed_ = directed;

    std::vector<std::pair<int, int>> out;
    out.reserve(arcs.size() * (directed ? 1 : 2));
    for (const auto& [u, v] : arcs) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw ArgumentError("arc endpoint out of range");
        if (u == v) continue;
        out.emplace_back(u, v);
        if (!directed) out.emplace_back(v, u);
    }
    g.offsets_ = build_csr(node_count, out, g.targets_);
    g.edge_count_ = directed ? static_cast<long long>(out.size())
                             : static_cast<long long>(out.size()) / 2;
    if (directed) {
        std::vector<std::pair<int, int>> in;
        in.reserve(out.size());
        for (const auto& [u, v] : out) in.emplace_back(v, u);
        g.in_offsets_ = build_csr(node_count, in, g.in_targets_);
    }
    return g;
}

bool Graph::has_arc(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < node_count_; ++u) {
        for (int v : neighbors(u)) {
            if (directed_ || u < v) edges.emplace_back(u, v);
        }
    }
    return edges;
}

namespace {

struct EdgeLine {
    bool is_header = false;
    int header_nodes = 0;
    long long u = 0;
    long long v = 0;
};

// One edge-list line: either `nodes N` or `u v`. Throws ParseError on
// malformed tokens or negative ids.
bool parse_edge_line(const std::string& line, int line_no, EdgeLine& out) {
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') return false;

    std::vector<std::string> tokens;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) tokens.push_back(tok);
    if (tokens.empty()) return false;

    if (tokens[0] == "nodes") {
        if (tokens.size() != 2)
            throw ParseError("expected `nodes N`", line_no);
        long long n = 0;
        auto [p, ec] = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), n);
        if (ec != std::errc{} || p != tokens[1].data() + tokens[1].size() || n < 0)
            throw ParseError("bad node count `" + tokens[1] + "`", line_no);
        out.is_header = true;
        out.header_nodes = static_cast<int>(n);
        return true;
    }

    if (tokens.size() != 2)
        throw ParseError("expected two node ids, got " + std::to_string(tokens.size()) + " tokens",
                         line_no);
    long long ids[2];
    for (int i = 0; i < 2; ++i) {
        const std::string& t = tokens[i];
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), ids[i]);
        if (ec != std::errc{} || p != t.data() + t.size())
            throw ParseError("bad node id `" + t + "`", line_no);
        if (ids[i] < 0) throw ParseError("negative node id `" + t + "`", line_no);
    }
    out.is_header = false;
    out.u = ids[0];
    out.v = ids[1];
    return true;
}

struct RawEdges {
    std::vector<std::pair<long long, long long>> pairs;
    long long max_id = -1;
    int header_nodes = -1;
};

RawEdges read_raw_edges(std::istream& text) {
    RawEdges raw;
    std::string line;
    int line_no = 0;
    while (std::getline(text, line)) {
        ++line_no;
        EdgeLine parsed;
        if (!parse_edge_line(line, line_no, parsed)) continue;
        if (parsed.is_header) {
            raw.header_nodes = std::max(raw.header_nodes, parsed.header_nodes);
            continue;
        }
        raw.pairs.emplace_back(parsed.u, parsed.v);
        raw.max_id = std::max({raw.max_id, parsed.u, parsed.v});
    }
    return raw;
}

Graph assemble(int node_count, const std::vector<std::pair<int, int>>& pairs, bool directed,
               ParseStats* stats) {
    // from_arcs dedupes silently; count dropped lines here so ingestion can warn.
    std::vector<std::pair<int, int>> kept;
    kept.reserve(pairs.size());
    std::vector<std::pair<int, int>> seen = pairs;
    for (auto& [u, v] : seen) {
        if (!directed && u > v) std::swap(u, v);
    }
    std::sort(seen.begin(), seen.end());
    int dropped = 0;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i].first == seen[i].second || (i > 0 && seen[i] == seen[i - 1]))
            ++dropped;
        else
            kept.push_back(seen[i]);
    }
    if (stats) stats->dropped_lines = dropped;
    return Graph::from_arcs(node_count, kept, directed);
}

} // namespace

Graph from_edge_list(std::istream& text, bool directed, ParseStats* stats) {
    RawEdges raw = read_raw_edges(text);
    long long node_count = std::max<long long>(raw.max_id + 1, raw.header_nodes);
    if (node_count > (1LL << 31) - 1) throw ParseError("graph too large for 32-bit node ids");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(raw.pairs.size());
    for (const auto& [u, v] : raw.pairs)
        pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    return assemble(static_cast<int>(node_count), pairs, directed, stats);
}

Graph load_edge_list(const std::string& path, bool directed, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    return from_edge_list(in, directed, stats);
}

std::pair<Graph, IdRemap> from_edge_list_compacting(std::istream& text, bool directed,
                                                    ParseStats* stats) {
    RawEdges raw = read_raw_edges(text);
    std::map<long long, int> dense; // ascending original order
    for (const auto& [u, v] : raw.pairs) {
        dense.emplace(u, 0);
        dense.emplace(v, 0);
    }
    IdRemap remap;
    remap.original_ids.reserve(dense.size());
    for (auto& [orig, id] : dense) {
        id = static_cast<int>(remap.original_ids.size());
        remap.original_ids.push_back(orig);
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(raw.pairs.size());
    for (const auto& [u, v] : raw.pairs) pairs.emplace_back(dense[u], dense[v]);
    return {assemble(static_cast<int>(dense.size()), pairs, directed, stats), std::move(remap)};
}

void write_id_remap(const IdRemap& remap, std::ostream& out) {
    for (std::size_t i = 0; i < remap.original_ids.size(); ++i)
        out << i << ' ' << remap.original_ids[i] << '\n';
}

IdRemap read_id_remap(std::istream& in) {
    IdRemap remap;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream iss(line);
        long long dense, orig;
        if (!(iss >> dense >> orig) || dense != static_cast<long long>(remap.original_ids.size()))
            throw ParseError("bad id-remap entry", line_no);
        remap.original_ids.push_back(orig);
    }
    return remap;
}

void serialize(const Graph& graph, std::ostream& out) {
    out << "nodes " << graph.node_count() << '\n';
    for (const auto& [u, v] : graph.edge_list()) out << u << ' ' << v << '\n';
}

void save_edge_list(const Graph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write graph file: " + path);
    serialize(graph, out);
}

Graph transpose(const Graph& graph) {
    if (!graph.directed()) return graph;
    std::vector<std::pair<int, int>> reversed;
    reversed.reserve(static_cast<std::size_t>(graph.edge_count()));
    for (const auto& [u, v] : graph.edge_list()) reversed.emplace_back(v, u);
    return Graph::from_arcs(graph.node_count(), reversed, true);
}

std::vector<int> bfs_distances(const Graph& graph, int source) {
    if (source < 0 || source >= graph.node_count())
        throw ArgumentError("bfs source out of range");
    std::vector<int> dist(graph.node_count(), kUnreached);
    dist[source] = 0;
    std::queue<int> queue;
    queue.push(source);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop();
        for (int v : graph.neighbors(u)) {
            if (dist[v] == kUnreached) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

} // namespace graphflow
