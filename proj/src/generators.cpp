#include <algorithm>
#include <set>
#include <sstream>

#include "graphflow/errors.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

void GraphGenSpec::validate() const {
    if (n <= 0) throw ConfigError("graph generator: n must be positive");
    switch (kind) {
    case GraphKind::erdos_renyi:
        if (p < 0.0 || p > 1.0) throw ConfigError("er: p must be in [0,1]");
        break;
    case GraphKind::barabasi_albert:
        if (m < 1 || m >= n) throw ConfigError("ba: need 1 <= m < n");
        break;
    case GraphKind::watts_strogatz:
        if (k < 2 || k % 2 != 0 || k >= n) throw ConfigError("ws: need even k with 2 <= k < n");
        if (p < 0.0 || p > 1.0) throw ConfigError("ws: p must be in [0,1]");
        break;
    }
}

std::string GraphGenSpec::label() const {
    std::ostringstream out;
    // Labels land in CSV fields, so they stay comma-free.
    switch (kind) {
    case GraphKind::erdos_renyi: out << "er(" << n << ";p=" << p << ")"; break;
    case GraphKind::barabasi_albert: out << "ba(" << n << ";m=" << m << ")"; break;
    case GraphKind::watts_strogatz: out << "ws(" << n << ";k=" << k << ";p=" << p << ")"; break;
    }
    return out.str();
}

namespace {

Graph generate_er(int n, double p, rng::Stream& stream) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (stream.next_unit() < p) edges.emplace_back(u, v);
        }
    }
    return Graph::from_arcs(n, edges, false);
}

Graph generate_ba(int n, int m, rng::Stream& stream) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> endpoints; // node repeated once per incident edge
    for (int u = 0; u <= m; ++u) {
        for (int v = u + 1; v <= m; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    for (int w = m + 1; w < n; ++w) {
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < m) {
            int target = endpoints[stream.next_below(endpoints.size())];
            chosen.insert(target);
        }
        for (int target : chosen) {
            edges.emplace_back(target, w);
            endpoints.push_back(target);
            endpoints.push_back(w);
        }
    }
    return Graph::from_arcs(n, edges, false);
}

Graph generate_ws(int n, int k, double p, rng::Stream& stream) {
    std::vector<std::set<int>> adjacency(n);
    auto connected = [&](int u, int v) { return adjacency[u].count(v) > 0; };
    auto add = [&](int u, int v) {
        adjacency[u].insert(v);
        adjacency[v].insert(u);
    };
    auto remove = [&](int u, int v) {
        adjacency[u].erase(v);
        adjacency[v].erase(u);
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= k / 2; ++j) add(i, (i + j) % n);
    }
    // Rewire each lattice edge (i, i+j) in construction order.
    for (int i = 0; i < n; ++i) {
        for (int j = 1; j <= k / 2; ++j) {
            int v = (i + j) % n;
            if (stream.next_unit() >= p) continue;
            if (static_cast<int>(adjacency[i].size()) >= n - 1) continue; // i saturated
            int w;
            do {
                w = static_cast<int>(stream.next_below(n));
            } while (w == i || connected(i, w));
            remove(i, v);
            add(i, w);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        for (int v : adjacency[u]) {
            if (u < v) edges.emplace_back(u, v);
        }
    }
    return Graph::from_arcs(n, edges, false);
}

} // namespace

Graph generate(const GraphGenSpec& spec, std::uint64_t rng_seed) {
    spec.validate();
    rng::Stream stream(rng::derive(rng_seed, {static_cast<std::uint64_t>(spec.kind)}));
    switch (spec.kind) {
    case GraphKind::erdos_renyi: return generate_er(spec.n, spec.p, stream);
    case GraphKind::barabasi_albert: return generate_ba(spec.n, spec.m, stream);
    case GraphKind::watts_strogatz: return generate_ws(spec.n, spec.k, spec.p, stream);
    }
    throw ConfigError("unknown graph generator kind");
}

} // namespace graphflow
