#include "graphflow/diffusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "graphflow/errors.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

namespace {

// Event tags keep the hash-addressed draw spaces of the models disjoint.
enum : std::uint64_t {
    kTagIcArc = 1,
    kTagLtThreshold = 2,
    kTagInfect = 3,
    kTagRecover = 4,
};

void check_probability(double value, const char* name) {
    if (value < 0.0 || value > 1.0 || std::isnan(value))
        throw ConfigError(std::string(name) + " must be in [0,1]");
}

} // namespace

ModelKind model_from_name(const std::string& name) {
    if (name == "ic") return ModelKind::ic;
    if (name == "lt") return ModelKind::lt;
    if (name == "si") return ModelKind::si;
    if (name == "sir") return ModelKind::sir;
    throw ConfigError("unknown diffusion model: " + name);
}

std::string model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::ic: return "ic";
    case ModelKind::lt: return "lt";
    case ModelKind::si: return "si";
    case ModelKind::sir: return "sir";
    }
    return "?";
}

void DiffusionConfig::validate() const {
    switch (kind) {
    case ModelKind::ic: check_probability(p, "ic p"); break;
    case ModelKind::lt: break;
    case ModelKind::si: check_probability(beta, "si beta"); break;
    case ModelKind::sir:
        check_probability(beta, "sir beta");
        check_probability(gamma, "sir gamma");
        break;
    }
    if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
}

std::string DiffusionConfig::label() const {
    // Labels land in CSV fields, so they stay comma-free.
    std::ostringstream out;
    switch (kind) {
    case ModelKind::ic: out << "ic(" << p << ")"; break;
    case ModelKind::lt: out << "lt"; break;
    case ModelKind::si: out << "si(" << beta << ")"; break;
    case ModelKind::sir: out << "sir(" << beta << ";" << gamma << ")"; break;
    }
    if (max_steps != 100) out << "[steps=" << max_steps << "]";
    return out.str();
}

std::vector<int> Trace::activated_set() const {
    std::vector<int> out;
    const auto& last = final_state();
    for (int v = 0; v < static_cast<int>(last.size()); ++v) {
        if (last[v] != kStateSusceptible) out.push_back(v);
    }
    return out;
}

namespace {

struct SimState {
    std::vector<std::uint8_t> state;
    std::vector<int> newly; // nodes activated in the previous round (IC frontier)
};

// IC: each node activated at step t gets one chance at step t+1 to activate
// each inactive neighbor. The arc draw depends only on (run key, u, v), which
// realizes the live-edge coupling.
bool round_ic(const Graph& g, const DiffusionConfig& cfg, std::uint64_t key, SimState& s) {
    std::vector<int> next;
    for (int u : s.newly) {
        for (int v : g.neighbors(u)) {
            if (s.state[v] != kStateSusceptible) continue;
            if (rng::event_unit(key, kTagIcArc, u, v) < cfg.p) {
                s.state[v] = kStateActive;
                next.push_back(v);
            }
        }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    s.newly = std::move(next);
    return !s.newly.empty();
}

// LT: node v activates when the 1/deg(v) mass of its active in-neighbors
// reaches its per-run uniform threshold.
bool round_lt(const Graph& g, const DiffusionConfig& cfg, std::uint64_t key, SimState& s) {
    std::vector<int> next;
    for (int v = 0; v < g.node_count(); ++v) {
        if (s.state[v] != kStateSusceptible || g.in_degree(v) == 0) continue;
        double mass = 0.0;
        for (int u : g.in_neighbors(v)) {
            if (s.state[u] == kStateActive) mass += 1.0;
        }
        mass /= g.in_degree(v);
        double threshold = cfg.lt_thresholds.empty() ? rng::event_unit(key, kTagLtThreshold, v)
                                                     : cfg.lt_thresholds[v];
        if (mass >= threshold) next.push_back(v);
    }
    for (int v : next) s.state[v] = kStateActive;
    return !next.empty();
}

struct RoundStatus {
    bool changed = false;
    bool done = false; // no future round can change anything
};

// SI / SIR: every infected node attempts each susceptible neighbor per step;
// SIR additionally rolls recovery for nodes that were infected when the step
// began (after their infection attempts unless recover_before_infect).
// A round with failed attempts is not terminal: later steps redraw. The run
// is done only when the state is structurally frozen, which keeps coupled
// runs on different graphs aligned step for step.
RoundStatus round_epidemic(const Graph& g, const DiffusionConfig& cfg, std::uint64_t key,
                           int step, SimState& s) {
    std::vector<int> infected_now;
    for (int v = 0; v < g.node_count(); ++v) {
        if (s.state[v] == kStateActive) infected_now.push_back(v);
    }

    std::vector<int> recoveries;
    if (cfg.kind == ModelKind::sir) {
        for (int u : infected_now) {
            if (rng::event_unit(key, kTagRecover, step, u) < cfg.gamma) recoveries.push_back(u);
        }
    }
    std::vector<char> recovered_now(g.node_count(), 0);
    for (int u : recoveries) recovered_now[u] = 1;

    RoundStatus status;
    bool attempt_possible = false;
    for (int u : infected_now) {
        if (cfg.kind == ModelKind::sir && cfg.recover_before_infect && recovered_now[u]) continue;
        for (int v : g.neighbors(u)) {
            if (s.state[v] != kStateSusceptible) continue;
            attempt_possible = true;
            if (rng::event_unit(key, kTagInfect, step, rng::combine(u, v)) < cfg.beta) {
                s.state[v] = kStateActive;
                status.changed = true;
            }
        }
    }
    for (int u : recoveries) {
        s.state[u] = kStateRemoved;
        status.changed = true;
    }

    if (cfg.kind == ModelKind::si) {
        status.done = !attempt_possible;
    } else {
        bool any_infected = false;
        for (int v = 0; v < g.node_count(); ++v)
            any_infected = any_infected || s.state[v] == kStateActive;
        status.done = !any_infected || (cfg.gamma == 0.0 && !attempt_possible);
    }
    return status;
}

} // namespace

Trace simulate(const Graph& graph, const DiffusionConfig& config, const SeedSet& seeds,
               std::uint64_t rng_seed) {
    config.validate();
    if (seeds.ids.empty()) throw ArgumentError("simulate: seed set must be non-empty");
    seeds.validate(graph);
    if (config.kind == ModelKind::lt && !config.lt_thresholds.empty() &&
        static_cast<int>(config.lt_thresholds.size()) != graph.node_count())
        throw ConfigError("lt_thresholds size must match node count");

    const std::uint64_t key = rng::derive(rng_seed, {static_cast<std::uint64_t>(config.kind)});

    SimState s;
    s.state.assign(graph.node_count(), kStateSusceptible);
    for (int id : seeds.ids) s.state[id] = kStateActive;
    s.newly = seeds.ids;

    Trace trace;
    trace.seed_ids = seeds.ids;
    trace.steps.push_back(s.state);
    trace.terminated_reason = Trace::Termination::step_cap;

    for (int step = 1; step <= config.max_steps; ++step) {
        RoundStatus status;
        switch (config.kind) {
        case ModelKind::ic:
            status.changed = round_ic(graph, config, key, s);
            status.done = !status.changed; // empty frontier stays empty
            break;
        case ModelKind::lt:
            status.changed = round_lt(graph, config, key, s);
            status.done = !status.changed; // thresholds and weights are static
            break;
        case ModelKind::si:
        case ModelKind::sir:
            status = round_epidemic(graph, config, key, step, s);
            break;
        }
        if (status.changed) trace.steps.push_back(s.state);
        if (status.done) {
            trace.terminated_reason = Trace::Termination::quiescent;
            break;
        }
    }
    return trace;
}

SpreadEstimate expected_spread(const Graph& graph, const DiffusionConfig& config,
                               const SeedSet& seeds, int runs, std::uint64_t rng_seed) {
    if (runs < 1) throw ArgumentError("expected_spread: runs must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    for (int run = 0; run < runs; ++run) {
        Trace t = simulate(graph, config, seeds, rng::derive(rng_seed, {static_cast<std::uint64_t>(run)}));
        double size = 0.0;
        for (std::uint8_t st : t.final_state()) size += (st != kStateSusceptible) ? 1.0 : 0.0;
        sum += size;
        sum_sq += size * size;
    }
    SpreadEstimate est;
    est.runs = runs;
    est.mean = sum / runs;
    if (runs > 1) {
        double var = (sum_sq - sum * sum / runs) / (runs - 1);
        est.std = std::sqrt(std::max(0.0, var));
    }
    return est;
}

double exact_expected_spread(const Graph& graph, const DiffusionConfig& config,
                             const SeedSet& seeds) {
    if (config.kind != ModelKind::ic)
        throw UnsupportedError("exact_expected_spread supports IC only");
    config.validate();
    seeds.validate(graph);
    const auto edges = graph.edge_list();
    const int e = static_cast<int>(edges.size());
    if (e > 20) throw CapacityError("exact_expected_spread: more than 20 edges");

    const int n = graph.node_count();
    double expectation = 0.0;
    std::vector<char> reached(n);
    std::vector<int> stack;
    std::vector<std::vector<int>> live_adj(n);

    for (std::uint32_t mask = 0; mask < (1u << e); ++mask) {
        const int live = std::popcount(mask);
        const double prob = std::pow(config.p, live) * std::pow(1.0 - config.p, e - live);
        if (prob == 0.0) continue;

        for (int v = 0; v < n; ++v) live_adj[v].clear();
        for (int i = 0; i < e; ++i) {
            if (!(mask & (1u << i))) continue;
            live_adj[edges[i].first].push_back(edges[i].second);
            if (!graph.directed()) live_adj[edges[i].second].push_back(edges[i].first);
        }
        std::fill(reached.begin(), reached.end(), 0);
        stack = seeds.ids;
        for (int id : seeds.ids) reached[id] = 1;
        int count = static_cast<int>(seeds.ids.size());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : live_adj[u]) {
                if (!reached[v]) {
                    reached[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        expectation += prob * count;
    }
    return expectation;
}

} // namespace graphflow
