#include "graphflow/im.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "graphflow/errors.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SeedSet to_seed_set(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    return SeedSet{ids, static_cast<int>(ids.size())};
}

// Marginal-gain evaluator shared by the greedy-family solvers. Monte Carlo
// mode pairs the spread of base+v and of base on the same derived run streams, so
// coupling keeps individual gains non-negative.
class GainEvaluator {
public:
    GainEvaluator(const Graph& graph, const DiffusionConfig& config, int sims, SpreadMode mode)
        : graph_(graph), config_(config), sims_(sims), mode_(mode) {
        if (mode_ == SpreadMode::monte_carlo && sims_ < 1)
            throw ArgumentError("sims_per_eval must be >= 1");
    }

    double gain(const std::vector<int>& base_sorted, int candidate, std::uint64_t eval_key) {
        ++evaluations_;
        std::vector<int> extended = base_sorted;
        extended.insert(std::lower_bound(extended.begin(), extended.end(), candidate), candidate);
        if (mode_ == SpreadMode::exact_oracle)
            return exact_size(extended) - exact_size(base_sorted);
        double total = 0.0;
        for (int run = 0; run < sims_; ++run) {
            std::uint64_t run_key = rng::derive(eval_key, {static_cast<std::uint64_t>(run)});
            total += run_size(extended, run_key) - run_size(base_sorted, run_key);
        }
        return total / sims_;
    }

    double set_value(const std::vector<int>& sorted_ids, std::uint64_t eval_key) {
        if (mode_ == SpreadMode::exact_oracle) return exact_size(sorted_ids);
        double total = 0.0;
        for (int run = 0; run < sims_; ++run)
            total += run_size(sorted_ids, rng::derive(eval_key, {static_cast<std::uint64_t>(run)}));
        return total / sims_;
    }

    std::size_t evaluations() const { return evaluations_; }

private:
    double run_size(const std::vector<int>& sorted_ids, std::uint64_t run_key) {
        if (sorted_ids.empty()) return 0.0;
        Trace t = simulate(graph_, config_, SeedSet{sorted_ids, static_cast<int>(sorted_ids.size())},
                           run_key);
        double size = 0.0;
        for (std::uint8_t st : t.final_state()) size += (st != kStateSusceptible) ? 1.0 : 0.0;
        return size;
    }

    double exact_size(const std::vector<int>& sorted_ids) {
        if (sorted_ids.empty()) return 0.0;
        return exact_expected_spread(graph_, config_,
                                     SeedSet{sorted_ids, static_cast<int>(sorted_ids.size())});
    }

    const Graph& graph_;
    const DiffusionConfig& config_;
    int sims_;
    SpreadMode mode_;
    std::size_t evaluations_ = 0;
};

void check_budget(const Graph& graph, int budget) {
    if (budget < 1 || budget > graph.node_count())
        throw ArgumentError("budget out of range for this graph");
}

} // namespace

ImResult greedy_im(const Graph& graph, const DiffusionConfig& config, int budget,
                   int sims_per_eval, std::uint64_t rng_seed, SpreadMode mode) {
    auto start = Clock::now();
    check_budget(graph, budget);
    config.validate();

    GainEvaluator eval(graph, config, sims_per_eval, mode);
    std::vector<int> selected;
    std::vector<char> in_set(graph.node_count(), 0);
    std::vector<double> gains;

    for (int round = 0; round < budget; ++round) {
        int best = -1;
        double best_gain = 0.0;
        for (int v = 0; v < graph.node_count(); ++v) {
            if (in_set[v]) continue;
            double g = eval.gain(selected, v,
                                 rng::derive(rng_seed, {static_cast<std::uint64_t>(round),
                                                        static_cast<std::uint64_t>(v)}));
            if (best == -1 || g > best_gain) {
                best = v;
                best_gain = g;
            }
        }
        selected.insert(std::lower_bound(selected.begin(), selected.end(), best), best);
        in_set[best] = 1;
        gains.push_back(best_gain);
    }

    ImResult result{to_seed_set(selected), std::move(gains), 0.0, eval.evaluations()};
    result.wall_time_seconds = seconds_since(start);
    return result;
}

namespace {

struct QueueEntry {
    double gain;
    int node;
    int round;           // |selected| the gain was computed against
    double gain2;        // CELF++: gain conditioned on prev_best being taken
    int prev_best;       // running best candidate at evaluation time
    bool has_lookahead;  // gain2 valid
};

struct EntryLess {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.gain != b.gain) return a.gain < b.gain; // max-heap on gain
        return a.node > b.node;                       // lower id pops first
    }
};

} // namespace

ImResult celf_im(const Graph& graph, const DiffusionConfig& config, int budget,
                 int sims_per_eval, std::uint64_t rng_seed, bool lookahead, SpreadMode mode) {
    auto start = Clock::now();
    check_budget(graph, budget);
    config.validate();

    GainEvaluator eval(graph, config, sims_per_eval, mode);
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryLess> queue;
    std::vector<int> selected;
    std::vector<double> gains;
    int last_selected = -1;

    // Initial scan: gains w.r.t. the empty set. cur_best tracks the running
    // argmax so the lookahead gain can condition on it.
    {
        int cur_best = -1;
        double cur_best_gain = 0.0;
        for (int v = 0; v < graph.node_count(); ++v) {
            std::uint64_t key = rng::derive(rng_seed, {0, static_cast<std::uint64_t>(v)});
            double g = eval.gain({}, v, key);
            QueueEntry entry{g, v, 0, 0.0, cur_best, false};
            if (lookahead && cur_best != -1) {
                entry.gain2 = eval.gain({cur_best}, v, rng::derive(key, {1}));
                entry.has_lookahead = true;
            }
            queue.push(entry);
            if (cur_best == -1 || g > cur_best_gain) {
                cur_best = v;
                cur_best_gain = g;
            }
        }
    }

    while (static_cast<int>(selected.size()) < budget) {
        const int size = static_cast<int>(selected.size());
        int cur_best = -1;
        double cur_best_gain = 0.0;
        while (true) {
            QueueEntry top = queue.top();
            queue.pop();
            if (top.round == size) {
                selected.insert(std::lower_bound(selected.begin(), selected.end(), top.node),
                                top.node);
                gains.push_back(top.gain);
                last_selected = top.node;
                break;
            }
            if (lookahead && top.has_lookahead && top.prev_best == last_selected &&
                top.round == size - 1) {
                // gain2 was computed against exactly the current selected set.
                top.gain = top.gain2;
                top.round = size;
                top.has_lookahead = false;
            } else {
                std::uint64_t key = rng::derive(rng_seed, {static_cast<std::uint64_t>(size),
                                                           static_cast<std::uint64_t>(top.node)});
                top.gain = eval.gain(selected, top.node, key);
                top.round = size;
                top.prev_best = cur_best;
                top.has_lookahead = false;
                if (lookahead && cur_best != -1) {
                    std::vector<int> with_best = selected;
                    with_best.insert(std::lower_bound(with_best.begin(), with_best.end(), cur_best),
                                     cur_best);
                    top.gain2 = eval.gain(with_best, top.node, rng::derive(key, {1}));
                    top.has_lookahead = true;
                }
            }
            if (cur_best == -1 || top.gain > cur_best_gain) {
                cur_best = top.node;
                cur_best_gain = top.gain;
            }
            queue.push(top);
        }
    }

    ImResult result{to_seed_set(selected), std::move(gains), 0.0, eval.evaluations()};
    result.wall_time_seconds = seconds_since(start);
    return result;
}

ImResult ris_im(const Graph& graph, const DiffusionConfig& config, int budget, int num_rr_sets,
                std::uint64_t rng_seed) {
    auto start = Clock::now();
    check_budget(graph, budget);
    config.validate();
    if (num_rr_sets < 1) throw ArgumentError("num_rr_sets must be >= 1");

    double arc_prob = 0.0;
    switch (config.kind) {
    case ModelKind::ic: arc_prob = config.p; break;
    case ModelKind::si:
        // Single-attempt fold of the per-step SI contact process.
        arc_prob = 1.0 - std::pow(1.0 - config.beta, config.max_steps);
        break;
    default: throw UnsupportedError("ris_im supports IC and SI only");
    }

    const int n = graph.node_count();
    const Graph reversed = transpose(graph); // no-op copy for undirected graphs

    std::vector<std::vector<int>> member_of(n); // node -> RR-set ids containing it
    std::vector<std::vector<int>> rr_members(num_rr_sets);
    std::vector<char> visited(n, 0);
    std::vector<int> frontier;

    for (int i = 0; i < num_rr_sets; ++i) {
        rng::Stream stream(rng::derive(rng_seed, {static_cast<std::uint64_t>(i)}));
        int root = static_cast<int>(stream.next_below(n));
        std::vector<int> members{root};
        visited[root] = 1;
        frontier.assign(1, root);
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (int u : reversed.neighbors(v)) {
                if (visited[u]) continue;
                if (stream.next_unit() < arc_prob) {
                    visited[u] = 1;
                    members.push_back(u);
                    frontier.push_back(u);
                }
            }
        }
        for (int v : members) {
            member_of[v].push_back(i);
            visited[v] = 0;
        }
        rr_members[i] = std::move(members);
    }

    // Greedy max coverage, lower-id ties.
    std::vector<int> cover_count(n, 0);
    for (int v = 0; v < n; ++v) cover_count[v] = static_cast<int>(member_of[v].size());
    std::vector<char> covered(num_rr_sets, 0);
    std::vector<char> in_set(n, 0);
    std::vector<int> selected;
    std::vector<double> gains;

    for (int round = 0; round < budget; ++round) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (in_set[v]) continue;
            if (best == -1 || cover_count[v] > cover_count[best]) best = v;
        }
        in_set[best] = 1;
        selected.push_back(best);
        gains.push_back(static_cast<double>(cover_count[best]) / num_rr_sets * n);
        for (int rr : member_of[best]) {
            if (covered[rr]) continue;
            covered[rr] = 1;
            for (int v : rr_members[rr]) --cover_count[v];
        }
    }

    ImResult result{to_seed_set(selected), std::move(gains), 0.0, 0};
    result.wall_time_seconds = seconds_since(start);
    return result;
}

ProxyKind proxy_from_name(const std::string& name) {
    if (name == "degree") return ProxyKind::degree;
    if (name == "eigen") return ProxyKind::eigen;
    if (name == "pi") return ProxyKind::pi;
    if (name == "sigma") return ProxyKind::sigma;
    throw ConfigError("unknown proxy: " + name);
}

std::string proxy_name(ProxyKind kind) {
    switch (kind) {
    case ProxyKind::degree: return "degree";
    case ProxyKind::eigen: return "eigen";
    case ProxyKind::pi: return "pi";
    case ProxyKind::sigma: return "sigma";
    }
    return "?";
}

namespace {

// sum_{t=1..horizon} (beta A)^t * ones, by repeated out-neighbor products.
std::vector<double> sigma_scores(const Graph& graph, double beta_hat, int horizon) {
    const int n = graph.node_count();
    std::vector<double> x(n, 1.0), next(n, 0.0), total(n, 0.0);
    for (int t = 1; t <= horizon; ++t) {
        for (int v = 0; v < n; ++v) {
            double sum = 0.0;
            for (int u : graph.neighbors(v)) sum += x[u];
            next[v] = beta_hat * sum;
        }
        for (int v = 0; v < n; ++v) total[v] += next[v];
        x.swap(next);
    }
    return total;
}

} // namespace

std::vector<double> proxy_scores(const Graph& graph, ProxyKind proxy, double beta_hat,
                                 int horizon) {
    if (beta_hat <= 0.0 || beta_hat > 1.0) throw ArgumentError("beta_hat must be in (0,1]");
    if (horizon < 1) throw ArgumentError("horizon must be >= 1");
    const int n = graph.node_count();
    switch (proxy) {
    case ProxyKind::degree: {
        std::vector<double> scores(n);
        for (int v = 0; v < n; ++v) scores[v] = graph.degree(v);
        return scores;
    }
    case ProxyKind::eigen: return eigen_centrality(graph).scores;
    case ProxyKind::sigma: return sigma_scores(graph, beta_hat, horizon);
    case ProxyKind::pi: {
        std::vector<double> s = sigma_scores(graph, beta_hat, horizon);
        std::vector<double> scores(n);
        for (int v = 0; v < n; ++v) {
            double neighborhood = 0.0;
            for (int u : graph.neighbors(v)) neighborhood += s[u];
            scores[v] = s[v] + beta_hat * neighborhood;
        }
        return scores;
    }
    }
    throw ConfigError("unknown proxy kind");
}

ImResult proxy_im(const Graph& graph, ProxyKind proxy, int budget, double beta_hat, int horizon) {
    auto start = Clock::now();
    check_budget(graph, budget);
    std::vector<double> scores = proxy_scores(graph, proxy, beta_hat, horizon);
    std::vector<int> picked = top_k_by_score(scores, budget);
    std::vector<double> gains;
    gains.reserve(picked.size());
    for (int v : picked) gains.push_back(scores[v]);
    ImResult result{to_seed_set(picked), std::move(gains), 0.0, 0};
    result.wall_time_seconds = seconds_since(start);
    return result;
}

} // namespace graphflow
