#include "graphflow/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "graphflow/errors.hpp"
#include "graphflow/ibm.hpp"
#include "graphflow/rng.hpp"
#include "graphflow/sl.hpp"

namespace graphflow {

Task task_from_name(const std::string& name) {
    if (name == "im") return Task::im;
    if (name == "ibm") return Task::ibm;
    if (name == "sl") return Task::sl;
    throw ConfigError("unknown task: " + name);
}

std::string task_name(Task task) {
    switch (task) {
    case Task::im: return "im";
    case Task::ibm: return "ibm";
    case Task::sl: return "sl";
    }
    return "?";
}

std::string GraphSource::label() const {
    if (gen) return gen->label();
    auto slash = file.find_last_of("/\\");
    return slash == std::string::npos ? file : file.substr(slash + 1);
}

namespace {

const std::set<std::string>& methods_for(Task task) {
    static const std::set<std::string> im_methods{"greedy", "celf",  "celfpp", "ris",
                                                  "degree", "eigen", "pi",     "sigma"};
    static const std::set<std::string> ibm_methods{"greedy", "degree", "eigen", "pi", "sigma"};
    static const std::set<std::string> sl_methods{"jordan", "netsleuth"};
    switch (task) {
    case Task::im: return im_methods;
    case Task::ibm: return ibm_methods;
    case Task::sl: return sl_methods;
    }
    throw ConfigError("unknown task");
}

bool is_proxy_method(const std::string& name) {
    return name == "degree" || name == "eigen" || name == "pi" || name == "sigma";
}

} // namespace

void ExperimentSpec::validate() const {
    if (graphs.empty()) throw ConfigError("spec needs at least one graph");
    if (diffusions.empty()) throw ConfigError("spec needs at least one diffusion");
    if (seed_strategies.empty()) throw ConfigError("spec needs at least one seed configuration");
    if (methods.empty()) throw ConfigError("spec needs at least one method");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (eval_runs < 1) throw ConfigError("eval_runs must be >= 1");

    for (const auto& g : graphs) {
        if (g.gen.has_value() == !g.file.empty())
            throw ConfigError("graph entry must set exactly one of generator kind or file");
        if (g.gen) g.gen->validate();
    }
    for (const auto& d : diffusions) d.validate();
    for (const auto& s : seed_strategies) {
        if (s.budget < 1) throw ConfigError("seed budget must be >= 1");
        if (task == Task::sl && s.budget > 6)
            throw ConfigError("sl supports at most 6 sources (exact matching guard)");
    }
    const auto& allowed = methods_for(task);
    for (const auto& m : methods) {
        if (!allowed.count(m.name))
            throw ConfigError("method `" + m.name + "` is not valid for task " + task_name(task));
    }
    for (const auto& o : outputs) {
        if (o != "csv" && o != "trace_json" && o != "summary")
            throw ConfigError("unknown output kind: " + o);
    }
}

std::vector<RunDescriptor> expand_spec(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<RunDescriptor> runs;
    int index = 0;
    for (int g = 0; g < static_cast<int>(spec.graphs.size()); ++g)
        for (int d = 0; d < static_cast<int>(spec.diffusions.size()); ++d)
            for (int s = 0; s < static_cast<int>(spec.seed_strategies.size()); ++s)
                for (int m = 0; m < static_cast<int>(spec.methods.size()); ++m)
                    runs.push_back({index++, g, d, s, m});
    return runs;
}

namespace {

// Seed-derivation tags for the per-epoch sub-streams.
enum : std::uint64_t {
    kKeyGraphGen = 0x10,
    kKeyMethod = 0x11,
    kKeySeedPick = 0x12,
    kKeyEvaluate = 0x13,
    kKeyCascade = 0x14,
    kKeyTrace = 0x15,
};

double derive_beta_hat(const MethodSpec& method, const DiffusionConfig& diffusion) {
    if (method.beta_hat > 0.0) return method.beta_hat;
    switch (diffusion.kind) {
    case ModelKind::ic: return diffusion.p;
    case ModelKind::si:
    case ModelKind::sir: return diffusion.beta;
    case ModelKind::lt: return 0.1; // LT carries no per-contact probability
    }
    return 0.1;
}

SeedSet run_im_method(const MethodSpec& method, const Graph& graph,
                      const DiffusionConfig& diffusion, int budget, std::uint64_t key) {
    if (method.name == "greedy")
        return greedy_im(graph, diffusion, budget, method.sims_per_eval, key).seeds;
    if (method.name == "celf")
        return celf_im(graph, diffusion, budget, method.sims_per_eval, key, false).seeds;
    if (method.name == "celfpp")
        return celf_im(graph, diffusion, budget, method.sims_per_eval, key, true).seeds;
    if (method.name == "ris")
        return ris_im(graph, diffusion, budget, method.num_rr_sets, key).seeds;
    if (is_proxy_method(method.name))
        return proxy_im(graph, proxy_from_name(method.name), budget,
                        derive_beta_hat(method, diffusion), method.horizon)
            .seeds;
    throw ConfigError("method `" + method.name + "` is not valid for task im");
}

struct EpochContext {
    const ExperimentSpec& spec;
    const RunDescriptor& run;
    const Graph& graph;
    std::uint64_t epoch_key;
    bool want_trace = false;
};

struct EpochOutcome {
    double metric = 0.0;
    std::optional<Trace> trace;
    std::optional<Graph> trace_graph; // set when the trace refers to a derived (blocked) graph
};

EpochOutcome run_epoch(const EpochContext& ctx) {
    const auto& spec = ctx.spec;
    const auto& method = spec.methods[ctx.run.method_index];
    const auto& diffusion = spec.diffusions[ctx.run.diffusion_index];
    const auto& seed_cfg = spec.seed_strategies[ctx.run.seed_index];
    const std::uint64_t key = ctx.epoch_key;

    EpochOutcome out;
    switch (spec.task) {
    case Task::im: {
        SeedSet seeds = run_im_method(method, ctx.graph, diffusion, seed_cfg.budget,
                                      rng::derive(key, {kKeyMethod}));
        out.metric = expected_spread(ctx.graph, diffusion, seeds, spec.eval_runs,
                                     rng::derive(key, {kKeyEvaluate}))
                         .mean;
        if (ctx.want_trace)
            out.trace = simulate(ctx.graph, diffusion, seeds, rng::derive(key, {kKeyTrace}));
        break;
    }
    case Task::ibm: {
        SeedSet seeds = select_seeds(ctx.graph, seed_cfg.strategy, seed_cfg.budget,
                                     rng::derive(key, {kKeySeedPick}));
        const int block_budget = method.block_budget > 0 ? method.block_budget : seed_cfg.budget;
        BlockSet block;
        if (method.name == "greedy")
            block = greedy_block(ctx.graph, diffusion, seeds, block_budget, method.sims_per_eval,
                                 rng::derive(key, {kKeyMethod}));
        else
            block = proxy_block(ctx.graph, proxy_from_name(method.name), seeds, block_budget,
                                derive_beta_hat(method, diffusion), method.horizon);
        out.metric = blocking_effect(ctx.graph, diffusion, seeds, block, spec.eval_runs,
                                     rng::derive(key, {kKeyEvaluate}))
                         .effect;
        if (ctx.want_trace) {
            out.trace_graph = apply_block(ctx.graph, block);
            out.trace = simulate(*out.trace_graph, diffusion, seeds, rng::derive(key, {kKeyTrace}));
        }
        break;
    }
    case Task::sl: {
        SeedSet truth = select_seeds(ctx.graph, seed_cfg.strategy, seed_cfg.budget,
                                     rng::derive(key, {kKeySeedPick}));
        Trace trace = simulate(ctx.graph, diffusion, truth, rng::derive(key, {kKeyCascade}));
        Observation obs;
        obs.infected = trace.activated_set();
        obs.snapshot_step = static_cast<int>(trace.steps.size()) - 1;
        SlResult located = method.name == "jordan"
                               ? jordan_center(ctx.graph, obs, seed_cfg.budget)
                               : netsleuth(ctx.graph, obs, seed_cfg.budget);
        out.metric = source_distance(ctx.graph, located.predicted, truth.ids);
        if (ctx.want_trace) out.trace = std::move(trace);
        break;
    }
    }
    return out;
}

std::string metric_for(Task task) {
    switch (task) {
    case Task::im: return "IE";
    case Task::ibm: return "blocked";
    case Task::sl: return "distance";
    }
    return "?";
}

int budget_for(const ExperimentSpec& spec, const RunDescriptor& run) {
    const int seed_budget = spec.seed_strategies[run.seed_index].budget;
    if (spec.task == Task::ibm) {
        const int b = spec.methods[run.method_index].block_budget;
        return b > 0 ? b : seed_budget;
    }
    return seed_budget;
}

} // namespace

std::vector<ResultRecord> run_experiments(const ExperimentSpec& spec, const RunOptions& options) {
    const std::vector<RunDescriptor> runs = expand_spec(spec);
    const int parallelism = std::max(1, options.parallelism);
    const bool want_traces =
        !options.trace_dir.empty() &&
        std::find(spec.outputs.begin(), spec.outputs.end(), "trace_json") != spec.outputs.end();

    // Graphs are immutable and shared by every descriptor and worker.
    std::vector<Graph> graphs(spec.graphs.size());
    std::vector<std::string> graph_errors(spec.graphs.size());
    for (std::size_t g = 0; g < spec.graphs.size(); ++g) {
        try {
            const auto& source = spec.graphs[g];
            graphs[g] = source.gen
                            ? generate(*source.gen,
                                       rng::derive(spec.master_seed, {kKeyGraphGen, g}))
                            : load_edge_list(source.file, source.directed);
        } catch (const std::exception& e) {
            graph_errors[g] = e.what();
        }
    }

    std::vector<ResultRecord> records(runs.size());
    std::vector<std::vector<double>> metrics(runs.size());
    std::vector<std::vector<double>> durations(runs.size());
    std::vector<std::string> failures(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        metrics[i].assign(spec.epochs, 0.0);
        durations[i].assign(spec.epochs, 0.0);
    }

    const int total_tasks = static_cast<int>(runs.size()) * spec.epochs;
    std::atomic<int> next_task{0};
    std::vector<std::atomic<bool>> run_failed(runs.size());
    for (auto& f : run_failed) f.store(false);

    // Only the first failure of a run records its reason.
    auto mark_failed = [&](int run_id, const std::string& reason) {
        bool expected = false;
        if (run_failed[run_id].compare_exchange_strong(expected, true))
            failures[run_id] = reason;
    };

    auto execute = [&](int task_id) {
        const int run_id = task_id / spec.epochs;
        const int epoch = task_id % spec.epochs;
        const RunDescriptor& run = runs[run_id];
        if (!graph_errors[run.graph_index].empty()) {
            mark_failed(run_id, graph_errors[run.graph_index]);
            return;
        }
        if (run_failed[run_id].load()) return;
        const auto start = std::chrono::steady_clock::now();
        try {
            EpochContext ctx{spec, run, graphs[run.graph_index],
                             rng::derive(spec.master_seed,
                                         {static_cast<std::uint64_t>(run.run_index),
                                          static_cast<std::uint64_t>(epoch)}),
                             want_traces && epoch == 0};
            EpochOutcome out = run_epoch(ctx);
            metrics[run_id][epoch] = out.metric;
            if (out.trace) {
                const Graph& trace_graph =
                    out.trace_graph ? *out.trace_graph : graphs[run.graph_index];
                write_trace_json_file(*out.trace, trace_graph,
                                      options.trace_dir + "/trace_run" +
                                          std::to_string(run.run_index) + ".json");
            }
        } catch (const std::exception& e) {
            mark_failed(run_id, e.what());
        }
        durations[run_id][epoch] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    auto worker = [&] {
        while (true) {
            const int task_id = next_task.fetch_add(1);
            if (task_id >= total_tasks) break;
            execute(task_id);
        }
    };
    {
        std::vector<std::thread> pool;
        const int threads = std::min(parallelism, total_tasks);
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < runs.size(); ++i) {
        const RunDescriptor& run = runs[i];
        ResultRecord& rec = records[i];
        rec.run_index = run.run_index;
        rec.graph = spec.graphs[run.graph_index].label();
        rec.diffusion = spec.diffusions[run.diffusion_index].label();
        rec.seed_strategy = seed_strategy_name(spec.seed_strategies[run.seed_index].strategy);
        rec.method = spec.methods[run.method_index].name;
        rec.budget = budget_for(spec, run);
        rec.epochs = spec.epochs;
        rec.metric = metric_for(spec.task);
        rec.runtime_seconds = 0.0;
        for (double d : durations[i]) rec.runtime_seconds += d;
        if (run_failed[i].load()) {
            rec.failed = true;
            rec.fail_reason = failures[i];
            rec.mean = std::nan("");
            rec.std = std::nan("");
            continue;
        }
        double sum = 0.0, sq = 0.0;
        for (double v : metrics[i]) {
            sum += v;
            sq += v * v;
        }
        rec.mean = sum / spec.epochs;
        rec.std = spec.epochs > 1
                      ? std::sqrt(std::max(0.0, (sq - sum * sum / spec.epochs) / (spec.epochs - 1)))
                      : 0.0;
    }
    return records;
}

namespace {

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

} // namespace

void write_csv(const std::vector<ResultRecord>& records, std::ostream& out) {
    std::vector<const ResultRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& r : records) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const ResultRecord* a, const ResultRecord* b) { return a->run_index < b->run_index; });

    out << "run_index,graph,diffusion,seed_strategy,method,budget,epochs,metric,mean,std,"
           "runtime_seconds\n";
    for (const ResultRecord* r : ordered) {
        out << r->run_index << ',' << r->graph << ',' << r->diffusion << ',' << r->seed_strategy
            << ',' << r->method << ',' << r->budget << ',' << r->epochs << ',' << r->metric << ','
            << format_real(r->mean) << ',' << format_real(r->std) << ','
            << format_real(r->runtime_seconds) << '\n';
    }
}

void write_csv_file(const std::vector<ResultRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write csv: " + path);
    write_csv(records, out);
    if (!out) throw IoError("write failed: " + path);
}

std::vector<ResultRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty csv", 1);
    if (line != "run_index,graph,diffusion,seed_strategy,method,budget,epochs,metric,mean,std,"
                "runtime_seconds")
        throw ParseError("unexpected csv header", 1);
    std::vector<ResultRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 11) throw ParseError("expected 11 csv fields", line_no);
        ResultRecord r;
        r.run_index = std::stoi(fields[0]);
        r.graph = fields[1];
        r.diffusion = fields[2];
        r.seed_strategy = fields[3];
        r.method = fields[4];
        r.budget = std::stoi(fields[5]);
        r.epochs = std::stoi(fields[6]);
        r.metric = fields[7];
        r.mean = std::stod(fields[8]);
        r.std = std::stod(fields[9]);
        r.runtime_seconds = std::stod(fields[10]);
        r.failed = std::isnan(r.mean);
        records.push_back(std::move(r));
    }
    return records;
}

void write_trace_json(const Trace& trace, const Graph& graph, std::ostream& out) {
    out << "{\"nodes\":" << graph.node_count() << ",\"edges\":[";
    bool first = true;
    for (const auto& [u, v] : graph.edge_list()) {
        if (!first) out << ',';
        first = false;
        out << '[' << u << ',' << v << ']';
    }
    out << "],\"seeds\":[";
    for (std::size_t i = 0; i < trace.seed_ids.size(); ++i) {
        if (i) out << ',';
        out << trace.seed_ids[i];
    }
    out << "],\"steps\":[";
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        if (s) out << ',';
        out << '[';
        for (std::size_t v = 0; v < trace.steps[s].size(); ++v) {
            if (v) out << ',';
            out << static_cast<int>(trace.steps[s][v]);
        }
        out << ']';
    }
    out << "]}";
}

void write_trace_json_file(const Trace& trace, const Graph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trace: " + path);
    write_trace_json(trace, graph, out);
    out << '\n';
    if (!out) throw IoError("write failed: " + path);
}

} // namespace graphflow
