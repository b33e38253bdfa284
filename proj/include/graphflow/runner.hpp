#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "graphflow/diffusion.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/im.hpp"
#include "graphflow/seeding.hpp"

namespace graphflow {

enum class Task { im, ibm, sl };

Task task_from_name(const std::string& name); // throws ConfigError
std::string task_name(Task task);

/// A graph axis entry: either a generator spec or an edge-list file.
struct GraphSource {
    std::optional<GraphGenSpec> gen;
    std::string file;
    bool directed = false;

    std::string label() const;
};

/// A seed axis entry. The budget doubles as the task budget: seed count for
/// im, protected-seed count for ibm (also the default block budget), and the
/// number of planted sources for sl.
struct SeedConfig {
    SeedStrategy strategy = SeedStrategy::random;
    int budget = 1;
};

/// A method axis entry with its per-method knobs; unset knobs fall back to
/// engine defaults (beta_hat derives from the diffusion when 0).
struct MethodSpec {
    std::string name;
    int sims_per_eval = kDefaultSimsPerEval;
    int num_rr_sets = kDefaultRrSets;
    int horizon = kDefaultProxyHorizon;
    double beta_hat = 0.0;
    int block_budget = 0; // ibm only; 0 = seed budget
};

/// The Cartesian benchmark configuration behind one `run` invocation.
struct ExperimentSpec {
    Task task = Task::im;
    std::vector<GraphSource> graphs;
    std::vector<DiffusionConfig> diffusions;
    std::vector<SeedConfig> seed_strategies;
    std::vector<MethodSpec> methods;
    int epochs = 1;
    std::uint64_t master_seed = 0;
    std::vector<std::string> outputs; // subset of {csv, trace_json, summary}
    int eval_runs = 1000;             // shared evaluation budget (IE / blocking effect)

    void validate() const; // throws ConfigError, names the offending entry
};

struct RunDescriptor {
    int run_index = 0;
    int graph_index = 0;
    int diffusion_index = 0;
    int seed_index = 0;
    int method_index = 0;
};

/// Full Cartesian product in lexicographic (graph, diffusion, seed, method)
/// order, run_index assigned in that order.
std::vector<RunDescriptor> expand_spec(const ExperimentSpec& spec);

struct ResultRecord {
    int run_index = 0;
    std::string graph;
    std::string diffusion;
    std::string seed_strategy;
    std::string method;
    int budget = 0;
    int epochs = 0;
    std::string metric; // IE | blocked | distance
    double mean = 0.0;
    double std = 0.0;
    double runtime_seconds = 0.0; // the one nondeterministic field
    bool failed = false;
    std::string fail_reason;
};

struct RunOptions {
    int parallelism = 1;
    std::string trace_dir; // destination for trace_json output; empty disables it
};

/// Executes every descriptor for `epochs` replications. Streams derive from
/// (master_seed, run_index, epoch), so all values except runtime_seconds are
/// independent of parallelism. A failing replication marks its record failed
/// and the sweep continues.
std::vector<ResultRecord> run_experiments(const ExperimentSpec& spec,
                                          const RunOptions& options = {});

/// CSV with the fixed header
/// run_index,graph,diffusion,seed_strategy,method,budget,epochs,metric,mean,std,runtime_seconds
/// one row per record sorted by run_index, reals at 6 significant digits.
void write_csv(const std::vector<ResultRecord>& records, std::ostream& out);
void write_csv_file(const std::vector<ResultRecord>& records, const std::string& path);
std::vector<ResultRecord> read_csv(std::istream& in);

/// Animation-ready trace export:
/// {"nodes": N, "edges": [[u,v],...], "seeds": [...], "steps": [[...],...]}
/// with exactly that key order and integer-only arrays.
void write_trace_json(const Trace& trace, const Graph& graph, std::ostream& out);
void write_trace_json_file(const Trace& trace, const Graph& graph, const std::string& path);

/// Parses the flat key = value experiment file (sections per list entry; see
/// README for the schema). Errors carry line numbers.
ExperimentSpec load_spec(std::istream& in);
ExperimentSpec load_spec_file(const std::string& path);

} // namespace graphflow
