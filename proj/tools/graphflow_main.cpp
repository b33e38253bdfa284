// graphflow command-line front end.
//
//   run      execute a batch experiment spec and write its outputs
//   gen      write a generated graph as a canonical edge list
//   simulate run one diffusion and export the step trace
//   locate   run source localization on an observed infected set
//   validate check an experiment spec without running it
//
// Exit codes: 0 success, 1 at least one experiment run failed,
// 2 configuration or parse error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "graphflow/errors.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/runner.hpp"
#include "graphflow/sl.hpp"

namespace {

using namespace graphflow;

std::vector<int> parse_id_list(const std::string& csv) {
    std::vector<int> ids;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size() || v < 0) throw std::invalid_argument(item);
            ids.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad node id in list: `" + item + "`");
        }
    }
    if (ids.empty()) throw ConfigError("empty node id list");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<int> read_id_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open id file: " + path);
    std::vector<int> ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(line, &used);
            if (v < 0) throw std::invalid_argument(line);
            ids.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad node id `" + line + "`", line_no);
        }
    }
    if (ids.empty()) throw ConfigError("id file is empty: " + path);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::string default_out_dir() {
    const char* env = std::getenv("GRAPHFLOW_OUT_DIR");
    return env && *env ? env : ".";
}

struct RunArgs {
    std::string config;
    int parallelism = 1;
    std::string out_dir = default_out_dir();
};

int cmd_run(const RunArgs& args) {
    ExperimentSpec spec = load_spec_file(args.config);
    RunOptions options;
    options.parallelism = args.parallelism;
    options.trace_dir = args.out_dir;
    std::vector<ResultRecord> records = run_experiments(spec, options);

    auto wants = [&](const char* kind) {
        return std::find(spec.outputs.begin(), spec.outputs.end(), kind) != spec.outputs.end();
    };
    if (wants("csv")) write_csv_file(records, args.out_dir + "/results.csv");
    bool any_failed = false;
    for (const auto& r : records) {
        any_failed = any_failed || r.failed;
        if (wants("summary")) {
            std::cout << "run " << r.run_index << " " << r.graph << " " << r.diffusion << " "
                      << r.seed_strategy << " " << r.method << " budget=" << r.budget << " "
                      << r.metric << "=" << r.mean << "±" << r.std << " (" << r.runtime_seconds
                      << "s)";
            if (r.failed) std::cout << " FAILED: " << r.fail_reason;
            std::cout << "\n";
        } else if (r.failed) {
            std::cerr << "run " << r.run_index << " failed: " << r.fail_reason << "\n";
        }
    }
    std::cout << records.size() << " runs complete\n";
    return any_failed ? 1 : 0;
}

struct GenArgs {
    std::string kind;
    int n = 0;
    double p = -1.0;
    int k = 0;
    int m = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& args) {
    GraphGenSpec spec;
    spec.n = args.n;
    if (args.kind == "er") {
        spec.kind = GraphKind::erdos_renyi;
        if (args.p < 0) throw ConfigError("er needs --p");
        spec.p = args.p;
    } else if (args.kind == "ba") {
        spec.kind = GraphKind::barabasi_albert;
        if (args.m < 1) throw ConfigError("ba needs --m");
        spec.m = args.m;
    } else if (args.kind == "ws") {
        spec.kind = GraphKind::watts_strogatz;
        spec.k = args.k > 0 ? args.k : 6;
        spec.p = args.p >= 0 ? args.p : 0.1;
    } else {
        throw ConfigError("unknown --kind `" + args.kind + "` (expected er, ba or ws)");
    }
    Graph graph = generate(spec, args.seed);
    save_edge_list(graph, args.out);
    std::cout << spec.label() << ": " << graph.node_count() << " nodes, " << graph.edge_count()
              << " edges -> " << args.out << "\n";
    return 0;
}

struct SimulateArgs {
    std::string graph_path;
    bool directed = false;
    std::string model = "ic";
    double p = 0.1;
    double beta = 0.1;
    double gamma = 0.1;
    int steps = 100;
    std::string seeds_csv;
    std::uint64_t seed = 0;
    std::string trace_path;
};

int cmd_simulate(const SimulateArgs& args) {
    Graph graph = load_edge_list(args.graph_path, args.directed);
    DiffusionConfig config;
    config.kind = model_from_name(args.model);
    config.p = args.p;
    config.beta = args.beta;
    config.gamma = args.gamma;
    config.max_steps = args.steps;

    std::vector<int> ids = parse_id_list(args.seeds_csv);
    SeedSet seeds{ids, static_cast<int>(ids.size())};
    Trace trace = simulate(graph, config, seeds, args.seed);
    if (!args.trace_path.empty()) write_trace_json_file(trace, graph, args.trace_path);

    std::cout << "model=" << config.label() << " seeds=" << seeds.ids.size()
              << " activated=" << trace.activated_set().size()
              << " frames=" << trace.steps.size() << " terminated="
              << (trace.terminated_reason == Trace::Termination::quiescent ? "quiescent"
                                                                           : "step_cap")
              << "\n";
    return 0;
}

struct LocateArgs {
    std::string graph_path;
    bool directed = false;
    std::string infected_path;
    std::string method = "jordan";
    int sources = 1;
};

int cmd_locate(const LocateArgs& args) {
    Graph graph = load_edge_list(args.graph_path, args.directed);
    Observation obs;
    obs.infected = read_id_file(args.infected_path);
    SlResult result;
    if (args.method == "jordan")
        result = jordan_center(graph, obs, args.sources);
    else if (args.method == "netsleuth")
        result = netsleuth(graph, obs, args.sources);
    else
        throw ConfigError("unknown --method `" + args.method + "` (expected jordan or netsleuth)");
    for (int id : result.predicted) std::cout << id << "\n";
    return 0;
}

int cmd_validate(const std::string& config) {
    ExperimentSpec spec = load_spec_file(config);
    std::cout << expand_spec(spec).size() << " runs\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphflow: benchmark engine for flow processes on graphs"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Execute an experiment spec");
    run->add_option("--config", run_args.config, "Experiment spec file")->required();
    run->add_option("--parallelism", run_args.parallelism, "Worker threads");
    run->add_option("--out-dir", run_args.out_dir, "Output directory (default $GRAPHFLOW_OUT_DIR or .)");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a graph and write its edge list");
    gen->add_option("--kind", gen_args.kind, "er | ba | ws")->required();
    gen->add_option("--n", gen_args.n, "Node count")->required();
    gen->add_option("--p", gen_args.p, "ER edge prob / WS rewiring prob");
    gen->add_option("--k", gen_args.k, "WS ring degree (default 6)");
    gen->add_option("--m", gen_args.m, "BA attachment count");
    gen->add_option("--seed", gen_args.seed, "Generator seed");
    gen->add_option("--out", gen_args.out, "Output edge-list path")->required();

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run one diffusion simulation");
    sim->add_option("--graph", sim_args.graph_path, "Edge-list file")->required();
    sim->add_flag("--directed", sim_args.directed, "Treat the edge list as directed");
    sim->add_option("--model", sim_args.model, "ic | lt | si | sir");
    sim->add_option("--p", sim_args.p, "IC activation probability");
    sim->add_option("--beta", sim_args.beta, "SI/SIR infection probability");
    sim->add_option("--gamma", sim_args.gamma, "SIR recovery probability");
    sim->add_option("--steps", sim_args.steps, "Step cap");
    sim->add_option("--seeds", sim_args.seeds_csv, "Comma-separated seed ids")->required();
    sim->add_option("--seed", sim_args.seed, "RNG seed");
    sim->add_option("--trace", sim_args.trace_path, "Trace JSON output path");

    LocateArgs loc_args;
    auto* loc = app.add_subcommand("locate", "Localize diffusion sources");
    loc->add_option("--graph", loc_args.graph_path, "Edge-list file")->required();
    loc->add_flag("--directed", loc_args.directed, "Treat the edge list as directed");
    loc->add_option("--infected", loc_args.infected_path, "File with one infected id per line")
        ->required();
    loc->add_option("--method", loc_args.method, "jordan | netsleuth");
    loc->add_option("--sources", loc_args.sources, "Number of sources");

    std::string validate_config;
    auto* val = app.add_subcommand("validate", "Check an experiment spec");
    val->add_option("--config", validate_config, "Experiment spec file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (loc->parsed()) return cmd_locate(loc_args);
        if (val->parsed()) return cmd_validate(validate_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
