#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "graphflow/errors.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/ibm.hpp"
#include "graphflow/im.hpp"
#include "graphflow/runner.hpp"
#include "graphflow/sl.hpp"

namespace py = pybind11;
using namespace graphflow;

namespace {

SeedSet make_seed_set(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return SeedSet{ids, static_cast<int>(ids.size())};
}

GraphGenSpec make_gen_spec(const std::string& kind, int n, double p, int k, int m) {
    GraphGenSpec spec;
    spec.n = n;
    if (kind == "er") {
        spec.kind = GraphKind::erdos_renyi;
        spec.p = p;
    } else if (kind == "ba") {
        spec.kind = GraphKind::barabasi_albert;
        spec.m = m;
    } else if (kind == "ws") {
        spec.kind = GraphKind::watts_strogatz;
        spec.k = k;
        spec.p = p;
    } else {
        throw ConfigError("unknown graph kind: " + kind);
    }
    return spec;
}

DiffusionConfig make_diffusion(const std::string& model, double p, double beta, double gamma,
                               int max_steps) {
    DiffusionConfig config;
    config.kind = model_from_name(model);
    config.p = p;
    config.beta = beta;
    config.gamma = gamma;
    config.max_steps = max_steps;
    config.validate();
    return config;
}

} // namespace

PYBIND11_MODULE(graphflow, m) {
    m.doc() = "Benchmark engine for flow processes on graphs: diffusion simulation, "
              "influence maximization, influence blocking and source localization.";

    py::register_exception<ParseError>(m, "GraphflowParseError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "GraphflowConfigError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("directed", &Graph::directed)
        .def("neighbors",
             [](const Graph& g, int v) {
                 auto nb = g.neighbors(v);
                 return std::vector<int>(nb.begin(), nb.end());
             })
        .def("degree", &Graph::degree)
        .def("edge_list", &Graph::edge_list)
        .def("serialize",
             [](const Graph& g) {
                 std::ostringstream out;
                 serialize(g, out);
                 return out.str();
             })
        .def("__repr__", [](const Graph& g) {
            std::ostringstream out;
            out << "Graph(nodes=" << g.node_count() << ", edges=" << g.edge_count()
                << (g.directed() ? ", directed" : "") << ")";
            return out.str();
        });

    m.def(
        "generate",
        [](const std::string& kind, int n, double p, int k, int mm, std::uint64_t seed) {
            return generate(make_gen_spec(kind, n, p, k, mm), seed);
        },
        py::arg("kind"), py::arg("n"), py::arg("p") = 0.1, py::arg("k") = 6, py::arg("m") = 1,
        py::arg("seed") = 0, "Generate an er/ba/ws graph deterministically from a seed.");
    m.def(
        "from_edge_list",
        [](const std::string& text, bool directed) {
            std::istringstream in(text);
            return from_edge_list(in, directed);
        },
        py::arg("text"), py::arg("directed") = false);
    m.def("load_edge_list",
          [](const std::string& path, bool directed) { return load_edge_list(path, directed); },
          py::arg("path"), py::arg("directed") = false);
    m.def("bfs_distances", &bfs_distances, py::arg("graph"), py::arg("source"));

    py::class_<DiffusionConfig>(m, "DiffusionConfig")
        .def(py::init(&make_diffusion), py::arg("model") = "ic", py::arg("p") = 0.1,
             py::arg("beta") = 0.1, py::arg("gamma") = 0.1, py::arg("max_steps") = 100)
        .def_readwrite("p", &DiffusionConfig::p)
        .def_readwrite("beta", &DiffusionConfig::beta)
        .def_readwrite("gamma", &DiffusionConfig::gamma)
        .def_readwrite("max_steps", &DiffusionConfig::max_steps)
        .def_property_readonly("model", [](const DiffusionConfig& c) { return model_name(c.kind); })
        .def("__repr__", [](const DiffusionConfig& c) { return "DiffusionConfig(" + c.label() + ")"; });

    py::class_<Trace>(m, "Trace")
        .def_readonly("steps", &Trace::steps)
        .def_readonly("seed_ids", &Trace::seed_ids)
        .def_property_readonly("terminated_reason",
                               [](const Trace& t) {
                                   return t.terminated_reason == Trace::Termination::quiescent
                                              ? "quiescent"
                                              : "step_cap";
                               })
        .def("activated_set", &Trace::activated_set);

    py::class_<SpreadEstimate>(m, "SpreadEstimate")
        .def_readonly("mean", &SpreadEstimate::mean)
        .def_readonly("std", &SpreadEstimate::std)
        .def_readonly("runs", &SpreadEstimate::runs);

    m.def(
        "simulate",
        [](const Graph& g, const DiffusionConfig& c, std::vector<int> seeds, std::uint64_t seed) {
            return simulate(g, c, make_seed_set(std::move(seeds)), seed);
        },
        py::arg("graph"), py::arg("config"), py::arg("seeds"), py::arg("seed") = 0);
    m.def(
        "expected_spread",
        [](const Graph& g, const DiffusionConfig& c, std::vector<int> seeds, int runs,
           std::uint64_t seed) {
            return expected_spread(g, c, make_seed_set(std::move(seeds)), runs, seed);
        },
        py::arg("graph"), py::arg("config"), py::arg("seeds"), py::arg("runs") = 1000,
        py::arg("seed") = 0);
    m.def(
        "exact_expected_spread",
        [](const Graph& g, const DiffusionConfig& c, std::vector<int> seeds) {
            return exact_expected_spread(g, c, make_seed_set(std::move(seeds)));
        },
        py::arg("graph"), py::arg("config"), py::arg("seeds"));

    m.def(
        "eigen_centrality",
        [](const Graph& g, double tol, int max_iter) {
            EigenCentrality c = eigen_centrality(g, tol, max_iter);
            return py::make_tuple(c.scores, c.converged, c.iterations);
        },
        py::arg("graph"), py::arg("tolerance") = 1e-10, py::arg("max_iterations") = 1000,
        "Returns (scores, converged, iterations).");
    m.def(
        "select_seeds",
        [](const Graph& g, const std::string& strategy, int budget, std::uint64_t seed) {
            return select_seeds(g, seed_strategy_from_name(strategy), budget, seed).ids;
        },
        py::arg("graph"), py::arg("strategy"), py::arg("budget"), py::arg("seed") = 0);

    py::class_<ImResult>(m, "ImResult")
        .def_property_readonly("seeds", [](const ImResult& r) { return r.seeds.ids; })
        .def_readonly("marginal_gains", &ImResult::marginal_gains)
        .def_readonly("wall_time_seconds", &ImResult::wall_time_seconds)
        .def_readonly("spread_evaluations", &ImResult::spread_evaluations);

    m.def(
        "greedy_im",
        [](const Graph& g, const DiffusionConfig& c, int budget, int sims, std::uint64_t seed,
           bool exact) {
            return greedy_im(g, c, budget, sims, seed,
                             exact ? SpreadMode::exact_oracle : SpreadMode::monte_carlo);
        },
        py::arg("graph"), py::arg("config"), py::arg("budget"),
        py::arg("sims_per_eval") = kDefaultSimsPerEval, py::arg("seed") = 0,
        py::arg("exact_oracle") = false);
    m.def(
        "celf_im",
        [](const Graph& g, const DiffusionConfig& c, int budget, int sims, std::uint64_t seed,
           bool lookahead, bool exact) {
            return celf_im(g, c, budget, sims, seed, lookahead,
                           exact ? SpreadMode::exact_oracle : SpreadMode::monte_carlo);
        },
        py::arg("graph"), py::arg("config"), py::arg("budget"),
        py::arg("sims_per_eval") = kDefaultSimsPerEval, py::arg("seed") = 0,
        py::arg("lookahead") = false, py::arg("exact_oracle") = false);
    m.def("ris_im", &ris_im, py::arg("graph"), py::arg("config"), py::arg("budget"),
          py::arg("num_rr_sets") = kDefaultRrSets, py::arg("seed") = 0);
    m.def(
        "proxy_scores",
        [](const Graph& g, const std::string& proxy, double beta_hat, int horizon) {
            return proxy_scores(g, proxy_from_name(proxy), beta_hat, horizon);
        },
        py::arg("graph"), py::arg("proxy"), py::arg("beta_hat") = 0.1,
        py::arg("horizon") = kDefaultProxyHorizon);
    m.def(
        "proxy_im",
        [](const Graph& g, const std::string& proxy, int budget, double beta_hat, int horizon) {
            return proxy_im(g, proxy_from_name(proxy), budget, beta_hat, horizon);
        },
        py::arg("graph"), py::arg("proxy"), py::arg("budget"), py::arg("beta_hat") = 0.1,
        py::arg("horizon") = kDefaultProxyHorizon);

    py::class_<BlockingEffect>(m, "BlockingEffect")
        .def_readonly("baseline", &BlockingEffect::baseline)
        .def_readonly("blocked", &BlockingEffect::blocked)
        .def_readonly("effect", &BlockingEffect::effect);

    m.def(
        "apply_block",
        [](const Graph& g, std::vector<int> removed) {
            std::sort(removed.begin(), removed.end());
            return apply_block(g, BlockSet{removed, static_cast<int>(removed.size())});
        },
        py::arg("graph"), py::arg("removed_nodes"));
    m.def(
        "greedy_block",
        [](const Graph& g, const DiffusionConfig& c, std::vector<int> seeds, int budget, int sims,
           std::uint64_t seed) {
            return greedy_block(g, c, make_seed_set(std::move(seeds)), budget, sims, seed)
                .removed_nodes;
        },
        py::arg("graph"), py::arg("config"), py::arg("seeds"), py::arg("budget"),
        py::arg("sims_per_eval") = kDefaultSimsPerEval, py::arg("seed") = 0);
    m.def(
        "proxy_block",
        [](const Graph& g, const std::string& proxy, std::vector<int> seeds, int budget,
           double beta_hat, int horizon) {
            return proxy_block(g, proxy_from_name(proxy), make_seed_set(std::move(seeds)), budget,
                               beta_hat, horizon)
                .removed_nodes;
        },
        py::arg("graph"), py::arg("proxy"), py::arg("seeds"), py::arg("budget"),
        py::arg("beta_hat") = 0.1, py::arg("horizon") = kDefaultProxyHorizon);
    m.def(
        "blocking_effect",
        [](const Graph& g, const DiffusionConfig& c, std::vector<int> seeds,
           std::vector<int> removed, int runs, std::uint64_t seed) {
            std::sort(removed.begin(), removed.end());
            return blocking_effect(g, c, make_seed_set(std::move(seeds)),
                                   BlockSet{removed, static_cast<int>(removed.size())}, runs, seed);
        },
        py::arg("graph"), py::arg("config"), py::arg("seeds"), py::arg("removed_nodes"),
        py::arg("runs") = 1000, py::arg("seed") = 0);

    py::class_<SlResult>(m, "SlResult")
        .def_readonly("predicted", &SlResult::predicted)
        .def_readonly("scores", &SlResult::scores)
        .def_readonly("degenerate", &SlResult::degenerate);

    m.def(
        "jordan_center",
        [](const Graph& g, std::vector<int> infected, int num_sources) {
            std::sort(infected.begin(), infected.end());
            return jordan_center(g, Observation{std::move(infected), -1}, num_sources);
        },
        py::arg("graph"), py::arg("infected"), py::arg("num_sources") = 1);
    m.def(
        "netsleuth",
        [](const Graph& g, std::vector<int> infected, int num_sources) {
            std::sort(infected.begin(), infected.end());
            return netsleuth(g, Observation{std::move(infected), -1}, num_sources);
        },
        py::arg("graph"), py::arg("infected"), py::arg("num_sources") = 1);
    m.def(
        "source_distance",
        [](const Graph& g, std::vector<int> predicted, std::vector<int> truth) {
            return source_distance(g, predicted, truth);
        },
        py::arg("graph"), py::arg("predicted"), py::arg("truth"));
    m.def(
        "plant_cascade",
        [](const Graph& g, const DiffusionConfig& c, int num_sources, std::uint64_t seed) {
            auto [truth, obs] = plant_cascade(g, c, num_sources, seed);
            return py::make_tuple(truth.ids, obs.infected, obs.snapshot_step);
        },
        py::arg("graph"), py::arg("config"), py::arg("num_sources"), py::arg("seed") = 0,
        "Returns (true_sources, infected, snapshot_step).");

    py::class_<ResultRecord>(m, "ResultRecord")
        .def_readonly("run_index", &ResultRecord::run_index)
        .def_readonly("graph", &ResultRecord::graph)
        .def_readonly("diffusion", &ResultRecord::diffusion)
        .def_readonly("seed_strategy", &ResultRecord::seed_strategy)
        .def_readonly("method", &ResultRecord::method)
        .def_readonly("budget", &ResultRecord::budget)
        .def_readonly("epochs", &ResultRecord::epochs)
        .def_readonly("metric", &ResultRecord::metric)
        .def_readonly("mean", &ResultRecord::mean)
        .def_readonly("std", &ResultRecord::std)
        .def_readonly("runtime_seconds", &ResultRecord::runtime_seconds)
        .def_readonly("failed", &ResultRecord::failed)
        .def_readonly("fail_reason", &ResultRecord::fail_reason);

    m.def("load_spec_file", &load_spec_file, py::arg("path"));
    m.def(
        "load_spec",
        [](const std::string& text) {
            std::istringstream in(text);
            return load_spec(in);
        },
        py::arg("text"));
    m.def(
        "expand_count",
        [](const ExperimentSpec& spec) { return expand_spec(spec).size(); },
        py::arg("spec"));
    m.def(
        "run_experiments",
        [](const ExperimentSpec& spec, int parallelism, const std::string& trace_dir) {
            RunOptions options;
            options.parallelism = parallelism;
            options.trace_dir = trace_dir;
            return run_experiments(spec, options);
        },
        py::arg("spec"), py::arg("parallelism") = 1, py::arg("trace_dir") = "");
    m.def("write_csv_file", &write_csv_file, py::arg("records"), py::arg("path"));
    m.def(
        "write_csv",
        [](const std::vector<ResultRecord>& records) {
            std::ostringstream out;
            write_csv(records, out);
            return out.str();
        },
        py::arg("records"));
    m.def("write_trace_json_file", &write_trace_json_file, py::arg("trace"), py::arg("graph"),
          py::arg("path"));

    py::class_<ExperimentSpec>(m, "ExperimentSpec");
}
