#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "graphflow/errors.hpp"
#include "graphflow/runner.hpp"

namespace graphflow {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) {
    auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

long long parse_int(const std::string& value, int line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": expected integer, got `" + value + "`");
    }
}

double parse_real(const std::string& value, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": expected number, got `" + value + "`");
    }
}

bool parse_bool(const std::string& value, int line) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("line " + std::to_string(line) + ": expected true/false, got `" + value + "`");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

// Accumulates one [section] entry's keys, then finalizes into the spec.
struct SectionState {
    std::string name;
    int start_line = 0;
    std::map<std::string, std::pair<std::string, int>> keys; // key -> (value, line)

    bool has(const std::string& key) const { return keys.count(key) > 0; }
    std::string get(const std::string& key) const { return keys.at(key).first; }
    int line_of(const std::string& key) const { return keys.at(key).second; }

    void require(const std::string& key) const {
        if (!has(key))
            throw ConfigError("line " + std::to_string(start_line) + ": [" + name +
                              "] entry is missing `" + key + "`");
    }
    void allow_only(std::initializer_list<const char*> allowed) const {
        for (const auto& [key, value] : keys) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || key == a;
            if (!ok)
                throw ConfigError("line " + std::to_string(value.second) + ": unknown key `" + key +
                                  "` in [" + name + "]");
        }
    }
};

GraphSource finalize_graph(const SectionState& s) {
    s.allow_only({"kind", "file", "directed", "n", "p", "k", "m"});
    GraphSource source;
    if (s.has("file")) {
        source.file = s.get("file");
        if (s.has("directed")) source.directed = parse_bool(s.get("directed"), s.line_of("directed"));
        if (s.has("kind"))
            throw ConfigError("line " + std::to_string(s.start_line) +
                              ": graph entry cannot set both file and kind");
        return source;
    }
    s.require("kind");
    s.require("n");
    GraphGenSpec gen;
    const std::string kind = s.get("kind");
    gen.n = static_cast<int>(parse_int(s.get("n"), s.line_of("n")));
    if (kind == "er") {
        gen.kind = GraphKind::erdos_renyi;
        s.require("p");
        gen.p = parse_real(s.get("p"), s.line_of("p"));
    } else if (kind == "ba") {
        gen.kind = GraphKind::barabasi_albert;
        s.require("m");
        gen.m = static_cast<int>(parse_int(s.get("m"), s.line_of("m")));
    } else if (kind == "ws") {
        gen.kind = GraphKind::watts_strogatz;
        gen.k = s.has("k") ? static_cast<int>(parse_int(s.get("k"), s.line_of("k"))) : 6;
        gen.p = s.has("p") ? parse_real(s.get("p"), s.line_of("p")) : 0.1;
    } else {
        throw ConfigError("line " + std::to_string(s.line_of("kind")) + ": unknown graph kind `" +
                          kind + "` (expected er, ba or ws)");
    }
    source.gen = gen;
    return source;
}

DiffusionConfig finalize_diffusion(const SectionState& s) {
    s.allow_only({"model", "p", "beta", "gamma", "steps"});
    s.require("model");
    DiffusionConfig config;
    config.kind = model_from_name(s.get("model"));
    if (s.has("p")) config.p = parse_real(s.get("p"), s.line_of("p"));
    if (s.has("beta")) config.beta = parse_real(s.get("beta"), s.line_of("beta"));
    if (s.has("gamma")) config.gamma = parse_real(s.get("gamma"), s.line_of("gamma"));
    if (s.has("steps")) config.max_steps = static_cast<int>(parse_int(s.get("steps"), s.line_of("steps")));
    return config;
}

SeedConfig finalize_seeds(const SectionState& s) {
    s.allow_only({"strategy", "budget"});
    s.require("strategy");
    s.require("budget");
    SeedConfig config;
    config.strategy = seed_strategy_from_name(s.get("strategy"));
    config.budget = static_cast<int>(parse_int(s.get("budget"), s.line_of("budget")));
    return config;
}

MethodSpec finalize_method(const SectionState& s) {
    s.allow_only({"name", "sims_per_eval", "num_rr_sets", "horizon", "beta_hat", "budget"});
    s.require("name");
    MethodSpec method;
    method.name = s.get("name");
    if (s.has("sims_per_eval"))
        method.sims_per_eval = static_cast<int>(parse_int(s.get("sims_per_eval"), s.line_of("sims_per_eval")));
    if (s.has("num_rr_sets"))
        method.num_rr_sets = static_cast<int>(parse_int(s.get("num_rr_sets"), s.line_of("num_rr_sets")));
    if (s.has("horizon"))
        method.horizon = static_cast<int>(parse_int(s.get("horizon"), s.line_of("horizon")));
    if (s.has("beta_hat")) method.beta_hat = parse_real(s.get("beta_hat"), s.line_of("beta_hat"));
    if (s.has("budget"))
        method.block_budget = static_cast<int>(parse_int(s.get("budget"), s.line_of("budget")));
    return method;
}

} // namespace

ExperimentSpec load_spec(std::istream& in) {
    ExperimentSpec spec;
    SectionState section;
    bool in_section = false;

    auto finalize = [&] {
        if (!in_section) return;
        if (section.name == "graph")
            spec.graphs.push_back(finalize_graph(section));
        else if (section.name == "diffusion")
            spec.diffusions.push_back(finalize_diffusion(section));
        else if (section.name == "seeds")
            spec.seed_strategies.push_back(finalize_seeds(section));
        else if (section.name == "method")
            spec.methods.push_back(finalize_method(section));
        else
            throw ConfigError("line " + std::to_string(section.start_line) + ": unknown section [" +
                              section.name + "]");
        section = SectionState{};
        in_section = false;
    };

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
            finalize();
            section.name = trim(line.substr(1, line.size() - 2));
            section.start_line = line_no;
            in_section = true;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`");

        if (in_section) {
            if (section.keys.count(key))
                throw ConfigError("line " + std::to_string(line_no) + ": duplicate key `" + key + "`");
            section.keys[key] = {value, line_no};
            continue;
        }

        if (key == "task")
            spec.task = task_from_name(value);
        else if (key == "epochs")
            spec.epochs = static_cast<int>(parse_int(value, line_no));
        else if (key == "master_seed")
            spec.master_seed = static_cast<std::uint64_t>(parse_int(value, line_no));
        else if (key == "eval_runs")
            spec.eval_runs = static_cast<int>(parse_int(value, line_no));
        else if (key == "outputs")
            spec.outputs = split_list(value);
        else
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key `" + key + "`");
    }
    finalize();
    spec.validate();
    return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file: " + path);
    return load_spec(in);
}

} // namespace graphflow
