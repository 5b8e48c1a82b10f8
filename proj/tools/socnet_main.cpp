// socnet: sample personas, generate networks (chat backend or classical
// baselines), evaluate structure and homophily, and compare against
// reference statistics. Everything is seeded and reproducible from the
// manifest each command writes.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "socnet/baselines.hpp"
#include "socnet/compare.hpp"
#include "socnet/errors.hpp"
#include "socnet/generators.hpp"
#include "socnet/graph.hpp"
#include "socnet/homophily.hpp"
#include "socnet/llm.hpp"
#include "socnet/metrics.hpp"
#include "socnet/persona.hpp"
#include "socnet/rng.hpp"

using json = nlohmann::json;
using namespace socnet;

namespace {

// exit codes: 0 success, 1 usage, 2 data or config, 3 backend
constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr int kBackendError = 3;

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : buf.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

std::vector<std::filesystem::path> edge_files(const std::string& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) throw DataError(dir + " is not a directory");
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".edges") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("no .edges files in " + dir);
    return files;
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::vector<Variable> parse_vars(const std::string& list) {
    std::vector<Variable> vars;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = variable_from_name(item);
        if (!v) throw ConfigError("unknown variable '" + item + "'");
        vars.push_back(*v);
    }
    if (vars.empty()) throw ConfigError("--vars needs at least one variable");
    return vars;
}

json metric_json(const MetricVector& m) {
    return {{"density", m.density},
            {"avg_clustering", m.avg_clustering},
            {"lcc_fraction", m.lcc_fraction},
            {"avg_sp_norm", m.avg_sp_norm},
            {"modularity", m.modularity},
            {"degree_gini", m.degree_gini}};
}

struct StatsEntry {
    std::string name;
    int nodes = 0;
    int edges = 0;
    MetricVector metrics;
};

std::vector<StatsEntry> load_stats_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (!j.contains("networks") || !j["networks"].is_array() || j["networks"].empty())
        throw DataError(path + ": expected a non-empty \"networks\" array");
    std::vector<StatsEntry> entries;
    try {
        for (const auto& n : j["networks"]) {
            StatsEntry e;
            e.name = n.at("name").get<std::string>();
            e.nodes = n.at("nodes").get<int>();
            e.edges = n.at("edges").get<int>();
            const auto& m = n.at("metrics");
            e.metrics.density = m.at("density").get<double>();
            e.metrics.avg_clustering = m.at("avg_clustering").get<double>();
            e.metrics.lcc_fraction = m.at("lcc_fraction").get<double>();
            e.metrics.avg_sp_norm = m.at("avg_sp_norm").get<double>();
            e.metrics.modularity = m.at("modularity").get<double>();
            e.metrics.degree_gini = m.at("degree_gini").get<double>();
            entries.push_back(std::move(e));
        }
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    return entries;
}

// Reference densities and mean clustering for baseline fitting, from either
// a stats JSON or a directory of edge lists.
struct FitRefs {
    std::vector<double> densities;
    double mean_clustering = 0.0;
};

FitRefs load_fit_refs(const std::string& path) {
    FitRefs refs;
    double clustering_sum = 0.0;
    if (std::filesystem::is_directory(path)) {
        for (const auto& file : edge_files(path)) {
            Graph g = load_edge_list(file.string()).graph;
            refs.densities.push_back(density(g));
            clustering_sum += avg_clustering(g);
        }
    } else {
        for (const auto& e : load_stats_file(path)) {
            double n = e.nodes;
            refs.densities.push_back(2.0 * e.edges / (n * (n - 1.0)));
            clustering_sum += e.metrics.avg_clustering;
        }
    }
    refs.mean_clustering = clustering_sum / static_cast<double>(refs.densities.size());
    return refs;
}

json homophily_json(const HomophilyReport& rep) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json cross = json::object(), same = json::object(), pairwise = json::object(), stats = json::object();
    for (const auto& [var, v] : rep.cross_ratio) cross[var] = opt(v);
    for (const auto& [var, v] : rep.same_ratio) same[var] = opt(v);
    for (const auto& [var, m] : rep.pairwise) {
        pairwise[var] = {{"groups", m.groups}, {"ratio", m.ratio}};
    }
    for (const auto& [var, rows] : rep.degree_stats) {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"group", r.group},
                           {"count", r.count},
                           {"mean_norm_degree", r.mean_norm_degree},
                           {"degree_gini", r.degree_gini},
                           {"mean_gs", opt(r.mean_gs)}});
        stats[var] = std::move(arr);
    }
    json lean = json::array();
    for (const auto& v : rep.democrat_lean_per_node) lean.push_back(opt(v));
    return {{"cross_ratio", cross},
            {"same_ratio", same},
            {"pairwise", pairwise},
            {"age_ratio", opt(rep.age_ratio)},
            {"isolation", opt(rep.isolation)},
            {"polarization", opt(rep.polarization)},
            {"degree_stats", stats},
            {"democrat_lean_per_node", lean}};
}

struct PersonasCmd {
    std::string action;
    std::string config = "data/configs/us_demographics.json";
    std::string in_path;
    std::string out_path = "personas.json";
    std::string vars;
    std::string backend = "mock";
    std::string mock_config = "data/configs/mock_default.json";
    std::string http_config;
    int n = 50;
    std::uint64_t seed = 0;
};

int run_personas(const PersonasCmd& cmd) {
    PersonaSet out;
    if (cmd.action == "sample") {
        auto cfg = load_demographic_config(cmd.config);
        out = sample_personas(cfg, cmd.n, cmd.seed);
    } else if (cmd.action == "shuffle") {
        out = shuffle_demographics(load_personas(cmd.in_path), cmd.seed);
    } else if (cmd.action == "project") {
        out = project(load_personas(cmd.in_path), parse_vars(cmd.vars));
    } else { // interests
        auto set = load_personas(cmd.in_path);
        if (cmd.backend == "mock") {
            MockBackend mock(set, load_mock_params(cmd.mock_config));
            out = attach_interests(set, mock, cmd.seed);
        } else {
            if (cmd.http_config.empty()) throw ConfigError("--http-config is required with --backend http");
            HttpBackend http(load_http_config(cmd.http_config));
            out = attach_interests(set, http, cmd.seed);
        }
    }
    save_personas(out, cmd.out_path);
    std::cout << "wrote " << cmd.out_path << " (" << out.personas.size() << " personas)\n";
    return 0;
}

struct GenerateCmd {
    std::string method;
    std::string out_dir = "networks";
    std::string personas_path;
    std::string config = "data/configs/us_demographics.json";
    std::string view = "degrees";
    std::string backend = "mock";
    std::string mock_config = "data/configs/mock_default.json";
    std::string http_config;
    std::string fit_path;
    int n_personas = 0;
    int count = 30;
    int n = 50;
    int m = 5;
    int k = 10;
    int subset = 0;
    int retry_cap = 5;
    int trials = 30;
    int jobs = 4;
    double p = 0.1;
    double lambda = 0.0;
    bool reasons = false;
    bool p_given = false;
    std::uint64_t seed = 0;
};

int run_generate_baseline(const GenerateCmd& cmd, json& manifest) {
    double p = cmd.p;
    int m = cmd.m, k = cmd.k;
    if (!cmd.fit_path.empty()) {
        FitRefs refs = load_fit_refs(cmd.fit_path);
        double ref_density = fit_er_p(refs.densities);
        manifest["fit"] = cmd.fit_path;
        json fitted{{"ref_density", ref_density}, {"ref_clustering", refs.mean_clustering}};
        if (cmd.method == "er") {
            p = ref_density;
            fitted["p"] = p;
        } else if (cmd.method == "ba") {
            m = fit_ba_m(cmd.n, ref_density);
            fitted["m"] = m;
        } else {
            WsFit fit = fit_ws(cmd.n, ref_density, refs.mean_clustering, cmd.trials, cmd.seed);
            k = fit.k;
            p = fit.p;
            fitted["k"] = k;
            fitted["p"] = p;
            fitted["mean_clustering"] = fit.mean_clustering;
        }
        manifest["fitted"] = fitted;
        std::cout << "fitted " << fitted.dump() << "\n";
    } else if (cmd.method == "er" && !cmd.p_given) {
        throw ConfigError("er needs --p or --fit");
    }
    json params{{"n", cmd.n}};
    if (cmd.method != "ba") params["p"] = p;
    if (cmd.method == "ba") params["m"] = m;
    if (cmd.method == "ws") params["k"] = k;
    manifest["params"] = params;

    json networks = json::array();
    for (int i = 0; i < cmd.count; ++i) {
        std::uint64_t seed_i = derive_seed(cmd.seed, static_cast<std::uint64_t>(i));
        Graph g = cmd.method == "er"   ? erdos_renyi(cmd.n, p, seed_i)
                  : cmd.method == "ba" ? barabasi_albert(cmd.n, m, seed_i)
                                       : watts_strogatz(cmd.n, k, p, seed_i);
        char name[32];
        std::snprintf(name, sizeof name, "net_%03d.edges", i);
        save_edge_list(g, (std::filesystem::path(cmd.out_dir) / name).string());
        networks.push_back(
            {{"index", i}, {"seed", seed_i}, {"file", name}, {"nodes", g.node_count()}, {"edges", g.edge_count()}});
    }
    manifest["networks"] = networks;
    return 0;
}

int run_generate(const GenerateCmd& cmd) {
    std::filesystem::create_directories(cmd.out_dir);
    json manifest{{"command", "generate"}, {"method", cmd.method}, {"seed", cmd.seed}, {"count", cmd.count}};

    int code = 0;
    if (cmd.method == "er" || cmd.method == "ba" || cmd.method == "ws") {
        code = run_generate_baseline(cmd, manifest);
    } else {
        auto method = method_from_name(cmd.method);
        if (!method) throw ConfigError("unknown method '" + cmd.method + "'");
        if (cmd.personas_path.empty() == (cmd.n_personas == 0))
            throw ConfigError("pass exactly one of --personas or --n-personas");

        PersonaSet set;
        if (!cmd.personas_path.empty()) {
            set = load_personas(cmd.personas_path);
            manifest["personas"] = cmd.personas_path;
            manifest["personas_digest"] = file_digest(cmd.personas_path);
        } else {
            auto cfg = load_demographic_config(cmd.config);
            set = sample_personas(cfg, cmd.n_personas, cmd.seed);
            manifest["config"] = cmd.config;
            manifest["config_digest"] = cfg.hash;
            save_personas(set, (std::filesystem::path(cmd.out_dir) / "personas.json").string());
        }

        GenerationSpec spec;
        spec.method = *method;
        std::string view = cmd.view == "degree" ? "degrees" : cmd.view;
        auto v = view_from_name(view);
        if (!v) throw ConfigError("unknown view '" + cmd.view + "'");
        spec.view = *v;
        if (cmd.lambda > 0.0) spec.lambda = cmd.lambda;
        if (cmd.subset > 0) spec.subset_size = cmd.subset;
        spec.ask_reasons = cmd.reasons;
        spec.retry_cap = cmd.retry_cap;
        spec.seed = cmd.seed;
        manifest["view"] = view_name(spec.view);
        if (spec.lambda) manifest["lambda"] = *spec.lambda;
        if (spec.subset_size) manifest["subset"] = *spec.subset_size;

        std::unique_ptr<ChatBackend> backend;
        if (cmd.backend == "mock") {
            backend = std::make_unique<MockBackend>(set, load_mock_params(cmd.mock_config));
            manifest["backend"] = "mock";
            manifest["backend_digest"] = file_digest(cmd.mock_config);
        } else if (cmd.backend == "http") {
            if (cmd.http_config.empty()) throw ConfigError("--http-config is required with --backend http");
            backend = std::make_unique<HttpBackend>(load_http_config(cmd.http_config));
            manifest["backend"] = "http";
            manifest["backend_digest"] = file_digest(cmd.http_config);
        } else {
            throw ConfigError("unknown backend '" + cmd.backend + "'");
        }

        auto items = generate_batch(set, *backend, spec, cmd.count, cmd.jobs);
        json networks = json::array();
        long in_tok = 0, out_tok = 0;
        for (const auto& item : items) {
            json entry{{"index", item.index}, {"seed", item.seed}};
            if (item.result) {
                char name[32], log_name[32];
                std::snprintf(name, sizeof name, "net_%03d.edges", item.index);
                std::snprintf(log_name, sizeof log_name, "net_%03d.gen.json", item.index);
                save_edge_list(item.result->graph, (std::filesystem::path(cmd.out_dir) / name).string());
                write_generation_json(*item.result, (std::filesystem::path(cmd.out_dir) / log_name).string());
                entry["file"] = name;
                entry["log"] = log_name;
                entry["nodes"] = item.result->graph.node_count();
                entry["edges"] = item.result->graph.edge_count();
                in_tok += item.result->ledger.input_tokens;
                out_tok += item.result->ledger.output_tokens;
            } else {
                entry["error"] = item.error;
                std::cerr << "network " << item.index << " failed: " << item.error << "\n";
                code = kBackendError;
            }
            networks.push_back(std::move(entry));
        }
        manifest["networks"] = networks;
        manifest["total_input_tokens"] = in_tok;
        manifest["total_output_tokens"] = out_tok;
    }

    write_atomic((std::filesystem::path(cmd.out_dir) / "manifest.json").string(), manifest.dump(1) + "\n");
    std::cout << "wrote " << cmd.out_dir << "/manifest.json\n";
    return code;
}

struct EvalCmd {
    std::string networks_dir;
    std::string personas_path;
    std::string out_dir = "report";
    int min_group = 10;
    std::uint64_t seed = 0;
};

int run_eval(const EvalCmd& cmd) {
    auto files = edge_files(cmd.networks_dir);
    std::filesystem::create_directories(cmd.out_dir);

    std::vector<Graph> graphs;
    json metrics = json::array();
    for (const auto& file : files) {
        Graph g = load_edge_list(file.string()).graph;
        metrics.push_back({{"file", file.filename().string()}, {"metrics", metric_json(metric_vector(g, cmd.seed))}});
        graphs.push_back(std::move(g));
    }
    write_atomic((std::filesystem::path(cmd.out_dir) / "metrics.json").string(),
                 json{{"networks", metrics}}.dump(1) + "\n");
    write_histogram_csv(pooled_degree_histogram(graphs),
                        (std::filesystem::path(cmd.out_dir) / "pooled_degree_histogram.csv").string());

    if (!cmd.personas_path.empty()) {
        auto set = load_personas(cmd.personas_path);
        json reports = json::array();
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            auto lg = make_labeled_graph(graphs[i], set);
            reports.push_back({{"file", files[i].filename().string()},
                               {"report", homophily_json(homophily_report(lg, cmd.min_group))}});
        }
        write_atomic((std::filesystem::path(cmd.out_dir) / "homophily.json").string(),
                     json{{"networks", reports}}.dump(1) + "\n");
    }
    std::cout << "evaluated " << graphs.size() << " networks into " << cmd.out_dir << "\n";
    return 0;
}

struct CompareCmd {
    std::string real_path;
    std::string gen_dir;
    std::string fitted;
    std::string out_prefix = "comparison";
    std::uint64_t seed = 0;
};

// Metrics plus pooled normalized degrees for one side of the comparison.
// A stats file carries no degree data, so `degrees` stays unset.
struct Side {
    std::vector<MetricVector> metrics;
    std::optional<std::vector<double>> degrees;
};

Side load_side(const std::string& path, std::uint64_t seed) {
    Side side;
    if (!std::filesystem::is_directory(path)) {
        for (const auto& e : load_stats_file(path)) side.metrics.push_back(e.metrics);
        return side;
    }
    side.degrees.emplace();
    for (const auto& file : edge_files(path)) {
        Graph g = load_edge_list(file.string()).graph;
        side.metrics.push_back(metric_vector(g, seed));
        auto deg = normalized_degrees(g);
        side.degrees->insert(side.degrees->end(), deg.begin(), deg.end());
    }
    return side;
}

int run_compare(const CompareCmd& cmd) {
    static const std::set<std::string> known{"density",     "avg_clustering", "lcc_fraction",
                                             "avg_sp_norm", "modularity",     "degree_gini"};
    std::set<std::string> fitted;
    std::stringstream ss(cmd.fitted);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!known.count(item)) throw ConfigError("unknown fitted metric '" + item + "'");
        fitted.insert(item);
    }

    Side real = load_side(cmd.real_path, cmd.seed);
    Side gen = load_side(cmd.gen_dir, cmd.seed);
    auto table = summarize(real.metrics, gen.metrics, fitted, real.degrees ? &*real.degrees : nullptr,
                           gen.degrees ? &*gen.degrees : nullptr);
    std::string text = comparison_text(table);
    write_comparison_json(table, cmd.out_prefix + ".json");
    write_atomic(cmd.out_prefix + ".txt", text);
    std::cout << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seeded social-network generation, evaluation, and comparison"};
    app.require_subcommand(1);
    app.footer("exit codes: 0 ok, 1 usage, 2 data/config, 3 backend");

    PersonasCmd pc;
    auto* personas = app.add_subcommand("personas", "sample, shuffle, project, or enrich persona files");
    personas->require_subcommand(1);
    auto add_personas_sub = [&](const char* name, const char* desc) {
        auto* sub = personas->add_subcommand(name, desc);
        sub->add_option("--out", pc.out_path, "output persona JSON");
        sub->add_option("--seed", pc.seed, "RNG seed");
        sub->callback([&pc, name] { pc.action = name; });
        return sub;
    };
    auto* p_sample = add_personas_sub("sample", "draw personas from a demographic config");
    p_sample->add_option("--config", pc.config, "demographic config JSON");
    p_sample->add_option("--n", pc.n, "number of personas")->required();
    auto* p_shuffle = add_personas_sub("shuffle", "independently permute each demographic column");
    p_shuffle->add_option("--in", pc.in_path, "input persona JSON")->required();
    auto* p_project = add_personas_sub("project", "keep a subset of variables");
    p_project->add_option("--in", pc.in_path, "input persona JSON")->required();
    p_project->add_option("--vars", pc.vars, "comma-separated variables to keep")->required();
    auto* p_interests = add_personas_sub("interests", "attach backend-written interests");
    p_interests->add_option("--in", pc.in_path, "input persona JSON")->required();
    p_interests->add_option("--backend", pc.backend, "mock or http")->check(CLI::IsMember({"mock", "http"}));
    p_interests->add_option("--mock-config", pc.mock_config, "mock backend params");
    p_interests->add_option("--http-config", pc.http_config, "chat API config");

    GenerateCmd gc;
    auto* generate = app.add_subcommand("generate", "generate a batch of networks");
    generate->add_option("--method", gc.method, "global, local, sequential, er, ba, or ws")
        ->required()
        ->check(CLI::IsMember({"global", "local", "sequential", "er", "ba", "ws"}));
    generate->add_option("--out", gc.out_dir, "output directory");
    generate->add_option("--count", gc.count, "networks to generate");
    generate->add_option("--seed", gc.seed, "batch seed");
    generate->add_option("--personas", gc.personas_path, "persona JSON for chat methods");
    generate->add_option("--n-personas", gc.n_personas, "sample this many personas instead");
    generate->add_option("--config", gc.config, "demographic config for --n-personas");
    generate->add_option("--view", gc.view, "sequential state: degrees or friends");
    generate->add_option("--lambda", gc.lambda, "exponential friend-count target rate");
    generate->add_option("--subset", gc.subset, "candidates offered per subject");
    generate->add_flag("--reasons", gc.reasons, "ask for a reason per selection");
    generate->add_option("--retry-cap", gc.retry_cap, "attempts per turn");
    generate->add_option("--backend", gc.backend, "mock or http");
    generate->add_option("--mock-config", gc.mock_config, "mock backend params");
    generate->add_option("--http-config", gc.http_config, "chat API config");
    generate->add_option("--jobs", gc.jobs, "parallel networks");
    generate->add_option("--n", gc.n, "baseline node count");
    generate->add_option("--p", gc.p, "edge or rewiring probability (er, ws)")->each([&](const std::string&) {
        gc.p_given = true;
    });
    generate->add_option("--m", gc.m, "attachments per node (ba)");
    generate->add_option("--k", gc.k, "lattice degree (ws)");
    generate->add_option("--fit", gc.fit_path, "fit baseline params to reference networks (dir or stats JSON)");
    generate->add_option("--trials", gc.trials, "samples per rewiring probability when fitting ws");

    EvalCmd ec;
    auto* eval = app.add_subcommand("eval", "structural metrics and homophily for a network directory");
    eval->add_option("--networks", ec.networks_dir, "directory of .edges files")->required();
    eval->add_option("--personas", ec.personas_path, "persona JSON enabling homophily reports");
    eval->add_option("--out", ec.out_dir, "report directory");
    eval->add_option("--min-group", ec.min_group, "smallest group kept in per-group tables");
    eval->add_option("--seed", ec.seed, "community detection seed");

    CompareCmd cc;
    auto* compare = app.add_subcommand("compare", "real-versus-generated comparison table");
    compare->add_option("--real", cc.real_path, "stats JSON or directory of .edges files")->required();
    compare->add_option("--gen", cc.gen_dir, "directory of generated .edges files")->required();
    compare->add_option("--fitted", cc.fitted, "comma-separated metrics tuned on the real side");
    compare->add_option("--out", cc.out_prefix, "output prefix for .json and .txt");
    compare->add_option("--seed", cc.seed, "community detection seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints the message or requested help
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (personas->parsed()) return run_personas(pc);
        if (generate->parsed()) return run_generate(gc);
        if (eval->parsed()) return run_eval(ec);
        return run_compare(cc);
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return kBackendError;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kDataError;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
}
