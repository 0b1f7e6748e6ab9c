// treekm: tree-seeded k-means batch tool.
//
// Subcommands: dissim (dissimilarity matrix), mst (tree/forest dump),
// seed (initial centroids), cluster (full run), bench (method comparison).
// Object, cluster and feature numbering in flags and outputs is 1-based.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treekm/dataset.hpp"
#include "treekm/dissimilarity.hpp"
#include "treekm/errors.hpp"
#include "treekm/evaluation.hpp"
#include "treekm/kmeans.hpp"
#include "treekm/seeding.hpp"
#include "treekm/spanning_tree.hpp"

namespace {

struct InputOptions {
    std::string path;
    bool has_header = false;
    std::string label_column;
    std::string missing_token;
};

struct MetricOptions {
    std::string combine = "mean";
    std::vector<std::string> range_overrides;  // "feature=value", 1-based
    bool no_zero_zero_skip = false;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--input", in.path, "Input CSV path")->required();
    cmd->add_flag("--header", in.has_header, "First row is a header");
    cmd->add_option("--label-col", in.label_column,
                    "Label column: 1-based index or header name");
    cmd->add_option("--missing-token", in.missing_token,
                    "Cell text treated as missing (default: empty cell)");
}

void add_metric_options(CLI::App* cmd, MetricOptions& mo) {
    cmd->add_option("--combine", mo.combine, "Combine mode: mean | rss")
        ->check(CLI::IsMember({"mean", "rss"}));
    cmd->add_option("--range-override", mo.range_overrides,
                    "Replace a feature's range: FEATURE=VALUE (1-based, repeatable)");
    cmd->add_flag("--no-zero-zero-skip", mo.no_zero_zero_skip,
                  "Compare features where both values are exactly zero");
}

treekm::Dataset load(const InputOptions& in) {
    treekm::LoadOptions opt;
    opt.has_header = in.has_header;
    if (!in.label_column.empty()) opt.label_column = in.label_column;
    opt.missing_token = in.missing_token;
    return treekm::load_csv(in.path, opt);
}

std::map<std::size_t, double> parse_overrides(const std::vector<std::string>& specs) {
    std::map<std::size_t, double> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("range override must look like FEATURE=VALUE: " + spec);
        std::size_t feature = 0;
        double value = 0.0;
        try {
            feature = std::stoul(spec.substr(0, eq));
            value = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse range override: " + spec);
        }
        if (feature < 1) throw std::invalid_argument("feature indices are 1-based: " + spec);
        out[feature - 1] = value;
    }
    return out;
}

treekm::SeedConfig seed_config(const MetricOptions& mo) {
    treekm::SeedConfig cfg;
    cfg.combine_mode = mo.combine == "rss" ? treekm::CombineMode::root_sum_square
                                           : treekm::CombineMode::mean;
    cfg.range_overrides = parse_overrides(mo.range_overrides);
    cfg.zero_zero_skip = !mo.no_zero_zero_skip;
    return cfg;
}

// The whole artifact is built in memory first, so a failed run never leaves
// a partial output file behind.
void emit(const std::string& artifact, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << artifact;
        return;
    }
    const std::string tmp = output_path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw treekm::DataError("cannot write file: " + output_path);
        out << artifact;
        if (!out) throw treekm::DataError("write failed: " + output_path);
    }
    std::filesystem::rename(tmp, output_path);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void require_k(long long k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
}

treekm::Centroids make_seed(const treekm::Dataset& d, const std::string& init, std::size_t k,
                            std::uint64_t seed, const MetricOptions& mo) {
    if (init == "tree") return treekm::tree_seed(d, k, seed_config(mo));
    return treekm::random_centroids(d, k, seed);
}

int run(int argc, char** argv) {
    CLI::App app{"tree-seeded k-means toolkit"};
    app.require_subcommand(1);

    // dissim
    InputOptions dissim_in;
    MetricOptions dissim_metric;
    long long dissim_feature = 0;  // 0 = combined
    std::string dissim_output;
    auto* dissim = app.add_subcommand("dissim", "Dissimilarity matrix as CSV");
    add_input_options(dissim, dissim_in);
    add_metric_options(dissim, dissim_metric);
    dissim->add_option("--feature", dissim_feature,
                       "Emit a single feature's matrix (1-based) instead of the combined one");
    dissim->add_option("--output", dissim_output, "Write here instead of stdout");

    // mst
    InputOptions mst_in;
    MetricOptions mst_metric;
    long long mst_k = 1;
    std::string mst_output;
    auto* mst = app.add_subcommand("mst", "Minimum spanning tree, pruned edges and components");
    add_input_options(mst, mst_in);
    add_metric_options(mst, mst_metric);
    mst->add_option("--k", mst_k, "Prune k-1 heaviest edges (default 1: keep the tree whole)");
    mst->add_option("--output", mst_output, "Write here instead of stdout");

    // seed
    InputOptions seed_in;
    MetricOptions seed_metric;
    long long seed_k = 0;
    std::string seed_init = "tree";
    std::uint64_t seed_seed = 1;
    std::string seed_output;
    auto* seed = app.add_subcommand("seed", "Initial centroids as CSV");
    add_input_options(seed, seed_in);
    add_metric_options(seed, seed_metric);
    seed->add_option("--k", seed_k, "Number of clusters")->required();
    seed->add_option("--init", seed_init, "Initializer: tree | random")
        ->check(CLI::IsMember({"tree", "random"}));
    seed->add_option("--seed", seed_seed, "PRNG seed for random init");
    seed->add_option("--output", seed_output, "Write here instead of stdout");

    // cluster
    InputOptions cl_in;
    MetricOptions cl_metric;
    long long cl_k = 0;
    std::string cl_init = "tree";
    std::uint64_t cl_seed = 1;
    long long cl_max_iter = 100;
    double cl_tol = 0.0;
    std::string cl_format = "json";
    std::string cl_output, cl_centroids_out, cl_sse_out;
    auto* cluster = app.add_subcommand("cluster", "Full clustering run");
    add_input_options(cluster, cl_in);
    add_metric_options(cluster, cl_metric);
    cluster->add_option("--k", cl_k, "Number of clusters")->required();
    cluster->add_option("--init", cl_init, "Initializer: tree | random")
        ->check(CLI::IsMember({"tree", "random"}));
    cluster->add_option("--seed", cl_seed, "PRNG seed for random init");
    cluster->add_option("--max-iter", cl_max_iter, "Iteration cap");
    cluster->add_option("--tol", cl_tol, "Centroid movement tolerance (0 = exact convergence)");
    cluster->add_option("--format", cl_format, "json | csv (csv = assignments)")
        ->check(CLI::IsMember({"json", "csv"}));
    cluster->add_option("--output", cl_output, "Write here instead of stdout");
    cluster->add_option("--centroids-out", cl_centroids_out, "Also dump final centroids CSV here");
    cluster->add_option("--sse-out", cl_sse_out, "Also dump the SSE trace CSV here");

    // bench
    InputOptions bench_in;
    MetricOptions bench_metric;
    long long bench_k = 0;
    long long bench_runs = 10;
    std::uint64_t bench_seed = 1;
    std::string bench_methods = "random,tree";
    std::string bench_format = "json";
    bool bench_no_timing = false;
    std::string bench_output;
    auto* bench = app.add_subcommand("bench", "Compare initializers over repeated runs");
    add_input_options(bench, bench_in);
    add_metric_options(bench, bench_metric);
    bench->add_option("--k", bench_k, "Number of clusters")->required();
    bench->add_option("--runs", bench_runs, "Runs per method");
    bench->add_option("--seed", bench_seed, "Base seed; run r uses seed base+r");
    bench->add_option("--methods", bench_methods, "Comma list from {random, tree}");
    bench->add_option("--format", bench_format, "json (full records) | csv (summary)")
        ->check(CLI::IsMember({"json", "csv"}));
    bench->add_flag("--no-timing", bench_no_timing,
                    "Omit runtime fields so output is stable across runs");
    bench->add_option("--output", bench_output, "Write here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (dissim->parsed()) {
        const treekm::Dataset d = load(dissim_in);
        const auto overrides = parse_overrides(dissim_metric.range_overrides);
        const treekm::RangeVector ranges = treekm::feature_ranges(d, overrides);
        treekm::DissimilarityMatrix matrix;
        if (dissim_feature > 0) {
            if (static_cast<std::size_t>(dissim_feature) > d.m)
                throw std::invalid_argument("feature index out of range");
            matrix = treekm::feature_matrix(d, static_cast<std::size_t>(dissim_feature) - 1,
                                            ranges, !dissim_metric.no_zero_zero_skip);
        } else {
            const auto cfg = seed_config(dissim_metric);
            matrix = treekm::combined_matrix(d, ranges, {cfg.combine_mode, cfg.zero_zero_skip})
                         .matrix;
        }
        emit(matrix.to_csv(), dissim_output);
        return 0;
    }

    if (mst->parsed()) {
        require_k(mst_k);
        const treekm::Dataset d = load(mst_in);
        const auto cfg = seed_config(mst_metric);
        const treekm::RangeVector ranges = treekm::feature_ranges(d, cfg.range_overrides);
        const auto combined =
            treekm::combined_matrix(d, ranges, {cfg.combine_mode, cfg.zero_zero_skip});
        const treekm::SpanningTree tree = treekm::build_mst(combined.matrix);
        const treekm::Forest forest = treekm::prune_heaviest(tree, static_cast<std::size_t>(mst_k));

        std::string out;
        out += "# edges " + std::to_string(tree.edges.size()) + "\n";
        for (const auto& e : tree.edges)
            out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " +
                   fixed6(e.weight) + "\n";
        out += "# pruned " + std::to_string(forest.pruned.size()) + "\n";
        for (const auto& e : forest.pruned)
            out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " +
                   fixed6(e.weight) + "\n";
        out += "# components " + std::to_string(forest.components.size()) + "\n";
        for (const auto& part : forest.components) {
            std::string line;
            for (std::size_t i : part) {
                if (!line.empty()) line += ' ';
                line += std::to_string(i + 1);
            }
            out += line + "\n";
        }
        emit(out, mst_output);
        return 0;
    }

    if (seed->parsed()) {
        require_k(seed_k);
        const treekm::Dataset d = load(seed_in);
        const treekm::Centroids c =
            make_seed(d, seed_init, static_cast<std::size_t>(seed_k), seed_seed, seed_metric);
        emit(c.to_csv(), seed_output);
        return 0;
    }

    if (cluster->parsed()) {
        require_k(cl_k);
        if (cl_max_iter < 1) throw std::invalid_argument("max-iter must be >= 1");
        const treekm::Dataset d = load(cl_in);
        const treekm::Centroids init =
            make_seed(d, cl_init, static_cast<std::size_t>(cl_k), cl_seed, cl_metric);
        treekm::LloydConfig cfg;
        cfg.max_iterations = static_cast<std::size_t>(cl_max_iter);
        cfg.centroid_tolerance = cl_tol;
        const treekm::ClusteringResult result = treekm::lloyd(d, init, cfg);

        if (!cl_centroids_out.empty()) emit(result.centroids.to_csv(), cl_centroids_out);
        if (!cl_sse_out.empty()) {
            std::string trace = "iteration,sse\n";
            for (std::size_t t = 0; t < result.sse_trace.size(); ++t)
                trace += std::to_string(t + 1) + "," + fixed6(result.sse_trace[t]) + "\n";
            emit(trace, cl_sse_out);
        }

        if (cl_format == "csv") {
            std::string out = "object,cluster\n";
            for (std::size_t i = 0; i < result.assignments.size(); ++i)
                out += std::to_string(i + 1) + "," + std::to_string(result.assignments[i] + 1) +
                       "\n";
            emit(out, cl_output);
        } else {
            nlohmann::ordered_json j;
            j["k"] = init.k;
            j["init"] = cl_init;
            if (cl_init == "random") j["seed"] = cl_seed;
            j["iterations"] = result.iterations;
            j["converged"] = result.converged;
            j["sse_trace"] = result.sse_trace;
            j["centroids"] = nlohmann::ordered_json::array();
            for (std::size_t c = 0; c < result.centroids.k; ++c) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (std::size_t f = 0; f < result.centroids.m; ++f)
                    row.push_back(result.centroids.at(c, f));
                j["centroids"].push_back(std::move(row));
            }
            nlohmann::ordered_json assignments = nlohmann::ordered_json::array();
            for (std::size_t a : result.assignments) assignments.push_back(a + 1);
            j["assignments"] = std::move(assignments);
            emit(j.dump(2) + "\n", cl_output);
        }
        return 0;
    }

    if (bench->parsed()) {
        require_k(bench_k);
        if (bench_runs < 1) throw std::invalid_argument("runs must be >= 1");
        if (bench_in.label_column.empty())
            throw std::invalid_argument("bench needs --label-col for ground truth");
        const treekm::Dataset d = load(bench_in);

        std::vector<treekm::InitMethod> methods;
        std::stringstream ss(bench_methods);
        std::string token;
        while (std::getline(ss, token, ',')) {
            if (token == "random") methods.push_back(treekm::InitMethod::random);
            else if (token == "tree") methods.push_back(treekm::InitMethod::tree);
            else throw std::invalid_argument("unknown method: " + token);
        }
        if (methods.empty()) throw std::invalid_argument("no methods selected");

        treekm::BenchmarkConfig cfg;
        cfg.runs = static_cast<std::size_t>(bench_runs);
        cfg.base_seed = bench_seed;
        cfg.seed = seed_config(bench_metric);

        const std::string name = std::filesystem::path(bench_in.path).stem().string();
        const auto report =
            treekm::benchmark(d, static_cast<std::size_t>(bench_k), methods, cfg, name);
        const std::string out = bench_format == "csv"
                                    ? treekm::summary_csv(report, !bench_no_timing)
                                    : treekm::to_json(report, !bench_no_timing);
        emit(out, bench_output);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const treekm::InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const treekm::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
