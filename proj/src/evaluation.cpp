#include "treekm/evaluation.hpp"

#include <chrono>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "format_util.hpp"
#include "treekm/errors.hpp"

namespace treekm {

double purity_accuracy(const std::vector<std::size_t>& assignments,
                       const std::vector<std::string>& labels) {
    if (assignments.empty()) throw std::invalid_argument("purity: empty input");
    if (assignments.size() != labels.size())
        throw std::invalid_argument("purity: assignments and labels differ in length");

    std::map<std::size_t, std::map<std::string, std::size_t>> counts;
    for (std::size_t i = 0; i < assignments.size(); ++i) ++counts[assignments[i]][labels[i]];

    std::size_t majority_total = 0;
    for (const auto& [cluster, by_label] : counts) {
        std::size_t best = 0;
        for (const auto& [label, cnt] : by_label) best = std::max(best, cnt);
        majority_total += best;
    }
    return static_cast<double>(majority_total) / static_cast<double>(assignments.size());
}

const char* method_name(InitMethod m) {
    return m == InitMethod::tree ? "tree" : "random";
}

EvaluationReport benchmark(const Dataset& d, std::size_t k,
                           const std::vector<InitMethod>& methods, const BenchmarkConfig& cfg,
                           const std::string& dataset_name) {
    if (!d.has_labels()) throw DataError("benchmark needs ground-truth labels");
    if (cfg.runs < 1) throw std::invalid_argument("benchmark needs at least one run");
    if (k < 1 || k > d.n) throw std::invalid_argument("k must be between 1 and the object count");

    using clock = std::chrono::steady_clock;

    EvaluationReport report;
    report.dataset = dataset_name;
    report.k = k;
    for (InitMethod method : methods) {
        MethodReport mr;
        mr.method = method;
        for (std::size_t run = 0; run < cfg.runs; ++run) {
            RunRecord rec;
            const auto start = clock::now();
            Centroids init = (method == InitMethod::tree)
                                 ? tree_seed(d, k, cfg.seed)
                                 : random_centroids(d, k, cfg.base_seed + run);
            const ClusteringResult result = lloyd(d, init, cfg.lloyd);
            rec.runtime_seconds = std::chrono::duration<double>(clock::now() - start).count();
            if (method == InitMethod::random) rec.seed = cfg.base_seed + run;
            rec.accuracy = purity_accuracy(result.assignments, d.labels);
            rec.iterations = result.iterations;
            rec.sse = sse(d, result.assignments, result.centroids);
            mr.runs.push_back(rec);
        }
        double acc = 0.0, time = 0.0;
        for (const RunRecord& rec : mr.runs) {
            acc += rec.accuracy;
            time += rec.runtime_seconds;
        }
        mr.mean_accuracy = acc / static_cast<double>(mr.runs.size());
        mr.mean_runtime_seconds = time / static_cast<double>(mr.runs.size());
        report.methods.push_back(std::move(mr));
    }
    return report;
}

std::string to_json(const EvaluationReport& report, bool include_timing) {
    nlohmann::ordered_json j;
    j["dataset"] = report.dataset;
    j["k"] = report.k;
    j["methods"] = nlohmann::ordered_json::array();
    for (const MethodReport& mr : report.methods) {
        nlohmann::ordered_json jm;
        jm["method"] = method_name(mr.method);
        jm["runs"] = nlohmann::ordered_json::array();
        for (const RunRecord& rec : mr.runs) {
            nlohmann::ordered_json jr;
            if (rec.seed) jr["seed"] = *rec.seed;
            jr["accuracy"] = rec.accuracy;
            if (include_timing) jr["runtime_seconds"] = rec.runtime_seconds;
            jr["iterations"] = rec.iterations;
            jr["sse"] = rec.sse;
            jm["runs"].push_back(std::move(jr));
        }
        jm["mean_accuracy"] = mr.mean_accuracy;
        if (include_timing) jm["mean_runtime_seconds"] = mr.mean_runtime_seconds;
        j["methods"].push_back(std::move(jm));
    }
    return j.dump(2) + "\n";
}

std::string summary_csv(const EvaluationReport& report, bool include_timing) {
    std::string out = "dataset,k,method,mean_time_sec,mean_accuracy_pct\n";
    for (const MethodReport& mr : report.methods) {
        out += report.dataset;
        out += ',';
        out += std::to_string(report.k);
        out += ',';
        out += method_name(mr.method);
        out += ',';
        if (include_timing) out += detail::fixed(mr.mean_runtime_seconds, 4);
        out += ',';
        out += detail::fixed(mr.mean_accuracy * 100.0, 1);
        out += '\n';
    }
    return out;
}

}  // namespace treekm
