#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treekm/kmeans.hpp"

namespace treekm {

/// Cluster purity: each cluster counts its majority ground-truth label;
/// the score is the sum of majority counts over n. In [0, 1]; invariant
/// under relabeling of clusters and renaming of labels.
double purity_accuracy(const std::vector<std::size_t>& assignments,
                       const std::vector<std::string>& labels);

enum class InitMethod { tree, random };

const char* method_name(InitMethod m);

struct RunRecord {
    std::optional<std::uint64_t> seed;  ///< set for the random method
    double accuracy = 0.0;
    double runtime_seconds = 0.0;  ///< seeding + Lloyd, wall clock; excludes file I/O
    std::size_t iterations = 0;
    double sse = 0.0;
};

struct MethodReport {
    InitMethod method = InitMethod::random;
    std::vector<RunRecord> runs;
    double mean_accuracy = 0.0;
    double mean_runtime_seconds = 0.0;
};

struct EvaluationReport {
    std::string dataset;
    std::size_t k = 0;
    std::vector<MethodReport> methods;
};

struct BenchmarkConfig {
    std::size_t runs = 10;
    /// Run r of the random method is seeded with base_seed + r.
    std::uint64_t base_seed = 1;
    SeedConfig seed;
    LloydConfig lloyd;
};

/// Runs `runs` full clusterings per method and records accuracy, wall-clock
/// runtime, iteration count and final SSE, plus per-method means. The tree
/// method is deterministic, so its runs coincide by construction; they are
/// executed and reported individually all the same. Requires labels.
EvaluationReport benchmark(const Dataset& d, std::size_t k,
                           const std::vector<InitMethod>& methods,
                           const BenchmarkConfig& cfg = {},
                           const std::string& dataset_name = "");

/// Full report as pretty-printed JSON. Runtime fields are omitted when
/// include_timing is false (stable output for golden comparisons).
std::string to_json(const EvaluationReport& report, bool include_timing = true);

/// Flat summary: dataset, k, method, mean execution time (seconds, 4
/// decimals; blank without timing), mean accuracy (percent, 1 decimal).
std::string summary_csv(const EvaluationReport& report, bool include_timing = true);

}  // namespace treekm
