#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "treekm/dataset.hpp"
#include "treekm/dissimilarity.hpp"

namespace treekm {

/// k cluster centers of dimension m, tagged with how they were produced.
struct Centroids {
    enum class Method { tree, random };

    std::size_t k = 0;
    std::size_t m = 0;
    std::vector<double> points;  ///< k*m, row-major
    Method method = Method::tree;
    std::uint64_t seed = 0;  ///< meaningful when method == random

    double at(std::size_t cluster, std::size_t feature) const {
        return points[cluster * m + feature];
    }

    /// k rows by m columns, comma separated, 6-decimal fixed point.
    std::string to_csv() const;
};

/// Options for the dissimilarity matrix behind tree seeding.
struct SeedConfig {
    CombineMode combine_mode = CombineMode::mean;
    std::map<std::size_t, double> range_overrides;  ///< 0-based feature -> range
    bool zero_zero_skip = true;
};

/// One centroid per part: the coordinate-wise mean of the part's objects,
/// skipping missing values per coordinate. `parts` must partition 0..n-1
/// with no empty part; a coordinate with no observed value in some part is
/// a DataError.
Centroids centroids_from_components(const Dataset& d,
                                    const std::vector<std::vector<std::size_t>>& parts);

/// Tree-based initial centroids: range-normalized dissimilarity matrix ->
/// minimum spanning tree -> prune the k-1 heaviest edges -> component
/// means. Deterministic for fixed inputs. k = 1 degenerates to the global
/// mean. Requires 1 <= k <= n.
Centroids tree_seed(const Dataset& d, std::size_t k, const SeedConfig& cfg = {});

/// Baseline initializer: k distinct objects drawn uniformly without
/// replacement from a seeded mt19937_64 stream (partial Fisher-Yates with
/// unbiased rejection sampling, so results are identical across platforms).
Centroids random_centroids(const Dataset& d, std::size_t k, std::uint64_t seed);

}  // namespace treekm
