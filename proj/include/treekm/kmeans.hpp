#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treekm/dataset.hpp"
#include "treekm/seeding.hpp"

namespace treekm {

struct LloydConfig {
    std::size_t max_iterations = 100;
    /// When > 0, also stop once no centroid moved farther than this between
    /// consecutive updates. 0 means exact assignment-stability convergence.
    double centroid_tolerance = 0.0;
};

struct ClusteringResult {
    std::vector<std::size_t> assignments;  ///< cluster id per object, in [0, k)
    Centroids centroids;                   ///< final centers
    std::vector<double> sse_trace;         ///< criterion value per iteration, non-increasing
    std::size_t iterations = 0;            ///< equals sse_trace.size()
    bool converged = false;                ///< final assignment pass changed nothing
};

/// Euclidean distance; dimensions must match.
double euclidean(std::span<const double> a, std::span<const double> b);

/// Maps each object to its nearest centroid; ties go to the lowest cluster
/// index. The dataset must be complete (no missing values).
std::vector<std::size_t> assign(const Dataset& d, const Centroids& c);

/// Cluster means for the given assignment. An empty cluster is filled by
/// moving the object farthest from its own center into it (lowest object
/// index on ties) before means are finalized; `assignments` is adjusted in
/// place when that happens.
Centroids update_centroids(const Dataset& d, std::vector<std::size_t>& assignments,
                           std::size_t k);

/// Sum over objects of the squared distance to their cluster's centroid.
double sse(const Dataset& d, const std::vector<std::size_t>& assignments, const Centroids& c);

/// Lloyd iteration from the given initial centroids: alternate assignment
/// and centroid update until an assignment pass changes nothing (or the
/// centroid-movement tolerance is met, or max_iterations is reached).
/// Deterministic for fixed inputs.
ClusteringResult lloyd(const Dataset& d, const Centroids& init, const LloydConfig& cfg = {});

}  // namespace treekm
