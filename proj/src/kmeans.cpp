#include "treekm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treekm/errors.hpp"

namespace treekm {

namespace {

void require_complete(const Dataset& d) {
    if (!d.complete()) throw DataError("k-means needs a dataset with no missing values");
}

double squared_distance(const Dataset& d, std::size_t object, const Centroids& c,
                        std::size_t cluster) {
    double acc = 0.0;
    for (std::size_t f = 0; f < d.m; ++f) {
        const double diff = d.value(object, f) - c.at(cluster, f);
        acc += diff * diff;
    }
    return acc;
}

void recompute_mean(const Dataset& d, const std::vector<std::size_t>& assignments,
                    std::size_t cluster, Centroids& c) {
    std::size_t cnt = 0;
    for (std::size_t f = 0; f < d.m; ++f) c.points[cluster * c.m + f] = 0.0;
    for (std::size_t i = 0; i < d.n; ++i) {
        if (assignments[i] != cluster) continue;
        ++cnt;
        for (std::size_t f = 0; f < d.m; ++f) c.points[cluster * c.m + f] += d.value(i, f);
    }
    for (std::size_t f = 0; f < d.m; ++f) c.points[cluster * c.m + f] /= static_cast<double>(cnt);
}

}  // namespace

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("euclidean: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

std::vector<std::size_t> assign(const Dataset& d, const Centroids& c) {
    require_complete(d);
    if (c.m != d.m) throw std::invalid_argument("assign: centroid dimension mismatch");
    if (c.k < 1) throw std::invalid_argument("assign: need at least one centroid");

    std::vector<std::size_t> out(d.n, 0);
    for (std::size_t i = 0; i < d.n; ++i) {
        double best = squared_distance(d, i, c, 0);
        std::size_t best_j = 0;
        for (std::size_t j = 1; j < c.k; ++j) {
            const double dist = squared_distance(d, i, c, j);
            if (dist < best) {  // strict: ties stay with the lowest index
                best = dist;
                best_j = j;
            }
        }
        out[i] = best_j;
    }
    return out;
}

Centroids update_centroids(const Dataset& d, std::vector<std::size_t>& assignments,
                           std::size_t k) {
    require_complete(d);
    if (assignments.size() != d.n) throw std::invalid_argument("update_centroids: assignment length mismatch");
    for (std::size_t a : assignments)
        if (a >= k) throw std::invalid_argument("update_centroids: cluster index out of range");

    Centroids c;
    c.k = k;
    c.m = d.m;
    c.points.assign(k * d.m, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < d.n; ++i) {
        ++counts[assignments[i]];
        for (std::size_t f = 0; f < d.m; ++f)
            c.points[assignments[i] * d.m + f] += d.value(i, f);
    }
    for (std::size_t j = 0; j < k; ++j)
        if (counts[j] > 0)
            for (std::size_t f = 0; f < d.m; ++f)
                c.points[j * d.m + f] /= static_cast<double>(counts[j]);

    // reassign_farthest: fill each empty cluster with the object farthest
    // from its own center, then redo the affected means.
    for (std::size_t j = 0; j < k; ++j) {
        if (counts[j] > 0) continue;
        double farthest = -1.0;
        std::size_t pick = d.n;
        for (std::size_t i = 0; i < d.n; ++i) {
            if (counts[assignments[i]] <= 1) continue;  // stealing would empty another cluster
            const double dist = squared_distance(d, i, c, assignments[i]);
            if (dist > farthest) {
                farthest = dist;
                pick = i;
            }
        }
        if (pick == d.n)
            throw std::invalid_argument("update_centroids: cannot fill empty cluster " +
                                        std::to_string(j + 1));
        const std::size_t old = assignments[pick];
        assignments[pick] = j;
        --counts[old];
        counts[j] = 1;
        recompute_mean(d, assignments, old, c);
        recompute_mean(d, assignments, j, c);
    }
    return c;
}

double sse(const Dataset& d, const std::vector<std::size_t>& assignments, const Centroids& c) {
    require_complete(d);
    if (assignments.size() != d.n) throw std::invalid_argument("sse: assignment length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < d.n; ++i) total += squared_distance(d, i, c, assignments[i]);
    return total;
}

ClusteringResult lloyd(const Dataset& d, const Centroids& init, const LloydConfig& cfg) {
    require_complete(d);
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (init.k < 1 || init.k > d.n)
        throw std::invalid_argument("k must be between 1 and the object count");
    if (init.m != d.m) throw std::invalid_argument("lloyd: centroid dimension mismatch");

    ClusteringResult result;
    result.centroids = init;
    result.assignments = assign(d, init);

    for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
        const Centroids previous = result.centroids;
        result.centroids = update_centroids(d, result.assignments, init.k);
        result.sse_trace.push_back(sse(d, result.assignments, result.centroids));
        result.iterations = it;

        std::vector<std::size_t> next = assign(d, result.centroids);
        if (next == result.assignments) {
            result.converged = true;
            break;
        }
        if (cfg.centroid_tolerance > 0.0) {
            double moved = 0.0;
            for (std::size_t j = 0; j < init.k; ++j) {
                double acc = 0.0;
                for (std::size_t f = 0; f < d.m; ++f) {
                    const double diff = result.centroids.at(j, f) - previous.at(j, f);
                    acc += diff * diff;
                }
                moved = std::max(moved, std::sqrt(acc));
            }
            if (moved <= cfg.centroid_tolerance) {
                result.assignments = std::move(next);
                result.converged = true;
                break;
            }
        }
        result.assignments = std::move(next);
    }
    return result;
}

}  // namespace treekm
