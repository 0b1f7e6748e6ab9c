#include "treekm/seeding.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "format_util.hpp"
#include "treekm/errors.hpp"
#include "treekm/spanning_tree.hpp"

namespace treekm {

std::string Centroids::to_csv() const {
    std::string out;
    out.reserve(k * m * 10);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t f = 0; f < m; ++f) {
            if (f) out += ',';
            out += detail::fixed(at(j, f), 6);
        }
        out += '\n';
    }
    return out;
}

Centroids centroids_from_components(const Dataset& d,
                                    const std::vector<std::vector<std::size_t>>& parts) {
    std::vector<std::uint8_t> seen(d.n, 0);
    std::size_t covered = 0;
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("empty part in partition");
        for (std::size_t i : part) {
            if (i >= d.n || seen[i]) throw std::invalid_argument("parts do not partition the objects");
            seen[i] = 1;
            ++covered;
        }
    }
    if (covered != d.n) throw std::invalid_argument("parts do not cover all objects");

    Centroids c;
    c.k = parts.size();
    c.m = d.m;
    c.points.assign(c.k * c.m, 0.0);
    c.method = Centroids::Method::tree;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        for (std::size_t f = 0; f < d.m; ++f) {
            double sum = 0.0;
            std::size_t cnt = 0;
            for (std::size_t i : parts[j]) {
                if (d.is_missing(i, f)) continue;
                sum += d.value(i, f);
                ++cnt;
            }
            if (cnt == 0)
                throw DataError("component " + std::to_string(j + 1) + " has no observed value for feature " +
                                std::to_string(f + 1));
            c.points[j * c.m + f] = sum / static_cast<double>(cnt);
        }
    }
    return c;
}

Centroids tree_seed(const Dataset& d, std::size_t k, const SeedConfig& cfg) {
    if (k < 1 || k > d.n) throw std::invalid_argument("k must be between 1 and the object count");

    std::vector<std::vector<std::size_t>> parts;
    if (k == 1) {
        parts.emplace_back(d.n);
        std::iota(parts.back().begin(), parts.back().end(), std::size_t{0});
    } else {
        const RangeVector ranges = feature_ranges(d, cfg.range_overrides);
        const CombinedMatrix combined =
            combined_matrix(d, ranges, {cfg.combine_mode, cfg.zero_zero_skip});
        const SpanningTree tree = build_mst(combined.matrix);
        parts = prune_heaviest(tree, k).components;
    }
    return centroids_from_components(d, parts);
}

namespace {

// Unbiased draw from [0, bound) out of the raw 64-bit stream.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

}  // namespace

Centroids random_centroids(const Dataset& d, std::size_t k, std::uint64_t seed) {
    if (k < 1 || k > d.n) throw std::invalid_argument("k must be between 1 and the object count");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> index(d.n);
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded(rng, d.n - i));
        std::swap(index[i], index[j]);
    }

    Centroids c;
    c.k = k;
    c.m = d.m;
    c.points.reserve(k * d.m);
    c.method = Centroids::Method::random;
    c.seed = seed;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t f = 0; f < d.m; ++f) c.points.push_back(d.value(index[i], f));
    return c;
}

}  // namespace treekm
