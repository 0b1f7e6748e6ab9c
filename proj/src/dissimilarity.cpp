#include "treekm/dissimilarity.hpp"

#include <algorithm>
#include <cmath>

#include "format_util.hpp"

namespace treekm {

std::string DissimilarityMatrix::to_csv() const {
    std::string out;
    out.reserve(n * n * 10);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (b) out += ',';
            out += detail::fixed(at(a, b), 6);
        }
        out += '\n';
    }
    return out;
}

int delta(const Dataset& d, std::size_t a, std::size_t b, std::size_t f, bool zero_zero_skip) {
    if (d.is_missing(a, f) || d.is_missing(b, f)) return 0;
    if (zero_zero_skip && d.value(a, f) == 0.0 && d.value(b, f) == 0.0) return 0;
    return 1;
}

double per_feature_distance(const Dataset& d, std::size_t a, std::size_t b, std::size_t f,
                            const RangeVector& ranges) {
    const double r = ranges.range[f];
    if (!(r > 0.0)) return 0.0;
    return std::min(1.0, std::abs(d.value(a, f) - d.value(b, f)) / r);
}

DissimilarityMatrix feature_matrix(const Dataset& d, std::size_t f, const RangeVector& ranges,
                                   bool zero_zero_skip) {
    DissimilarityMatrix dm;
    dm.n = d.n;
    dm.values.assign(d.n * d.n, 0.0);
    dm.source = DissimilarityMatrix::Source::per_feature;
    dm.feature = f;
    for (std::size_t a = 0; a < d.n; ++a) {
        for (std::size_t b = a + 1; b < d.n; ++b) {
            double v = 0.0;
            if (delta(d, a, b, f, zero_zero_skip)) v = per_feature_distance(d, a, b, f, ranges);
            dm.values[a * d.n + b] = v;
            dm.values[b * d.n + a] = v;
        }
    }
    return dm;
}

CombinedMatrix combined_matrix(const Dataset& d, const RangeVector& ranges,
                               const DissimilarityOptions& options) {
    CombinedMatrix out;
    DissimilarityMatrix& dm = out.matrix;
    dm.n = d.n;
    dm.values.assign(d.n * d.n, 0.0);
    dm.source = DissimilarityMatrix::Source::combined;
    dm.mode = options.mode;

    for (std::size_t a = 0; a < d.n; ++a) {
        for (std::size_t b = a + 1; b < d.n; ++b) {
            double sum = 0.0, sum_sq = 0.0;
            std::size_t comparable = 0;
            for (std::size_t f = 0; f < d.m; ++f) {
                if (!delta(d, a, b, f, options.zero_zero_skip)) continue;
                const double dist = per_feature_distance(d, a, b, f, ranges);
                sum += dist;
                sum_sq += dist * dist;
                ++comparable;
            }
            double v;
            if (comparable == 0) {
                v = 1.0;  // no shared feature: maximal dissimilarity, by convention
                out.incomparable_pairs.emplace_back(a, b);
            } else if (options.mode == CombineMode::mean) {
                v = std::min(1.0, sum / static_cast<double>(comparable));
            } else {
                v = std::min(1.0, std::sqrt(sum_sq) / static_cast<double>(comparable));
            }
            dm.values[a * d.n + b] = v;
            dm.values[b * d.n + a] = v;
        }
    }
    return out;
}

}  // namespace treekm
