#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treekm/dataset.hpp"

namespace treekm {

/// How per-feature distances combine into one dissimilarity per object pair.
/// `mean` averages the comparable per-feature distances; `root_sum_square`
/// divides the root of their summed squares by the comparable-feature count.
enum class CombineMode { mean, root_sum_square };

struct DissimilarityOptions {
    CombineMode mode = CombineMode::mean;
    /// When set, a feature where both objects are exactly 0 is treated as
    /// not comparable (delta = 0), the same as a missing value.
    bool zero_zero_skip = true;
};

/// Symmetric n-by-n matrix of unit-interval dissimilarities with zero
/// diagonal. `source` records whether it is a single feature's matrix or a
/// combined one.
struct DissimilarityMatrix {
    enum class Source { per_feature, combined };

    std::size_t n = 0;
    std::vector<double> values;  ///< n*n, row-major
    Source source = Source::combined;
    std::size_t feature = 0;               ///< set when source == per_feature
    CombineMode mode = CombineMode::mean;  ///< set when source == combined

    double at(std::size_t a, std::size_t b) const { return values[a * n + b]; }

    /// n rows by n columns, comma separated, 6-decimal fixed point.
    std::string to_csv() const;
};

/// Comparability indicator for one feature of an object pair: 0 when either
/// value is missing, or when both are exactly 0 and zero_zero_skip is set;
/// 1 otherwise. Indices must be in range.
int delta(const Dataset& d, std::size_t a, std::size_t b, std::size_t f,
          bool zero_zero_skip = true);

/// Range-normalized distance |a_f - b_f| / range[f], clamped to [0, 1].
/// Returns 0 for a zero range (constant feature). Both values must be
/// present.
double per_feature_distance(const Dataset& d, std::size_t a, std::size_t b, std::size_t f,
                            const RangeVector& ranges);

/// Full n-by-n matrix for one feature. Pairs with delta = 0 are recorded
/// as 0.
DissimilarityMatrix feature_matrix(const Dataset& d, std::size_t f, const RangeVector& ranges,
                                   bool zero_zero_skip = true);

struct CombinedMatrix {
    DissimilarityMatrix matrix;
    /// Object pairs (a < b) sharing no comparable feature. Their entry is set
    /// to 1, the maximal dissimilarity.
    std::vector<std::pair<std::size_t, std::size_t>> incomparable_pairs;
};

/// Combines per-feature distances over the comparable features of each pair
/// according to the selected mode.
CombinedMatrix combined_matrix(const Dataset& d, const RangeVector& ranges,
                               const DissimilarityOptions& options = {});

}  // namespace treekm
