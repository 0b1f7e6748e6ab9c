#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace treekm {

/// Tabular numeric dataset: n objects by m features, row-major, with a
/// missing-value mask and optional per-object class labels.
///
/// Immutable by convention once built; all operations in the library take
/// it by const reference and are safe to call concurrently.
struct Dataset {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<double> values;         ///< n*m, row-major; masked cells hold 0 and must not be read
    std::vector<std::uint8_t> missing;  ///< n*m, nonzero = value absent
    std::vector<std::string> labels;         ///< empty, or exactly n entries
    std::vector<std::string> feature_names;  ///< empty, or exactly m entries

    double value(std::size_t object, std::size_t feature) const {
        return values[object * m + feature];
    }
    bool is_missing(std::size_t object, std::size_t feature) const {
        return missing[object * m + feature] != 0;
    }
    bool has_labels() const { return !labels.empty(); }

    /// True when no cell is masked.
    bool complete() const;

    /// Validates shapes (n >= 1, m >= 1, mask/labels sizes) and zero-fills
    /// masked cells. Throws std::invalid_argument on inconsistent input.
    static Dataset from_values(std::size_t n, std::size_t m, std::vector<double> values,
                               std::vector<std::uint8_t> missing = {},
                               std::vector<std::string> labels = {},
                               std::vector<std::string> feature_names = {});
};

struct LoadOptions {
    bool has_header = false;
    /// Label column, as a 1-based index ("5") or a header name ("class").
    /// Never auto-detected.
    std::optional<std::string> label_column;
    /// Cell text treated as a missing value. Default: the empty cell.
    std::string missing_token;
};

/// Loads a comma-separated UTF-8 file. Every non-label cell must parse as a
/// real number or equal the missing token. Throws DataError with the 1-based
/// row/column position on malformed input.
Dataset load_csv(const std::string& path, const LoadOptions& options = {});

/// Inverse of load_csv: features in order, label (if any) as the last
/// column, masked cells as the missing token. A header row is written when
/// options.has_header is set.
void write_csv(const Dataset& d, const std::string& path, const LoadOptions& options = {});

/// Observed per-feature minimum, maximum and range (max - min), computed
/// over non-missing entries. Range is 0 for constant features and features
/// with fewer than two observed values.
struct RangeVector {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<double> range;
};

/// Computes per-feature ranges. An entry in `overrides` (0-based feature ->
/// positive value) replaces the computed range; min/max stay as observed.
/// Throws std::invalid_argument for overrides <= 0 or out-of-range keys.
RangeVector feature_ranges(const Dataset& d, const std::map<std::size_t, double>& overrides = {});

struct Diagnostic {
    enum class Kind {
        feature_all_missing,
        constant_feature,
        object_all_missing,
        duplicate_object,
    };
    Kind kind;
    std::size_t index = 0;  ///< 0-based feature or object index; the later object for duplicates
    std::size_t other = 0;  ///< the earlier matching object for duplicates
    std::string message;
};

/// Non-fatal data quality checks: fully missing features/objects, constant
/// features, duplicate objects.
std::vector<Diagnostic> validate(const Dataset& d);

}  // namespace treekm
