#include "treekm/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "treekm/errors.hpp"

namespace treekm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

bool parse_double(std::string_view cell, double& out) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !cell.empty();
}

// Label selector: all-digits strings are 1-based column indices, anything
// else is a header name.
bool selector_as_index(const std::string& sel, std::size_t& index) {
    if (sel.empty()) return false;
    if (!std::all_of(sel.begin(), sel.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
        return false;
    index = 0;
    for (char c : sel) index = index * 10 + static_cast<std::size_t>(c - '0');
    return true;
}

}  // namespace

bool Dataset::complete() const {
    return std::all_of(missing.begin(), missing.end(), [](std::uint8_t x) { return x == 0; });
}

Dataset Dataset::from_values(std::size_t n, std::size_t m, std::vector<double> values,
                             std::vector<std::uint8_t> missing, std::vector<std::string> labels,
                             std::vector<std::string> feature_names) {
    if (n < 1 || m < 1) throw std::invalid_argument("dataset needs at least one object and one feature");
    if (values.size() != n * m) throw std::invalid_argument("values size does not match n*m");
    if (missing.empty()) missing.assign(n * m, 0);
    if (missing.size() != n * m) throw std::invalid_argument("missing mask size does not match n*m");
    if (!labels.empty() && labels.size() != n) throw std::invalid_argument("labels must have one entry per object");
    if (!feature_names.empty() && feature_names.size() != m)
        throw std::invalid_argument("feature_names must have one entry per feature");
    for (std::size_t i = 0; i < n * m; ++i)
        if (missing[i] != 0) values[i] = 0.0;
    Dataset d;
    d.n = n;
    d.m = m;
    d.values = std::move(values);
    d.missing = std::move(missing);
    d.labels = std::move(labels);
    d.feature_names = std::move(feature_names);
    return d;
}

Dataset load_csv(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw DataError(path + ": file is empty");

    std::size_t row0 = 0;
    std::vector<std::string> header;
    if (options.has_header) {
        for (auto cell : split_row(lines[0])) header.emplace_back(cell);
        row0 = 1;
    }
    if (row0 >= lines.size()) throw DataError(path + ": no data rows");

    const std::size_t cols = split_row(lines[row0]).size();
    if (options.has_header && header.size() != cols)
        throw DataError(path + ": header has " + std::to_string(header.size()) +
                        " columns but row 1 has " + std::to_string(cols));

    // Resolve the label column to a 0-based index, if requested.
    std::optional<std::size_t> label_col;
    if (options.label_column) {
        std::size_t idx = 0;
        if (selector_as_index(*options.label_column, idx)) {
            if (idx < 1 || idx > cols)
                throw DataError(path + ": label column " + *options.label_column +
                                " out of range (file has " + std::to_string(cols) + " columns)");
            label_col = idx - 1;
        } else {
            if (!options.has_header)
                throw DataError(path + ": label column by name requires a header row");
            auto it = std::find(header.begin(), header.end(), *options.label_column);
            if (it == header.end())
                throw DataError(path + ": no header column named '" + *options.label_column + "'");
            label_col = static_cast<std::size_t>(it - header.begin());
        }
    }

    const std::size_t n = lines.size() - row0;
    const std::size_t m = cols - (label_col ? 1 : 0);
    if (m < 1) throw DataError(path + ": no feature columns besides the label");

    std::vector<double> values;
    std::vector<std::uint8_t> missing;
    std::vector<std::string> labels;
    values.reserve(n * m);
    missing.reserve(n * m);
    if (label_col) labels.reserve(n);

    for (std::size_t r = 0; r < n; ++r) {
        auto cells = split_row(lines[row0 + r]);
        const std::size_t file_row = row0 + r + 1;  // 1-based, counting the header
        if (cells.size() != cols)
            throw DataError(path + ": row " + std::to_string(file_row) + " has " +
                            std::to_string(cells.size()) + " columns, expected " +
                            std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            if (label_col && c == *label_col) {
                labels.emplace_back(cells[c]);
                continue;
            }
            if (cells[c] == options.missing_token) {
                values.push_back(0.0);
                missing.push_back(1);
                continue;
            }
            double v = 0.0;
            if (!parse_double(cells[c], v))
                throw DataError(path + ": row " + std::to_string(file_row) + ", column " +
                                std::to_string(c + 1) + ": cannot parse '" +
                                std::string(cells[c]) + "' as a number");
            values.push_back(v);
            missing.push_back(0);
        }
    }

    std::vector<std::string> names;
    if (options.has_header) {
        for (std::size_t c = 0; c < cols; ++c)
            if (!label_col || c != *label_col) names.push_back(header[c]);
    }
    return Dataset::from_values(n, m, std::move(values), std::move(missing), std::move(labels),
                                std::move(names));
}

void write_csv(const Dataset& d, const std::string& path, const LoadOptions& options) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);

    std::string label_name = "label";
    if (options.label_column) {
        std::size_t ignored = 0;
        if (!selector_as_index(*options.label_column, ignored)) label_name = *options.label_column;
    }

    if (options.has_header) {
        for (std::size_t f = 0; f < d.m; ++f) {
            if (f) out << ',';
            out << (d.feature_names.empty() ? "f" + std::to_string(f + 1) : d.feature_names[f]);
        }
        if (d.has_labels()) out << ',' << label_name;
        out << '\n';
    }
    for (std::size_t i = 0; i < d.n; ++i) {
        for (std::size_t f = 0; f < d.m; ++f) {
            if (f) out << ',';
            if (d.is_missing(i, f)) {
                out << options.missing_token;
            } else {
                std::ostringstream cell;
                cell.precision(17);
                cell << d.value(i, f);
                out << cell.str();
            }
        }
        if (d.has_labels()) out << ',' << d.labels[i];
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

RangeVector feature_ranges(const Dataset& d, const std::map<std::size_t, double>& overrides) {
    for (const auto& [f, value] : overrides) {
        if (f >= d.m)
            throw std::invalid_argument("range override feature index " + std::to_string(f) +
                                        " out of range");
        if (!(value > 0.0))
            throw std::invalid_argument("range override for feature " + std::to_string(f) +
                                        " must be positive");
    }

    RangeVector rv;
    rv.min.assign(d.m, std::numeric_limits<double>::quiet_NaN());
    rv.max.assign(d.m, std::numeric_limits<double>::quiet_NaN());
    rv.range.assign(d.m, 0.0);
    for (std::size_t f = 0; f < d.m; ++f) {
        bool seen = false;
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < d.n; ++i) {
            if (d.is_missing(i, f)) continue;
            const double v = d.value(i, f);
            if (!seen) {
                lo = hi = v;
                seen = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (seen) {
            rv.min[f] = lo;
            rv.max[f] = hi;
            rv.range[f] = hi - lo;
        }
        if (auto it = overrides.find(f); it != overrides.end()) rv.range[f] = it->second;
    }
    return rv;
}

std::vector<Diagnostic> validate(const Dataset& d) {
    std::vector<Diagnostic> out;

    for (std::size_t f = 0; f < d.m; ++f) {
        bool any = false, constant = true;
        double first = 0.0;
        bool have_first = false;
        for (std::size_t i = 0; i < d.n; ++i) {
            if (d.is_missing(i, f)) continue;
            any = true;
            if (!have_first) {
                first = d.value(i, f);
                have_first = true;
            } else if (d.value(i, f) != first) {
                constant = false;
            }
        }
        if (!any) {
            out.push_back({Diagnostic::Kind::feature_all_missing, f, 0,
                           "feature " + std::to_string(f + 1) + " is entirely missing"});
        } else if (constant) {
            out.push_back({Diagnostic::Kind::constant_feature, f, 0,
                           "feature " + std::to_string(f + 1) + " is constant"});
        }
    }

    for (std::size_t i = 0; i < d.n; ++i) {
        bool all_missing = true;
        for (std::size_t f = 0; f < d.m && all_missing; ++f)
            if (!d.is_missing(i, f)) all_missing = false;
        if (all_missing)
            out.push_back({Diagnostic::Kind::object_all_missing, i, 0,
                           "object " + std::to_string(i + 1) + " is entirely missing"});
    }

    for (std::size_t j = 1; j < d.n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            bool same = true;
            for (std::size_t f = 0; f < d.m && same; ++f) {
                if (d.is_missing(i, f) != d.is_missing(j, f)) same = false;
                else if (!d.is_missing(i, f) && d.value(i, f) != d.value(j, f)) same = false;
            }
            if (same) {
                out.push_back({Diagnostic::Kind::duplicate_object, j, i,
                               "object " + std::to_string(j + 1) + " duplicates object " +
                                   std::to_string(i + 1)});
                break;  // report each duplicate once, against its first match
            }
        }
    }
    return out;
}

}  // namespace treekm
