#pragma once

#include <stdexcept>
#include <string>

namespace treekm {

/// Problem with input data: unreadable file, malformed CSV, values that
/// cannot be clustered. Maps to exit code 2 in the CLI.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A broken internal invariant. Indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace treekm
