#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minv {

/// Base class of every error thrown by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed caller input: dimension mismatch, non-partition, bad config.
struct InvalidInputError : Error {
    using Error::Error;
};

/// The instance (or a residue of it) admits no feasible clustering.
struct InfeasibilityError : Error {
    explicit InfeasibilityError(const std::string& msg, std::vector<int> colors = {})
        : Error(msg), stranded_colors(std::move(colors)) {}
    std::vector<int> stranded_colors;
};

/// Cross-publication bookkeeping violated (duplicate rows, unknown ids).
struct ConsistencyError : Error {
    using Error::Error;
};

/// An input file could not be parsed.
struct ParseError : Error {
    ParseError(std::string file, long line_no, const std::string& msg)
        : Error(file + ":" + std::to_string(line_no) + ": " + msg),
          path(std::move(file)),
          line(line_no) {}
    std::string path;
    long line;
};

/// A hard size/resource cap was exceeded.
struct BudgetError : Error {
    using Error::Error;
};

/// Numerical failure inside the LP engine; message carries diagnostics.
struct SolverError : Error {
    using Error::Error;
};

}  // namespace minv
