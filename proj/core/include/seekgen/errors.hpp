#pragma once

#include <stdexcept>
#include <string>

namespace seekgen {

/// Base class for all recoverable seekgen errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A corpus or data file could not be read or decoded.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long record_index = -1)
        : Error(record_index >= 0 ? what + " (record " + std::to_string(record_index) + ")" : what),
          record_index_(record_index) {}

    long record_index() const { return record_index_; }

private:
    long record_index_;
};

/// Invalid configuration value or file.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// No duplicate-free column exists; the table cannot seed a tree.
class NoKeyColumnError : public Error {
public:
    using Error::Error;
};

/// Biclique enumeration exceeded the configured budget. No partial results.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

/// Union synthesis found no anchors common to all trees of the group.
class NoIntersectionError : public Error {
public:
    using Error::Error;
};

/// No clue subset identifies the anchor uniquely within the group corpus.
class CluesAmbiguousError : public Error {
public:
    using Error::Error;
};

/// An operation that requires a non-empty target set got an empty one.
class EmptyTargetsError : public Error {
public:
    using Error::Error;
};

/// A scored trajectory must have at least one step.
class EmptyTrajectoryError : public Error {
public:
    using Error::Error;
};

/// The external oracle endpoint failed or returned garbage.
class OracleError : public Error {
public:
    using Error::Error;
};

/// A pipeline stage is missing an upstream artifact.
class MissingArtifactError : public Error {
public:
    using Error::Error;
};

}  // namespace seekgen
