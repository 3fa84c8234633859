#pragma once

#include <stdexcept>
#include <string>

namespace peermatch {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: files, cells, configs. Maps to CLI exit code 2.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Failure while scoring or ranking a valid-looking dataset
/// (unknown taxonomy concept, missing preference record, unknown learner id).
/// Maps to CLI exit code 1.
class ScoringError : public Error {
 public:
  explicit ScoringError(const std::string& what) : Error(what) {}
};

}  // namespace peermatch
