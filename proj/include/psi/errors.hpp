#pragma once

#include <stdexcept>
#include <string>

namespace psi {

struct UnknownEvent : std::runtime_error {
  explicit UnknownEvent(const std::string& what) : std::runtime_error(what) {}
};

struct NotEnabled : std::runtime_error {
  explicit NotEnabled(const std::string& what) : std::runtime_error(what) {}
};

struct TooLarge : std::runtime_error {
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidConfiguration : std::runtime_error {
  explicit InvalidConfiguration(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidMarking : std::runtime_error {
  explicit InvalidMarking(const std::string& what) : std::runtime_error(what) {}
};

struct MissingLabel : std::runtime_error {
  explicit MissingLabel(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidRefinement : std::runtime_error {
  explicit InvalidRefinement(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a transition query unfolds replication past its hard cap.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

}  // namespace psi
