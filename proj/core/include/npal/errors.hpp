#pragma once

#include <stdexcept>
#include <string>

namespace npal {

// Raised when a certified computation cannot decide an outcome at the
// working precision (straddled floor, undecidable comparison, ...).
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on domain violations of certified operations (log of an interval
// touching zero, division by an interval containing zero, ...).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a digit string is not a palindromic two-block concatenation.
struct InvalidPattern : std::runtime_error {
  explicit InvalidPattern(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a lemma's side conditions fail, so its bound cannot be used.
struct LemmaError : std::runtime_error {
  explicit LemmaError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when no admissible convergent certifies a reduction stage.
struct ReductionError : std::runtime_error {
  explicit ReductionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace npal
