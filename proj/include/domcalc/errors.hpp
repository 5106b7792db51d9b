#pragma once

#include <stdexcept>
#include <string>

namespace domcalc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DuplicateId : Error { using Error::Error; };
struct InconsistentFlags : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NonNormalizable : Error { using Error::Error; };
struct ContradictionDetected : Error { using Error::Error; };
struct ConflictingAxiom : Error { using Error::Error; };
struct UnknownScenario : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct UnverifiedDerivation : Error { using Error::Error; };
struct DegenerateWindow : Error { using Error::Error; };

// Carries a 1-based line (facts files) or 0-based offset (expressions).
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t where)
      : Error(what), position(where) {}
  std::size_t position;
};

}  // namespace domcalc
