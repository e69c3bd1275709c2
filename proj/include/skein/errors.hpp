#pragma once

#include <stdexcept>
#include <string>

namespace skein {

struct SkeinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OddBoundary : SkeinError {
  using SkeinError::SkeinError;
};

struct BoundaryMismatch : SkeinError {
  using SkeinError::SkeinError;
};

struct MalformedDiagram : SkeinError {
  using SkeinError::SkeinError;
};

struct ParseError : SkeinError {
  using SkeinError::SkeinError;
};

struct SingularRecursion : SkeinError {
  using SkeinError::SkeinError;
};

struct NotReal : SkeinError {
  using SkeinError::SkeinError;
};

struct EmptyHom : SkeinError {
  using SkeinError::SkeinError;
};

struct GuardrailExceeded : SkeinError {
  using SkeinError::SkeinError;
};

}  // namespace skein
