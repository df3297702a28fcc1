// errors.hpp - typed error conditions raised by the geometry kernel.
#pragma once

#include <stdexcept>
#include <string>

namespace c1homeo {

struct GeomError : std::runtime_error {
  explicit GeomError(const std::string& what) : std::runtime_error(what) {}
};

/// Chord endpoints coincide; no secant direction exists.
struct CoincidentPointsError : GeomError {
  using GeomError::GeomError;
};

/// Witness data does not satisfy an operation's precondition.
struct BadWitnessError : GeomError {
  using GeomError::GeomError;
};

/// Sequence too short or degenerate for the requested check.
struct DegenerateSequenceError : GeomError {
  using GeomError::GeomError;
};

/// Sandwich curves do not straddle the target direction at the base point.
struct BadSandwichError : GeomError {
  using GeomError::GeomError;
};

/// A required tangent estimate does not exist at the working resolution.
struct MissingTangentError : GeomError {
  MissingTangentError(const std::string& what, int index_)
      : GeomError(what), index(index_) {}
  int index = -1;
};

/// Input sequence does not converge to the stated limit along the stated line.
struct NotConvergentError : GeomError {
  using GeomError::GeomError;
};

/// Filtering could not extract the requested number of points.
struct InsufficientPointsError : GeomError {
  using GeomError::GeomError;
};

/// 1-D root solve could not bracket a sign change.
struct RootNotBracketedError : GeomError {
  using GeomError::GeomError;
};

/// Difference-quotient norms grow without bound: no finite pushforward.
struct InfiniteQuotientError : GeomError {
  using GeomError::GeomError;
};

/// A construction-time certificate (grid inequality check) failed.
struct ConstraintViolationError : GeomError {
  using GeomError::GeomError;
};

}  // namespace c1homeo
