#pragma once

#include <stdexcept>
#include <string>

namespace sofic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Ball enumeration exceeded the configured element cap.
struct BallOverflow : Error {
  using Error::Error;
};

// Enumeration or counting job exceeded its work cap.
struct WorkCapExceeded : Error {
  using Error::Error;
};

// Exact census requested outside the regime where thresholds collapse to
// exact constraints.
struct UnsupportedRegime : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Operation applied to a group of the wrong kind.
struct GroupKindError : Error {
  using Error::Error;
};

// Assignment lacks an image for a word whose recorded factorization needs it.
struct MissingImage : Error {
  using Error::Error;
};

// Supplied point set is not a transversal / not a subgroup as required.
struct TransversalError : Error {
  using Error::Error;
};

// Construction needs more free orbits than the model provides.
struct OrbitError : Error {
  using Error::Error;
};

}  // namespace sofic
