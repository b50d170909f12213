#pragma once

#include <stdexcept>

namespace nlcs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
  using Error::Error;
};

struct InvalidSpectrum : Error {
  using Error::Error;
};

struct ParityMismatch : Error {
  using Error::Error;
};

// A measure whose denominator vanishes on the given state (Mandel at the
// vacuum, correlation factors with <n1 n2> = 0).
struct UndefinedMeasure : Error {
  using Error::Error;
};

struct UnknownModel : Error {
  using Error::Error;
};

struct UnknownMeasure : Error {
  using Error::Error;
};

// Numeric failures map to their own CLI exit code.
struct NumericFailure : Error {
  using Error::Error;
};

struct OutOfRadius : NumericFailure {
  using NumericFailure::NumericFailure;
};

struct NonConvergence : NumericFailure {
  using NumericFailure::NumericFailure;
};

struct NumericOverflow : NumericFailure {
  using NumericFailure::NumericFailure;
};

}  // namespace nlcs
