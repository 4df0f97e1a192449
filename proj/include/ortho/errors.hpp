#pragma once

#include <stdexcept>
#include <string>

namespace ortho {

// Base class for every error the toolkit raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// PCD input: required header fields missing, inconsistent, or non-ascii data.
struct MalformedHeader : Error {
  using Error::Error;
};

// PCD input: the number of data rows does not match the declared POINTS.
struct PointCountMismatch : Error {
  using Error::Error;
};

// PCD input: a coordinate parsed to NaN or infinity.
struct NonFiniteCoordinate : Error {
  using Error::Error;
};

// A file that should hold a cloud could not be opened or read.
struct UnreadableFile : Error {
  using Error::Error;
};

// Dataset root with no usable category directories.
struct EmptyDataset : Error {
  using Error::Error;
};

// Synthetic generator called with non-positive shape dimensions.
struct InvalidDims : Error {
  using Error::Error;
};

// Generator spec file that cannot be parsed into category definitions.
struct InvalidSpec : Error {
  using Error::Error;
};

// An operation that needs points was handed an empty cloud.
struct EmptyCloud : Error {
  using Error::Error;
};

// Cloud whose covariance spectrum cannot support a stable reference frame:
// fewer than three points, or the second eigenvalue vanishes relative to the
// first (collinear or coincident points).
struct DegenerateCloud : Error {
  using Error::Error;
};

// Histogram distance over vectors of different lengths.
struct LengthMismatch : Error {
  using Error::Error;
};

// Histogram distance over a vector with a negative entry.
struct NegativeBin : Error {
  using Error::Error;
};

// Color distance requested while the metric carries no color space.
struct MissingColorSpace : Error {
  using Error::Error;
};

// teach() called with no views.
struct EmptyViews : Error {
  using Error::Error;
};

// classify() called before anything was taught.
struct EmptyMemory : Error {
  using Error::Error;
};

// Protocol accuracy requested over zero ask results.
struct EmptyWindow : Error {
  using Error::Error;
};

// Cross-validation with k < 2 folds.
struct TooFewViews : Error {
  using Error::Error;
};

}  // namespace ortho
