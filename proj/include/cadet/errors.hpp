#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cadet {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two frames that were expected to match did not (e.g. composing transforms).
struct FrameMismatch : Error {
  using Error::Error;
};

/// A point with non-positive camera-frame depth was pushed through a pinhole model.
struct BehindCamera : Error {
  using Error::Error;
};

/// A label violates its documented field ranges.
struct InvalidLabel : Error {
  using Error::Error;
};

/// A ground plane with a non-unit or upward-pointing-in-image normal.
struct InvalidPlane : Error {
  using Error::Error;
};

/// A calibration block violates its documented structure.
struct InvalidCalibration : Error {
  using Error::Error;
};

/// Base class for text/binary deserialization failures.
struct ParseError : Error {
  using Error::Error;
};

/// A text line had the wrong number of whitespace-separated fields.
struct MalformedLine : ParseError {
  MalformedLine(std::size_t line, std::size_t fields, const std::string& what)
      : ParseError(what), line_number(line), field_count(fields) {}
  std::size_t line_number;
  std::size_t field_count;
};

/// A field that should hold a number did not parse as one.
struct NonNumericField : ParseError {
  using ParseError::ParseError;
};

/// A required key was absent from a key/value file.
struct MissingKey : ParseError {
  using ParseError::ParseError;
};

/// A matrix block had the wrong element count or bad values.
struct MalformedMatrix : ParseError {
  using ParseError::ParseError;
};

/// A binary payload ended mid-record.
struct TruncatedFile : ParseError {
  using ParseError::ParseError;
};

/// Pixel coordinates outside a raster.
struct OutOfBounds : Error {
  using Error::Error;
};

/// A named rasterizer preset that does not exist.
struct UnknownPreset : Error {
  using Error::Error;
};

/// A rasterizer configuration with zero output layers.
struct EmptyConfig : Error {
  using Error::Error;
};

/// Scene generation could not place an object without overlap.
struct PlacementFailure : Error {
  using Error::Error;
};

/// A dataset sample is missing one of its files.
struct MissingSample : Error {
  using Error::Error;
};

/// Filesystem-level failure (unreadable, unwritable, wrong format container).
struct IoError : Error {
  using Error::Error;
};

}  // namespace cadet
