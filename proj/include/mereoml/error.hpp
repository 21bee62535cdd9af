#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mereoml {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data. Row and column are 1-based when
/// known (row 1 is the CSV header), 0 otherwise.
class DataError : public Error {
 public:
  enum class Kind {
    Io,
    RaggedRow,
    DuplicateFeature,
    DuplicateObject,
    MissingDecision,
    MissingValue,
    NonNumeric,
    UnknownObject,
    UnknownFeature,
    EmptyTable,
    InvalidArgument,
  };

  DataError(Kind kind, std::string message, std::size_t row = 0, std::size_t column = 0);

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t row_;
  std::size_t column_;
};

/// Syntax or name-resolution error in one of the textual DSLs. Position is a
/// 1-based column into the input text (line-aware inputs also carry a line).
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position, std::size_t line = 1);

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

/// A documented precondition of a library operation was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A degree of 0 was passed where a logarithm of it is needed.
class DegreeUnderflow : public Error {
 public:
  using Error::Error;
};

/// Cross-validation could not form a non-empty training or test part.
class FoldError : public Error {
 public:
  using Error::Error;
};

/// A synthesis network violates the coordination requirements.
class WiringError : public Error {
 public:
  using Error::Error;
};

}  // namespace mereoml
