#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace scpcs {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: bad files, invalid ids, inconsistent instances.
class DataError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kTruncated,
  kNotInteger,
  kIndexOutOfRange,
  kTokenSurplus,
  kBadCount,
  kBadHeader,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public DataError {
 public:
  // `position` is the 1-based token (OR-Library) or line (canonical) index.
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& what)
      : DataError(what), kind_(kind), position_(position) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
};

// Some element is covered by no subset, so no cover exists.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::uint32_t element, const std::string& what)
      : Error(what), element_(element) {}
  std::uint32_t element() const { return element_; }

 private:
  std::uint32_t element_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// A request exceeds a hard size limit (e.g. enumeration beyond max_n).
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace scpcs
