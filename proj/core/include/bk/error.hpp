#ifndef BK_ERROR_HPP
#define BK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `offset` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed input that violates a model invariant. `path` is a JSON
/// pointer to the offending value.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::string path)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class SortError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to run where its hypotheses do not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A checked theorem was observed to fail; always an implementation bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace bk

#endif  // BK_ERROR_HPP
