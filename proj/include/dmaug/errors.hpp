#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmaug {

// Malformed or inconsistent input data (bad spans, shape mismatches,
// unreadable files). The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A span that is out of range or overlaps another one.
class InvalidSpanError : public DataError {
 public:
  InvalidSpanError(std::size_t index, const std::string& what)
      : DataError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Invalid BIO transition found in strict mode.
class InvalidBioError : public DataError {
 public:
  InvalidBioError(std::size_t position, const std::string& what)
      : DataError(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dmaug
