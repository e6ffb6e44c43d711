#pragma once

#include <stdexcept>
#include <string>

namespace sflab {

// Error taxonomy mirrored by the CLI: E_DOMAIN / E_RANGE / E_PARSE map to
// exit code 1, E_IO to exit code 2.

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sflab
