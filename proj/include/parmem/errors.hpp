#pragma once

#include <stdexcept>

namespace parmem {

// File contents that do not match the expected format.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failed open/read/write.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parmem
