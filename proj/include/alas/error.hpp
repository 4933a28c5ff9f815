#pragma once

#include <stdexcept>
#include <string>

namespace alas {

// Raised for invalid arguments, shape mismatches and inconsistent data.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the file readers/writers (bad magic, truncated payload, ...).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error(what) {}
};

// Prints "WARNING: <msg>" on stderr.
void warn(const std::string& msg);

}  // namespace alas
