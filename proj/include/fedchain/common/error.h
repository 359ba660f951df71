#ifndef FEDCHAIN_COMMON_ERROR_H_
#define FEDCHAIN_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace fedchain {

// Base class for every error raised by the library. Callers that only care
// about "something in fedchain failed" catch this.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (bad shape, empty input, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// Input data could not be parsed.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace fedchain

#endif  // FEDCHAIN_COMMON_ERROR_H_
