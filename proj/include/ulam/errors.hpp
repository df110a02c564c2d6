#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace ulam {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A file or serialized object failed structural validation.
class LoadError : public Error {
 public:
  using Error::Error;
};

// A numeric guarantee could not be met (singular input, tolerance breach).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg, double measured = 0.0)
      : Error(msg), measured_(measured) {}
  double measured() const { return measured_; }

 private:
  double measured_;
};

namespace detail {

inline void concat_into(std::ostringstream&) {}

template <typename T, typename... Rest>
void concat_into(std::ostringstream& os, const T& head, const Rest&... rest) {
  os << head;
  concat_into(os, rest...);
}

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  concat_into(os, args...);
  return os.str();
}

}  // namespace detail

}  // namespace ulam
