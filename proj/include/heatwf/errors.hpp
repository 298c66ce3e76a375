#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace heatwf {

// Input outside the mathematical domain of an operation (e.g. alpha*beta <= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller asked for something the object was not built for (e.g. k > max_order).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A discretisation is too coarse to deliver the documented accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number formatting for error messages (%g).
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace heatwf
