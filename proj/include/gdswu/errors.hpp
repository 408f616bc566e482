#pragma once

#include <stdexcept>
#include <string>

namespace gdswu {

/// A value lies outside the mathematical domain of an operation
/// (negative PDF argument, shape beyond the factorial cap, out-of-range sample).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The caller broke an interface contract (length mismatch, fault window
/// outside the stream).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A filter or weight vector could not be built from otherwise valid inputs.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gdswu
