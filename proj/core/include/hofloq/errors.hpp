#pragma once

#include <stdexcept>

namespace hofloq {

/// Two independent computations of the same quantity disagree (for example
/// the closed-form invariant table and zero/pole counting). Input validation
/// problems are reported as std::invalid_argument instead.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hofloq
