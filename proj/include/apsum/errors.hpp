#pragma once

#include <stdexcept>

namespace apsum {

// Raised when a configured cap (FS cardinality, enumeration cell count,
// search ground size) would be exceeded. Distinct from "no witness found",
// which is an ordinary empty result.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when stored certificates contradict each other (two exact claims
// with different values for the same query).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace apsum
