#pragma once

#include <stdexcept>
#include <string>

namespace qss {

/// Malformed or invalid access structure input.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A ground set or instance exceeds the fixed capacity or a configured limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qss
