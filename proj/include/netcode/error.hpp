#pragma once

#include <stdexcept>
#include <string>

namespace netcode {

/// Shape mismatches, invalid arguments, malformed input files.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or search would exceed its configured budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A protocol misbehaved at run time: wrong message width, non-adjacent
/// endpoints, or inconsistent decisions.
class ProtocolFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction failed its own postcondition and was not returned.
class ConstructionFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netcode
