#pragma once

#include <stdexcept>
#include <string>

namespace bpsim {

// Invalid topology, route, scenario field or out-of-range argument.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exact MaxWeight policy is asked to handle more link-flow
// pairs than the schedule enumerator accepts.
class SolverLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bpsim
