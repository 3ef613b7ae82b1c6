#pragma once

#include <stdexcept>
#include <string>

namespace microgrid {

// Invalid parameter or malformed spec/config. CLI maps this to exit code 1.
class InvalidParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Runtime failure during simulation or optimization. CLI maps this to exit code 2.
class SimulationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace microgrid
