#pragma once

#include <stdexcept>
#include <string>

namespace degdyn {

// Input rejected (bad map, guard violation, contract breach): CLI exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical pipeline failed past its retry budget: CLI exit 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace degdyn
