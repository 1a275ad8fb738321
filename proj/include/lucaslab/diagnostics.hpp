#pragma once

#include <string>

namespace lucaslab {

/// One violated parameter constraint, named by its inequality.
struct ConstraintViolation {
  std::string name;    // e.g. "rho < delta"
  std::string detail;  // the evaluated numbers
};

}  // namespace lucaslab
