#pragma once

#include <string>
#include <vector>

namespace qtorsion {

// A named numerical identity: residual against its tolerance.
struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  // Reported only; does not decide the outcome of the enclosing suite.
  bool informational = false;
};

inline Check make_check(std::string name, double residual, double tol, bool informational = false) {
  return {std::move(name), residual, tol, residual <= tol, informational};
}

// A boolean finding expressed as a check with residual 0 or 1.
inline Check make_flag_check(std::string name, bool ok, bool informational = false) {
  return {std::move(name), ok ? 0.0 : 1.0, 0.5, ok, informational};
}

inline bool all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks)
    if (!c.pass && !c.informational) return false;
  return true;
}

}  // namespace qtorsion
