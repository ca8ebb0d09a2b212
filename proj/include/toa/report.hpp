#pragma once

#include <string>

namespace toa {

// Structured result of an invariant check.  The invariant passed <=> measured
// <= tolerance; checks that assert a LOWER bound (e.g. the covariance
// violation of the alpha extensions) report the shortfall as `measured` with
// tolerance 0, and carry the raw numbers in `details`.
struct CheckReport {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string details;
};

inline CheckReport make_report(std::string name, double measured, double tolerance,
                               std::string details = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.measured = measured;
  r.tolerance = tolerance;
  r.passed = measured <= tolerance;
  r.details = std::move(details);
  return r;
}

}  // namespace toa
