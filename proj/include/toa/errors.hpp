#pragma once

#include <stdexcept>
#include <string>

namespace toa {

// Error taxonomy shared by all modules.  The CLI maps kinds to exit codes:
// resolution guards -> 3, every other input/precondition problem -> 2.
enum class ErrorKind {
  invalid_grid,     // malformed grid (n < 2, non-increasing nodes, ...)
  invalid_param,    // bad scalar parameter (g = 0, n odd, ...)
  precondition,     // operation-specific precondition violated
  resolution,       // phase-advance / output-sampling guard tripped
  not_in_domain,    // state fails the operator domain test
  tail,             // integrand has not decayed at the grid edges
  ill_conditioned,  // denominator of a quotient too close to zero
  unsupported,      // requested order/feature outside the implemented range
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_grid_error(const std::string& w) { return {ErrorKind::invalid_grid, w}; }
inline Error invalid_param_error(const std::string& w) { return {ErrorKind::invalid_param, w}; }
inline Error precondition_error(const std::string& w) { return {ErrorKind::precondition, w}; }
inline Error resolution_error(const std::string& w) { return {ErrorKind::resolution, w}; }
inline Error not_in_domain_error(const std::string& w) { return {ErrorKind::not_in_domain, w}; }
inline Error tail_error(const std::string& w) { return {ErrorKind::tail, w}; }
inline Error ill_conditioned_error(const std::string& w) { return {ErrorKind::ill_conditioned, w}; }
inline Error unsupported_error(const std::string& w) { return {ErrorKind::unsupported, w}; }

}  // namespace toa
