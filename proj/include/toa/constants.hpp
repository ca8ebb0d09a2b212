#pragma once

#include "toa/errors.hpp"

namespace toa {

// hbar and mass are explicit everywhere; the default 1/1 gives the natural
// units used throughout the test suite.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0))
      throw invalid_param_error("PhysicalConstants: hbar and mass must be > 0");
  }
};

}  // namespace toa
