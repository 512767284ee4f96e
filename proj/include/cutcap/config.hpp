#pragma once

#include <cmath>

#include "cutcap/errors.hpp"

namespace cutcap {

// Physical parameters of the Poisson network model.
struct NetworkConfig {
  double nu = 1.0;     // node density, nodes/m^2
  double R = 100.0;    // cut radius, m
  double P = 1000.0;   // per-node transmit power, W
  double N = 1.0;      // noise spectral density, W/Hz
  double W = 1000.0;   // bandwidth, Hz
  double alpha = 4.0;  // path-loss exponent
  double d = 1.198;    // critical percolation radius at unit density

  double p_over_nw() const { return P / (N * W); }
  double short_range_r() const { return d / std::sqrt(nu); }

  void validate() const {
    if (!(nu > 0.0)) throw validation_error("nu must be > 0");
    if (!(R > 0.0)) throw validation_error("R must be > 0");
    if (!(P >= 0.0)) throw validation_error("P must be >= 0");
    if (!(N > 0.0)) throw validation_error("N must be > 0");
    if (!(W > 0.0)) throw validation_error("W must be > 0");
    if (!(alpha > 2.0)) throw validation_error("alpha must be > 2");
    if (!(d > 0.0)) throw validation_error("d must be > 0");
    if (!(R > short_range_r()))
      throw validation_error("R must exceed d/sqrt(nu): empty integration range");
  }
};

}  // namespace cutcap
