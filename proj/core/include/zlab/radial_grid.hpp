#pragma once

#include <cmath>

#include "zlab/errors.hpp"

namespace zlab {

// Uniform radial grid. Physical nodes r_k = k*dr for k = 1..n_r and spectral
// nodes rho_m = m*drho for m = 1..n_r, with dr * drho * (n_r + 1) = pi so the
// sine-transform pairing holds exactly. Neither grid contains the origin.
struct RadialGrid {
  int n_r = 0;
  double r_max = 0.0;

  double dr() const { return r_max / (n_r + 1); }
  double drho() const { return M_PI / r_max; }
  double rho_max() const { return (n_r + 1) * drho(); }

  double r(int i) const { return (i + 1) * dr(); }      // i = 0..n_r-1
  double rho(int i) const { return (i + 1) * drho(); }  // i = 0..n_r-1

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;
};

/// Validates sizing (n_r >= 8, r_max > 0) and returns the grid.
RadialGrid build_grid(int n_r, double r_max);

}  // namespace zlab
