#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "zlab/radial_grid.hpp"

namespace zlab {

using cplx = std::complex<double>;

enum class Domain { physical, spectral };

// A radial complex function sampled on the grid, implicitly extended to R^3
// as f(|x|). The domain tag says whether samples live on the r- or rho-grid.
struct RadialField {
  RadialGrid grid;
  Domain domain = Domain::physical;
  std::vector<cplx> values;

  int size() const { return grid.n_r; }
  bool is_zero() const {
    for (const auto& v : values)
      if (v != cplx(0.0, 0.0)) return false;
    return true;
  }
};

RadialField zeros(const RadialGrid& grid, Domain domain);

/// Samples fn(r_k) on the physical grid.
RadialField sample_physical(const RadialGrid& grid,
                            const std::function<cplx(double)>& fn);

/// Samples fn(rho_m) on the spectral grid.
RadialField sample_spectral(const RadialGrid& grid,
                            const std::function<cplx(double)>& fn);

RadialField operator+(RadialField a, const RadialField& b);
RadialField operator-(RadialField a, const RadialField& b);
RadialField operator*(cplx s, RadialField a);

void add_scaled(RadialField& acc, cplx s, const RadialField& x);

/// Pointwise product; both fields must share grid and domain.
RadialField pointwise(const RadialField& a, const RadialField& b);

/// Complex conjugate. For radial fields this is also the spectral
/// representation of the conjugated function.
RadialField conjugate(RadialField a);

RadialField real_part(RadialField a);

double max_abs(const RadialField& a);

void require_same_grid(const RadialField& a, const RadialField& b);

}  // namespace zlab
