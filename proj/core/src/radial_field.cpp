#include "zlab/radial_field.hpp"

#include <algorithm>

namespace zlab {

RadialGrid build_grid(int n_r, double r_max) {
  if (n_r < 8) throw SizingError("build_grid: n_r must be >= 8");
  if (!(r_max > 0.0)) throw SizingError("build_grid: r_max must be > 0");
  return RadialGrid{n_r, r_max};
}

RadialField zeros(const RadialGrid& grid, Domain domain) {
  return RadialField{grid, domain, std::vector<cplx>(grid.n_r, cplx(0.0))};
}

RadialField sample_physical(const RadialGrid& grid,
                            const std::function<cplx(double)>& fn) {
  RadialField f = zeros(grid, Domain::physical);
  for (int i = 0; i < grid.n_r; ++i) f.values[i] = fn(grid.r(i));
  return f;
}

RadialField sample_spectral(const RadialGrid& grid,
                            const std::function<cplx(double)>& fn) {
  RadialField f = zeros(grid, Domain::spectral);
  for (int i = 0; i < grid.n_r; ++i) f.values[i] = fn(grid.rho(i));
  return f;
}

void require_same_grid(const RadialField& a, const RadialField& b) {
  if (!(a.grid == b.grid))
    throw NumericalError("field operation on mismatched grids");
  if (a.domain != b.domain)
    throw NumericalError("field operation on mismatched domains");
}

RadialField operator+(RadialField a, const RadialField& b) {
  require_same_grid(a, b);
  for (int i = 0; i < a.size(); ++i) a.values[i] += b.values[i];
  return a;
}

RadialField operator-(RadialField a, const RadialField& b) {
  require_same_grid(a, b);
  for (int i = 0; i < a.size(); ++i) a.values[i] -= b.values[i];
  return a;
}

RadialField operator*(cplx s, RadialField a) {
  for (auto& v : a.values) v *= s;
  return a;
}

void add_scaled(RadialField& acc, cplx s, const RadialField& x) {
  require_same_grid(acc, x);
  for (int i = 0; i < acc.size(); ++i) acc.values[i] += s * x.values[i];
}

RadialField pointwise(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b);
  RadialField out = a;
  for (int i = 0; i < out.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

RadialField conjugate(RadialField a) {
  for (auto& v : a.values) v = std::conj(v);
  return a;
}

RadialField real_part(RadialField a) {
  for (auto& v : a.values) v = cplx(v.real(), 0.0);
  return a;
}

double max_abs(const RadialField& a) {
  double m = 0.0;
  for (const auto& v : a.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace zlab
