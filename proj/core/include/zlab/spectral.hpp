#pragma once

#include "zlab/radial_field.hpp"

namespace zlab {

// Cached DST-I evaluator: y_k = sum_m sin(pi (k+1)(m+1)/(n+1)) x_m.
// Dense matrix with a fixed per-row reduction order, so results are
// bit-identical for any thread count.
class SineTransform {
 public:
  explicit SineTransform(int n);
  void apply(const cplx* x, cplx* y) const;
  int size() const { return n_; }

 private:
  int n_;
  std::vector<double> mat_;  // row-major n x n
};

const SineTransform& sine_transform(int n);

// Unitary radial 3D Fourier transform via the sine transform:
//   (F f)(rho) = sqrt(2/pi) rho^-1 \int_0^inf sin(r rho) r f(r) dr.
// Exact inverse and exact Plancherel on the paired grid.
RadialField forward(const RadialField& f);
RadialField inverse(const RadialField& F);

RadialField to_spectral(const RadialField& f);
RadialField to_physical(const RadialField& f);

/// Multiplication by rho^s. The grid excludes rho = 0, so s < 0 is defined.
RadialField frac_derivative(RadialField F, double s);

/// Multiplication by (1 + rho^2)^{s/2}.
RadialField bracket_derivative(RadialField F, double s);

/// Free Schroedinger propagator S(t): multiplier e^{i t rho^2}.
RadialField schrodinger_prop(RadialField F, double t);

/// Free half-wave propagator W(t): multiplier e^{i t rho}.
RadialField wave_prop(RadialField F, double t);

struct InitialState {
  RadialField u0;  // spectral
  RadialField N0;  // spectral
};

// First-order reduction N = n - i |grad|^-1 n_t. Rejects n1 whose lowest
// spectral bin carries more than `lowest_bin_tol` of its total mass, since
// the continuum |grad|^-1 is singular at frequency zero.
InitialState init_from_physical(const RadialField& u0, const RadialField& n0,
                                const RadialField& n1,
                                double lowest_bin_tol = 1e-8);

/// Fraction of spectral mass at frequencies above rho_max/2.
double spectral_tail_fraction(const RadialField& F);

/// L2 norms with the radial measures (4 pi r^2 dr resp. 4 pi rho^2 drho).
double l2_norm(const RadialField& f);

}  // namespace zlab
