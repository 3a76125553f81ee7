#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "zlab/dyadic.hpp"
#include "zlab/radial_field.hpp"
#include "zlab/resonance.hpp"
#include "zlab/rng.hpp"

namespace zlab {

enum class Resonance { unit, omega, theta };

// Output-frequency weight sigma^out_pow * <sigma>^out_bracket_pow applied to
// the symbol (used for the |grad|^gamma-type weights and the multiplier
// bounds of the |grad|<grad>-weighted operators).
struct Prefactor {
  double out_pow = 0.0;
  double out_bracket_pow = 0.0;
};

// A bilinear symbol: paraproduct mask over the (xi, eta) slots, divided by a
// resonance, times an output-frequency prefactor. Slot convention: the FIRST
// argument of the operator occupies the xi slot (the written-first factor of
// the mask subscript).
struct MultiplierSpec {
  Resonance resonance = Resonance::unit;
  Paraproduct mask = Paraproduct::XL;
  bool mask_add_lx = false;  // true for the theta operator (XL + LX mask)
  bool unit_mask = false;    // mask identically 1 (plain product symbol)
  Prefactor prefactor;
  int n_mu = 64;         // Gauss-Legendre nodes in the angular variable
  double guard = 1e-6;   // resonance magnitude guard under the mask support
};

/// Continuum paraproduct mask P_kind(a, b), summed over all dyadic bands.
double mask_value(Paraproduct kind, double a, double b);

/// Full masked symbol m(a, b, sigma); throws NumericalError if the mask is
/// active (> 1e-12) where |resonance| < guard.
double symbol_value(const MultiplierSpec& spec, double a, double b,
                    double sigma);

// Direct quadrature application:
//   T(f,g)^(sigma) = (2 pi)^{-3/2} int m(|sigma-eta|, |eta|, sigma)
//                    fhat(|sigma-eta|) ghat(|eta|) d^3 eta
// with Gauss-Legendre in the angle, trapezoid in |eta| on the rho-grid, and
// cubic interpolation of fhat off-grid. Output is spectral. The (2 pi)^{-3/2}
// makes the unit symbol reproduce the pointwise product under the unitary
// transform.
RadialField apply_bilinear(const MultiplierSpec& spec, const RadialField& f,
                           const RadialField& g);

// The same quadrature assembled once into a sparse kernel for a fixed grid;
// apply() agrees with apply_bilinear up to floating-point reassociation.
class BilinearKernel {
 public:
  static BilinearKernel assemble(const RadialGrid& grid,
                                 const MultiplierSpec& spec);
  RadialField apply(const RadialField& f, const RadialField& g) const;
  std::size_t nnz() const;
  const RadialGrid& grid() const { return grid_; }

 private:
  struct Entry {
    std::uint32_t fi;
    std::uint32_t gi;
    double w;
  };
  RadialGrid grid_;
  MultiplierSpec spec_;
  std::vector<std::vector<Entry>> rows_;
};

/// Cached kernel lookup (per grid, spec).
const BilinearKernel& bilinear_kernel(const RadialGrid& grid,
                                      const MultiplierSpec& spec);

MultiplierSpec omega_spec(int n_mu = 64);
MultiplierSpec theta_spec(int n_mu = 64);

/// Omega(N, u): mask XL over (N, u) slots, resonance omega. Spectral output.
RadialField normal_form_omega(const RadialField& N, const RadialField& u);

/// Theta(u, v): mask XL + LX, resonance theta. The caller passes the
/// conjugated factor in the second slot. Spectral output.
RadialField normal_form_theta(const RadialField& u, const RadialField& v);

// --- numerical certification of the Section-2 symbol bounds ---

struct SymbolBoundRow {
  int j = 0;
  char res_case = 'o';  // 'o' for omega, 't' for theta
  int samples = 0;
  double bound = 0.0;      // the paper's lower bound for |resonance|
  double min_ratio = 0.0;  // min |resonance| / bound over samples
  double max_abs_m = 0.0;  // max |sigma <sigma> / resonance| on the support
};

struct SymbolBoundReport {
  std::vector<SymbolBoundRow> rows;
  double min_ratio = 0.0;
};

/// Lower bound asserted for |omega| on the support of m_Omega^j.
double omega_lower_bound(int j);
/// Lower bound asserted for |theta| on the support of m_Theta^j.
double theta_lower_bound(int j);

// Samples (a, b, mu) with phi_j(a) varphi_{j-4}(b) > 0 and asserts the
// resonance lower bounds; throws VerificationError with a witness point on
// violation. j_set entries must satisfy |j| >= 3.
SymbolBoundReport verify_symbol_bounds(const std::set<int>& j_set,
                                       int n_samples, std::uint64_t seed);

struct DerivativeRow {
  int j = 0;
  char res_case = 'o';
  // max over samples of |d^(oa,ob,omu) m| * a^oa * b^ob for the listed orders
  double c00 = 0.0, c10 = 0.0, c01 = 0.0, c20 = 0.0, c02 = 0.0, c11 = 0.0,
         cmu = 0.0;
};

struct DerivativeReport {
  std::vector<DerivativeRow> rows;
};

// Finite-difference scaling check of the weighted multipliers
// m^j = sigma <sigma> / resonance * mask: |d_a^alpha d_b^beta m| should scale
// like a^-alpha b^-beta with j-stable constants.
DerivativeReport verify_multiplier_derivatives(int order,
                                               const std::set<int>& j_set,
                                               int n_samples,
                                               std::uint64_t seed);

}  // namespace zlab
