#pragma once

#include <utility>

#include "zlab/multiplier.hpp"
#include "zlab/norms.hpp"
#include "zlab/spectral.hpp"

namespace zlab {

// Nonlinearity in the first equation: (Re N) u = (Nu + conj(N)u)/2 conserves
// mass and energy; the simplified Nu matches the normal-form derivation.
enum class NonlinearityMode { physical, paper };

const char* to_string(NonlinearityMode mode);
NonlinearityMode mode_from_string(const std::string& s);

struct SimState {
  double t = 0.0;
  RadialField u;  // spectral
  RadialField N;  // spectral
};

struct SolverConfig {
  double dt = 0.01;
  double T = 1.0;
  NonlinearityMode mode = NonlinearityMode::physical;
  double gamma = 1.0;
  double eps = 0.03;
  int snapshot_every = 1;
  bool nonlinearity_off = false;
  int picard_max_iter = 25;
  double picard_tol = 1e-8;
  int n_mu = 64;
  // Relative high-band mass triggering the spectral blow-up error.
  double blowup_fraction = 0.01;
};

struct Trajectory {
  std::vector<SimState> states;  // uniform cadence, strictly increasing t
  double cadence = 0.0;          // time between stored states
  NonlinearityMode mode = NonlinearityMode::physical;
  double gamma = 1.0;
  bool nonlinearity_off = false;
  std::string solver;

  FieldSeries u_series() const;
  FieldSeries N_series() const;
};

/// One Strang step: half linear, exact/explicit nonlinear substep, half
/// linear. Throws NumericalError on spectral blow-up.
SimState step_direct(const SimState& s, double dt, NonlinearityMode mode,
                     double gamma, bool nonlinearity_off = false,
                     double blowup_fraction = 0.01);

Trajectory run_direct(const SolverConfig& cfg, const SimState& ic);

struct PicardResult {
  Trajectory traj;
  std::vector<double> diffs;    // successive-iterate X-norm differences
  std::vector<double> factors;  // diffs[k] / diffs[k-1]
  int iterations = 0;
  bool converged = false;
};

// Fixed-point solve of the normal-form integral equations (paper mode) or of
// the plain Duhamel equations (physical mode) on the uniform time grid, all
// time integrals by trapezoid, convergence measured in the discrete X norm.
// Throws NumericalError after three consecutive expanding iterations.
PicardResult picard_solve(const SolverConfig& cfg, const SimState& ic);

// Sup-over-grid Sobolev norm of the difference between the trajectory and
// its own plain-Duhamel reconstruction (H^1 for u, H^{(1-gamma)/2} for N).
struct DuhamelResidual {
  std::vector<double> t;
  std::vector<double> ru;
  std::vector<double> rN;
  double max_u = 0.0;
  double max_N = 0.0;
};

DuhamelResidual duhamel_residual(const Trajectory& traj, double gamma);

// Residuals of the original differential system via centered time
// differences on interior snapshots:
//   R_S = i d_t u - Delta u - nonlinearity,  measured in H^-1;
//   R_W = i d_t N - |grad| N - |grad|^gamma |u|^2, in H^{-(1+gamma)/2}.
struct PdeResidual {
  std::vector<double> t;
  std::vector<double> rs;
  std::vector<double> rw;
  double max_rs = 0.0;
  double max_rw = 0.0;
};

PdeResidual pde_residual(const Trajectory& traj, double gamma,
                         NonlinearityMode mode);

/// The time-t boundary operators (Omega(N, u), |grad|^gamma Theta(u, conj u)).
std::pair<RadialField, RadialField> normal_form_boundary(const SimState& s,
                                                         double gamma);

struct DataParams {
  double u0_amp = 1.0, u0_width = 1.0;
  double n0_amp = 0.5, n0_width = 1.0;
  double n1_amp = 0.25, n1_width = 1.0;
};

// Gaussian initial-data family: u0 and n0 are Gaussians, n1 is a Laplacian
// of a Gaussian (so the |grad|^-1 zero-mode gate passes). If rho_data > 0 the
// amplitudes are scaled so ||u0||_{H^1} + ||N0||_{H^{(1-gamma)/2}} = rho_data.
InitialState make_initial_data(const RadialGrid& grid, const DataParams& p,
                               double gamma, double rho_data);

double data_size(const InitialState& ic, double gamma);

}  // namespace zlab
