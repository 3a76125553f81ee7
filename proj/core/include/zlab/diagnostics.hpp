#pragma once

#include "zlab/evolution.hpp"

namespace zlab {

// Interaction profiles f(t) = S(-t) u(t), g(t) = W(-t) N(t); their large-time
// limits are the scattering states.
struct ProfileSeries {
  std::vector<double> t;
  std::vector<RadialField> f;
  std::vector<RadialField> g;
};

ProfileSeries interaction_profiles(const Trajectory& traj);

struct ScatterReport {
  std::vector<double> t;
  std::vector<double> omega_h1;  // ||Omega(N(t), u(t))||_{H^1}
  std::vector<double> theta_hw;  // || |grad|^g Theta(u, ubar) ||_{H^{(1-g)/2}}
  // Running trapezoid integrals of the squared boundary norms.
  std::vector<double> omega_l2sq_running;
  std::vector<double> theta_l2sq_running;
  // Cauchy matrices of the interaction profiles: symmetric, zero diagonal.
  std::vector<std::vector<double>> f_cauchy;  // H^1
  std::vector<std::vector<double>> g_cauchy;  // H^{(1-gamma)/2}
};

/// Requires >= 4 snapshots.
ScatterReport scattering_report(const Trajectory& traj, double gamma);

struct ConservationReport {
  std::vector<double> t;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  double max_mass_drift = 0.0;    // relative to t = 0
  double max_energy_drift = 0.0;  // relative to t = 0
};

ConservationReport conservation_report(const Trajectory& traj, double gamma);

}  // namespace zlab
