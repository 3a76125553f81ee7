#include "zlab/diagnostics.hpp"

#include <cmath>

namespace zlab {

ProfileSeries interaction_profiles(const Trajectory& traj) {
  ProfileSeries out;
  for (const auto& s : traj.states) {
    out.t.push_back(s.t);
    out.f.push_back(schrodinger_prop(s.u, -s.t));
    out.g.push_back(wave_prop(s.N, -s.t));
  }
  return out;
}

ScatterReport scattering_report(const Trajectory& traj, double gamma) {
  if (traj.states.size() < 4)
    throw ConfigError("scattering_report: trajectory too short (< 4 snapshots)");
  ScatterReport rep;
  for (const auto& s : traj.states) {
    rep.t.push_back(s.t);
    const auto [omega_b, theta_b] = normal_form_boundary(s, gamma);
    rep.omega_h1.push_back(sobolev_norm(omega_b, 1.0));
    rep.theta_hw.push_back(sobolev_norm(theta_b, 0.5 * (1.0 - gamma)));
  }
  const std::size_t n = rep.t.size();
  rep.omega_l2sq_running.assign(n, 0.0);
  rep.theta_l2sq_running.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double h = rep.t[i] - rep.t[i - 1];
    rep.omega_l2sq_running[i] =
        rep.omega_l2sq_running[i - 1] +
        0.5 * h *
            (rep.omega_h1[i - 1] * rep.omega_h1[i - 1] +
             rep.omega_h1[i] * rep.omega_h1[i]);
    rep.theta_l2sq_running[i] =
        rep.theta_l2sq_running[i - 1] +
        0.5 * h *
            (rep.theta_hw[i - 1] * rep.theta_hw[i - 1] +
             rep.theta_hw[i] * rep.theta_hw[i]);
  }

  const ProfileSeries prof = interaction_profiles(traj);
  rep.f_cauchy.assign(n, std::vector<double>(n, 0.0));
  rep.g_cauchy.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double df = sobolev_norm(prof.f[i] - prof.f[j], 1.0);
      const double dg =
          sobolev_norm(prof.g[i] - prof.g[j], 0.5 * (1.0 - gamma));
      rep.f_cauchy[i][j] = rep.f_cauchy[j][i] = df;
      rep.g_cauchy[i][j] = rep.g_cauchy[j][i] = dg;
    }
  return rep;
}

ConservationReport conservation_report(const Trajectory& traj, double gamma) {
  ConservationReport rep;
  for (const auto& s : traj.states) {
    rep.t.push_back(s.t);
    rep.mass_series.push_back(mass(s.u));
    rep.energy_series.push_back(energy(s.u, s.N, gamma));
  }
  if (!rep.t.empty()) {
    const double m0 = rep.mass_series[0];
    const double e0 = rep.energy_series[0];
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
      if (m0 != 0.0)
        rep.max_mass_drift = std::max(
            rep.max_mass_drift, std::abs(rep.mass_series[i] - m0) / std::abs(m0));
      if (e0 != 0.0)
        rep.max_energy_drift =
            std::max(rep.max_energy_drift,
                     std::abs(rep.energy_series[i] - e0) / std::abs(e0));
    }
  }
  return rep;
}

}  // namespace zlab
