#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "zlab/evolution.hpp"

namespace zlab {

// Line-based `key = value` run configuration. Unknown and duplicate keys are
// rejected; '#' starts a comment.
struct SimConfig {
  double gamma = 1.0;
  double eps = 0.03;
  int n_r = 256;
  double r_max = 32.0;
  double dt = 0.01;
  double T = 1.0;
  NonlinearityMode mode = NonlinearityMode::physical;
  double rho_data = 0.01;  // 0 disables the smallness rescaling
  int snapshot_every = 1;
  double picard_tol = 1e-8;
  int picard_max_iter = 25;
  std::uint64_t seed = 1;
  int n_mu = 64;
  int threads = 1;
  // Gaussian data family.
  double u0_amp = 1.0, u0_width = 1.0;
  double n0_amp = 0.5, n0_width = 1.0;
  double n1_amp = 0.25, n1_width = 1.0;

  SolverConfig solver() const;
  DataParams data() const;
  std::map<std::string, std::string> echo() const;
};

SimConfig parse_config(const std::string& text);

/// Applies ZLAB_<KEY> environment overrides on top of a parsed config.
void apply_env_overrides(SimConfig& cfg);

SimConfig default_config();

}  // namespace zlab
