#pragma once

#include <string>
#include <vector>

#include "zlab/dyadic.hpp"
#include "zlab/norms.hpp"
#include "zlab/rng.hpp"

namespace zlab {

struct EnsembleConfig {
  int n_samples = 24;
  std::uint64_t seed = 1;
};

struct RatioReport {
  std::string lemma;
  int n = 0;
  int skipped = 0;          // unresolved ensemble members
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  bool all_finite = true;
};

/// Ids of the verifiable nonlinear-estimate ratios (fixed-time cores).
std::vector<std::string> estimate_registry_ids();

// Per-sample LHS/RHS ratios of the named estimate over a seeded ensemble of
// frequency-localized random radial fields. Zero-RHS samples contribute
// ratio 0 by convention.
RatioReport estimate_ratio(const std::string& lemma_id, const DyadicSystem& dys,
                           const EnsembleConfig& cfg, double gamma, double eps);

struct StabilityRow {
  std::string lemma;
  double max_coarse = 0.0;
  double max_fine = 0.0;
  double rel_change = 0.0;  // |fine - coarse| / coarse
};

// Runs every registry id on two grids (same r_max, n_r vs 2 n_r) with the
// same seeds, reporting the relative change of the ensemble-max ratio.
std::vector<StabilityRow> estimate_stability(int n_r_coarse, double r_max,
                                             const EnsembleConfig& cfg,
                                             double gamma, double eps);

// Threshold probe for the Omega boundary estimate
// ||Omega(N,u)||_{H^1} <= K ||N||_{L^2} ||u||_{H^s}: self-similar bump pairs
// (u at center c 2^k, N four octaves up) swept over k. Below the s = 1/2
// threshold the per-level ensemble-max ratio grows with k; above it stays
// bounded.
struct ThresholdProbe {
  double s_low = 0.4;
  double s_high = 0.6;
  std::vector<double> max_low;   // per widening level, s = s_low
  std::vector<double> max_high;  // per widening level, s = s_high
  double growth_low = 0.0;       // last level / first level
  double growth_high = 0.0;
};

ThresholdProbe lemma34_threshold_probe(int n_r, int levels, int samples,
                                       std::uint64_t seed, double s_low = 0.4,
                                       double s_high = 0.6);

}  // namespace zlab
