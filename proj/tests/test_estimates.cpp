#include <doctest.h>

#include <cmath>

#include "zlab/estimates.hpp"

using namespace zlab;

TEST_SUITE("estimates") {

TEST_CASE("registry is populated and rejects unknown ids") {
  const auto ids = estimate_registry_ids();
  CHECK(ids.size() == 17);
  const DyadicSystem dys = DyadicSystem::make(build_grid(128, 32.0));
  CHECK_THROWS_AS(estimate_ratio("nope", dys, {}, 1.0, 0.03), ConfigError);
}

TEST_CASE("ratios are finite and nonzero on seeded ensembles") {
  const DyadicSystem dys = DyadicSystem::make(build_grid(128, 32.0));
  EnsembleConfig cfg;
  cfg.n_samples = 6;
  cfg.seed = 17;
  for (const auto& id : estimate_registry_ids()) {
    const RatioReport rep = estimate_ratio(id, dys, cfg, 0.75, 0.03);
    INFO("lemma " << id);
    CHECK(rep.all_finite);
    CHECK(rep.n + rep.skipped == cfg.n_samples);
    CHECK(rep.n > 0);
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.median_ratio > 0.0);
  }
}

TEST_CASE("same seed reproduces the report") {
  const DyadicSystem dys = DyadicSystem::make(build_grid(128, 32.0));
  EnsembleConfig cfg;
  cfg.n_samples = 4;
  cfg.seed = 5;
  const RatioReport a = estimate_ratio("3.4a", dys, cfg, 1.0, 0.03);
  const RatioReport b = estimate_ratio("3.4a", dys, cfg, 1.0, 0.03);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(a.median_ratio == b.median_ratio);
}

TEST_CASE("threshold probe runs and separates the s-values") {
  const ThresholdProbe probe = lemma34_threshold_probe(512, 2, 3, 13);
  REQUIRE(probe.max_low.size() == 2);
  for (double v : probe.max_low) CHECK(v > 0.0);
  for (double v : probe.max_high) CHECK(v > 0.0);
  CHECK(std::isfinite(probe.growth_low));
  // Below the threshold the ratio grows faster than above it.
  CHECK(probe.growth_low > probe.growth_high);
}

}  // TEST_SUITE
