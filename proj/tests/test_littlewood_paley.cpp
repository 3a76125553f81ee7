#include <doctest.h>

#include <cmath>

#include "zlab/dyadic.hpp"
#include "zlab/rng.hpp"
#include "zlab/spectral.hpp"

using namespace zlab;

namespace {

RadialField random_resolved_spectral(const RadialGrid& g, Rng& rng,
                                     int bumps = 3) {
  RadialField f = zeros(g, Domain::spectral);
  const double top = 0.45 * g.rho_max();
  for (int b = 0; b < bumps; ++b) {
    const double c = rng.uniform(0.3, top * 0.8);
    const double w = rng.uniform(0.15, 0.35) * std::max(c, 0.5);
    const double ph = rng.uniform(0.0, 2.0 * M_PI);
    for (int m = 0; m < g.n_r; ++m) {
      const double d = (g.rho(m) - c) / w;
      f.values[m] += std::polar(std::exp(-0.5 * d * d), ph);
    }
  }
  return f;
}

}  // namespace

TEST_SUITE("littlewood_paley") {

TEST_CASE("mother cutoff profile") {
  CHECK(mother(1.0) == 1.0);
  CHECK(mother(1.25) == 1.0);
  CHECK(mother(1.7) == 0.0);
  CHECK(mother(1.61) == 0.0);
  const double mid = mother(1.4);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  // Monotone non-increasing across the transition.
  double prev = 2.0;
  for (int i = 0; i <= 200; ++i) {
    const double s = 1.25 + i * (1.6 - 1.25) / 200.0;
    const double v = mother(s);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("band profiles phi_j") {
  CHECK(phi_j(std::ldexp(1.0, 5), 5) == 1.0);  // phi(1) = 1
  // Disjointness two bands apart, sampled over a wide range.
  for (int i = 0; i <= 500; ++i) {
    const double s = 0.01 * std::pow(10.0, i * 4.0 / 500.0);
    CHECK(phi_j(s, 0) * phi_j(s, 2) == 0.0);
    CHECK(phi_j(s, -1) * phi_j(s, 3) == 0.0);
  }
  // Partition of unity at a generic point.
  double acc = 0.0;
  for (int j = -8; j <= 8; ++j) acc += phi_j(3.7, j);
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("projectors partition the resolved band") {
  const RadialGrid g = build_grid(256, 32.0);
  const DyadicSystem dys = DyadicSystem::make(g);

  CHECK(dys.j_min() == static_cast<int>(std::ceil(std::log2(g.drho()))) + 1);
  CHECK(dys.j_max() ==
        static_cast<int>(std::floor(std::log2(g.rho_max()))) - 1);
  CHECK(dys.cover_lo() <= dys.j_min());
  CHECK(dys.cover_hi() >= dys.j_max());

  // Partition of unity at every node over the covering window.
  double dev = 0.0;
  for (int m = 0; m < g.n_r; ++m) {
    double s = 0.0;
    for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j)
      s += dys.band_mask(j)[m];
    dev = std::max(dev, std::abs(s - 1.0));
  }
  CHECK(dev < 1e-12);

  Rng rng(7);
  const RadialField F = random_resolved_spectral(g, rng);

  SUBCASE("sum of projections reconstructs") {
    RadialField acc = zeros(g, Domain::spectral);
    for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j)
      acc = acc + dys.project(F, j);
    CHECK(l2_norm(acc - F) / l2_norm(F) < 1e-12);
  }

  SUBCASE("projections two bands apart vanish") {
    for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j)
      for (int k = dys.cover_lo(); k <= dys.cover_hi(); ++k) {
        if (std::abs(j - k) < 2) continue;
        CHECK(l2_norm(dys.project(dys.project(F, j), k)) == 0.0);
      }
  }

  SUBCASE("lowpass at the top of the covering window is the identity") {
    CHECK(l2_norm(dys.project_leq(F, dys.cover_hi()) - F) == 0.0);
  }

  SUBCASE("band support leakage is exactly zero") {
    for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j) {
      const RadialField piece = dys.project(F, j);
      double outside = 0.0;
      for (int m = 0; m < g.n_r; ++m) {
        const double rho = g.rho(m);
        if (rho < 0.625 * std::ldexp(1.0, j) || rho > 1.6 * std::ldexp(1.0, j))
          outside += rho * rho * std::norm(piece.values[m]);
      }
      CHECK(outside == 0.0);
    }
  }
}

TEST_CASE("paraproducts decompose the product") {
  const RadialGrid g = build_grid(256, 32.0);
  const DyadicSystem dys = DyadicSystem::make(g);
  Rng rng(11);

  for (int trial = 0; trial < 5; ++trial) {
    const RadialField fp = inverse(random_resolved_spectral(g, rng));
    const RadialField gp = inverse(random_resolved_spectral(g, rng));
    const RadialField lh = paraproduct(dys, fp, gp, Paraproduct::LH);
    const RadialField hl = paraproduct(dys, fp, gp, Paraproduct::HL);
    const RadialField hh = paraproduct(dys, fp, gp, Paraproduct::HH);
    const RadialField prod = pointwise(fp, gp);
    CHECK(l2_norm(lh + hl + hh - prod) / l2_norm(prod) < 1e-8);

    // HL = RL + XL with identical summands.
    const RadialField rl = paraproduct(dys, fp, gp, Paraproduct::RL);
    const RadialField xl = paraproduct(dys, fp, gp, Paraproduct::XL);
    CHECK(l2_norm(rl + xl - hl) / std::max(l2_norm(hl), 1e-300) < 1e-12);

    // LH = LR + LX likewise.
    const RadialField lr = paraproduct(dys, fp, gp, Paraproduct::LR);
    const RadialField lx = paraproduct(dys, fp, gp, Paraproduct::LX);
    CHECK(l2_norm(lr + lx - lh) / std::max(l2_norm(lh), 1e-300) < 1e-12);
  }

  SUBCASE("zero factor annihilates") {
    const RadialField fp = inverse(random_resolved_spectral(g, rng));
    const RadialField z = zeros(g, Domain::physical);
    for (auto kind : {Paraproduct::LH, Paraproduct::HL, Paraproduct::HH,
                      Paraproduct::RL, Paraproduct::XL})
      CHECK(l2_norm(paraproduct(dys, fp, z, kind)) == 0.0);
  }
}

TEST_CASE("unresolved mass warning threshold") {
  const RadialGrid g = build_grid(128, 16.0);
  const DyadicSystem dys = DyadicSystem::make(g);
  const RadialField ok = forward(sample_physical(
      g, [](double r) { return cplx(std::exp(-0.5 * r * r), 0.0); }));
  CHECK(unresolved_mass_fraction(dys, ok) < 0.2);
  const RadialField top = sample_spectral(g, [&](double rho) {
    return cplx(rho > 0.9 * g.rho_max() ? 1.0 : 0.0, 0.0);
  });
  CHECK(unresolved_mass_fraction(dys, top) > 0.99);
}

}  // TEST_SUITE
