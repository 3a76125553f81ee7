#include <doctest.h>

#include <cmath>
#include <limits>

#include "zlab/norms.hpp"
#include "zlab/rng.hpp"
#include "zlab/spectral.hpp"

using namespace zlab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

RadialField unit_gaussian(const RadialGrid& g) {
  return sample_physical(g, [](double r) { return cplx(std::exp(-0.5 * r * r), 0.0); });
}

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("lebesgue norm of the unit gaussian") {
  const RadialGrid g = build_grid(256, 32.0);
  const RadialField f = unit_gaussian(g);
  // int e^{-r^2} 4 pi r^2 dr = pi^{3/2}, so the L2 norm is pi^{3/4}.
  CHECK(lebesgue_norm(f, 2.0) ==
        doctest::Approx(std::pow(M_PI, 0.75)).epsilon(1e-8));
  SUBCASE("homogeneity") {
    const RadialField h = cplx(-2.5, 0.0) * f;
    CHECK(lebesgue_norm(h, 4.0) ==
          doctest::Approx(2.5 * lebesgue_norm(f, 4.0)).epsilon(1e-13));
  }
  SUBCASE("sup norm") {
    CHECK(lebesgue_norm(f, kInf) ==
          doctest::Approx(std::exp(-0.5 * g.r(0) * g.r(0))).epsilon(1e-14));
  }
}

TEST_CASE("mass-normalized plateau bump decreases in q") {
  const RadialGrid g = build_grid(256, 32.0);
  RadialField f = sample_physical(g, [](double r) {
    // Smooth indicator-like plateau of radius ~2.
    return cplx(1.0 / (1.0 + std::exp(8.0 * (r - 2.0))), 0.0);
  });
  const double mass1 = lebesgue_norm(f, 1.0);
  f = cplx(1.0 / mass1, 0.0) * f;  // L1-normalized, sup < 1
  const double n2 = lebesgue_norm(f, 2.0);
  const double n4 = lebesgue_norm(f, 4.0);
  const double n6 = lebesgue_norm(f, 6.0);
  CHECK(n2 > n4);
  CHECK(n4 > n6);
}

TEST_CASE("sobolev and besov bookkeeping") {
  const RadialGrid g = build_grid(256, 32.0);
  const DyadicSystem dys = DyadicSystem::make(g);
  const RadialField f = unit_gaussian(g);

  CHECK(sobolev_norm(f, 0.0) ==
        doctest::Approx(lebesgue_norm(f, 2.0)).epsilon(1e-12));

  SUBCASE("square-function equivalence for an octave-wide field") {
    const RadialField broad = sample_spectral(g, [](double rho) {
      const double d = (rho - 2.0) / 1.5;
      return cplx(std::exp(-0.5 * d * d), 0.0);
    });
    const double b = besov_norm(dys, broad, 0.0, 2.0);
    const double l = l2_norm(broad);
    CHECK(std::abs(b - l) / l < 0.05);
  }

  SUBCASE("single-band field") {
    // Compactly supported inside the flat region of the j = 2 band.
    const RadialField single = sample_spectral(g, [](double rho) {
      if (rho <= 3.4 || rho >= 4.8) return cplx(0.0, 0.0);
      const double x = (rho - 3.4) / 1.4 * 2.0 - 1.0;
      return cplx(std::exp(-1.0 / (1.0 - x * x)), 0.0);
    });
    const double s = 0.7, q = 4.0;
    const double expect =
        std::pow(2.0, 2.0 * s) * lebesgue_norm(inverse(single), q);
    CHECK(besov_norm(dys, single, s, q) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("strichartz exponent bookkeeping") {
  CHECK(q_of_eps(0.0) == doctest::Approx(4.0));
  CHECK(q_of_eps(0.03) == doctest::Approx(1.0 / 0.26).epsilon(1e-14));
  const double eps = 0.02;
  CHECK(q_of_eps(-eps) > 4.0);
  CHECK(4.0 > q_of_eps(eps));
  CHECK(q_of_eps(eps) > 10.0 / 3.0);
}

TEST_CASE("radial admissibility on the boundary lattice") {
  const double ten3 = 10.0 / 3.0;
  // Schroedinger: 2/p + 5/q < 5/2, or (inf, 2).
  CHECK_FALSE(admissible(Equation::schrodinger, 2.0, 2.0));
  CHECK_FALSE(admissible(Equation::schrodinger, 2.0, ten3));  // boundary
  CHECK(admissible(Equation::schrodinger, 2.0, 4.0));
  CHECK(admissible(Equation::schrodinger, 2.0, 6.0));
  CHECK(admissible(Equation::schrodinger, 2.0, kInf));
  CHECK(admissible(Equation::schrodinger, ten3, ten3));
  CHECK_FALSE(admissible(Equation::schrodinger, 4.0, 2.0));
  CHECK(admissible(Equation::schrodinger, 4.0, ten3));
  CHECK(admissible(Equation::schrodinger, kInf, 2.0));  // endpoint exception
  CHECK(admissible(Equation::schrodinger, 2.0, q_of_eps(0.01)));
  CHECK_FALSE(admissible(Equation::schrodinger, 1.5, 4.0));  // p < 2

  // Wave: 1/p + 2/q < 1, or (inf, 2).
  CHECK_FALSE(admissible(Equation::wave, 2.0, 2.0));
  CHECK_FALSE(admissible(Equation::wave, 2.0, 4.0));  // boundary case
  CHECK(admissible(Equation::wave, 2.0, 6.0));
  CHECK(admissible(Equation::wave, ten3, ten3));
  CHECK_FALSE(admissible(Equation::wave, 4.0, 2.0));
  CHECK(admissible(Equation::wave, 4.0, 4.0));
  CHECK(admissible(Equation::wave, kInf, 2.0));
  CHECK(admissible(Equation::wave, 2.0, q_of_eps(-0.01)));
}

TEST_CASE("mass and energy") {
  const RadialGrid g = build_grid(256, 32.0);
  const RadialField u = unit_gaussian(g);
  const RadialField N = sample_physical(
      g, [](double r) { return cplx(0.4 * std::exp(-0.3 * r * r), 0.1); });
  const RadialField zu = zeros(g, Domain::physical);

  SUBCASE("u = 0 leaves only the wave energy") {
    const double gamma = 0.5;
    const double expect =
        0.5 * std::pow(homogeneous_sobolev_norm(N, 0.5 * (1.0 - gamma)), 2);
    CHECK(energy(zu, N, gamma) == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("N = 0 gives the gaussian gradient integral") {
    const double expect = 1.5 * std::pow(M_PI, 1.5);
    for (double gamma : {0.5, 1.0})
      CHECK(energy(u, zeros(g, Domain::physical), gamma) ==
            doctest::Approx(expect).epsilon(1e-6));
  }

  SUBCASE("negative n raises the energy") {
    const RadialField Nneg = sample_physical(
        g, [](double r) { return cplx(-0.4 * std::exp(-0.3 * r * r), 0.0); });
    CHECK(energy(u, Nneg, 1.0) > energy(u, zeros(g, Domain::physical), 1.0));
  }

  SUBCASE("mass is the L2 norm") {
    CHECK(mass(u) == doctest::Approx(std::pow(M_PI, 0.75)).epsilon(1e-8));
  }
}

TEST_CASE("time norms") {
  const RadialGrid g = build_grid(128, 16.0);
  const DyadicSystem dys = DyadicSystem::make(g);
  const RadialField f = forward(unit_gaussian(g));

  SUBCASE("stationary trajectory over [0,1]") {
    FieldSeries s;
    for (int i = 0; i <= 10; ++i) {
      s.t.push_back(0.1 * i);
      s.fields.push_back(f);
    }
    const double spatial = besov_norm(dys, f, 0.25, 4.0);
    CHECK(strichartz_norm(dys, s, 2.0, 0.25, 4.0) ==
          doctest::Approx(spatial).epsilon(1e-12));
    CHECK(strichartz_norm(dys, s, kInf, 0.25, 4.0) ==
          doctest::Approx(spatial).epsilon(1e-12));
  }

  SUBCASE("free evolution X-norm self-converges under cadence halving") {
    const double eps = 0.03, T = 1.0;
    const auto xnorm = [&](int steps) {
      FieldSeries s;
      for (int i = 0; i <= steps; ++i) {
        const double t = T * i / steps;
        s.t.push_back(t);
        s.fields.push_back(schrodinger_prop(f, t));
      }
      return x_norm_S(dys, s, eps);
    };
    const double coarse = xnorm(20);
    const double fine = xnorm(40);
    CHECK(std::isfinite(coarse));
    CHECK(std::abs(fine - coarse) / fine < 0.10);
  }

  SUBCASE("homogeneous strichartz ratio is ensemble-bounded") {
    Rng rng(3);
    const double eps = 0.03;
    double worst = 0.0;
    for (int s = 0; s < 10; ++s) {
      RadialField d = zeros(g, Domain::spectral);
      for (int b = 0; b < 2; ++b) {
        const double c = rng.uniform(0.5, 4.0);
        const double w = rng.uniform(0.2, 0.4) * c;
        const double ph = rng.uniform(0.0, 2.0 * M_PI);
        for (int m = 0; m < g.n_r; ++m) {
          const double x = (g.rho(m) - c) / w;
          d.values[m] += std::polar(std::exp(-0.5 * x * x), ph);
        }
      }
      FieldSeries ser;
      for (int i = 0; i <= 20; ++i) {
        const double t = 0.1 * i;
        ser.t.push_back(t);
        ser.fields.push_back(schrodinger_prop(d, t));
      }
      const double ratio =
          strichartz_norm(dys, ser, 2.0, 0.25 + eps, q_of_eps(eps)) / l2_norm(d);
      worst = std::max(worst, ratio);
      CHECK(std::isfinite(ratio));
    }
    CHECK(worst > 0.0);
    CHECK(worst < 100.0);
  }
}

}  // TEST_SUITE
