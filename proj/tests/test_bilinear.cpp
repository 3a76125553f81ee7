#include <doctest.h>

#include <cmath>

#include "zlab/multiplier.hpp"
#include "zlab/quadrature.hpp"
#include "zlab/spectral.hpp"

using namespace zlab;

namespace {

double rel_l2(const RadialField& a, const RadialField& b) {
  return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

RadialField spectral_bump(const RadialGrid& g, double c, double w,
                          double phase = 0.0) {
  return sample_spectral(g, [=](double rho) {
    const double d = (rho - c) / w;
    return std::polar(std::exp(-0.5 * d * d), phase);
  });
}

// C^inf bump supported exactly in (lo, hi).
double compact_profile(double x, double lo, double hi) {
  const double y = 2.0 * (x - lo) / (hi - lo) - 1.0;
  if (y <= -1.0 || y >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

RadialField compact_bump(const RadialGrid& g, double lo, double hi,
                         double phase = 0.0) {
  return sample_spectral(g, [=](double rho) {
    return std::polar(compact_profile(rho, lo, hi), phase);
  });
}

}  // namespace

TEST_SUITE("bilinear") {

TEST_CASE("resonance functions at pinned points") {
  CHECK(resonance_omega(FreqPair{1.0, 0.0, 0.0}) == 0.0);
  CHECK(resonance_omega(FreqPair{4.0, 0.1, 1.0}) ==
        doctest::Approx(-12.8).epsilon(1e-12));
  const double low = resonance_omega(FreqPair{0.1, 0.001, 0.0});
  CHECK(low == doctest::Approx(0.09).epsilon(1e-4));
  CHECK(low > 0.0);

  CHECK(resonance_theta(FreqPair{1.0, 0.0, 0.0}) == 0.0);
  CHECK(resonance_theta(FreqPair{4.0, 0.1, 1.0}) ==
        doctest::Approx(11.89).epsilon(1e-12));
  // Swapping slots flips only the a^2 - b^2 part.
  const FreqPair p{2.0, 0.7, 0.35};
  const FreqPair q{0.7, 2.0, 0.35};
  CHECK(resonance_theta(p) + p.out() ==
        doctest::Approx(-(resonance_theta(q) + q.out())).epsilon(1e-13));
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  for (int n : {16, 64}) {
    const GaussLegendre& gl = gauss_legendre(n);
    double sum = 0.0;
    for (double w : gl.w) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    // Degree 2n-1 exactness, spot checks.
    for (int k : {2, 7, 12}) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += gl.w[i] * std::pow(gl.x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("paper lower-bound constants") {
  CHECK(omega_lower_bound(3) ==
        doctest::Approx(0.034375 * 64.0).epsilon(1e-14));
  CHECK(omega_lower_bound(-3) == doctest::Approx(std::ldexp(1.0, -6)));
  CHECK(theta_lower_bound(3) == doctest::Approx(8.0));
  CHECK(theta_lower_bound(-3) == doctest::Approx(0.18 * 0.125).epsilon(1e-14));
}

TEST_CASE("sampled symbol bounds hold") {
  const SymbolBoundReport rep =
      verify_symbol_bounds({-5, -3, 3, 5}, 2000, 42);
  CHECK(rep.rows.size() == 8);
  CHECK(rep.min_ratio >= 1.0);
  for (const auto& row : rep.rows) {
    CHECK(row.samples == 2000);
    CHECK(std::isfinite(row.max_abs_m));
    CHECK(row.max_abs_m < 200.0);
  }
  CHECK_THROWS_AS(verify_symbol_bounds({2}, 10, 1), ConfigError);
}

TEST_CASE("multiplier derivative scaling") {
  const DerivativeReport rep =
      verify_multiplier_derivatives(2, {4, 5, 8, -4}, 200, 9);
  double c10_j4 = 0.0, c10_j8 = 0.0;
  for (const auto& row : rep.rows) {
    CHECK(std::isfinite(row.c10));
    CHECK(std::isfinite(row.c20));
    CHECK(std::isfinite(row.c11));
    CHECK(row.c00 < 200.0);
    if (row.res_case == 'o' && row.j == 4) c10_j4 = row.c10;
    if (row.res_case == 'o' && row.j == 8) c10_j8 = row.c10;
  }
  // Scaled first-derivative constants are j-stable (within a factor of two).
  CHECK(c10_j4 > 0.0);
  CHECK(c10_j8 / c10_j4 < 2.0);
  CHECK(c10_j4 / c10_j8 < 2.0);
}

TEST_CASE("bilinearity and zero arguments") {
  const RadialGrid g = build_grid(128, 16.0);
  const MultiplierSpec spec = omega_spec(32);
  const RadialField f = spectral_bump(g, 7.0, 1.2);
  const RadialField h = spectral_bump(g, 0.3, 0.15);
  const RadialField z = zeros(g, Domain::spectral);
  CHECK(l2_norm(apply_bilinear(spec, z, h)) == 0.0);
  CHECK(l2_norm(apply_bilinear(spec, f, z)) == 0.0);

  const cplx alpha(0.7, -0.4);
  const RadialField lhs = apply_bilinear(spec, alpha * f, h);
  const RadialField rhs = alpha * apply_bilinear(spec, f, h);
  CHECK(rel_l2(lhs, rhs) < 1e-12);
}

TEST_CASE("unit symbol with full mask reproduces the pointwise product") {
  const RadialGrid g = build_grid(256, 32.0);
  MultiplierSpec spec;
  spec.unit_mask = true;
  spec.resonance = Resonance::unit;
  const RadialField fh = spectral_bump(g, 2.0, 1.4);
  const RadialField gh = spectral_bump(g, 1.2, 1.2, 1.1);
  const RadialField prod = forward(pointwise(inverse(fh), inverse(gh)));
  const RadialField quad = apply_bilinear(spec, fh, gh);
  CHECK(rel_l2(quad, prod) < 1e-6);
}

TEST_CASE("unit-symbol XL quadrature matches the dyadic paraproduct") {
  const RadialGrid g = build_grid(256, 32.0);
  const DyadicSystem dys = DyadicSystem::make(g);
  MultiplierSpec spec;
  spec.unit_mask = false;
  spec.resonance = Resonance::unit;
  spec.mask = Paraproduct::XL;

  // Pair family with spectra inside the flat parts of the band cutoffs
  // (high factor in the j = 4 band, low factor under every relevant
  // lowpass), plus a decoy that both paths must reject.
  Rng rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const double fl = rng.uniform(13.5, 14.5);
    RadialField fh = compact_bump(g, fl, fl + rng.uniform(4.0, 5.0),
                                  rng.uniform(0.0, 6.0));
    const double gl = rng.uniform(0.1, 0.2);
    RadialField gh = compact_bump(g, gl, gl + rng.uniform(0.35, 0.45),
                                  rng.uniform(0.0, 6.0));
    add_scaled(gh, std::polar(0.7, rng.uniform(0.0, 6.0)),
               compact_bump(g, 2.0, 2.7));
    const RadialField para =
        forward(paraproduct(dys, inverse(fh), inverse(gh), Paraproduct::XL));
    const RadialField quad = apply_bilinear(spec, fh, gh);
    CHECK(l2_norm(para) > 0.0);
    CHECK(rel_l2(quad, para) < 1e-6);
  }
}

TEST_CASE("kernel path agrees with the direct quadrature") {
  const RadialGrid g = build_grid(128, 16.0);
  for (const MultiplierSpec& spec : {omega_spec(32), theta_spec(32)}) {
    const BilinearKernel k = BilinearKernel::assemble(g, spec);
    CHECK(k.nnz() > 0);
    const RadialField f = spectral_bump(g, 7.5, 1.0, 0.4);
    const RadialField h = spectral_bump(g, 0.3, 0.15, 2.0);
    const RadialField direct = apply_bilinear(spec, f, h);
    const RadialField fast = k.apply(f, h);
    CHECK(rel_l2(fast, direct) < 1e-12);
  }
}

TEST_CASE("single-mode dense-quadrature oracle") {
  const RadialGrid g = build_grid(256, 32.0);
  const double ca = 8.0, wa = 0.6, cb = 0.25, wb = 0.12;
  const RadialField fh = spectral_bump(g, ca, wa);
  const RadialField gh = spectral_bump(g, cb, wb);
  const MultiplierSpec spec = omega_spec();
  const RadialField got = apply_bilinear(spec, fh, gh);

  // Independent path: dense Simpson in b and mu with analytic bump profiles.
  const auto fa = [&](double a) {
    const double d = (a - ca) / wa;
    return std::exp(-0.5 * d * d);
  };
  const auto gb = [&](double b) {
    const double d = (b - cb) / wb;
    return std::exp(-0.5 * d * d);
  };
  const int nb = 600, nmu = 400;
  const double bhi = 1.6;
  RadialField oracle = zeros(g, Domain::spectral);
  for (int m = 0; m < g.n_r; ++m) {
    const double sigma = g.rho(m);
    if (sigma < 5.0 || sigma > 11.5) continue;
    double acc = 0.0;
    for (int ib = 0; ib <= nb; ++ib) {
      const double b = bhi * ib / nb;
      const double wsimp_b = (ib == 0 || ib == nb) ? 1.0 : (ib % 2 ? 4.0 : 2.0);
      double inner = 0.0;
      for (int iq = 0; iq <= nmu; ++iq) {
        const double mu = -1.0 + 2.0 * iq / nmu;
        const double wsimp_m =
            (iq == 0 || iq == nmu) ? 1.0 : (iq % 2 ? 4.0 : 2.0);
        const double a2 = sigma * sigma + b * b - 2.0 * sigma * b * mu;
        const double a = a2 > 0.0 ? std::sqrt(a2) : 0.0;
        const double sym = symbol_value(spec, a, b, sigma);
        if (sym == 0.0) continue;
        inner += wsimp_m * sym * fa(a);
      }
      inner *= 2.0 / (3.0 * nmu);
      acc += wsimp_b * b * b * gb(b) * inner;
    }
    acc *= bhi / (3.0 * nb);
    oracle.values[m] = std::pow(2.0 * M_PI, -0.5) * acc;
  }
  CHECK(rel_l2(got, oracle) < 1e-4);

  // Output is concentrated near the high band and carries weight ~ 1/omega.
  double total = 0.0, window = 0.0;
  int peak = 0;
  for (int m = 0; m < g.n_r; ++m) {
    const double rho = g.rho(m);
    const double mass = rho * rho * std::norm(got.values[m]);
    total += mass;
    if (rho > ca - 1.5 && rho < ca + 1.5) window += mass;
    if (std::abs(got.values[m]) > std::abs(got.values[peak])) peak = m;
  }
  CHECK(window / total > 0.995);
  MultiplierSpec unit = spec;
  unit.resonance = Resonance::unit;
  const RadialField unweighted = apply_bilinear(unit, fh, gh);
  const double omega_center =
      resonance_omega_out(ca, cb, g.rho(peak));
  const double ratio = std::abs(got.values[peak]) /
                       (std::abs(unweighted.values[peak]) / std::abs(omega_center));
  CHECK(ratio > 0.8);
  CHECK(ratio < 1.25);
}

TEST_CASE("normal-form operators: zero, linearity, slot masks") {
  const RadialGrid g = build_grid(128, 16.0);
  const RadialField hi = spectral_bump(g, 7.0, 0.8);
  const RadialField lo = spectral_bump(g, 0.3, 0.15);
  const RadialField z = zeros(g, Domain::spectral);

  CHECK(l2_norm(normal_form_omega(z, lo)) == 0.0);
  CHECK(l2_norm(normal_form_theta(z, lo)) == 0.0);

  const cplx alpha(2.0, 1.0);
  CHECK(rel_l2(normal_form_omega(alpha * hi, lo),
               alpha * normal_form_omega(hi, lo)) < 1e-12);

  // Omega is XL only: high content in the second slot produces nothing.
  CHECK(l2_norm(normal_form_omega(lo, hi)) == 0.0);
  // Theta has both XL and LX: either slot arrangement is active.
  CHECK(l2_norm(normal_form_theta(hi, lo)) > 0.0);
  CHECK(l2_norm(normal_form_theta(lo, hi)) > 0.0);
}

}  // TEST_SUITE
