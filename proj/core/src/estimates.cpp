#include "zlab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "zlab/multiplier.hpp"
#include "zlab/spectral.hpp"

namespace zlab {

namespace {

struct Bump {
  double center;
  double width;
  double phase;
};

RadialField bumps_field(const RadialGrid& grid, const std::vector<Bump>& bs) {
  RadialField f = zeros(grid, Domain::spectral);
  for (int i = 0; i < grid.n_r; ++i) {
    const double rho = grid.rho(i);
    cplx v(0.0, 0.0);
    for (const auto& b : bs) {
      const double d = (rho - b.center) / b.width;
      v += std::polar(std::exp(-0.5 * d * d), b.phase);
    }
    f.values[i] = v;
  }
  return f;
}

Bump draw_bump(Rng& rng, double c_lo, double c_hi, double beta_lo,
               double beta_hi) {
  const double c = rng.uniform(c_lo, c_hi);
  return Bump{c, rng.uniform(beta_lo, beta_hi) * c,
              rng.uniform(0.0, 2.0 * M_PI)};
}

RadialField rand_field(const RadialGrid& g, Rng& rng, int n, double c_lo,
                       double c_hi, double beta_lo, double beta_hi) {
  std::vector<Bump> bs;
  for (int i = 0; i < n; ++i)
    bs.push_back(draw_bump(rng, c_lo, c_hi, beta_lo, beta_hi));
  return bumps_field(g, bs);
}

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool resolved = true;
};

bool resolved(const RadialField& f) { return spectral_tail_fraction(f) <= 1e-8; }

using Sampler = std::function<Sides(const DyadicSystem&, Rng&, double, double)>;

double para_weighted_norm(const DyadicSystem& dys, const RadialField& fp,
                          const RadialField& gp, Paraproduct kind,
                          double frac_pow, double bracket_pow, double p) {
  RadialField piece = forward(paraproduct(dys, fp, gp, kind));
  if (frac_pow != 0.0) piece = frac_derivative(std::move(piece), frac_pow);
  if (bracket_pow != 0.0)
    piece = bracket_derivative(std::move(piece), bracket_pow);
  return lebesgue_norm(piece, p);
}

double l6_bracket(const RadialField& f, double bracket_pow) {
  return lebesgue_norm(bracket_derivative(to_spectral(f), bracket_pow), 6.0);
}

// The dual-exponent Strichartz Besov space of the RL estimates.
struct DualSpace {
  double s;
  double qdual;
};

DualSpace rl_space_schrodinger(double eps) {
  const double th = 3.0 / 8.0 - 2.5 * eps;
  const double inv_a = 0.5 - 0.5 * th;
  const double inv_b = 1.0 / q_of_eps(eps) + th / 3.0;
  return {1.5 - 2.0 * inv_a - 3.0 * inv_b, 1.0 / (1.0 - inv_b)};
}

DualSpace rl_space_wave(double eps) {
  const double th = 4.0 * eps;
  const double inv_a = 0.5 - 0.5 * th;
  const double inv_b = 1.0 / q_of_eps(-eps) + th / 3.0;
  return {1.5 - inv_a - 3.0 * inv_b, 1.0 / (1.0 - inv_b)};
}

const std::map<std::string, Sampler>& registry() {
  static const std::map<std::string, Sampler> reg = [] {
    std::map<std::string, Sampler> m;

    // Lemma 3.1 (Littlewood-Paley paraproduct bounds).
    m["3.1a"] = [](const DyadicSystem& dys, Rng& rng, double, double) {
      const RadialGrid& g = dys.grid();
      const double lam = 0.25, p = 2.0;
      RadialField f = rand_field(g, rng, 2, 2.0, 5.0, 0.2, 0.4);
      RadialField gl = rand_field(g, rng, 1, 0.1, 0.25, 0.35, 0.6);
      Sides sd;
      sd.resolved = resolved(f) && resolved(gl);
      RadialField fp = inverse(f), gp = inverse(gl);
      sd.lhs = para_weighted_norm(dys, fp, gp, Paraproduct::HL, lam, 0.0, p);
      double acc = 0.0;
      for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j) {
        RadialField band = inverse(dys.project(f, j));
        RadialField low = inverse(dys.project_leq(gl, j - 4));
        const double nq = lebesgue_norm(pointwise(band, low), p);
        acc += std::pow(2.0, 2.0 * lam * j) * nq * nq;
      }
      sd.rhs = std::sqrt(acc);
      return sd;
    };

    m["3.1b"] = [](const DyadicSystem& dys, Rng& rng, double, double) {
      const RadialGrid& g = dys.grid();
      const double lam = 0.5, p = 2.0;
      RadialField f = rand_field(g, rng, 2, 1.5, 5.0, 0.25, 0.45);
      RadialField gl = rand_field(g, rng, 2, 1.5, 5.0, 0.25, 0.45);
      Sides sd;
      sd.resolved = resolved(f) && resolved(gl);
      RadialField fp = inverse(f), gp = inverse(gl);
      sd.lhs = para_weighted_norm(dys, fp, gp, Paraproduct::HH, lam, 0.0, p);
      double acc = 0.0;
      for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j) {
        RadialField band = inverse(dys.project(f, j));
        for (int l = -3; l <= 3; ++l) {
          const int k = j + l;
          if (k < dys.cover_lo() || k > dys.cover_hi()) continue;
          RadialField other = inverse(dys.project(gl, k));
          acc += std::pow(2.0, lam * j) *
                 lebesgue_norm(pointwise(band, other), p);
        }
      }
      sd.rhs = acc;
      return sd;
    };

    m["3.1c"] = [](const DyadicSystem& dys, Rng& rng, double, double) {
      const RadialGrid& g = dys.grid();
      RadialField f = rand_field(g, rng, 2, 1.5, 5.0, 0.25, 0.45);
      RadialField gl = rand_field(g, rng, 2, 1.5, 5.0, 0.25, 0.45);
      Sides sd;
      sd.resolved = resolved(f) && resolved(gl);
      RadialField fp = inverse(f), gp = inverse(gl);
      sd.lhs =
          lebesgue_norm(forward(paraproduct(dys, fp, gp, Paraproduct::HH)), 2.0);
      double acc = 0.0;
      for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j) {
        RadialField band = inverse(dys.project(f, j));
        for (int l = -3; l <= 3; ++l) {
          const int k = j + l;
          if (k < dys.cover_lo() || k > dys.cover_hi()) continue;
          RadialField other = inverse(dys.project(gl, k));
          acc += lebesgue_norm(pointwise(band, other), 2.0);
        }
      }
      sd.rhs = acc;
      return sd;
    };

    // Lemma 3.2 (quadratic Schroedinger-side terms).
    const auto lem32_fields = [](const DyadicSystem& dys, Rng& rng) {
      const RadialGrid& g = dys.grid();
      RadialField N = rand_field(g, rng, 2, 0.3, 1.2, 0.3, 0.5);
      RadialField u = rand_field(g, rng, 2, 2.5, 6.0, 0.15, 0.3);
      return std::pair{N, u};
    };
    m["3.2a"] = [lem32_fields](const DyadicSystem& dys, Rng& rng, double,
                               double eps) {
      auto [N, u] = lem32_fields(dys, rng);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      sd.lhs = sobolev_norm(
          forward(paraproduct(dys, inverse(N), inverse(u), Paraproduct::LH)),
          1.0);
      sd.rhs = besov_norm(dys, N, -0.25 - eps, q_of_eps(-eps)) *
               besov_norm(dys, bracket_derivative(u, 1.0), 0.25 + eps,
                          q_of_eps(eps));
      return sd;
    };
    m["3.2b"] = [lem32_fields](const DyadicSystem& dys, Rng& rng, double,
                               double eps) {
      auto [N, u] = lem32_fields(dys, rng);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      sd.lhs = sobolev_norm(
          forward(paraproduct(dys, inverse(N), inverse(u), Paraproduct::HH)),
          1.0);
      sd.rhs = besov_norm(dys, N, -0.25 - eps, q_of_eps(-eps)) *
               besov_norm(dys, bracket_derivative(u, 1.0), 0.25 + eps,
                          q_of_eps(eps));
      return sd;
    };
    m["3.2c"] = [](const DyadicSystem& dys, Rng& rng, double, double eps) {
      const RadialGrid& g = dys.grid();
      RadialField N = rand_field(g, rng, 2, 0.7, 3.0, 0.15, 0.3);
      RadialField u = rand_field(g, rng, 1, 0.1, 0.22, 0.35, 0.6);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      const DualSpace sp = rl_space_schrodinger(eps);
      sd.lhs = besov_norm(
          dys,
          bracket_derivative(forward(paraproduct(dys, inverse(N), inverse(u),
                                                 Paraproduct::RL)),
                             1.0),
          sp.s, sp.qdual);
      sd.rhs = besov_norm(dys, N, -0.25 - eps, q_of_eps(-eps)) *
               (l2_norm(u) + besov_norm(dys, u, 0.25 + eps, q_of_eps(eps)));
      return sd;
    };

    // Lemma 3.3 (quadratic wave-side terms).
    m["3.3a"] = [](const DyadicSystem& dys, Rng& rng, double gamma,
                   double eps) {
      const RadialGrid& g = dys.grid();
      RadialField u = rand_field(g, rng, 2, 1.5, 5.0, 0.25, 0.4);
      RadialField v = rand_field(g, rng, 2, 1.5, 5.0, 0.25, 0.4);
      Sides sd;
      sd.resolved = resolved(u) && resolved(v);
      RadialField piece = frac_derivative(
          forward(paraproduct(dys, inverse(u), inverse(v), Paraproduct::HH)),
          gamma);
      sd.lhs = sobolev_norm(piece, 0.5 * (1.0 - gamma));
      sd.rhs = besov_norm(dys, u, 0.25 + eps, q_of_eps(eps)) *
               besov_norm(dys, bracket_derivative(v, 0.5 * gamma), 0.25 + eps,
                          q_of_eps(eps));
      return sd;
    };
    m["3.3b"] = [](const DyadicSystem& dys, Rng& rng, double gamma,
                   double eps) {
      const RadialGrid& g = dys.grid();
      RadialField u = rand_field(g, rng, 2, 0.7, 3.0, 0.15, 0.3);
      RadialField v = rand_field(g, rng, 1, 0.1, 0.22, 0.35, 0.6);
      Sides sd;
      sd.resolved = resolved(u) && resolved(v);
      const DualSpace sp = rl_space_wave(eps);
      RadialField piece = bracket_derivative(
          frac_derivative(forward(paraproduct(dys, inverse(u), inverse(v),
                                              Paraproduct::RL)),
                          gamma),
          0.5 * (1.0 - gamma));
      sd.lhs = besov_norm(dys, piece, sp.s, sp.qdual);
      const double nu =
          l2_norm(u) + besov_norm(dys, u, 0.25 + eps, q_of_eps(eps));
      const double nv =
          l2_norm(v) + besov_norm(dys, v, 0.25 + eps, q_of_eps(eps));
      sd.rhs = nu * nv;
      return sd;
    };

    // High/low slot pairs for the boundary and cubic operators: the first
    // slot sits in the j = 3 band, the second below its lowpass cut.
    const auto xl_pair = [](const DyadicSystem& dys, Rng& rng) {
      const RadialGrid& g = dys.grid();
      RadialField hi = rand_field(g, rng, 1, 6.0, 8.5, 0.08, 0.12);
      RadialField lo = rand_field(g, rng, 1, 0.15, 0.45, 0.3, 0.5);
      return std::pair{hi, lo};
    };

    m["3.4a"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double, double) {
      auto [N, u] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      sd.lhs = sobolev_norm(normal_form_omega(N, u), 1.0);
      sd.rhs = l2_norm(N) * sobolev_norm(u, 0.6);
      return sd;
    };
    m["3.4b"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double gamma,
                          double) {
      auto [u, v] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(u) && resolved(v);
      sd.lhs = sobolev_norm(
          frac_derivative(normal_form_theta(u, v), gamma), 0.5 * (1.0 - gamma));
      sd.rhs = sobolev_norm(u, 0.6) * sobolev_norm(v, 0.6);
      return sd;
    };
    m["3.5a"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double,
                          double eps) {
      auto [N, u] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      sd.lhs = besov_norm(dys,
                          bracket_derivative(normal_form_omega(N, u), 1.0),
                          0.25 + eps, q_of_eps(eps));
      sd.rhs = l2_norm(N) * l6_bracket(u, 1.0);
      return sd;
    };
    m["3.5b"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double gamma,
                          double eps) {
      auto [u, v] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(u) && resolved(v);
      RadialField piece = bracket_derivative(
          frac_derivative(normal_form_theta(u, v), gamma), 0.5 * (1.0 - gamma));
      sd.lhs = besov_norm(dys, piece, -0.25 - eps, q_of_eps(-eps));
      sd.rhs = l2_norm(u) * lebesgue_norm(v, 6.0) +
               lebesgue_norm(u, 6.0) * l2_norm(v);
      return sd;
    };
    m["3.6a"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double,
                          double eps) {
      auto [N, u] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      sd.lhs = sobolev_norm(normal_form_omega(N, u), 1.0);
      sd.rhs = besov_norm(dys, N, -0.25 - eps, q_of_eps(-eps)) * l2_norm(u);
      return sd;
    };
    m["3.6b"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double gamma,
                          double) {
      auto [u, v] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(u) && resolved(v);
      sd.lhs = sobolev_norm(
          frac_derivative(normal_form_theta(u, v), gamma), 0.5 * (1.0 - gamma));
      sd.rhs = l2_norm(u) * l6_bracket(v, 1.0) + l6_bracket(u, 1.0) * l2_norm(v);
      return sd;
    };
    m["3.7a"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double gamma,
                          double) {
      auto [u, v] = xl_pair(dys, rng);
      RadialField w = rand_field(dys.grid(), rng, 1, 0.15, 0.45, 0.3, 0.5);
      Sides sd;
      sd.resolved = resolved(u) && resolved(v) && resolved(w);
      RadialField prod =
          forward(pointwise(inverse(u), conjugate(inverse(v))));
      sd.lhs = sobolev_norm(
          normal_form_omega(frac_derivative(prod, gamma), w), 1.0);
      sd.rhs = l2_norm(u) * l6_bracket(v, 1.0) * l6_bracket(w, 1.0);
      return sd;
    };
    m["3.7b"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double,
                          double eps) {
      auto [N, W] = xl_pair(dys, rng);
      RadialField u = rand_field(dys.grid(), rng, 1, 0.15, 0.45, 0.3, 0.5);
      Sides sd;
      sd.resolved = resolved(N) && resolved(W) && resolved(u);
      RadialField Wu = forward(pointwise(inverse(W), inverse(u)));
      sd.lhs = sobolev_norm(normal_form_omega(N, Wu), 1.0);
      sd.rhs = besov_norm(dys, N, -0.25 - eps, q_of_eps(-eps)) * l2_norm(W) *
               l6_bracket(u, 1.0);
      return sd;
    };
    m["3.7c"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double gamma,
                          double) {
      auto [N, u] = xl_pair(dys, rng);
      RadialField v = rand_field(dys.grid(), rng, 1, 0.15, 0.45, 0.3, 0.5);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u) && resolved(v);
      RadialField Nu = forward(pointwise(inverse(N), inverse(u)));
      sd.lhs = sobolev_norm(
          frac_derivative(normal_form_theta(Nu, conjugate(v)), gamma),
          0.5 * (1.0 - gamma));
      sd.rhs = l2_norm(N) * l6_bracket(u, 1.0) * l6_bracket(v, 1.0);
      return sd;
    };
    m["6.1"] = [xl_pair](const DyadicSystem& dys, Rng& rng, double, double) {
      auto [N, u] = xl_pair(dys, rng);
      Sides sd;
      sd.resolved = resolved(N) && resolved(u);
      sd.lhs = sobolev_norm(normal_form_omega(N, u), 1.0);
      sd.rhs = sobolev_norm(N, -0.25) * sobolev_norm(u, 0.8);
      return sd;
    };
    return m;
  }();
  return reg;
}

}  // namespace

std::vector<std::string> estimate_registry_ids() {
  std::vector<std::string> ids;
  for (const auto& [k, v] : registry()) ids.push_back(k);
  return ids;
}

RatioReport estimate_ratio(const std::string& lemma_id, const DyadicSystem& dys,
                           const EnsembleConfig& cfg, double gamma,
                           double eps) {
  const auto it = registry().find(lemma_id);
  if (it == registry().end())
    throw ConfigError("estimate_ratio: unknown lemma id '" + lemma_id + "'");
  RatioReport rep;
  rep.lemma = lemma_id;
  Rng rng(cfg.seed);
  std::vector<double> ratios;
  for (int i = 0; i < cfg.n_samples; ++i) {
    const Sides sd = it->second(dys, rng, gamma, eps);
    if (!sd.resolved) {
      ++rep.skipped;
      continue;
    }
    const double r = sd.rhs > 0.0 ? sd.lhs / sd.rhs : 0.0;
    if (!std::isfinite(r)) rep.all_finite = false;
    ratios.push_back(r);
  }
  rep.n = static_cast<int>(ratios.size());
  if (!ratios.empty()) {
    rep.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    std::sort(ratios.begin(), ratios.end());
    rep.median_ratio = ratios[ratios.size() / 2];
  }
  return rep;
}

std::vector<StabilityRow> estimate_stability(int n_r_coarse, double r_max,
                                             const EnsembleConfig& cfg,
                                             double gamma, double eps) {
  const DyadicSystem coarse =
      DyadicSystem::make(build_grid(n_r_coarse, r_max));
  const DyadicSystem fine =
      DyadicSystem::make(build_grid(2 * n_r_coarse, r_max));
  std::vector<StabilityRow> rows;
  for (const auto& id : estimate_registry_ids()) {
    StabilityRow row;
    row.lemma = id;
    row.max_coarse = estimate_ratio(id, coarse, cfg, gamma, eps).max_ratio;
    row.max_fine = estimate_ratio(id, fine, cfg, gamma, eps).max_ratio;
    row.rel_change = row.max_coarse > 0.0
                         ? std::abs(row.max_fine - row.max_coarse) / row.max_coarse
                         : 0.0;
    rows.push_back(row);
  }
  return rows;
}

ThresholdProbe lemma34_threshold_probe(int n_r, int levels, int samples,
                                       std::uint64_t seed, double s_low,
                                       double s_high) {
  // Grid sized so the top widening level's partner band (four octaves up)
  // still fits below rho_max with margin.
  const double rho_top = 1.6 * std::ldexp(1.0, levels + 3) * 1.3;
  const double drho = rho_top / (n_r + 1);
  const RadialGrid grid = build_grid(n_r, M_PI / drho);
  const MultiplierSpec spec = omega_spec();

  ThresholdProbe probe;
  probe.s_low = s_low;
  probe.s_high = s_high;
  probe.max_low.assign(levels, 0.0);
  probe.max_high.assign(levels, 0.0);

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    // One self-similar shape per sample, shared across levels.
    const double ku = rng.uniform(0.75, 1.05);
    const double bu = rng.uniform(0.3, 0.4);
    const double pu = rng.uniform(0.0, 2.0 * M_PI);
    const double kn = rng.uniform(0.85, 1.2);
    const double bn = rng.uniform(0.1, 0.15);
    const double pn = rng.uniform(0.0, 2.0 * M_PI);
    for (int k = 0; k < levels; ++k) {
      const double cu = ku * std::ldexp(1.0, k);
      const double cn = kn * std::ldexp(1.0, k + 4);
      const RadialField u = bumps_field(grid, {{cu, bu * cu, pu}});
      const RadialField N = bumps_field(grid, {{cn, bn * cn, pn}});
      const double lhs = sobolev_norm(apply_bilinear(spec, N, u), 1.0);
      const double nl2 = l2_norm(N);
      const double rl = nl2 * sobolev_norm(u, s_low);
      const double rh = nl2 * sobolev_norm(u, s_high);
      if (rl > 0.0) probe.max_low[k] = std::max(probe.max_low[k], lhs / rl);
      if (rh > 0.0) probe.max_high[k] = std::max(probe.max_high[k], lhs / rh);
    }
  }
  if (probe.max_low.front() > 0.0)
    probe.growth_low = probe.max_low.back() / probe.max_low.front();
  if (probe.max_high.front() > 0.0)
    probe.growth_high = probe.max_high.back() / probe.max_high.front();
  return probe;
}

}  // namespace zlab
