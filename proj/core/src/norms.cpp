#include "zlab/norms.hpp"

#include <cmath>
#include <limits>

#include "zlab/spectral.hpp"

namespace zlab {

double lebesgue_norm(const RadialField& f, double q) {
  const RadialField p = to_physical(f);
  if (q < 1.0) throw ConfigError("lebesgue_norm: q must be >= 1");
  if (std::isinf(q)) return max_abs(p);
  const RadialGrid& g = p.grid;
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double r = g.r(i);
    acc += r * r * std::pow(std::abs(p.values[i]), q);
  }
  return std::pow(4.0 * M_PI * g.dr() * acc, 1.0 / q);
}

double sobolev_norm(const RadialField& f, double s) {
  const RadialField F = to_spectral(f);
  const RadialGrid& g = F.grid;
  double acc = 0.0;
  for (int i = 0; i < F.size(); ++i) {
    const double rho = g.rho(i);
    acc += rho * rho * std::pow(1.0 + rho * rho, s) * std::norm(F.values[i]);
  }
  return std::sqrt(4.0 * M_PI * g.drho() * acc);
}

double homogeneous_sobolev_norm(const RadialField& f, double s) {
  const RadialField F = to_spectral(f);
  const RadialGrid& g = F.grid;
  double acc = 0.0;
  for (int i = 0; i < F.size(); ++i) {
    const double rho = F.grid.rho(i);
    acc += rho * rho * std::pow(rho, 2.0 * s) * std::norm(F.values[i]);
  }
  return std::sqrt(4.0 * M_PI * g.drho() * acc);
}

double besov_norm(const DyadicSystem& dys, const RadialField& f, double s,
                  double q) {
  const RadialField F = to_spectral(f);
  double acc = 0.0;
  for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j) {
    const RadialField piece = dys.project(F, j);
    if (piece.is_zero()) continue;
    const double nq = lebesgue_norm(inverse(piece), q);
    acc += std::pow(2.0, 2.0 * s * j) * nq * nq;
  }
  return std::sqrt(acc);
}

double spatial_norm(const DyadicSystem& dys, const RadialField& f,
                    const NormSpec& spec) {
  switch (spec.space) {
    case SpaceKind::lebesgue: return lebesgue_norm(f, spec.q);
    case SpaceKind::sobolev: return sobolev_norm(f, spec.s);
    case SpaceKind::homogeneous_sobolev:
      return homogeneous_sobolev_norm(f, spec.s);
    case SpaceKind::besov: return besov_norm(dys, f, spec.s, spec.q);
  }
  return 0.0;
}

double q_of_eps(double eps) { return 1.0 / (0.25 + eps / 3.0); }

bool admissible(Equation kind, double p, double q) {
  if (p == std::numeric_limits<double>::infinity() && q == 2.0) return true;
  if (!(p >= 2.0)) return false;
  if (kind == Equation::schrodinger) return 2.0 / p + 5.0 / q < 2.5;
  return 1.0 / p + 2.0 / q < 1.0;
}

double mass(const RadialField& u) { return l2_norm(u); }

double energy(const RadialField& u, const RadialField& N, double gamma) {
  const RadialField us = to_spectral(u);
  const RadialField Ns = to_spectral(N);
  const double grad_u = homogeneous_sobolev_norm(us, 1.0);
  const double wave = homogeneous_sobolev_norm(Ns, 0.5 * (1.0 - gamma));
  const RadialField up = to_physical(us);
  const RadialField Np = to_physical(Ns);
  const RadialGrid& g = up.grid;
  double coupling = 0.0;
  for (int i = 0; i < up.size(); ++i) {
    const double r = g.r(i);
    coupling += r * r * Np.values[i].real() * std::norm(up.values[i]);
  }
  coupling *= 4.0 * M_PI * g.dr();
  return grad_u * grad_u + 0.5 * wave * wave - coupling;
}

double linf_in_time(const FieldSeries& s,
                    const std::function<double(const RadialField&)>& spatial) {
  double m = 0.0;
  for (const auto& f : s.fields) m = std::max(m, spatial(f));
  return m;
}

double l2_in_time(const FieldSeries& s,
                  const std::function<double(const RadialField&)>& spatial) {
  if (s.fields.size() < 2) {
    return s.fields.empty() ? 0.0 : 0.0;
  }
  double acc = 0.0;
  double prev = spatial(s.fields[0]);
  for (std::size_t i = 1; i < s.fields.size(); ++i) {
    const double cur = spatial(s.fields[i]);
    acc += 0.5 * (s.t[i] - s.t[i - 1]) * (prev * prev + cur * cur);
    prev = cur;
  }
  return std::sqrt(acc);
}

double strichartz_norm(const DyadicSystem& dys, const FieldSeries& s, double p,
                       double sobolev_s, double q) {
  const auto spatial = [&](const RadialField& f) {
    return besov_norm(dys, f, sobolev_s, q);
  };
  if (std::isinf(p)) return linf_in_time(s, spatial);
  if (p == 2.0) return l2_in_time(s, spatial);
  throw ConfigError("strichartz_norm: only p = 2 and p = inf are computed");
}

namespace {

FieldSeries weighted(const FieldSeries& s, double bracket_pow) {
  FieldSeries out;
  out.t = s.t;
  out.fields.reserve(s.fields.size());
  for (const auto& f : s.fields)
    out.fields.push_back(bracket_derivative(to_spectral(f), bracket_pow));
  return out;
}

}  // namespace

double x_norm_S(const DyadicSystem& dys, const FieldSeries& u, double eps) {
  const FieldSeries w = weighted(u, 1.0);
  const double linf = linf_in_time(w, [](const RadialField& f) { return l2_norm(f); });
  const double l2besov = strichartz_norm(dys, w, 2.0, 0.25 + eps, q_of_eps(eps));
  return linf + l2besov;
}

double x_norm_W(const DyadicSystem& dys, const FieldSeries& N, double gamma,
                double eps) {
  const FieldSeries w = weighted(N, 0.5 * (1.0 - gamma));
  const double linf = linf_in_time(w, [](const RadialField& f) { return l2_norm(f); });
  const double l2besov =
      strichartz_norm(dys, w, 2.0, -0.25 - eps, q_of_eps(-eps));
  return linf + l2besov;
}

}  // namespace zlab
