#include "zlab/dyadic.hpp"

#include <cmath>

#include "zlab/spectral.hpp"

namespace zlab {

namespace {

// C^inf step: 0 for x <= 0, 1 for x >= 1.
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double e0 = std::exp(-1.0 / x);
  const double e1 = std::exp(-1.0 / (1.0 - x));
  return e0 / (e0 + e1);
}

constexpr double kHi = 8.0 / 5.0;
constexpr double kLo = 5.0 / 4.0;

}  // namespace

double mother(double s) {
  if (s <= kLo) return 1.0;
  if (s > kHi) return 0.0;
  return smoothstep(kHi * (kHi - s) / (kHi - kLo));
}

double phi(double s) { return mother(s) - mother(2.0 * s); }

double phi_j(double s, int j) { return phi(s / std::ldexp(1.0, j)); }

double varphi_j(double s, int j) { return mother(s / std::ldexp(1.0, j)); }

const char* to_string(Paraproduct kind) {
  switch (kind) {
    case Paraproduct::LH: return "LH";
    case Paraproduct::HL: return "HL";
    case Paraproduct::HH: return "HH";
    case Paraproduct::RL: return "RL";
    case Paraproduct::XL: return "XL";
    case Paraproduct::LR: return "LR";
    case Paraproduct::LX: return "LX";
  }
  return "?";
}

DyadicSystem DyadicSystem::make(const RadialGrid& grid) {
  DyadicSystem d;
  d.grid_ = grid;
  d.j_min_ = static_cast<int>(std::ceil(std::log2(grid.drho()))) + 1;
  d.j_max_ = static_cast<int>(std::floor(std::log2(grid.rho_max()))) - 1;

  const double rho_lo = grid.rho(0);
  const double rho_hi = grid.rho(grid.n_r - 1);
  // cover_lo: largest j with varphi_{j-1} identically zero on the grid.
  int lo = static_cast<int>(std::floor(std::log2(1.25 * grid.drho())));
  while (varphi_j(rho_lo, lo - 1) > 0.0) --lo;
  while (varphi_j(rho_lo, lo) == 0.0) ++lo;
  // cover_hi: smallest j with varphi_j == 1 on the whole grid.
  int hi = static_cast<int>(std::ceil(std::log2(0.8 * grid.rho_max())));
  while (varphi_j(rho_hi, hi) < 1.0) ++hi;
  while (hi - 1 >= lo && varphi_j(rho_hi, hi - 1) >= 1.0) --hi;
  d.cover_lo_ = lo;
  d.cover_hi_ = hi;

  // Cache masks over [cover_lo - 6, cover_hi]; lowpass indices below the
  // cover window appear via P_{<= j-4}.
  d.mask_base_ = lo - 6;
  const int count = hi - d.mask_base_ + 1;
  d.band_.resize(count);
  d.lowpass_.resize(count);
  for (int j = d.mask_base_; j <= hi; ++j) {
    auto& b = d.band_[j - d.mask_base_];
    auto& l = d.lowpass_[j - d.mask_base_];
    b.resize(grid.n_r);
    l.resize(grid.n_r);
    for (int m = 0; m < grid.n_r; ++m) {
      b[m] = phi_j(grid.rho(m), j);
      l[m] = varphi_j(grid.rho(m), j);
    }
  }
  d.zero_.assign(grid.n_r, 0.0);
  return d;
}

const std::vector<double>& DyadicSystem::band_mask(int j) const {
  if (j < mask_base_ || j > cover_hi_) return zero_;
  return band_[j - mask_base_];
}

const std::vector<double>& DyadicSystem::lowpass_mask(int j) const {
  if (j < mask_base_) return zero_;
  if (j > cover_hi_) return lowpass_[cover_hi_ - mask_base_];  // == 1 on grid
  return lowpass_[j - mask_base_];
}

namespace {

RadialField apply_mask(const RadialField& F, const std::vector<double>& mask) {
  RadialField out = F;
  for (int i = 0; i < out.size(); ++i) out.values[i] *= mask[i];
  return out;
}

}  // namespace

RadialField DyadicSystem::project(const RadialField& F, int j) const {
  if (F.domain != Domain::spectral)
    throw NumericalError("project: field is not spectral-domain");
  return apply_mask(F, band_mask(j));
}

RadialField DyadicSystem::project_leq(const RadialField& F, int j) const {
  if (F.domain != Domain::spectral)
    throw NumericalError("project_leq: field is not spectral-domain");
  return apply_mask(F, lowpass_mask(j));
}

namespace {

bool mask_is_zero(const std::vector<double>& m) {
  for (double v : m)
    if (v != 0.0) return false;
  return true;
}

bool in_kind_high(Paraproduct kind, int j) {
  switch (kind) {
    case Paraproduct::LH:
    case Paraproduct::HL:
      return true;
    case Paraproduct::RL:
    case Paraproduct::LR:
      return std::abs(j) <= 2;
    case Paraproduct::XL:
    case Paraproduct::LX:
      return std::abs(j) >= 3;
    default:
      return false;
  }
}

}  // namespace

RadialField paraproduct(const DyadicSystem& dys, const RadialField& f,
                        const RadialField& g, Paraproduct kind) {
  if (f.domain != Domain::physical || g.domain != Domain::physical)
    throw NumericalError("paraproduct: inputs must be physical-domain");
  require_same_grid(f, g);

  const RadialField fh = forward(f);
  const RadialField gh = forward(g);
  RadialField acc = zeros(f.grid, Domain::physical);

  const int lo = dys.cover_lo(), hi = dys.cover_hi();

  if (kind == Paraproduct::HH) {
    // sum_{|j-k|<=3} P_j f P_k g via cached physical band pieces.
    std::vector<RadialField> fb, gb;
    fb.reserve(hi - lo + 1);
    gb.reserve(hi - lo + 1);
    for (int j = lo; j <= hi; ++j) {
      fb.push_back(inverse(dys.project(fh, j)));
      gb.push_back(inverse(dys.project(gh, j)));
    }
    for (int j = lo; j <= hi; ++j)
      for (int k = std::max(lo, j - 3); k <= std::min(hi, j + 3); ++k)
        add_scaled(acc, 1.0, pointwise(fb[j - lo], gb[k - lo]));
    return acc;
  }

  const bool high_first = kind == Paraproduct::HL || kind == Paraproduct::RL ||
                          kind == Paraproduct::XL;
  const RadialField& hh = high_first ? fh : gh;  // carries the band
  const RadialField& ll = high_first ? gh : fh;  // carries the lowpass
  for (int j = lo; j <= hi; ++j) {
    if (!in_kind_high(kind, j)) continue;
    const auto& low_mask = dys.lowpass_mask(j - 4);
    if (mask_is_zero(low_mask)) continue;
    RadialField band = inverse(dys.project(hh, j));
    RadialField low = inverse(dys.project_leq(ll, j - 4));
    add_scaled(acc, 1.0, pointwise(band, low));
  }
  return acc;
}

double unresolved_mass_fraction(const DyadicSystem& dys, const RadialField& f) {
  const RadialField F = to_spectral(f);
  const RadialGrid& g = F.grid;
  const double lo = std::ldexp(1.0, dys.j_min());
  const double hi = std::ldexp(1.0, dys.j_max());
  double total = 0.0, outside = 0.0;
  for (int i = 0; i < F.size(); ++i) {
    const double rho = g.rho(i);
    const double m = rho * rho * std::norm(F.values[i]);
    total += m;
    if (rho < lo || rho > hi) outside += m;
  }
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace zlab
