#include "zlab/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "zlab/parallel.hpp"
#include "zlab/quadrature.hpp"
#include "zlab/spectral.hpp"

namespace zlab {

namespace {

const double kLog2_85 = std::log2(8.0 / 5.0);  // half-width of supp phi in j
const double kConvNorm = std::pow(2.0 * M_PI, -0.5);  // (2pi)^{-3/2} * 2pi

// Integer bands j with phi_j(x) possibly nonzero.
struct BandRange {
  int lo, hi;
};

BandRange band_range(double x) {
  if (!(x > 0.0)) return {1, 0};
  const double l = std::log2(x);
  return {static_cast<int>(std::floor(l - kLog2_85)) + 1,
          static_cast<int>(std::ceil(l + kLog2_85)) - 1};
}

bool kind_filter(Paraproduct kind, int j) {
  switch (kind) {
    case Paraproduct::HL:
    case Paraproduct::LH:
    case Paraproduct::HH:
      return true;
    case Paraproduct::RL:
    case Paraproduct::LR:
      return std::abs(j) <= 2;
    case Paraproduct::XL:
    case Paraproduct::LX:
      return std::abs(j) >= 3;
  }
  return false;
}

}  // namespace

double mask_value(Paraproduct kind, double a, double b) {
  double acc = 0.0;
  switch (kind) {
    case Paraproduct::HL:
    case Paraproduct::RL:
    case Paraproduct::XL: {
      const BandRange r = band_range(a);
      for (int j = r.lo; j <= r.hi; ++j)
        if (kind_filter(kind, j)) acc += phi_j(a, j) * varphi_j(b, j - 4);
      return acc;
    }
    case Paraproduct::LH:
    case Paraproduct::LR:
    case Paraproduct::LX: {
      const BandRange r = band_range(b);
      for (int j = r.lo; j <= r.hi; ++j)
        if (kind_filter(kind, j)) acc += varphi_j(a, j - 4) * phi_j(b, j);
      return acc;
    }
    case Paraproduct::HH: {
      const BandRange ra = band_range(a);
      const BandRange rb = band_range(b);
      for (int j = ra.lo; j <= ra.hi; ++j)
        for (int k = rb.lo; k <= rb.hi; ++k)
          if (std::abs(j - k) <= 3) acc += phi_j(a, j) * phi_j(b, k);
      return acc;
    }
  }
  return acc;
}

namespace {

double spec_mask(const MultiplierSpec& spec, double a, double b) {
  if (spec.unit_mask) return 1.0;
  double m = mask_value(spec.mask, a, b);
  if (spec.mask_add_lx) m += mask_value(Paraproduct::LX, a, b);
  return m;
}

double resonance_of(const MultiplierSpec& spec, double a, double b,
                    double sigma) {
  switch (spec.resonance) {
    case Resonance::unit: return 1.0;
    case Resonance::omega: return resonance_omega_out(a, b, sigma);
    case Resonance::theta: return resonance_theta_out(a, b, sigma);
  }
  return 1.0;
}

[[noreturn]] void guard_failure(const MultiplierSpec& spec, double a, double b,
                                double sigma, double mask, double res) {
  std::ostringstream os;
  os << "bilinear symbol: mask/resonance division by near-zero at a=" << a
     << " b=" << b << " sigma=" << sigma << " mask=" << mask
     << " resonance=" << res << " guard=" << spec.guard;
  throw NumericalError(os.str());
}

}  // namespace

double symbol_value(const MultiplierSpec& spec, double a, double b,
                    double sigma) {
  const double mask = spec_mask(spec, a, b);
  if (mask == 0.0) return 0.0;
  double val = mask;
  if (spec.resonance != Resonance::unit) {
    const double res = resonance_of(spec, a, b, sigma);
    if (mask > 1e-12 && std::abs(res) < spec.guard)
      guard_failure(spec, a, b, sigma, mask, res);
    if (res == 0.0) return 0.0;  // mask <= 1e-12 here
    val /= res;
  }
  if (spec.prefactor.out_pow != 0.0)
    val *= std::pow(sigma, spec.prefactor.out_pow);
  if (spec.prefactor.out_bracket_pow != 0.0)
    val *= std::pow(1.0 + sigma * sigma, 0.5 * spec.prefactor.out_bracket_pow);
  return val;
}

namespace {

struct Stencil {
  int base = 0;
  double w[4] = {0, 0, 0, 0};
};

// Cubic Lagrange stencil for interpolation at frequency a on the rho-grid.
// Zero extension beyond the last node; one-sided stencil near the ends.
bool cubic_stencil(int n, double drho, double a, Stencil& st) {
  const double p = a / drho - 1.0;
  if (p > n - 1) return false;
  int s = static_cast<int>(std::floor(p)) - 1;
  s = std::clamp(s, 0, n - 4);
  const double u = p - s;
  st.base = s;
  st.w[0] = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  st.w[1] = u * (u - 2.0) * (u - 3.0) / 2.0;
  st.w[2] = -u * (u - 1.0) * (u - 3.0) / 2.0;
  st.w[3] = u * (u - 1.0) * (u - 2.0) / 6.0;
  return true;
}

// Conservative test for whether any a in [amin, amax] can activate the mask
// for this b slot value.
bool mask_possible(const MultiplierSpec& spec, double b, double amin,
                   double amax) {
  if (spec.unit_mask) return true;
  const auto piece_possible = [&](Paraproduct kind) {
    switch (kind) {
      case Paraproduct::HL:
      case Paraproduct::RL:
      case Paraproduct::XL: {
        // a in band j, b below 2^{j-4} lowpass.
        int jhi = static_cast<int>(std::ceil(std::log2(std::max(amax, 1e-12)) +
                                             kLog2_85));
        int jlo = b > 0.0
                      ? static_cast<int>(std::floor(std::log2(10.0 * b)))
                      : jhi - 4;
        jlo = std::max(jlo, jhi - 8);
        for (int j = jlo; j <= jhi; ++j) {
          if (!kind_filter(kind, j)) continue;
          const double lo = 0.625 * std::ldexp(1.0, j);
          const double hi = 1.6 * std::ldexp(1.0, j);
          if (lo < amax && hi > amin && b < 1.6 * std::ldexp(1.0, j - 4))
            return true;
        }
        return false;
      }
      case Paraproduct::LH:
      case Paraproduct::LR:
      case Paraproduct::LX: {
        // b in band j, a below the 2^{j-4} lowpass.
        const BandRange r = band_range(b);
        for (int j = r.lo; j <= r.hi; ++j)
          if (kind_filter(kind, j) && amin < 1.6 * std::ldexp(1.0, j - 4))
            return true;
        return false;
      }
      case Paraproduct::HH:
        return true;
    }
    return true;
  };
  if (piece_possible(spec.mask)) return true;
  if (spec.mask_add_lx && piece_possible(Paraproduct::LX)) return true;
  return false;
}

}  // namespace

RadialField apply_bilinear(const MultiplierSpec& spec, const RadialField& f,
                           const RadialField& g) {
  require_same_grid(to_spectral(f), to_spectral(g));
  const RadialField fh = to_spectral(f);
  const RadialField gh = to_spectral(g);
  const RadialGrid& grid = fh.grid;
  const int n = grid.n_r;
  const double drho = grid.drho();
  const GaussLegendre& gl = gauss_legendre(spec.n_mu);

  RadialField out = zeros(grid, Domain::spectral);
  parallel_for(n, [&](int m) {
    const double sigma = grid.rho(m);
    cplx acc(0.0, 0.0);
    for (int l = 0; l < n; ++l) {
      const double b = grid.rho(l);
      const double amin = std::abs(sigma - b);
      const double amax = sigma + b;
      if (!mask_possible(spec, b, amin, amax)) continue;
      cplx inner(0.0, 0.0);
      Stencil st;
      for (int q = 0; q < spec.n_mu; ++q) {
        const double mu = gl.x[q];
        const double a2 =
            sigma * sigma + b * b - 2.0 * sigma * b * mu;
        const double a = a2 > 0.0 ? std::sqrt(a2) : 0.0;
        const double sym = symbol_value(spec, a, b, sigma);
        if (sym == 0.0) continue;
        if (!cubic_stencil(n, drho, a, st)) continue;
        cplx fv(0.0, 0.0);
        for (int t = 0; t < 4; ++t) fv += st.w[t] * fh.values[st.base + t];
        inner += (gl.w[q] * sym) * fv;
      }
      acc += (b * b) * gh.values[l] * inner;
    }
    out.values[m] = kConvNorm * drho * acc;
  });
  return out;
}

BilinearKernel BilinearKernel::assemble(const RadialGrid& grid,
                                        const MultiplierSpec& spec) {
  BilinearKernel k;
  k.grid_ = grid;
  k.spec_ = spec;
  const int n = grid.n_r;
  k.rows_.resize(n);
  const double drho = grid.drho();
  const GaussLegendre& gl = gauss_legendre(spec.n_mu);

  parallel_for(n, [&](int m) {
    const double sigma = grid.rho(m);
    std::vector<double> scratch(n, 0.0);
    std::vector<int> touched;
    auto& row = k.rows_[m];
    for (int l = 0; l < n; ++l) {
      const double b = grid.rho(l);
      const double amin = std::abs(sigma - b);
      const double amax = sigma + b;
      if (!mask_possible(spec, b, amin, amax)) continue;
      touched.clear();
      Stencil st;
      for (int q = 0; q < spec.n_mu; ++q) {
        const double mu = gl.x[q];
        const double a2 = sigma * sigma + b * b - 2.0 * sigma * b * mu;
        const double a = a2 > 0.0 ? std::sqrt(a2) : 0.0;
        const double sym = symbol_value(spec, a, b, sigma);
        if (sym == 0.0) continue;
        if (!cubic_stencil(n, drho, a, st)) continue;
        const double wq = gl.w[q] * sym;
        for (int t = 0; t < 4; ++t) {
          const int idx = st.base + t;
          if (scratch[idx] == 0.0) touched.push_back(idx);
          scratch[idx] += wq * st.w[t];
        }
      }
      if (touched.empty()) continue;
      std::sort(touched.begin(), touched.end());
      const double wb = kConvNorm * drho * b * b;
      for (int idx : touched) {
        const double w = wb * scratch[idx];
        scratch[idx] = 0.0;
        if (w != 0.0)
          row.push_back(Entry{static_cast<std::uint32_t>(idx),
                              static_cast<std::uint32_t>(l), w});
      }
    }
  });
  return k;
}

RadialField BilinearKernel::apply(const RadialField& f,
                                  const RadialField& g) const {
  const RadialField fh = to_spectral(f);
  const RadialField gh = to_spectral(g);
  if (!(fh.grid == grid_) || !(gh.grid == grid_))
    throw NumericalError("BilinearKernel: grid mismatch");
  RadialField out = zeros(grid_, Domain::spectral);
  parallel_for(grid_.n_r, [&](int m) {
    cplx acc(0.0, 0.0);
    for (const Entry& e : rows_[m]) acc += e.w * fh.values[e.fi] * gh.values[e.gi];
    out.values[m] = acc;
  });
  return out;
}

std::size_t BilinearKernel::nnz() const {
  std::size_t s = 0;
  for (const auto& r : rows_) s += r.size();
  return s;
}

namespace {

struct KernelKey {
  int n_r;
  double r_max;
  int mask;
  bool add_lx;
  bool unit;
  int resonance;
  double out_pow, out_bracket_pow;
  int n_mu;
  auto tie() const {
    return std::tie(n_r, r_max, mask, add_lx, unit, resonance, out_pow,
                    out_bracket_pow, n_mu);
  }
  bool operator<(const KernelKey& o) const { return tie() < o.tie(); }
};

}  // namespace

const BilinearKernel& bilinear_kernel(const RadialGrid& grid,
                                      const MultiplierSpec& spec) {
  static std::mutex mu;
  static std::map<KernelKey, std::unique_ptr<BilinearKernel>> cache;
  const KernelKey key{grid.n_r,
                      grid.r_max,
                      static_cast<int>(spec.mask),
                      spec.mask_add_lx,
                      spec.unit_mask,
                      static_cast<int>(spec.resonance),
                      spec.prefactor.out_pow,
                      spec.prefactor.out_bracket_pow,
                      spec.n_mu};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<BilinearKernel>(
      BilinearKernel::assemble(grid, spec));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::move(built);
  return *slot;
}

MultiplierSpec omega_spec(int n_mu) {
  MultiplierSpec s;
  s.resonance = Resonance::omega;
  s.mask = Paraproduct::XL;
  s.n_mu = n_mu;
  return s;
}

MultiplierSpec theta_spec(int n_mu) {
  MultiplierSpec s;
  s.resonance = Resonance::theta;
  s.mask = Paraproduct::XL;
  s.mask_add_lx = true;
  s.n_mu = n_mu;
  return s;
}

RadialField normal_form_omega(const RadialField& N, const RadialField& u) {
  const RadialField Ns = to_spectral(N);
  return bilinear_kernel(Ns.grid, omega_spec()).apply(Ns, to_spectral(u));
}

RadialField normal_form_theta(const RadialField& u, const RadialField& v) {
  const RadialField us = to_spectral(u);
  return bilinear_kernel(us.grid, theta_spec()).apply(us, to_spectral(v));
}

double omega_lower_bound(int j) {
  if (j >= 3) return (0.25 - 0.2 - 1.0 / 64.0) * std::ldexp(1.0, 2 * j);
  return std::ldexp(1.0, j - 3);
}

double theta_lower_bound(int j) {
  if (j >= 3) return std::ldexp(1.0, 2 * j - 3);
  return (0.5 - 8.0 / 25.0) * std::ldexp(1.0, j);
}

SymbolBoundReport verify_symbol_bounds(const std::set<int>& j_set,
                                       int n_samples, std::uint64_t seed) {
  SymbolBoundReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int j : j_set) {
    if (std::abs(j) < 3)
      throw ConfigError("verify_symbol_bounds: j_set requires |j| >= 3");
    const double sj = std::ldexp(1.0, j);
    const double sj4 = std::ldexp(1.0, j - 4);
    for (char cs : {'o', 't'}) {
      SymbolBoundRow row;
      row.j = j;
      row.res_case = cs;
      row.bound = cs == 'o' ? omega_lower_bound(j) : theta_lower_bound(j);
      row.min_ratio = std::numeric_limits<double>::infinity();
      int taken = 0;
      while (taken < n_samples) {
        const double a = sj * rng.uniform(0.625, 1.6);
        const double b = sj4 * rng.uniform(0.0, 1.6);
        const double mu = rng.uniform(-1.0, 1.0);
        const double mask = phi_j(a, j) * varphi_j(b, j - 4);
        if (mask <= 0.0) continue;
        ++taken;
        const FreqPair p{a, b, mu};
        const double res =
            cs == 'o' ? resonance_omega(p) : resonance_theta(p);
        const double ratio = std::abs(res) / row.bound;
        if (ratio < 1.0) {
          std::ostringstream os;
          os << "symbol bound violated: case " << cs << " j=" << j
             << " a=" << a << " b=" << b << " mu=" << mu
             << " |resonance|=" << std::abs(res) << " bound=" << row.bound;
          throw VerificationError(os.str());
        }
        row.min_ratio = std::min(row.min_ratio, ratio);
        const double sig = p.out();
        const double m_abs =
            sig * std::sqrt(1.0 + sig * sig) / std::abs(res) * mask;
        row.max_abs_m = std::max(row.max_abs_m, m_abs);
      }
      row.samples = taken;
      rep.min_ratio = std::min(rep.min_ratio, row.min_ratio);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

DerivativeReport verify_multiplier_derivatives(int order,
                                               const std::set<int>& j_set,
                                               int n_samples,
                                               std::uint64_t seed) {
  if (order < 0 || order > 2)
    throw ConfigError("verify_multiplier_derivatives: order must be <= 2");
  DerivativeReport rep;
  Rng rng(seed);
  for (int j : j_set) {
    if (std::abs(j) < 3)
      throw ConfigError(
          "verify_multiplier_derivatives: j_set requires |j| >= 3");
    const double sj = std::ldexp(1.0, j);
    const double sj4 = std::ldexp(1.0, j - 4);
    for (char cs : {'o', 't'}) {
      const auto mj = [&](double a, double b, double mu) {
        const FreqPair p{a, b, mu};
        const double res =
            cs == 'o' ? resonance_omega(p) : resonance_theta(p);
        const double sig = p.out();
        return sig * std::sqrt(1.0 + sig * sig) / res * phi_j(a, j) *
               varphi_j(b, j - 4);
      };
      DerivativeRow row;
      row.j = j;
      row.res_case = cs;
      const double ha = sj * 1e-4;
      const double hb = sj4 * 1e-4;
      const double hmu = 1e-4;
      for (int s = 0; s < n_samples; ++s) {
        const double a = sj * rng.uniform(0.66, 1.55);
        const double b = sj4 * rng.uniform(0.05, 1.5);
        const double mu = rng.uniform(-0.95, 0.95);
        const double m0 = mj(a, b, mu);
        row.c00 = std::max(row.c00, std::abs(m0));
        if (order >= 1) {
          const double da = (mj(a + ha, b, mu) - mj(a - ha, b, mu)) / (2 * ha);
          const double db = (mj(a, b + hb, mu) - mj(a, b - hb, mu)) / (2 * hb);
          const double dmu =
              (mj(a, b, mu + hmu) - mj(a, b, mu - hmu)) / (2 * hmu);
          if (!std::isfinite(da) || !std::isfinite(db) || !std::isfinite(dmu))
            throw VerificationError(
                "verify_multiplier_derivatives: non-finite estimate");
          row.c10 = std::max(row.c10, std::abs(da) * a);
          row.c01 = std::max(row.c01, std::abs(db) * b);
          row.cmu = std::max(row.cmu, std::abs(dmu));
        }
        if (order >= 2) {
          const double daa =
              (mj(a + ha, b, mu) - 2 * m0 + mj(a - ha, b, mu)) / (ha * ha);
          const double dbb =
              (mj(a, b + hb, mu) - 2 * m0 + mj(a, b - hb, mu)) / (hb * hb);
          const double dab = (mj(a + ha, b + hb, mu) - mj(a + ha, b - hb, mu) -
                              mj(a - ha, b + hb, mu) + mj(a - ha, b - hb, mu)) /
                             (4 * ha * hb);
          if (!std::isfinite(daa) || !std::isfinite(dbb) || !std::isfinite(dab))
            throw VerificationError(
                "verify_multiplier_derivatives: non-finite estimate");
          row.c20 = std::max(row.c20, std::abs(daa) * a * a);
          row.c02 = std::max(row.c02, std::abs(dbb) * b * b);
          row.c11 = std::max(row.c11, std::abs(dab) * a * b);
        }
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace zlab
