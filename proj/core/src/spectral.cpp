#include "zlab/spectral.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "zlab/parallel.hpp"

namespace zlab {

SineTransform::SineTransform(int n) : n_(n), mat_(static_cast<size_t>(n) * n) {
  const double h = M_PI / (n + 1);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m)
      mat_[static_cast<size_t>(k) * n + m] = std::sin(h * (k + 1) * (m + 1));
}

void SineTransform::apply(const cplx* x, cplx* y) const {
  parallel_for(n_, [&](int k) {
    const double* row = mat_.data() + static_cast<size_t>(k) * n_;
    double re = 0.0, im = 0.0;
    for (int m = 0; m < n_; ++m) {
      re += row[m] * x[m].real();
      im += row[m] * x[m].imag();
    }
    y[k] = cplx(re, im);
  });
}

const SineTransform& sine_transform(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SineTransform>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SineTransform>(n);
  return *slot;
}

namespace {
const double kRadialNorm = std::sqrt(2.0 / M_PI);
}

RadialField forward(const RadialField& f) {
  if (f.domain != Domain::physical)
    throw NumericalError("forward: field is not physical-domain");
  const int n = f.size();
  const RadialGrid& g = f.grid;
  std::vector<cplx> x(n), y(n);
  for (int i = 0; i < n; ++i) x[i] = g.r(i) * f.values[i];
  sine_transform(n).apply(x.data(), y.data());
  RadialField out = zeros(g, Domain::spectral);
  const double c = kRadialNorm * g.dr();
  for (int i = 0; i < n; ++i) out.values[i] = c * y[i] / g.rho(i);
  return out;
}

RadialField inverse(const RadialField& F) {
  if (F.domain != Domain::spectral)
    throw NumericalError("inverse: field is not spectral-domain");
  const int n = F.size();
  const RadialGrid& g = F.grid;
  std::vector<cplx> x(n), y(n);
  for (int i = 0; i < n; ++i) x[i] = g.rho(i) * F.values[i];
  sine_transform(n).apply(x.data(), y.data());
  RadialField out = zeros(g, Domain::physical);
  const double c = kRadialNorm * g.drho();
  for (int i = 0; i < n; ++i) out.values[i] = c * y[i] / g.r(i);
  return out;
}

RadialField to_spectral(const RadialField& f) {
  return f.domain == Domain::spectral ? f : forward(f);
}

RadialField to_physical(const RadialField& f) {
  return f.domain == Domain::physical ? f : inverse(f);
}

RadialField frac_derivative(RadialField F, double s) {
  if (F.domain != Domain::spectral)
    throw NumericalError("frac_derivative: field is not spectral-domain");
  if (s == 0.0) return F;
  for (int i = 0; i < F.size(); ++i)
    F.values[i] *= std::pow(F.grid.rho(i), s);
  return F;
}

RadialField bracket_derivative(RadialField F, double s) {
  if (F.domain != Domain::spectral)
    throw NumericalError("bracket_derivative: field is not spectral-domain");
  if (s == 0.0) return F;
  for (int i = 0; i < F.size(); ++i) {
    const double rho = F.grid.rho(i);
    F.values[i] *= std::pow(1.0 + rho * rho, 0.5 * s);
  }
  return F;
}

RadialField schrodinger_prop(RadialField F, double t) {
  if (F.domain != Domain::spectral)
    throw NumericalError("schrodinger_prop: field is not spectral-domain");
  if (t == 0.0) return F;
  for (int i = 0; i < F.size(); ++i) {
    const double rho = F.grid.rho(i);
    F.values[i] *= std::polar(1.0, t * rho * rho);
  }
  return F;
}

RadialField wave_prop(RadialField F, double t) {
  if (F.domain != Domain::spectral)
    throw NumericalError("wave_prop: field is not spectral-domain");
  if (t == 0.0) return F;
  for (int i = 0; i < F.size(); ++i)
    F.values[i] *= std::polar(1.0, t * F.grid.rho(i));
  return F;
}

double l2_norm(const RadialField& f) {
  const RadialGrid& g = f.grid;
  const double h = f.domain == Domain::physical ? g.dr() : g.drho();
  double acc = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double x = f.domain == Domain::physical ? g.r(i) : g.rho(i);
    acc += x * x * std::norm(f.values[i]);
  }
  return std::sqrt(4.0 * M_PI * h * acc);
}

double spectral_tail_fraction(const RadialField& F) {
  const RadialField S = to_spectral(F);
  const RadialGrid& g = S.grid;
  const double cut = 0.5 * g.rho_max();
  double total = 0.0, tail = 0.0;
  for (int i = 0; i < S.size(); ++i) {
    const double rho = g.rho(i);
    const double m = rho * rho * std::norm(S.values[i]);
    total += m;
    if (rho > cut) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

namespace {

void require_real(const RadialField& f, const char* what) {
  double scale = 0.0, worst = 0.0;
  for (const auto& v : f.values) {
    scale = std::max(scale, std::abs(v));
    worst = std::max(worst, std::abs(v.imag()));
  }
  if (scale > 0.0 && worst > 1e-12 * scale)
    throw ConfigError(std::string(what) + ": field must be real-valued");
}

}  // namespace

InitialState init_from_physical(const RadialField& u0, const RadialField& n0,
                                const RadialField& n1,
                                double lowest_bin_tol) {
  require_real(n0, "init_from_physical: n0");
  require_real(n1, "init_from_physical: n1");
  RadialField u0s = to_spectral(u0);
  RadialField n0s = to_spectral(n0);
  RadialField n1s = to_spectral(n1);

  const RadialGrid& g = n1s.grid;
  double total = 0.0;
  for (int i = 0; i < n1s.size(); ++i)
    total += g.rho(i) * g.rho(i) * std::norm(n1s.values[i]);
  if (total > 0.0) {
    const double lowest = g.rho(0) * g.rho(0) * std::norm(n1s.values[0]);
    if (lowest / total > lowest_bin_tol)
      throw NumericalError(
          "init_from_physical: zero-mode excess in n1 (lowest spectral bin "
          "holds " +
          std::to_string(lowest / total) + " of total mass)");
  }

  RadialField N0 = n0s;
  for (int i = 0; i < N0.size(); ++i)
    N0.values[i] -= cplx(0.0, 1.0) * n1s.values[i] / g.rho(i);
  return InitialState{std::move(u0s), std::move(N0)};
}

}  // namespace zlab
