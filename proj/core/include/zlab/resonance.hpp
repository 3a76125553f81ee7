#pragma once

#include <cmath>

namespace zlab {

// Radially reduced frequency pair: a = |xi|, b = |eta|, mu = cos angle(xi, eta).
struct FreqPair {
  double a = 0.0;
  double b = 0.0;
  double mu = 0.0;

  /// |xi + eta| = sqrt(a^2 + b^2 + 2 a b mu).
  double out() const {
    const double s = a * a + b * b + 2.0 * a * b * mu;
    return s > 0.0 ? std::sqrt(s) : 0.0;
  }
};

/// Schroedinger-side resonance omega(xi, eta) = -|xi+eta|^2 + |xi| + |eta|^2.
inline double resonance_omega(const FreqPair& p) {
  const double s = p.out();
  return -s * s + p.a + p.b * p.b;
}

/// Wave-side resonance theta(xi, eta) = -|xi+eta| + |xi|^2 - |eta|^2.
inline double resonance_theta(const FreqPair& p) {
  return -p.out() + p.a * p.a - p.b * p.b;
}

// Same resonances parameterized by the output magnitude sigma = |xi + eta|.
inline double resonance_omega_out(double a, double b, double sigma) {
  return -sigma * sigma + a + b * b;
}

inline double resonance_theta_out(double a, double b, double sigma) {
  return -sigma + a * a - b * b;
}

}  // namespace zlab
