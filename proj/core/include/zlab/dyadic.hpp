#pragma once

#include <vector>

#include "zlab/radial_field.hpp"

namespace zlab {

// Mother cutoff: 1 for s <= 5/4, 0 for s > 8/5, C^inf and monotone
// non-increasing in between.
double mother(double s);

/// phi(s) = mother(s) - mother(2s); supported in (5/8, 8/5).
double phi(double s);

double phi_j(double s, int j);
double varphi_j(double s, int j);

enum class Paraproduct { LH, HL, HH, RL, XL, LR, LX };

const char* to_string(Paraproduct kind);

// Dyadic band system on a grid. Two index windows matter:
//  - [j_min, j_max]: the resolved window used for reporting and for the
//    unresolved-mass warning (j_min = ceil(log2 drho)+1,
//    j_max = floor(log2 rho_max)-1).
//  - [cover_lo, cover_hi]: the widest window for which
//    sum_j phi_j(rho_m) = 1 at every grid node (varphi_{cover_lo-1} vanishes
//    on the grid and varphi_{cover_hi} is 1 there). All band sums run over
//    this window, which makes LH + HL + HH = fg an on-grid identity.
class DyadicSystem {
 public:
  static DyadicSystem make(const RadialGrid& grid);

  const RadialGrid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int cover_lo() const { return cover_lo_; }
  int cover_hi() const { return cover_hi_; }

  /// phi_j values at the grid's rho nodes (all zero outside the cover window).
  const std::vector<double>& band_mask(int j) const;
  /// varphi_j values at the grid's rho nodes.
  const std::vector<double>& lowpass_mask(int j) const;

  RadialField project(const RadialField& F, int j) const;
  RadialField project_leq(const RadialField& F, int j) const;

 private:
  RadialGrid grid_;
  int j_min_ = 0, j_max_ = 0;
  int cover_lo_ = 0, cover_hi_ = 0;
  std::vector<std::vector<double>> band_;      // index j - (cover_lo - 6)
  std::vector<std::vector<double>> lowpass_;
  std::vector<double> zero_;
  int mask_base_ = 0;
};

/// The frequency-localized product piece; f, g physical, result physical.
RadialField paraproduct(const DyadicSystem& dys, const RadialField& f,
                        const RadialField& g, Paraproduct kind);

/// Fraction of a field's spectral mass outside [2^j_min, 2^j_max].
double unresolved_mass_fraction(const DyadicSystem& dys, const RadialField& f);

}  // namespace zlab
