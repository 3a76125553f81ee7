#pragma once

#include <functional>
#include <vector>

#include "zlab/dyadic.hpp"
#include "zlab/radial_field.hpp"

namespace zlab {

enum class SpaceKind { lebesgue, sobolev, homogeneous_sobolev, besov };
enum class TimeKind { none, linf, l2 };

// Besov third exponent is fixed to 2 throughout.
struct NormSpec {
  SpaceKind space = SpaceKind::lebesgue;
  double s = 0.0;
  double q = 2.0;
  TimeKind time = TimeKind::none;
};

/// (int |f|^q 4 pi r^2 dr)^{1/q} by trapezoid; q = inf gives max |f|.
double lebesgue_norm(const RadialField& f, double q);

/// ||<grad>^s f||_{L^2} (computed spectrally; exact Plancherel on the grid).
double sobolev_norm(const RadialField& f, double s);

/// || |grad|^s f ||_{L^2}.
double homogeneous_sobolev_norm(const RadialField& f, double s);

/// (sum_j 2^{2sj} ||P_j f||_{L^q}^2)^{1/2} over the grid's covered bands.
double besov_norm(const DyadicSystem& dys, const RadialField& f, double s,
                  double q);

double spatial_norm(const DyadicSystem& dys, const RadialField& f,
                    const NormSpec& spec);

/// 1/q(eps) = 1/4 + eps/3.
double q_of_eps(double eps);

enum class Equation { schrodinger, wave };

// Radial Strichartz admissibility: for the Schroedinger flow
// 2/p + 5/q < 5/2 (or (p,q) = (inf,2)); for the wave flow 1/p + 2/q < 1
// (or (inf,2)); p in [2, inf].
bool admissible(Equation kind, double p, double q);

/// Conserved mass M = ||u||_{L^2}.
double mass(const RadialField& u);

// Energy in the reduced variables:
//   E = || |grad| u ||^2 + 1/2 || |grad|^{(1-gamma)/2} N ||^2
//       - int (Re N) |u|^2 4 pi r^2 dr.
double energy(const RadialField& u, const RadialField& N, double gamma);

// A time-indexed sequence of fields with uniform cadence.
struct FieldSeries {
  std::vector<double> t;
  std::vector<RadialField> fields;
};

double linf_in_time(const FieldSeries& s,
                    const std::function<double(const RadialField&)>& spatial);

/// (trapezoid of spatial(f(t))^2 dt)^{1/2}.
double l2_in_time(const FieldSeries& s,
                  const std::function<double(const RadialField&)>& spatial);

/// L^p-in-time of the Besov norm Bdot^s_q (p = 2 or inf).
double strichartz_norm(const DyadicSystem& dys, const FieldSeries& s, double p,
                       double sobolev_s, double q);

/// ||<grad> u||_{Linf_t L2} + ||<grad> u||_{L2_t Bdot^{1/4+eps}_{q(eps)}}.
double x_norm_S(const DyadicSystem& dys, const FieldSeries& u, double eps);

/// ||<grad>^{(1-gamma)/2} N||_{Linf_t L2}
///   + ||<grad>^{(1-gamma)/2} N||_{L2_t Bdot^{-1/4-eps}_{q(-eps)}}.
double x_norm_W(const DyadicSystem& dys, const FieldSeries& N, double gamma,
                double eps);

}  // namespace zlab
