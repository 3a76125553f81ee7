#include "zlab/evolution.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace zlab {

const char* to_string(NonlinearityMode mode) {
  return mode == NonlinearityMode::physical ? "physical" : "paper";
}

NonlinearityMode mode_from_string(const std::string& s) {
  if (s == "physical") return NonlinearityMode::physical;
  if (s == "paper") return NonlinearityMode::paper;
  throw ConfigError("mode: expected 'physical' or 'paper', got '" + s + "'");
}

FieldSeries Trajectory::u_series() const {
  FieldSeries s;
  for (const auto& st : states) {
    s.t.push_back(st.t);
    s.fields.push_back(st.u);
  }
  return s;
}

FieldSeries Trajectory::N_series() const {
  FieldSeries s;
  for (const auto& st : states) {
    s.t.push_back(st.t);
    s.fields.push_back(st.N);
  }
  return s;
}

namespace {

void check_blowup(const RadialField& F, double fraction, double t) {
  const RadialGrid& g = F.grid;
  const double cut = 0.9 * g.rho_max();
  double total = 0.0, high = 0.0;
  for (int i = 0; i < F.size(); ++i) {
    const double rho = g.rho(i);
    const double m = rho * rho * std::norm(F.values[i]);
    total += m;
    if (rho > cut) high += m;
  }
  if (total > 0.0 && high > fraction * total) {
    std::ostringstream os;
    os << "spectral blow-up at t=" << t << ": high-band mass fraction "
       << high / total << " exceeds " << fraction;
    throw NumericalError(os.str());
  }
}

void half_linear(SimState& s, double h) {
  s.u = schrodinger_prop(std::move(s.u), h);
  s.N = wave_prop(std::move(s.N), h);
}

// Frozen-coefficient nonlinear substep. In physical mode both updates are
// exact for the substep flow: |u| is invariant under the phase rotation and
// Re N does not move, so the source |u|^2 is constant.
void nonlinear_substep(SimState& s, double dt, NonlinearityMode mode,
                       double gamma) {
  RadialField up = inverse(s.u);
  const RadialField Np = inverse(s.N);
  RadialField absu2 = zeros(up.grid, Domain::physical);
  for (int i = 0; i < up.size(); ++i)
    absu2.values[i] = std::norm(up.values[i]);

  if (mode == NonlinearityMode::physical) {
    for (int i = 0; i < up.size(); ++i)
      up.values[i] *= std::polar(1.0, -dt * Np.values[i].real());
  } else {
    for (int i = 0; i < up.size(); ++i)
      up.values[i] *= 1.0 - cplx(0.0, dt) * Np.values[i];
  }
  s.u = forward(up);
  RadialField source = frac_derivative(forward(absu2), gamma);
  add_scaled(s.N, cplx(0.0, -dt), source);
}

}  // namespace

SimState step_direct(const SimState& s, double dt, NonlinearityMode mode,
                     double gamma, bool nonlinearity_off,
                     double blowup_fraction) {
  SimState out = s;
  half_linear(out, 0.5 * dt);
  if (!nonlinearity_off) nonlinear_substep(out, dt, mode, gamma);
  half_linear(out, 0.5 * dt);
  out.t = s.t + dt;
  check_blowup(out.u, blowup_fraction, out.t);
  check_blowup(out.N, blowup_fraction, out.t);
  return out;
}

Trajectory run_direct(const SolverConfig& cfg, const SimState& ic) {
  if (!(cfg.dt > 0.0) || !(cfg.T > 0.0))
    throw ConfigError("run_direct: dt and T must be positive");
  const int steps = static_cast<int>(std::llround(cfg.T / cfg.dt));
  if (steps % cfg.snapshot_every != 0)
    throw ConfigError("run_direct: snapshot_every must divide T/dt");
  Trajectory traj;
  traj.cadence = cfg.dt * cfg.snapshot_every;
  traj.mode = cfg.mode;
  traj.gamma = cfg.gamma;
  traj.nonlinearity_off = cfg.nonlinearity_off;
  traj.solver = "direct";
  SimState cur = ic;
  cur.t = 0.0;
  traj.states.push_back(cur);
  for (int i = 1; i <= steps; ++i) {
    cur = step_direct(cur, cfg.dt, cfg.mode, cfg.gamma, cfg.nonlinearity_off,
                      cfg.blowup_fraction);
    cur.t = i * cfg.dt;
    if (i % cfg.snapshot_every == 0 || i == steps) traj.states.push_back(cur);
  }
  return traj;
}

namespace {

// Spectral representation of the mode's u-equation nonlinearity.
RadialField nonlinear_u(const RadialField& u_spec, const RadialField& N_spec,
                        NonlinearityMode mode) {
  const RadialField up = inverse(u_spec);
  const RadialField Np = inverse(N_spec);
  RadialField prod = zeros(up.grid, Domain::physical);
  if (mode == NonlinearityMode::physical) {
    for (int i = 0; i < up.size(); ++i)
      prod.values[i] = Np.values[i].real() * up.values[i];
  } else {
    for (int i = 0; i < up.size(); ++i)
      prod.values[i] = Np.values[i] * up.values[i];
  }
  return forward(prod);
}

RadialField abs_u_squared_spec(const RadialField& u_spec) {
  const RadialField up = inverse(u_spec);
  RadialField prod = zeros(up.grid, Domain::physical);
  for (int i = 0; i < up.size(); ++i) prod.values[i] = std::norm(up.values[i]);
  return forward(prod);
}

struct PicardWork {
  const SolverConfig& cfg;
  const DyadicSystem dys;
  const BilinearKernel& omega_k;
  const BilinearKernel& theta_k;
  std::vector<double> t;

  PicardWork(const SolverConfig& cfg_, const RadialGrid& grid)
      : cfg(cfg_),
        dys(DyadicSystem::make(grid)),
        omega_k(bilinear_kernel(grid, omega_spec(cfg_.n_mu))),
        theta_k(bilinear_kernel(grid, theta_spec(cfg_.n_mu))) {}
};

}  // namespace

PicardResult picard_solve(const SolverConfig& cfg, const SimState& ic) {
  if (cfg.gamma < 0.5 || cfg.gamma > 1.0)
    std::fprintf(stderr,
                 "picard_solve: gamma=%g outside [1/2, 1]; contraction is not "
                 "guaranteed\n",
                 cfg.gamma);
  const RadialGrid grid = ic.u.grid;
  const int M = static_cast<int>(std::llround(cfg.T / cfg.dt));
  PicardWork wk(cfg, grid);
  wk.t.resize(M + 1);
  for (int i = 0; i <= M; ++i) wk.t[i] = i * cfg.dt;

  const RadialField u0 = to_spectral(ic.u);
  const RadialField N0 = to_spectral(ic.N);
  const bool paper = cfg.mode == NonlinearityMode::paper;

  // Constant-in-iteration pieces: linear flow of the data plus (paper mode)
  // the boundary operators at t = 0.
  std::vector<RadialField> base_u(M + 1), base_N(M + 1);
  {
    RadialField bu = u0, bN = N0;
    if (paper) {
      bu = bu + wk.omega_k.apply(N0, u0);
      bN = bN + frac_derivative(wk.theta_k.apply(u0, conjugate(u0)), cfg.gamma);
    }
    for (int i = 0; i <= M; ++i) {
      base_u[i] = schrodinger_prop(bu, wk.t[i]);
      base_N[i] = wave_prop(bN, wk.t[i]);
    }
  }

  std::vector<RadialField> cur_u(M + 1, zeros(grid, Domain::spectral));
  std::vector<RadialField> cur_N(M + 1, zeros(grid, Domain::spectral));

  PicardResult res;
  int expanding = 0;
  for (int iter = 0; iter < cfg.picard_max_iter; ++iter) {
    std::vector<RadialField> new_u(M + 1), new_N(M + 1);
    RadialField IS = zeros(grid, Domain::spectral);  // cumulative S-side
    RadialField IW = zeros(grid, Domain::spectral);  // cumulative W-side
    RadialField gS_prev = zeros(grid, Domain::spectral);
    RadialField gW_prev = zeros(grid, Domain::spectral);

    for (int i = 0; i <= M; ++i) {
      const RadialField& ui = cur_u[i];
      const RadialField& Ni = cur_N[i];
      RadialField gS = zeros(grid, Domain::spectral);
      RadialField gW = zeros(grid, Domain::spectral);
      RadialField bu = zeros(grid, Domain::spectral);
      RadialField bN = zeros(grid, Domain::spectral);

      if (paper) {
        const RadialField Nu = nonlinear_u(ui, Ni, cfg.mode);
        const RadialField up = inverse(ui);
        const RadialField Np = inverse(Ni);

        // (Nu)_{RL+LH+HH} = Nu - (Nu)_{XL} (exact on the covered bands).
        const RadialField nu_xl =
            forward(paraproduct(wk.dys, Np, up, Paraproduct::XL));
        gS = Nu - nu_xl;
        const RadialField uu = abs_u_squared_spec(ui);
        add_scaled(gS, 1.0,
                   wk.omega_k.apply(frac_derivative(uu, cfg.gamma), ui));
        add_scaled(gS, 1.0, wk.omega_k.apply(Ni, Nu));

        // (u ubar)_{RL+LR+HH} = u ubar - XL - LX.
        const RadialField upc = conjugate(up);
        RadialField uu_rest =
            uu - forward(paraproduct(wk.dys, up, upc, Paraproduct::XL));
        uu_rest =
            uu_rest - forward(paraproduct(wk.dys, up, upc, Paraproduct::LX));
        gW = uu_rest;
        add_scaled(gW, 1.0, wk.theta_k.apply(Nu, conjugate(ui)));
        add_scaled(gW, -1.0, wk.theta_k.apply(ui, conjugate(Nu)));
        gW = frac_derivative(std::move(gW), cfg.gamma);

        bu = wk.omega_k.apply(Ni, ui);
        bN = frac_derivative(wk.theta_k.apply(ui, conjugate(ui)), cfg.gamma);
      } else {
        gS = nonlinear_u(ui, Ni, cfg.mode);
        gW = frac_derivative(abs_u_squared_spec(ui), cfg.gamma);
      }

      // Interaction-picture integrands.
      RadialField hS = schrodinger_prop(std::move(gS), -wk.t[i]);
      RadialField hW = wave_prop(std::move(gW), -wk.t[i]);
      if (i > 0) {
        add_scaled(IS, 0.5 * cfg.dt, gS_prev);
        add_scaled(IS, 0.5 * cfg.dt, hS);
        add_scaled(IW, 0.5 * cfg.dt, gW_prev);
        add_scaled(IW, 0.5 * cfg.dt, hW);
      }
      gS_prev = std::move(hS);
      gW_prev = std::move(hW);

      RadialField un = base_u[i];
      add_scaled(un, cplx(0.0, -1.0), schrodinger_prop(IS, wk.t[i]));
      RadialField Nn = base_N[i];
      add_scaled(Nn, cplx(0.0, -1.0), wave_prop(IW, wk.t[i]));
      if (paper) {
        add_scaled(un, -1.0, bu);
        add_scaled(Nn, -1.0, bN);
      }
      new_u[i] = std::move(un);
      new_N[i] = std::move(Nn);
    }

    // Discrete X-norm of the update.
    FieldSeries du, dN;
    du.t = wk.t;
    dN.t = wk.t;
    for (int i = 0; i <= M; ++i) {
      du.fields.push_back(new_u[i] - cur_u[i]);
      dN.fields.push_back(new_N[i] - cur_N[i]);
    }
    const double diff = x_norm_S(wk.dys, du, cfg.eps) +
                        x_norm_W(wk.dys, dN, cfg.gamma, cfg.eps);
    if (!res.diffs.empty() && res.diffs.back() > 0.0) {
      const double factor = diff / res.diffs.back();
      res.factors.push_back(factor);
      expanding = factor > 1.0 ? expanding + 1 : 0;
      if (expanding >= 3)
        throw NumericalError(
            "picard_solve: no contraction (difference ratio exceeded 1 for 3 "
            "consecutive iterations)");
    }
    res.diffs.push_back(diff);
    cur_u = std::move(new_u);
    cur_N = std::move(new_N);
    res.iterations = iter + 1;
    if (diff < cfg.picard_tol) {
      res.converged = true;
      break;
    }
  }

  Trajectory traj;
  traj.cadence = cfg.dt;
  traj.mode = cfg.mode;
  traj.gamma = cfg.gamma;
  traj.nonlinearity_off = false;
  traj.solver = "picard";
  for (int i = 0; i <= M; ++i)
    traj.states.push_back(SimState{wk.t[i], cur_u[i], cur_N[i]});
  res.traj = std::move(traj);
  return res;
}

DuhamelResidual duhamel_residual(const Trajectory& traj, double gamma) {
  const auto& st = traj.states;
  if (st.empty()) return {};
  const RadialGrid grid = st[0].u.grid;
  const double h = traj.cadence;
  DuhamelResidual out;
  RadialField IS = zeros(grid, Domain::spectral);
  RadialField IW = zeros(grid, Domain::spectral);
  RadialField gS_prev = zeros(grid, Domain::spectral);
  RadialField gW_prev = zeros(grid, Domain::spectral);
  for (std::size_t i = 0; i < st.size(); ++i) {
    RadialField gS = zeros(grid, Domain::spectral);
    RadialField gW = zeros(grid, Domain::spectral);
    if (!traj.nonlinearity_off) {
      gS = nonlinear_u(st[i].u, st[i].N, traj.mode);
      gW = frac_derivative(abs_u_squared_spec(st[i].u), gamma);
    }
    RadialField hS = schrodinger_prop(std::move(gS), -st[i].t);
    RadialField hW = wave_prop(std::move(gW), -st[i].t);
    if (i > 0) {
      add_scaled(IS, 0.5 * h, gS_prev);
      add_scaled(IS, 0.5 * h, hS);
      add_scaled(IW, 0.5 * h, gW_prev);
      add_scaled(IW, 0.5 * h, hW);
    }
    gS_prev = std::move(hS);
    gW_prev = std::move(hW);

    RadialField urec = schrodinger_prop(st[0].u, st[i].t);
    add_scaled(urec, cplx(0.0, -1.0), schrodinger_prop(IS, st[i].t));
    RadialField Nrec = wave_prop(st[0].N, st[i].t);
    add_scaled(Nrec, cplx(0.0, -1.0), wave_prop(IW, st[i].t));

    const double ru = sobolev_norm(st[i].u - urec, 1.0);
    const double rN = sobolev_norm(st[i].N - Nrec, 0.5 * (1.0 - gamma));
    out.t.push_back(st[i].t);
    out.ru.push_back(ru);
    out.rN.push_back(rN);
    out.max_u = std::max(out.max_u, ru);
    out.max_N = std::max(out.max_N, rN);
  }
  return out;
}

PdeResidual pde_residual(const Trajectory& traj, double gamma,
                         NonlinearityMode mode) {
  const auto& st = traj.states;
  if (st.size() < 3)
    throw ConfigError("pde_residual: need at least 3 snapshots");
  const double h = traj.cadence;
  PdeResidual out;
  for (std::size_t i = 1; i + 1 < st.size(); ++i) {
    const RadialGrid& g = st[i].u.grid;
    RadialField rs = zeros(g, Domain::spectral);
    RadialField rw = zeros(g, Domain::spectral);
    RadialField nu = traj.nonlinearity_off
                         ? zeros(g, Domain::spectral)
                         : nonlinear_u(st[i].u, st[i].N, mode);
    RadialField uu = traj.nonlinearity_off
                         ? zeros(g, Domain::spectral)
                         : frac_derivative(abs_u_squared_spec(st[i].u), gamma);
    const cplx ih(0.0, 1.0 / (2.0 * h));
    for (int m = 0; m < g.n_r; ++m) {
      const double rho = g.rho(m);
      const cplx dtu = ih * (st[i + 1].u.values[m] - st[i - 1].u.values[m]);
      const cplx dtN = ih * (st[i + 1].N.values[m] - st[i - 1].N.values[m]);
      rs.values[m] = dtu + rho * rho * st[i].u.values[m] - nu.values[m];
      rw.values[m] = dtN - rho * st[i].N.values[m] - uu.values[m];
    }
    const double nrs = sobolev_norm(rs, -1.0);
    const double nrw = sobolev_norm(rw, -0.5 * (1.0 + gamma));
    out.t.push_back(st[i].t);
    out.rs.push_back(nrs);
    out.rw.push_back(nrw);
    out.max_rs = std::max(out.max_rs, nrs);
    out.max_rw = std::max(out.max_rw, nrw);
  }
  return out;
}

std::pair<RadialField, RadialField> normal_form_boundary(const SimState& s,
                                                         double gamma) {
  RadialField first = normal_form_omega(s.N, s.u);
  RadialField second =
      frac_derivative(normal_form_theta(s.u, conjugate(s.u)), gamma);
  return {std::move(first), std::move(second)};
}

InitialState make_initial_data(const RadialGrid& grid, const DataParams& p,
                               double gamma, double rho_data) {
  const auto gauss = [](double amp, double w) {
    return [amp, w](double r) { return cplx(amp * std::exp(-r * r / (2 * w * w)), 0.0); };
  };
  // n1 = -Laplacian of a Gaussian: vanishing zero-frequency content.
  const auto lap_gauss = [](double amp, double w) {
    return [amp, w](double r) {
      const double x2 = r * r / (w * w);
      return cplx(amp * (3.0 - x2) / (w * w) * std::exp(-0.5 * x2), 0.0);
    };
  };
  RadialField u0 = sample_physical(grid, gauss(p.u0_amp, p.u0_width));
  RadialField n0 = sample_physical(grid, gauss(p.n0_amp, p.n0_width));
  RadialField n1 = sample_physical(grid, lap_gauss(p.n1_amp, p.n1_width));
  InitialState ic = init_from_physical(u0, n0, n1);
  if (rho_data > 0.0) {
    const double size = data_size(ic, gamma);
    if (size <= 0.0) throw ConfigError("make_initial_data: zero data family");
    const cplx s(rho_data / size, 0.0);
    ic.u0 = s * std::move(ic.u0);
    ic.N0 = s * std::move(ic.N0);
  }
  return ic;
}

double data_size(const InitialState& ic, double gamma) {
  return sobolev_norm(ic.u0, 1.0) + sobolev_norm(ic.N0, 0.5 * (1.0 - gamma));
}

}  // namespace zlab
