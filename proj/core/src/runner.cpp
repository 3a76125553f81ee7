#include "zlab/runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zlab/estimates.hpp"
#include "zlab/multiplier.hpp"
#include "zlab/parallel.hpp"

namespace zlab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("sha256_file: cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json tolerances_json() {
  return json{{"round_trip", 1e-10},
              {"plancherel", 1e-10},
              {"gaussian_fixed_point", 1e-8},
              {"partition_of_unity", 1e-12},
              {"band_leakage", 1e-10},
              {"reconstruction", 1e-8},
              {"bilinear_oracle", 1e-6},
              {"symbol_guard", 1e-6},
              {"zero_mode", 1e-8},
              {"spectral_tail", 1e-10},
              {"blowup_fraction", 0.01},
              {"unresolved_warning", 1e-8}};
}

class Manifest {
 public:
  Manifest(std::string subcommand, const SimConfig& cfg, fs::path out_dir)
      : out_dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(out_dir_);
    j_["version"] = kVersionTag;
    j_["subcommand"] = std::move(subcommand);
    j_["config"] = cfg.echo();
    const RadialGrid g = build_grid(cfg.n_r, cfg.r_max);
    j_["grid"] = json{{"n_r", g.n_r},
                      {"r_max", g.r_max},
                      {"dr", g.dr()},
                      {"drho", g.drho()},
                      {"rho_max", g.rho_max()},
                      {"pairing_residual", g.dr() * g.drho() * (g.n_r + 1) - M_PI}};
    j_["tolerances"] = tolerances_json();
    j_["seed"] = cfg.seed;
    j_["digest_algorithm"] = "SHA-256";
  }

  const fs::path& dir() const { return out_dir_; }

  fs::path file(const std::string& name) { return out_dir_ / name; }

  void record(const fs::path& path) { outputs_.push_back(path); }

  void finish() {
    json outs = json::array();
    for (const auto& p : outputs_)
      outs.push_back(json{{"path", p.filename().string()},
                          {"sha256", sha256_file(p)}});
    j_["outputs"] = outs;
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    j_["wall_clock_sec"] =
        std::chrono::duration<double>(elapsed).count();
    std::ofstream out(out_dir_ / "manifest.json");
    out << j_.dump(2) << "\n";
  }

 private:
  fs::path out_dir_;
  json j_;
  std::vector<fs::path> outputs_;
  std::chrono::steady_clock::time_point start_;
};

void write_csv(const fs::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << fmt(columns[c][r]);
    out << "\n";
  }
}

void write_matrix_csv(const fs::path& path, const std::vector<double>& t,
                      const std::vector<std::vector<double>>& m) {
  std::ofstream out(path);
  out << "t";
  for (double ti : t) out << "," << fmt(ti);
  out << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << fmt(t[i]);
    for (double v : m[i]) out << "," << fmt(v);
    out << "\n";
  }
}

void validate_resolution(const InitialState& ic) {
  const double tu = spectral_tail_fraction(ic.u0);
  const double tN = spectral_tail_fraction(ic.N0);
  if (tu > 1e-10 || tN > 1e-10)
    throw ConfigError(
        "initial data is unresolved: spectral tail above rho_max/2 is " +
        fmt(std::max(tu, tN)) + " (limit 1e-10); increase n_r or shrink r_max");
}

void write_trajectory(Manifest& man, const Trajectory& traj, double gamma,
                      int every = 1) {
  int idx = 0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    if (i % every != 0 && i + 1 != traj.states.size()) continue;
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%06d.txt", idx++);
    const fs::path p = man.file(name);
    write_snapshot(p, traj.states[i], gamma, Domain::physical);
    man.record(p);
  }
}

void write_conservation(Manifest& man, const Trajectory& traj, double gamma) {
  const ConservationReport rep = conservation_report(traj, gamma);
  std::vector<double> mdrift, edrift;
  const double m0 = rep.mass_series.empty() ? 0.0 : rep.mass_series[0];
  const double e0 = rep.energy_series.empty() ? 0.0 : rep.energy_series[0];
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    mdrift.push_back(m0 != 0.0 ? std::abs(rep.mass_series[i] - m0) / m0 : 0.0);
    edrift.push_back(e0 != 0.0 ? std::abs(rep.energy_series[i] - e0) /
                                     std::abs(e0)
                               : 0.0);
  }
  const fs::path p = man.file("conservation.csv");
  write_csv(p, {"t", "mass", "energy", "mass_drift", "energy_drift"},
            {rep.t, rep.mass_series, rep.energy_series, mdrift, edrift});
  man.record(p);
}

InitialState configured_data(const SimConfig& cfg, const RadialGrid& grid) {
  InitialState ic = make_initial_data(grid, cfg.data(), cfg.gamma,
                                      cfg.rho_data);
  validate_resolution(ic);
  return ic;
}

}  // namespace

void write_snapshot(const fs::path& path, const SimState& s, double gamma,
                    Domain domain) {
  std::ofstream out(path);
  const RadialField u = domain == Domain::physical ? to_physical(s.u)
                                                   : to_spectral(s.u);
  const RadialField N = domain == Domain::physical ? to_physical(s.N)
                                                   : to_spectral(s.N);
  const RadialGrid& g = u.grid;
  out << "# zlab snapshot\n";
  out << "# version = " << kVersionTag << "\n";
  out << "# gamma = " << fmt(gamma) << "\n";
  out << "# t = " << fmt(s.t) << "\n";
  out << "# n_r = " << g.n_r << "\n";
  out << "# r_max = " << fmt(g.r_max) << "\n";
  out << "# domain = "
      << (domain == Domain::physical ? "physical" : "spectral") << "\n";
  out << "# columns: " << (domain == Domain::physical ? "r" : "rho")
      << " re_u im_u re_N im_N\n";
  for (int i = 0; i < g.n_r; ++i) {
    const double x = domain == Domain::physical ? g.r(i) : g.rho(i);
    out << fmt(x) << " " << fmt(u.values[i].real()) << " "
        << fmt(u.values[i].imag()) << " " << fmt(N.values[i].real()) << " "
        << fmt(N.values[i].imag()) << "\n";
  }
}

SimState read_snapshot(const fs::path& path, double* gamma_out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("read_snapshot: cannot open " + path.string());
  std::string line;
  std::map<std::string, std::string> header;
  std::vector<std::array<double, 5>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        std::string val = line.substr(eq + 1);
        const auto strip = [](std::string& s) {
          const auto a = s.find_first_not_of(" \t");
          const auto b = s.find_last_not_of(" \t\r");
          s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
        };
        strip(key);
        strip(val);
        header[key] = val;
      }
      continue;
    }
    std::istringstream ls(line);
    std::array<double, 5> row{};
    if (ls >> row[0] >> row[1] >> row[2] >> row[3] >> row[4])
      rows.push_back(row);
  }
  if (!header.count("n_r") || !header.count("r_max") || !header.count("t"))
    throw ConfigError("read_snapshot: missing header fields in " +
                      path.string());
  const RadialGrid g =
      build_grid(std::stoi(header["n_r"]), std::stod(header["r_max"]));
  if (static_cast<int>(rows.size()) != g.n_r)
    throw ConfigError("read_snapshot: row count mismatch in " + path.string());
  const Domain dom =
      header.count("domain") && header["domain"] == "spectral"
          ? Domain::spectral
          : Domain::physical;
  SimState s;
  s.t = std::stod(header["t"]);
  s.u = zeros(g, dom);
  s.N = zeros(g, dom);
  for (int i = 0; i < g.n_r; ++i) {
    s.u.values[i] = cplx(rows[i][1], rows[i][2]);
    s.N.values[i] = cplx(rows[i][3], rows[i][4]);
  }
  if (gamma_out)
    *gamma_out = header.count("gamma") ? std::stod(header["gamma"]) : 1.0;
  s.u = to_spectral(s.u);
  s.N = to_spectral(s.N);
  return s;
}

void write_error_record(const fs::path& out_dir, const std::string& type,
                        const std::string& message) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream out(out_dir / "error.json");
  out << json{{"error", {{"type", type}, {"message", message}}}}.dump(2)
      << "\n";
}

RunOutput run_simulate(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("simulate", opt.cfg, opt.out_dir);
  const RadialGrid grid = build_grid(opt.cfg.n_r, opt.cfg.r_max);
  const InitialState ic = configured_data(opt.cfg, grid);
  const Trajectory traj = run_direct(
      opt.cfg.solver(), SimState{0.0, ic.u0, ic.N0});
  write_trajectory(man, traj, opt.cfg.gamma);
  write_conservation(man, traj, opt.cfg.gamma);
  man.finish();
  const ConservationReport rep = conservation_report(traj, opt.cfg.gamma);
  std::ostringstream os;
  os << "simulate: " << traj.states.size() << " snapshots to "
     << man.dir().string() << "\n"
     << "mass drift " << fmt(rep.max_mass_drift) << ", energy drift "
     << fmt(rep.max_energy_drift) << "\n";
  return {kExitOk, os.str()};
}

RunOutput run_picard(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("picard", opt.cfg, opt.out_dir);
  const RadialGrid grid = build_grid(opt.cfg.n_r, opt.cfg.r_max);
  const InitialState ic = configured_data(opt.cfg, grid);
  SolverConfig scfg = opt.cfg.solver();
  scfg.mode = opt.cfg.mode;
  const PicardResult res = picard_solve(scfg, SimState{0.0, ic.u0, ic.N0});
  write_trajectory(man, res.traj, opt.cfg.gamma, opt.cfg.snapshot_every);
  std::vector<double> iters, diffs, factors;
  for (std::size_t i = 0; i < res.diffs.size(); ++i) {
    iters.push_back(static_cast<double>(i + 1));
    diffs.push_back(res.diffs[i]);
    factors.push_back(i == 0 ? 0.0 : res.factors[i - 1]);
  }
  const fs::path conv = man.file("convergence.csv");
  write_csv(conv, {"iter", "diff", "factor"}, {iters, diffs, factors});
  man.record(conv);
  write_conservation(man, res.traj, opt.cfg.gamma);
  man.finish();
  std::ostringstream os;
  os << "picard: " << (res.converged ? "converged" : "NOT converged") << " in "
     << res.iterations << " iterations; final diff "
     << fmt(res.diffs.empty() ? 0.0 : res.diffs.back()) << "\n";
  return {res.converged ? kExitOk : kExitNumerical, os.str()};
}

RunOutput run_compare(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("compare", opt.cfg, opt.out_dir);
  const RadialGrid grid = build_grid(opt.cfg.n_r, opt.cfg.r_max);
  const InitialState ic = configured_data(opt.cfg, grid);
  SolverConfig scfg = opt.cfg.solver();
  scfg.mode = NonlinearityMode::paper;  // cross-solver comparison mode
  scfg.snapshot_every = 1;
  const Trajectory direct = run_direct(scfg, SimState{0.0, ic.u0, ic.N0});
  const PicardResult pic = picard_solve(scfg, SimState{0.0, ic.u0, ic.N0});

  std::vector<double> t, du, dN;
  double max_du = 0.0, max_dN = 0.0;
  for (std::size_t i = 0; i < direct.states.size(); ++i) {
    const double a = sobolev_norm(direct.states[i].u - pic.traj.states[i].u, 1.0);
    const double b = sobolev_norm(direct.states[i].N - pic.traj.states[i].N,
                                  0.5 * (1.0 - opt.cfg.gamma));
    t.push_back(direct.states[i].t);
    du.push_back(a);
    dN.push_back(b);
    max_du = std::max(max_du, a);
    max_dN = std::max(max_dN, b);
  }
  const fs::path cmp = man.file("compare.csv");
  write_csv(cmp, {"t", "du_h1", "dn_hw"}, {t, du, dN});
  man.record(cmp);

  const PdeResidual res = pde_residual(pic.traj, opt.cfg.gamma, scfg.mode);
  const fs::path rp = man.file("residual.csv");
  write_csv(rp, {"t", "rs_hm1", "rw_hm"}, {res.t, res.rs, res.rw});
  man.record(rp);
  man.finish();

  std::ostringstream os;
  os << "compare (paper mode): max |u_direct - u_picard|_{H1} = "
     << fmt(max_du) << "\n"
     << "max |N_direct - N_picard|_{H^{(1-g)/2}} = " << fmt(max_dN) << "\n"
     << "picard " << (pic.converged ? "converged" : "NOT converged") << " in "
     << pic.iterations << " iterations\n"
     << "picard pde residual: max R_S = " << fmt(res.max_rs)
     << ", max R_W = " << fmt(res.max_rw) << "\n";
  return {pic.converged ? kExitOk : kExitNumerical, os.str()};
}

RunOutput run_scatter(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("scatter", opt.cfg, opt.out_dir);
  const RadialGrid grid = build_grid(opt.cfg.n_r, opt.cfg.r_max);
  const InitialState ic = configured_data(opt.cfg, grid);
  const Trajectory traj = run_direct(
      opt.cfg.solver(), SimState{0.0, ic.u0, ic.N0});
  const ScatterReport rep = scattering_report(traj, opt.cfg.gamma);
  const fs::path bn = man.file("boundary_norms.csv");
  write_csv(bn,
            {"t", "omega_h1", "theta_hw", "omega_l2sq_running",
             "theta_l2sq_running"},
            {rep.t, rep.omega_h1, rep.theta_hw, rep.omega_l2sq_running,
             rep.theta_l2sq_running});
  man.record(bn);
  const fs::path fc = man.file("f_cauchy.csv");
  write_matrix_csv(fc, rep.t, rep.f_cauchy);
  man.record(fc);
  const fs::path gc = man.file("g_cauchy.csv");
  write_matrix_csv(gc, rep.t, rep.g_cauchy);
  man.record(gc);
  write_conservation(man, traj, opt.cfg.gamma);
  man.finish();

  const std::size_t n = rep.t.size();
  const double omega_total = rep.omega_l2sq_running.back();
  const double omega_half = rep.omega_l2sq_running[n / 2];
  std::ostringstream os;
  os << "scatter: " << n << " snapshots, T = " << fmt(rep.t.back()) << "\n"
     << "omega boundary L2-in-time^2: first half " << fmt(omega_half)
     << ", second half " << fmt(omega_total - omega_half) << "\n";
  return {kExitOk, os.str()};
}

RunOutput run_norms(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  if (!opt.norm_input)
    throw ConfigError("norms: --input <snapshot file or directory> required");
  Manifest man("norms", opt.cfg, opt.out_dir);

  std::vector<fs::path> files;
  const fs::path input(*opt.norm_input);
  if (fs::is_directory(input)) {
    for (const auto& e : fs::directory_iterator(input)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("snapshot_", 0) == 0) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(input);
  }
  if (files.empty()) throw ConfigError("norms: no snapshots found");

  NormSpec spec;
  if (opt.norm_space == "lebesgue") spec.space = SpaceKind::lebesgue;
  else if (opt.norm_space == "sobolev") spec.space = SpaceKind::sobolev;
  else if (opt.norm_space == "hsobolev")
    spec.space = SpaceKind::homogeneous_sobolev;
  else if (opt.norm_space == "besov") spec.space = SpaceKind::besov;
  else throw ConfigError("norms: unknown space '" + opt.norm_space + "'");
  spec.s = opt.norm_s;
  spec.q = opt.norm_q;

  std::vector<double> t, value;
  FieldSeries series;
  const DyadicSystem* dys = nullptr;
  std::unique_ptr<DyadicSystem> dys_holder;
  for (const auto& f : files) {
    double gamma = 1.0;
    const SimState s = read_snapshot(f, &gamma);
    if (!dys_holder) {
      dys_holder = std::make_unique<DyadicSystem>(DyadicSystem::make(s.u.grid));
      dys = dys_holder.get();
    }
    const RadialField& field = opt.norm_component == "N" ? s.N : s.u;
    t.push_back(s.t);
    value.push_back(spatial_norm(*dys, field, spec));
    series.t.push_back(s.t);
    series.fields.push_back(field);
  }
  const fs::path p = man.file("norms.csv");
  write_csv(p, {"t", "value"}, {t, value});
  man.record(p);
  man.finish();

  std::ostringstream os;
  os << "norms: " << files.size() << " snapshots -> " << p.string() << "\n";
  if (opt.norm_time == "linf") {
    os << "Linf-in-time: " << fmt(*std::max_element(value.begin(), value.end()))
       << "\n";
  } else if (opt.norm_time == "l2") {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
      acc += 0.5 * (t[i] - t[i - 1]) *
             (value[i - 1] * value[i - 1] + value[i] * value[i]);
    os << "L2-in-time: " << fmt(std::sqrt(acc)) << "\n";
  }
  return {kExitOk, os.str()};
}

RunOutput run_verify_symbols(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("verify_symbols", opt.cfg, opt.out_dir);
  std::set<int> j_set;
  for (int j = 3; j <= 10; ++j) {
    j_set.insert(j);
    j_set.insert(-j);
  }
  const SymbolBoundReport rep = verify_symbol_bounds(j_set, 10000, opt.cfg.seed);
  std::ostringstream os;
  os << "j case samples min_ratio max_abs_m\n";
  for (const auto& row : rep.rows)
    os << row.j << " " << (row.res_case == 'o' ? "omega" : "theta") << " "
       << row.samples << " " << fmt(row.min_ratio) << " " << fmt(row.max_abs_m)
       << "\n";
  os << "PASS: all sampled resonances meet the lower bounds (global min ratio "
     << fmt(rep.min_ratio) << ")\n";
  const fs::path p = man.file("symbols_report.txt");
  {
    std::ofstream out(p);
    out << os.str();
  }
  man.record(p);
  man.finish();
  return {kExitOk, os.str()};
}

RunOutput run_verify_lp(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("verify_lp", opt.cfg, opt.out_dir);
  const RadialGrid grid = build_grid(opt.cfg.n_r, opt.cfg.r_max);
  const DyadicSystem dys = DyadicSystem::make(grid);

  // Partition of unity over the covering window, every node.
  double pou_dev = 0.0;
  for (int m = 0; m < grid.n_r; ++m) {
    double s = 0.0;
    for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j)
      s += dys.band_mask(j)[m];
    pou_dev = std::max(pou_dev, std::abs(s - 1.0));
  }

  // Support leakage per band: spectral mass outside [5/8 2^j, 8/5 2^j].
  double leakage = 0.0;
  for (int j = dys.cover_lo(); j <= dys.cover_hi(); ++j) {
    const auto& mask = dys.band_mask(j);
    double inside = 0.0, outside = 0.0;
    for (int m = 0; m < grid.n_r; ++m) {
      const double rho = grid.rho(m);
      const double w = rho * rho * mask[m] * mask[m];
      if (rho < 0.625 * std::ldexp(1.0, j) || rho > 1.6 * std::ldexp(1.0, j))
        outside += w;
      else
        inside += w;
    }
    if (inside + outside > 0.0)
      leakage = std::max(leakage, outside / (inside + outside));
  }

  // Reconstruction on random resolved pairs (content kept below rho_max/2).
  Rng rng(opt.cfg.seed);
  double recon = 0.0, alias_tail = 0.0;
  const int pairs = 50;
  for (int s = 0; s < pairs; ++s) {
    RadialField fh = zeros(grid, Domain::spectral);
    RadialField gh = zeros(grid, Domain::spectral);
    const double top = 0.45 * grid.rho_max();
    for (int b = 0; b < 3; ++b) {
      const double cf = rng.uniform(0.2, top * 0.8);
      const double wf = rng.uniform(0.15, 0.35) * std::max(cf, 0.5);
      const double pf = rng.uniform(0.0, 2.0 * M_PI);
      const double cg = rng.uniform(0.2, top * 0.8);
      const double wg = rng.uniform(0.15, 0.35) * std::max(cg, 0.5);
      const double pg = rng.uniform(0.0, 2.0 * M_PI);
      for (int m = 0; m < grid.n_r; ++m) {
        const double rho = grid.rho(m);
        const double df = (rho - cf) / wf;
        const double dg = (rho - cg) / wg;
        fh.values[m] += std::polar(std::exp(-0.5 * df * df), pf);
        gh.values[m] += std::polar(std::exp(-0.5 * dg * dg), pg);
      }
    }
    alias_tail = std::max(alias_tail, spectral_tail_fraction(fh));
    const RadialField fp = inverse(fh), gp = inverse(gh);
    const RadialField sum = paraproduct(dys, fp, gp, Paraproduct::LH) +
                            paraproduct(dys, fp, gp, Paraproduct::HL) +
                            paraproduct(dys, fp, gp, Paraproduct::HH);
    const RadialField prod = pointwise(fp, gp);
    const double err = l2_norm(sum - prod) / std::max(l2_norm(prod), 1e-300);
    recon = std::max(recon, err);
  }

  const bool pass = pou_dev < 1e-12 && leakage < 1e-10 && recon < 1e-8;
  std::ostringstream os;
  os << "partition-of-unity max deviation: " << fmt(pou_dev) << " (< 1e-12)\n"
     << "band support leakage (max relative): " << fmt(leakage)
     << " (< 1e-10)\n"
     << "reconstruction LH+HL+HH vs fg (max relative, " << pairs
     << " pairs): " << fmt(recon) << " (< 1e-8)\n"
     << "residual aliasing margin (max tail fraction): " << fmt(alias_tail)
     << "\n"
     << (pass ? "PASS" : "FAIL") << "\n";
  const fs::path p = man.file("lp_report.txt");
  {
    std::ofstream out(p);
    out << os.str();
  }
  man.record(p);
  man.finish();
  if (!pass) throw VerificationError("verify lp failed:\n" + os.str());
  return {kExitOk, os.str()};
}

RunOutput run_verify_estimates(const RunOptions& opt) {
  set_threads(opt.cfg.threads);
  Manifest man("verify_estimates", opt.cfg, opt.out_dir);
  EnsembleConfig ecfg;
  ecfg.seed = opt.cfg.seed;
  const int coarse = std::max(64, opt.cfg.n_r / 2);
  const auto rows =
      estimate_stability(coarse, opt.cfg.r_max, ecfg, opt.cfg.gamma, opt.cfg.eps);
  bool pass = true;
  std::ostringstream os;
  os << "lemma max@" << coarse << " max@" << 2 * coarse << " rel_change\n";
  for (const auto& r : rows) {
    os << r.lemma << " " << fmt(r.max_coarse) << " " << fmt(r.max_fine) << " "
       << fmt(r.rel_change) << "\n";
    if (!(r.rel_change <= 0.20) || !std::isfinite(r.max_fine) ||
        !std::isfinite(r.max_coarse))
      pass = false;
  }
  const ThresholdProbe probe =
      lemma34_threshold_probe(1024, 3, 6, opt.cfg.seed);
  os << "lemma 3.4 threshold probe (levels = widening):\n";
  os << "  s=" << fmt(probe.s_low) << " per-level max:";
  for (double v : probe.max_low) os << " " << fmt(v);
  os << " growth " << fmt(probe.growth_low) << "\n";
  os << "  s=" << fmt(probe.s_high) << " per-level max:";
  for (double v : probe.max_high) os << " " << fmt(v);
  os << " growth " << fmt(probe.growth_high) << "\n";
  const bool probe_pass =
      probe.growth_low > 1.12 && probe.growth_high < 1.12 &&
      probe.growth_low > probe.growth_high;
  if (!probe_pass) pass = false;
  os << (pass ? "PASS" : "FAIL") << "\n";
  const fs::path p = man.file("estimates_report.txt");
  {
    std::ofstream out(p);
    out << os.str();
  }
  man.record(p);
  man.finish();
  if (!pass) throw VerificationError("verify estimates failed:\n" + os.str());
  return {kExitOk, os.str()};
}

}  // namespace zlab
