#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zlab/runner.hpp"

namespace {

zlab::SimConfig load_config(const std::string& path) {
  if (path.empty()) {
    zlab::SimConfig cfg = zlab::default_config();
    zlab::apply_env_overrides(cfg);
    return cfg;
  }
  std::ifstream in(path);
  if (!in) throw zlab::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  zlab::SimConfig cfg = zlab::parse_config(ss.str());
  zlab::apply_env_overrides(cfg);
  return cfg;
}

int dispatch(const std::string& name, const zlab::RunOptions& opt,
             zlab::RunOutput (*fn)(const zlab::RunOptions&)) {
  try {
    const zlab::RunOutput out = fn(opt);
    std::cout << out.report;
    return out.exit_code;
  } catch (const zlab::ConfigError& e) {
    zlab::write_error_record(opt.out_dir, "config", e.what());
    std::cerr << name << ": config error: " << e.what() << "\n";
    return zlab::kExitConfig;
  } catch (const zlab::VerificationError& e) {
    zlab::write_error_record(opt.out_dir, "verification", e.what());
    std::cerr << name << ": verification failure: " << e.what() << "\n";
    return zlab::kExitVerification;
  } catch (const zlab::NumericalError& e) {
    zlab::write_error_record(opt.out_dir, "numerical", e.what());
    std::cerr << name << ": numerical failure: " << e.what() << "\n";
    return zlab::kExitNumerical;
  } catch (const std::exception& e) {
    zlab::write_error_record(opt.out_dir, "internal", e.what());
    std::cerr << name << ": error: " << e.what() << "\n";
    return zlab::kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zlab: radial pseudospectral laboratory for the generalized 3D "
      "Zakharov system"};
  app.require_subcommand(1);
  app.footer(
      "Config keys may be overridden via ZLAB_<KEY> environment variables "
      "(e.g. ZLAB_GAMMA=0.5).\nExit codes: 0 ok, 2 config error, 3 numerical "
      "failure, 4 verification failure.");

  std::string config_path;
  std::string out_dir = "zlab_out";
  long long seed = -1;
  int threads = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "path to key = value config");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override config seed");
    sub->add_option("--threads", threads, "override config threads");
  };

  auto* sim = app.add_subcommand("simulate", "direct split-step run");
  add_common(sim);
  auto* pic = app.add_subcommand("picard", "normal-form fixed-point solve");
  add_common(pic);
  auto* cmp = app.add_subcommand(
      "compare", "direct vs picard (paper mode) plus pde residual");
  add_common(cmp);
  auto* sca = app.add_subcommand("scatter", "scattering diagnostics run");
  add_common(sca);

  auto* nrm = app.add_subcommand("norms", "norms of stored snapshots");
  add_common(nrm);
  std::string norm_input, norm_space = "sobolev", norm_time = "none",
                          norm_component = "u";
  double norm_s = 1.0, norm_q = 2.0;
  nrm->add_option("--input", norm_input, "snapshot file or trajectory dir")
      ->required();
  nrm->add_option("--space", norm_space, "lebesgue|sobolev|hsobolev|besov");
  nrm->add_option("--s", norm_s, "smoothness index");
  nrm->add_option("--q", norm_q, "integrability index");
  nrm->add_option("--time", norm_time, "none|linf|l2");
  nrm->add_option("--component", norm_component, "u|N");

  auto* ver = app.add_subcommand("verify", "verification suites");
  ver->require_subcommand(1);
  auto* vsym = ver->add_subcommand("symbols", "resonance symbol lower bounds");
  add_common(vsym);
  auto* vlp = ver->add_subcommand("lp", "Littlewood-Paley invariants");
  add_common(vlp);
  auto* vest = ver->add_subcommand("estimates", "nonlinear estimate ratios");
  add_common(vest);

  CLI11_PARSE(app, argc, argv);

  zlab::RunOptions opt;
  try {
    opt.cfg = load_config(config_path);
  } catch (const zlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return zlab::kExitConfig;
  }
  if (seed >= 0) opt.cfg.seed = static_cast<std::uint64_t>(seed);
  if (threads > 0) opt.cfg.threads = threads;
  opt.out_dir = out_dir;
  opt.norm_input = norm_input.empty()
                       ? std::nullopt
                       : std::optional<std::string>(norm_input);
  opt.norm_space = norm_space;
  opt.norm_s = norm_s;
  opt.norm_q = norm_q;
  opt.norm_time = norm_time;
  opt.norm_component = norm_component;

  if (sim->parsed()) return dispatch("simulate", opt, zlab::run_simulate);
  if (pic->parsed()) return dispatch("picard", opt, zlab::run_picard);
  if (cmp->parsed()) return dispatch("compare", opt, zlab::run_compare);
  if (sca->parsed()) return dispatch("scatter", opt, zlab::run_scatter);
  if (nrm->parsed()) return dispatch("norms", opt, zlab::run_norms);
  if (ver->parsed()) {
    if (vsym->parsed())
      return dispatch("verify symbols", opt, zlab::run_verify_symbols);
    if (vlp->parsed()) return dispatch("verify lp", opt, zlab::run_verify_lp);
    if (vest->parsed())
      return dispatch("verify estimates", opt, zlab::run_verify_estimates);
  }
  std::cerr << "no subcommand\n";
  return zlab::kExitConfig;
}
