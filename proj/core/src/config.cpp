#include "zlab/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

namespace zlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct Key {
  std::string name;
  std::function<void(SimConfig&, const std::string&)> set;
};

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      v + "'");
  }
}

const std::vector<Key>& schema() {
  static const std::vector<Key> keys = {
      {"gamma", [](SimConfig& c, const std::string& v) { c.gamma = parse_double("gamma", v); }},
      {"eps", [](SimConfig& c, const std::string& v) { c.eps = parse_double("eps", v); }},
      {"n_r", [](SimConfig& c, const std::string& v) { c.n_r = static_cast<int>(parse_int("n_r", v)); }},
      {"r_max", [](SimConfig& c, const std::string& v) { c.r_max = parse_double("r_max", v); }},
      {"dt", [](SimConfig& c, const std::string& v) { c.dt = parse_double("dt", v); }},
      {"T", [](SimConfig& c, const std::string& v) { c.T = parse_double("T", v); }},
      {"mode", [](SimConfig& c, const std::string& v) { c.mode = mode_from_string(v); }},
      {"rho_data", [](SimConfig& c, const std::string& v) { c.rho_data = parse_double("rho_data", v); }},
      {"snapshot_every", [](SimConfig& c, const std::string& v) { c.snapshot_every = static_cast<int>(parse_int("snapshot_every", v)); }},
      {"picard_tol", [](SimConfig& c, const std::string& v) { c.picard_tol = parse_double("picard_tol", v); }},
      {"picard_max_iter", [](SimConfig& c, const std::string& v) { c.picard_max_iter = static_cast<int>(parse_int("picard_max_iter", v)); }},
      {"seed", [](SimConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(parse_int("seed", v)); }},
      {"n_mu", [](SimConfig& c, const std::string& v) { c.n_mu = static_cast<int>(parse_int("n_mu", v)); }},
      {"threads", [](SimConfig& c, const std::string& v) { c.threads = static_cast<int>(parse_int("threads", v)); }},
      {"u0_amp", [](SimConfig& c, const std::string& v) { c.u0_amp = parse_double("u0_amp", v); }},
      {"u0_width", [](SimConfig& c, const std::string& v) { c.u0_width = parse_double("u0_width", v); }},
      {"n0_amp", [](SimConfig& c, const std::string& v) { c.n0_amp = parse_double("n0_amp", v); }},
      {"n0_width", [](SimConfig& c, const std::string& v) { c.n0_width = parse_double("n0_width", v); }},
      {"n1_amp", [](SimConfig& c, const std::string& v) { c.n1_amp = parse_double("n1_amp", v); }},
      {"n1_width", [](SimConfig& c, const std::string& v) { c.n1_width = parse_double("n1_width", v); }},
  };
  return keys;
}

void set_key(SimConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& k : schema()) {
    if (k.name == key) {
      k.set(cfg, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void validate(const SimConfig& c) {
  if (c.gamma < -1.0 || c.gamma > 1.0)
    throw ConfigError("config key 'gamma': must lie in [-1, 1]");
  if (!(c.eps > 0.0) || c.eps > 0.25)
    throw ConfigError("config key 'eps': must lie in (0, 0.25]");
  if (c.n_r < 8) throw ConfigError("config key 'n_r': must be >= 8");
  if (!(c.r_max > 0.0)) throw ConfigError("config key 'r_max': must be > 0");
  if (!(c.dt > 0.0)) throw ConfigError("config key 'dt': must be > 0");
  if (!(c.T > 0.0)) throw ConfigError("config key 'T': must be > 0");
  if (c.rho_data < 0.0)
    throw ConfigError("config key 'rho_data': must be >= 0");
  if (c.snapshot_every < 1)
    throw ConfigError("config key 'snapshot_every': must be >= 1");
  if (!(c.picard_tol > 0.0))
    throw ConfigError("config key 'picard_tol': must be > 0");
  if (c.picard_max_iter < 1)
    throw ConfigError("config key 'picard_max_iter': must be >= 1");
  if (c.n_mu < 8 || c.n_mu > 256)
    throw ConfigError("config key 'n_mu': must lie in [8, 256]");
  if (c.threads < 1) throw ConfigError("config key 'threads': must be >= 1");
  if (!(c.u0_width > 0.0) || !(c.n0_width > 0.0) || !(c.n1_width > 0.0))
    throw ConfigError("config: data widths must be > 0");
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  bool any = false;
  SimConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    any = true;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    if (!seen.insert(key).second)
      throw ConfigError("duplicate config key '" + key + "'");
    set_key(cfg, key, value);
  }
  if (!any) throw ConfigError("empty config");
  validate(cfg);
  return cfg;
}

void apply_env_overrides(SimConfig& cfg) {
  for (const auto& k : schema()) {
    std::string env = "ZLAB_" + k.name;
    for (auto& ch : env) ch = static_cast<char>(std::toupper(ch));
    if (const char* v = std::getenv(env.c_str())) k.set(cfg, v);
  }
  validate(cfg);
}

SimConfig default_config() { return SimConfig{}; }

SolverConfig SimConfig::solver() const {
  SolverConfig s;
  s.dt = dt;
  s.T = T;
  s.mode = mode;
  s.gamma = gamma;
  s.eps = eps;
  s.snapshot_every = snapshot_every;
  s.picard_max_iter = picard_max_iter;
  s.picard_tol = picard_tol;
  s.n_mu = n_mu;
  return s;
}

DataParams SimConfig::data() const {
  DataParams p;
  p.u0_amp = u0_amp;
  p.u0_width = u0_width;
  p.n0_amp = n0_amp;
  p.n0_width = n0_width;
  p.n1_amp = n1_amp;
  p.n1_width = n1_width;
  return p;
}

std::map<std::string, std::string> SimConfig::echo() const {
  std::map<std::string, std::string> m;
  const auto put = [&m](const std::string& k, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    m[k] = buf;
  };
  put("gamma", gamma);
  put("eps", eps);
  m["n_r"] = std::to_string(n_r);
  put("r_max", r_max);
  put("dt", dt);
  put("T", T);
  m["mode"] = to_string(mode);
  put("rho_data", rho_data);
  m["snapshot_every"] = std::to_string(snapshot_every);
  put("picard_tol", picard_tol);
  m["picard_max_iter"] = std::to_string(picard_max_iter);
  m["seed"] = std::to_string(seed);
  m["n_mu"] = std::to_string(n_mu);
  m["threads"] = std::to_string(threads);
  put("u0_amp", u0_amp);
  put("u0_width", u0_width);
  put("n0_amp", n0_amp);
  put("n0_width", n0_width);
  put("n1_amp", n1_amp);
  put("n1_width", n1_width);
  return m;
}

}  // namespace zlab
