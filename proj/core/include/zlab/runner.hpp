#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zlab/config.hpp"
#include "zlab/diagnostics.hpp"

namespace zlab {

// Exit code conventions: 0 ok, 2 config error, 3 numerical failure,
// 4 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

inline constexpr const char* kVersionTag = "zlab 0.1.0";

std::string sha256_file(const std::filesystem::path& path);

void write_snapshot(const std::filesystem::path& path, const SimState& s,
                    double gamma, Domain domain);
SimState read_snapshot(const std::filesystem::path& path, double* gamma_out);

struct RunOutput {
  int exit_code = kExitOk;
  std::string report;  // human-readable summary printed by the CLI
};

struct RunOptions {
  SimConfig cfg;
  std::filesystem::path out_dir;
  std::optional<std::string> norm_input;  // `norms` subcommand snapshot dir
  std::string norm_space = "sobolev";
  double norm_s = 1.0;
  double norm_q = 2.0;
  std::string norm_time = "none";
  std::string norm_component = "u";
};

RunOutput run_simulate(const RunOptions& opt);
RunOutput run_picard(const RunOptions& opt);
RunOutput run_compare(const RunOptions& opt);
RunOutput run_scatter(const RunOptions& opt);
RunOutput run_norms(const RunOptions& opt);
RunOutput run_verify_symbols(const RunOptions& opt);
RunOutput run_verify_lp(const RunOptions& opt);
RunOutput run_verify_estimates(const RunOptions& opt);

/// Writes out_dir/error.json with a machine-readable error record.
void write_error_record(const std::filesystem::path& out_dir,
                        const std::string& type, const std::string& message);

}  // namespace zlab
