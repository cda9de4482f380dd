#pragma once

// Scriptable front end: every analysis as a CSV or JSON report.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ringchain::cli {

enum class Command { flat, bands, negative, dispersion, measure, certify, asymptotics, scattering, selfcheck };
enum class Format { csv, json };

std::string_view to_string(Command c);
std::string_view to_string(Format f);

struct RunConfig {
  Command command = Command::bands;
  double ell = 0.0;
  bool ell_pi = false;  // ell is exactly pi; overrides ell
  double k_max = 10.0;
  double e_max = 100.0;
  double theta = 0.0;
  double resolution = 1e-3;
  Format format = Format::csv;
  std::string output;  // empty: standard output
  std::uint64_t seed = 20240601;
  std::vector<double> k;  // certify / scattering momenta; empty selects a default list
  int n = 3;              // scattering vertex degree

  double link_length() const;
};

/// Compact single-line JSON echo of the configuration.
std::string config_json(const RunConfig& config);

/// Inverse of config_json. Throws InvalidArgument on malformed input.
RunConfig config_from_json(std::string_view text);

/// Parses argv. Throws InvalidArgument on unknown commands or bad flags.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes a run. Returns 0 on success, 1 on invalid arguments, 2 on solver
/// failure, 3 on selfcheck failure; diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point: parse_args followed by run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Output path after applying RINGCHAIN_OUTPUT_DIR to relative paths.
std::string resolve_output_path(const std::string& path);

inline constexpr int kSchemaVersion = 1;

}  // namespace ringchain::cli
