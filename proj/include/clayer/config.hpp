#ifndef CLAYER_CONFIG_HPP
#define CLAYER_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "clayer/integrator.hpp"
#include "clayer/params.hpp"

namespace clayer {

/// Raised for malformed or invalid configuration input; the command-line
/// tool maps it to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the initial state is produced.
enum class InitialPreset { zero, analytic_band, checkpoint };

/// Optional forcing selection for plain simulation runs.
enum class ForcingChoice { none, continuous };

/// Fully resolved run configuration. Every key has a default; the parser
/// rejects unknown sections, unknown keys, and duplicate keys.
struct RunConfig {
  Params params;

  int n_x = 64;
  double L_x = 6.283185307179586;
  int n_y = 129;

  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::imex_cn_ab2;
  int monitor_every = 10;
  double max_norm_guard = 1e6;
  ForcingChoice mms_forcing = ForcingChoice::none;

  InitialPreset preset = InitialPreset::zero;
  double amplitude = 1.0;
  double slope = 0.95;
  std::string checkpoint;

  std::uint64_t seed = 0;
  std::string output_dir = "out";

  std::vector<double> mms_dt_list = {4e-3, 2e-3, 1e-3};
  std::vector<int> mms_ny_list = {33, 65, 129};
  double mms_t_end_temporal = 0.2;
  double mms_t_end_spatial = 0.05;
  double mms_dt_spatial = 2e-4;
};

/// Parse configuration text in INI form: [section] headers, key = value
/// pairs, full-line comments starting with '#' or ';'. Throws ConfigError
/// with a line number on any malformed input.
RunConfig parse_config_text(const std::string& text);

/// Read and parse a configuration file.
RunConfig parse_config_file(const std::string& path);

/// Cross-field validation (grid sizes, positivity, enum-dependent
/// requirements). parse_config_* call this before returning.
void validate_config(const RunConfig& cfg);

}  // namespace clayer

#endif
