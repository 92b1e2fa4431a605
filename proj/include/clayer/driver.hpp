#ifndef CLAYER_DRIVER_HPP
#define CLAYER_DRIVER_HPP

#include <iosfwd>
#include <vector>

#include "clayer/config.hpp"
#include "clayer/fourier.hpp"
#include "clayer/state.hpp"

namespace clayer {

// ============================================================================
// Run orchestration behind the command-line tool. Each entry point takes a
// resolved configuration, logs human-readable progress to the given stream,
// and returns the process exit code:
//   0  success
//   1  configuration error (raised as ConfigError before any run starts)
//   2  the time march diverged
//   3  the initial data fails the smallness condition (verify-theorem only)
//   4  a verification check fails
// ============================================================================

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitSmallness = 3;
constexpr int kExitVerification = 4;

/// Build the initial state selected by the configuration.
///   zero           all fields zero
///   analytic_band  real band-limited data with |mode| amplitude
///                  ~ e^{-slope |xi|} and zero-trace y-profiles, scaled so
///                  the smallness sum equals amplitude * delta exactly
///   checkpoint     resume from a state file; the stored grid must match the
///                  configured one, parameters are taken from the
///                  configuration, and t_end counts from the stored time
State initial_state(const Fourier& f, const RunConfig& cfg);

/// Time march plus report/summary/checkpoint outputs under cfg.output_dir.
/// The smallness condition is recorded but not enforced.
int run_simulate(const RunConfig& cfg, std::ostream& log);

/// Same run as run_simulate, then gate on the analytic-norm statement:
/// smallness of the data, the master energy inequality under both readings
/// of the top dissipation coefficient, and pointwise exponential decay.
int run_verify_theorem(const RunConfig& cfg, std::ostream& log);

/// Batch check of the weighted product law, the power-triangle inequality,
/// the Poincare step, and the norm-to-energy bounds. Writes no files.
int run_verify_lemma(const RunConfig& cfg, std::ostream& log);

/// Boundary-layer rescaling checks: term-order tables, map round trips,
/// limit-system residual convergence, and the wall-trace amplification
/// ratio. regime selects "prandtl", "hartmann", or "both"; with "both" the
/// hartmann half is skipped when H = 0. Writes no files.
int run_verify_scaling(const RunConfig& cfg, std::ostream& log,
                       const std::string& regime = "both");

/// Manufactured-solution convergence studies (temporal and spatial); each
/// fitted order must land in [1.8, 2.2].
int run_mms(const RunConfig& cfg, std::ostream& log);

/// One convergence study: abscissae (dt or mesh width), errors at the final
/// time, and the fitted log-log slope.
struct MmsStudy {
  std::vector<double> xs;
  std::vector<double> errors;
  double order = 0.0;
  bool diverged = false;
};

/// Temporal refinement at fixed grid, using the discrete forcing that makes
/// the sampled closed form an exact semidiscrete solution.
MmsStudy mms_temporal_study(const RunConfig& cfg, std::ostream* log);

/// Wall-normal refinement at fixed small dt, using the continuous forcing.
MmsStudy mms_spatial_study(const RunConfig& cfg, std::ostream* log);

}  // namespace clayer

#endif
