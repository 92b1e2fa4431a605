#ifndef CLAYER_REPORTING_HPP
#define CLAYER_REPORTING_HPP

#include <string>
#include <utility>
#include <vector>

#include "clayer/config.hpp"
#include "clayer/energy.hpp"
#include "clayer/energy_report.hpp"

namespace clayer {

// ============================================================================
// Run outputs: the per-sample CSV and the machine-readable JSON summary.
// Both are written with full 17-digit precision so identical runs produce
// byte-identical files.
// ============================================================================

/// Aggregated verdicts of one simulation run for the JSON summary.
struct RunSummary {
  bool diverged = false;
  std::string divergence_message;
  double final_t = 0.0;

  SmallnessResult smallness;
  bool smallness_enforced = false;  ///< true under verify-theorem

  bool decay_pass = false;
  double decay_worst_slack = 0.0;

  bool master_pass_derivation = false;
  bool master_pass_printed = false;
  double master_worst_slack_derivation = 0.0;
  double master_worst_slack_printed = 0.0;
  bool master_quad_advisory = false;
  double master_quad_error = 0.0;

  int exit_code = 0;
};

/// Write the per-sample table. Columns, in order:
///   t, Es, Es_half, Es_one, Ds0, Ds_half, Ds_one, Ds_threehalf,
///   tau_t, tau_empirical, decay_slack, master_slack
/// Ds_one and master_slack are under the derivation reading; tau_empirical
/// prints nan when the estimator is undefined. The three inputs must be
/// sampled at the same times.
void write_report_csv(
    const std::string& path,
    const std::vector<std::pair<double, EnergyReport>>& reports,
    const DecayResult& decay, const MasterResult& master);

/// Write the JSON summary (schema "clayer/1"): the resolved configuration,
/// the verdicts, and both readings' worst master slacks.
void write_summary_json(const std::string& path, const RunConfig& cfg,
                        const RunSummary& s);

}  // namespace clayer

#endif
