#include "clayer/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace clayer {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* scheme_name(Scheme s) {
  return s == Scheme::imex_cn_ab2 ? "imex_cn_ab2" : "imex_euler";
}

const char* preset_name(InitialPreset p) {
  switch (p) {
    case InitialPreset::zero: return "zero";
    case InitialPreset::analytic_band: return "analytic_band";
    default: return "checkpoint";
  }
}

const char* forcing_name(ForcingChoice f) {
  return f == ForcingChoice::none ? "none" : "continuous";
}

}  // namespace

void write_report_csv(
    const std::string& path,
    const std::vector<std::pair<double, EnergyReport>>& reports,
    const DecayResult& decay, const MasterResult& master) {
  if (reports.size() != decay.t.size() || reports.size() != master.t.size()) {
    throw std::invalid_argument(
        "write_report_csv: report, decay, and master sample counts differ");
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  out << "t,Es,Es_half,Es_one,Ds0,Ds_half,Ds_one,Ds_threehalf,"
         "tau_t,tau_empirical,decay_slack,master_slack\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const EnergyReport& r = reports[i].second;
    const double tau_emp =
        r.tau_empirical ? *r.tau_empirical
                        : std::numeric_limits<double>::quiet_NaN();
    const double row[12] = {reports[i].first, r.Es,  r.Es_half,
                            r.Es_one,         r.Ds0, r.Ds_half,
                            r.Ds_one,         r.Ds_threehalf,
                            r.tau_t,          tau_emp,
                            decay.slack[i],   master.slack[i]};
    for (int c = 0; c < 12; ++c) {
      out << fmt17(row[c]) << (c == 11 ? '\n' : ',');
    }
  }
  if (!out) throw std::runtime_error("write failure: " + path);
}

void write_summary_json(const std::string& path, const RunConfig& cfg,
                        const RunSummary& s) {
  nlohmann::json j;
  j["schema"] = "clayer/1";

  nlohmann::json c;
  c["parameters"] = {{"H", cfg.params.H},       {"J", cfg.params.J},
                     {"kappa", cfg.params.kappa}, {"Pr_m", cfg.params.Pr_m},
                     {"tau0", cfg.params.tau0},   {"s", cfg.params.s}};
  c["grid"] = {{"n_x", cfg.n_x}, {"L_x", cfg.L_x}, {"n_y", cfg.n_y}};
  c["integrator"] = {{"dt", cfg.dt},
                     {"t_end", cfg.t_end},
                     {"scheme", scheme_name(cfg.scheme)},
                     {"monitor_every", cfg.monitor_every},
                     {"max_norm_guard", cfg.max_norm_guard},
                     {"mms_forcing", forcing_name(cfg.mms_forcing)}};
  c["initial"] = {{"preset", preset_name(cfg.preset)},
                  {"amplitude", cfg.amplitude},
                  {"slope", cfg.slope},
                  {"checkpoint", cfg.checkpoint}};
  c["run"] = {{"seed", cfg.seed}, {"output_dir", cfg.output_dir}};
  c["mms"] = {{"dt_list", cfg.mms_dt_list},
              {"ny_list", cfg.mms_ny_list},
              {"t_end_temporal", cfg.mms_t_end_temporal},
              {"t_end_spatial", cfg.mms_t_end_spatial},
              {"dt_spatial", cfg.mms_dt_spatial}};
  j["config"] = c;

  j["diverged"] = s.diverged;
  j["divergence_message"] = s.divergence_message;
  j["final_t"] = s.final_t;
  j["smallness"] = {{"lhs", s.smallness.lhs},
                    {"delta", s.smallness.delta},
                    {"margin", s.smallness.margin},
                    {"passes", s.smallness.passes},
                    {"enforced", s.smallness_enforced}};
  j["decay"] = {{"passes", s.decay_pass},
                {"worst_slack", s.decay_worst_slack}};
  j["master"] = {{"passes_derivation", s.master_pass_derivation},
                 {"passes_printed", s.master_pass_printed},
                 {"worst_slack_derivation", s.master_worst_slack_derivation},
                 {"worst_slack_printed", s.master_worst_slack_printed},
                 {"quad_advisory", s.master_quad_advisory},
                 {"quad_error", s.master_quad_error}};
  j["exit_code"] = s.exit_code;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failure: " + path);
}

}  // namespace clayer
