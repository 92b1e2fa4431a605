// ============================================================================
// Acceptance gate: runs the end-to-end acceptance checks and prints one PASS
// or FAIL line per criterion.  Exit status is 0 only if all criteria pass.
// ============================================================================

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "clayer/config.hpp"
#include "clayer/driver.hpp"
#include "clayer/energy.hpp"
#include "clayer/integrator.hpp"
#include "clayer/lemma.hpp"
#include "clayer/model.hpp"
#include "clayer/norms.hpp"
#include "clayer/rescaling.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool g_all_pass = true;

void report(int n, bool ok, const std::string& what, double secs) {
  std::printf("[%s] %d. %s (%.1f s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), secs);
  std::fflush(stdout);
  g_all_pass = g_all_pass && ok;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

int main() {
  using namespace clayer;
  constexpr double kTwoPi = 6.283185307179586;

  // ---- 1. divergence-free reconstruction --------------------------------
  {
    const auto t0 = Clock::now();
    const Grid g(64, 129, kTwoPi);
    const Fourier f(g);
    double worst = 0.0;
    for (const std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      const State st = random_state(g, seed, 1.0);
      SpecField v(g), b2(g);
      reconstruct_v(g, st.u, v);
      reconstruct_b2(g, st.b1, b2);
      const double su = std::max(1.0, norm_Hs0(g, st.u, 0.0));
      const double sb = std::max(1.0, norm_Hs0(g, st.b1, 0.0));
      worst = std::max(worst, divergence_residual_compatible(f, st.u, v) / su);
      worst = std::max(worst, divergence_residual_compatible(f, st.b1, b2) / sb);
    }
    report(1, worst <= 1e-6,
           "divergence-free reconstruction, worst relative residual " + fmt(worst),
           seconds_since(t0));
  }

  // ---- 2. manufactured-solution convergence orders ----------------------
  {
    const auto t0 = Clock::now();
    RunConfig cfg;
    cfg.n_x = 32;
    cfg.n_y = 65;
    const MmsStudy temporal = mms_temporal_study(cfg, nullptr);
    const MmsStudy spatial = mms_spatial_study(cfg, nullptr);
    const bool ok = !temporal.diverged && !spatial.diverged && temporal.order >= 1.8 &&
                    temporal.order <= 2.2 && spatial.order >= 1.8 && spatial.order <= 2.2;
    report(2, ok,
           "manufactured-solution orders, temporal " + fmt(temporal.order) + ", spatial " +
               fmt(spatial.order),
           seconds_since(t0));
  }

  // ---- 3/4/5. one long run shared by the decay, master, radius checks ----
  Params prm;  // symmetric point: all couplings 1, regularity index 3
  RunConfig cfg;
  cfg.n_x = 64;
  cfg.n_y = 129;
  cfg.dt = 2e-3;
  cfg.t_end = 10.0;
  cfg.monitor_every = 10;
  cfg.preset = InitialPreset::analytic_band;
  cfg.amplitude = 0.5;
  cfg.slope = 0.95;
  cfg.seed = 0;
  cfg.params = prm;

  const Grid g(cfg.n_x, cfg.n_y, cfg.L_x);
  const Fourier four(g);

  Trajectory tr(prm, g, IntegratorConfig{});
  bool sim_ok = false;
  {
    const auto t0 = Clock::now();
    const Constants cc = Constants::from(prm);
    const bool const_ok = std::abs(cc.C_decay - 64.0) <= 1e-12 * 64.0 &&
                          cc.delta_small > 5.58e-7 && cc.delta_small < 5.60e-7;

    const State init = initial_state(four, cfg);
    const SmallnessResult sm = check_smallness(four, prm, init);
    const bool small_ok =
        sm.passes && std::abs(sm.lhs - 0.5 * sm.delta) <= 1e-9 * sm.delta;

    IntegratorConfig ic;
    ic.dt = cfg.dt;
    ic.t_end = cfg.t_end;
    ic.scheme = cfg.scheme;
    ic.max_norm_guard = cfg.max_norm_guard;
    tr = simulate(g, prm, ic, init, cfg.monitor_every,
                  [&](const State& st) { return evaluate_energy_report(four, prm, st); },
                  nullptr, /*store_states=*/false);
    sim_ok = !tr.diverged && !tr.reports.empty();

    const DecayResult dec = sim_ok ? check_decay(tr.reports, prm) : DecayResult{};
    const bool ok = const_ok && small_ok && sim_ok && dec.passes;
    report(3, ok,
           "smallness and exponential decay, initial size 0.5*delta, worst slack " +
               fmt(dec.worst_slack) + " over " + std::to_string(tr.reports.size()) +
               " samples",
           seconds_since(t0));
  }

  {
    const auto t0 = Clock::now();
    bool ok = sim_ok;
    double worst = 0.0;
    if (sim_ok) {
      const MasterResult md = check_master_inequality(tr.reports, prm, DsOneReading::derivation);
      const MasterResult mp = check_master_inequality(tr.reports, prm, DsOneReading::printed);
      ok = md.passes && mp.passes;
      worst = std::min(md.worst_slack, mp.worst_slack);
    }
    report(4, ok, "master energy inequality under both dissipation readings, worst slack " + fmt(worst),
           seconds_since(t0));
  }

  {
    const auto t0 = Clock::now();
    bool ok = sim_ok;
    double worst_ratio = 1e300;
    if (sim_ok) {
      for (const double target : {0.0, 2.0, 4.0, 8.0}) {
        const EnergyReport* best = nullptr;
        double best_gap = 1e300;
        for (const auto& [t, r] : tr.reports) {
          const double gap = std::abs(t - target);
          if (gap < best_gap) {
            best_gap = gap;
            best = &r;
          }
        }
        if (!best || best_gap > 1e-6 || !best->tau_empirical) {
          ok = false;
          break;
        }
        const double ratio = *best->tau_empirical / best->tau_t;
        worst_ratio = std::min(worst_ratio, ratio);
        ok = ok && ratio >= 0.9;
      }
    }
    report(5, ok,
           "analyticity-radius tracking at t in {0,2,4,8}, worst ratio " + fmt(worst_ratio),
           seconds_since(t0));
  }

  // ---- 6. weighted product law ------------------------------------------
  {
    const auto t0 = Clock::now();
    const Grid gl(64, 129, kTwoPi);
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double sigma1 = 0.6 + 2.9 * uni(rng);
      const double sigma2 = sigma1 - (sigma1 - 0.6) * uni(rng);
      const double tau = uni(rng);
      worst = std::max(worst, product_law_case(gl, rng(), sigma1, sigma2, tau).ratio);
    }
    bool tri_ok = true;
    std::vector<double> freq;
    for (int k = -10; k <= 10; ++k) freq.push_back(static_cast<double>(k));
    for (const double sigma1 : {0.6, 1.0, 2.5, 3.5}) {
      tri_ok = tri_ok && triangle_power_check(sigma1, freq, freq) <= 1.0;
    }
    report(6, worst <= 1.0 + 1e-8 && tri_ok,
           "product law over 1000 random cases, worst ratio " + fmt(worst) +
               ", power-triangle bound exhaustive",
           seconds_since(t0));
  }

  // ---- 7. boundary-layer rescaling orders -------------------------------
  {
    const auto t0 = Clock::now();
    bool ok = true;
    double worst_rt = 0.0;
    for (const Regime regime : {Regime::prandtl, Regime::hartmann}) {
      const TermOrderTable tbl =
          scale_terms(regime, generic_bundle(), Params{}, default_smalls());
      ok = ok && tbl.all_within_tol && !tbl.any_degenerate;
      for (const double small : default_smalls()) {
        worst_rt = std::max(worst_rt, round_trip_error(regime, small));
      }
    }
    ok = ok && worst_rt <= 1e-12;
    report(7, ok,
           "rescaled term exponents within 0.2, round-trip error " + fmt(worst_rt),
           seconds_since(t0));
  }

  // ---- 8. zero fixed point ----------------------------------------------
  {
    const auto t0 = Clock::now();
    const Grid gz(32, 65, kTwoPi);
    const Fourier fz(gz);
    IntegratorConfig ic;
    ic.dt = 1e-3;
    Integrator stepper(gz, prm, ic);
    State st(gz);
    for (int i = 0; i < 1000; ++i) stepper.step(st);
    double worst = 0.0;
    for (const SpecField* f : {&st.u, &st.ut, &st.b1, &st.b1t}) {
      for (const auto& z : f->c) worst = std::max(worst, std::abs(z));
    }
    const EnergyReport r = evaluate_energy_report(fz, prm, st);
    const bool ok = worst == 0.0 && r.Es == 0.0 && r.Ds0 == 0.0 && r.decay_sum == 0.0;
    report(8, ok, "zero data stays exactly zero for 1000 steps", seconds_since(t0));
  }

  // ---- 9. norm-to-energy comparisons ------------------------------------
  {
    const auto t0 = Clock::now();
    const Grid ge(32, 65, kTwoPi);
    const Fourier fe(ge);
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      ok = ok && energy_bound_check(fe, prm, random_state(ge, seed, 1.0)).passes;
    }
    report(9, ok, "field norms dominated by energy and dissipation functionals",
           seconds_since(t0));
  }

  std::printf("acceptance: %s\n", g_all_pass ? "PASS" : "FAIL");
  return g_all_pass ? 0 : 1;
}
