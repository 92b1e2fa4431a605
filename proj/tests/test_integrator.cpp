// Time-marching contracts: fixed points, linear accuracy against a closed
// form, discrete energy monotonicity, scheme orders, guards, and sampling.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "clayer/driver.hpp"
#include "clayer/energy.hpp"
#include "clayer/integrator.hpp"
#include "clayer/lemma.hpp"
#include "clayer/norms.hpp"
#include "clayer/operators.hpp"

namespace clayer {
namespace {

constexpr double kTwoPi = 6.283185307179586;

State profile_state(const Fourier& f, double (*u_fn)(double, double),
                    double (*ut_fn)(double, double)) {
  const Grid& g = f.grid();
  PhysField pu(g), put(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      pu.at(i, j) = u_fn(g.x(i), g.y(j));
      put.at(i, j) = ut_fn(g.x(i), g.y(j));
    }
  State st(g);
  f.forward(pu, st.u);
  f.forward(put, st.ut);
  return st;
}

TEST(Integrator, ZeroStateIsAFixedPoint) {
  const Grid g(32, 33, kTwoPi);
  const Params prm;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  Integrator integ(g, prm, cfg);
  State st(g);
  for (int n = 0; n < 1000; ++n) integ.step(st);
  for (const SpecField* fld : {&st.u, &st.ut, &st.b1, &st.b1t}) {
    for (const auto& z : fld->c) EXPECT_EQ(z, std::complex<double>(0.0, 0.0));
  }
  EXPECT_NEAR(st.t, 1.0, 1e-12);
}

TEST(Integrator, LinearModeTracksDampedOscillator) {
  // A tangentially uniform discrete eigenprofile sin(m pi y) evolves under
  // the linear part as a'' + a' = mu a with
  // mu = -(4/h^2) sin^2(m pi h / 2), whose solution from (1, 0) is
  // e^{-t/2} (cos wt + sin wt / (2w)), w = sqrt(-mu - 1/4).
  const int m = 2;
  const Grid g(8, 33, kTwoPi);
  const Fourier f(g);
  const Params prm;

  auto run = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.linear_only = true;
    Integrator integ(g, prm, cfg);
    State st = profile_state(
        f, [](double, double y) { return std::sin(2.0 * M_PI * y); },
        [](double, double) { return 0.0; });
    const int nsteps = static_cast<int>(std::lround(1.0 / dt));
    for (int n = 0; n < nsteps; ++n) integ.step(st);
    // Read the amplitude at an interior node of the k = 0 slot.
    const int j = 8;
    return st.u.at(0, j).real() / std::sin(m * M_PI * g.y(j));
  };

  const double h = g.hy();
  const double mu = -(4.0 / (h * h)) * std::pow(std::sin(m * M_PI * h / 2.0), 2);
  const double w = std::sqrt(-mu - 0.25);
  const double exact = std::exp(-0.5) * (std::cos(w) + std::sin(w) / (2.0 * w));

  const double e1 = std::abs(run(2e-3) - exact);
  const double e2 = std::abs(run(1e-3) - exact);
  EXPECT_LT(e1, 2e-4);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 1.9);
  EXPECT_LT(order, 2.1);
}

TEST(Integrator, LinearEnergyIsMonotone) {
  // For the linear part the midpoint scheme dissipates the discrete energy
  //   E = (J/2)||ut||^2 + (1/2) a(u, u),  a(u, u) = -<dyy u, u>,
  // exactly; watch it fall monotonically up to roundoff.
  const Grid g(32, 33, kTwoPi);
  const Fourier fr(g);
  Params prm;
  prm.J = 1.4;
  IntegratorConfig cfg;
  cfg.dt = 5e-3;
  cfg.linear_only = true;
  Integrator integ(g, prm, cfg);

  State st = random_state(g, 17, 1.0);
  st.b1.zero();
  st.b1t.zero();

  auto energy = [&](const State& s) {
    SpecField lap(g);
    dyy(g, s.u, lap);
    double kin = 0.0, pot = 0.0;
    for (int m = 0; m < g.nx; ++m) {
      kin += trapz_abs2(g, s.ut, m);
      for (int j = 0; j < g.ny; ++j) {
        pot -= (std::conj(s.u.at(m, j)) * lap.at(m, j)).real() * g.hy() *
               (j == 0 || j == g.ny - 1 ? 0.5 : 1.0);
      }
    }
    return 0.5 * prm.J * kin + 0.5 * pot;
  };

  double prev = energy(st);
  const double floor_tol = 1e-10 * prev;
  for (int n = 0; n < 300; ++n) {
    integ.step(st);
    const double cur = energy(st);
    EXPECT_LE(cur, prev + floor_tol);
    prev = cur;
  }
}

TEST(Integrator, EulerSchemeIsFirstOrder) {
  RunConfig cfg;
  cfg.n_x = 32;
  cfg.n_y = 33;
  cfg.scheme = Scheme::imex_euler;
  cfg.mms_dt_list = {4e-3, 2e-3, 1e-3};
  cfg.mms_t_end_temporal = 0.2;
  const MmsStudy study = mms_temporal_study(cfg, nullptr);
  ASSERT_FALSE(study.diverged);
  EXPECT_GT(study.order, 0.8);
  EXPECT_LT(study.order, 1.2);
}

TEST(Integrator, MidpointSchemeIsSecondOrder) {
  RunConfig cfg;
  cfg.n_x = 32;
  cfg.n_y = 33;
  cfg.mms_dt_list = {4e-3, 2e-3};
  cfg.mms_t_end_temporal = 0.1;
  const MmsStudy study = mms_temporal_study(cfg, nullptr);
  ASSERT_FALSE(study.diverged);
  EXPECT_GT(study.order, 1.8);
  EXPECT_LT(study.order, 2.2);
}

TEST(Integrator, StabilityAdvisoryFollowsTheFormula) {
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  Params prm;
  prm.J = 0.25;
  prm.kappa = 4.0;
  prm.Pr_m = 1.0;
  const State zero(g);
  // Zero state: advective bound dropped, min(0.5 sqrt(J), 0.5 sqrt(kappa/Pr)).
  EXPECT_NEAR(dt_stability(g, prm, f, zero), 0.25, 1e-12);

  State st = profile_state(
      f, [](double x, double y) { return 100.0 * std::sin(x) * std::sin(M_PI * y); },
      [](double, double) { return 0.0; });
  const double adv = dt_stability(g, prm, f, st);
  EXPECT_LT(adv, 0.25);
  EXPECT_GT(adv, 0.0);
}

TEST(Integrator, GuardThrowsAndPreservesTheState) {
  const Grid g(32, 33, kTwoPi);
  const Params prm;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.max_norm_guard = 1e-9;
  Integrator integ(g, prm, cfg);
  State st = random_state(g, 9, 1.0);
  const State before = st;
  EXPECT_THROW(integ.step(st), DivergenceError);
  for (size_t i = 0; i < st.u.c.size(); ++i) {
    EXPECT_EQ(st.u.c[i], before.u.c[i]);
    EXPECT_EQ(st.ut.c[i], before.ut.c[i]);
  }
  EXPECT_EQ(st.t, before.t);
}

TEST(Simulate, SamplingAndSnapshotContracts) {
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  const Params prm;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  const State init = random_state(g, 2, 1e-4);
  ReportFn report = [&](const State& s) { return evaluate_energy_report(f, prm, s); };

  const Trajectory traj = simulate(g, prm, cfg, init, 10, report, nullptr, false);
  EXPECT_FALSE(traj.diverged);
  // store_states = false keeps exactly the initial and final snapshots.
  ASSERT_EQ(traj.snapshots.size(), 2u);
  EXPECT_NEAR(traj.snapshots.front().first, 0.0, 1e-15);
  EXPECT_NEAR(traj.snapshots.back().first, 0.1, 1e-12);
  // 100 steps sampled every 10, plus the initial sample.
  ASSERT_EQ(traj.reports.size(), 11u);
  for (size_t i = 1; i < traj.reports.size(); ++i) {
    EXPECT_GT(traj.reports[i].first, traj.reports[i - 1].first);
    EXPECT_NEAR(traj.reports[i].first, 0.01 * i, 1e-12);
  }

  const Trajectory full = simulate(g, prm, cfg, init, 10, report, nullptr, true);
  EXPECT_EQ(full.snapshots.size(), full.reports.size());
}

TEST(Simulate, DivergenceIsReportedNotThrown) {
  const Grid g(32, 33, kTwoPi);
  const Params prm;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.max_norm_guard = 1e-9;
  const State init = random_state(g, 4, 1.0);
  const Trajectory traj = simulate(g, prm, cfg, init, 10, {}, nullptr, false);
  EXPECT_TRUE(traj.diverged);
  EXPECT_FALSE(traj.divergence_message.empty());
  ASSERT_GE(traj.snapshots.size(), 1u);
  // The last snapshot is the last valid state, here the initial one.
  EXPECT_NEAR(traj.snapshots.back().first, 0.0, 1e-15);
}

}  // namespace
}  // namespace clayer
