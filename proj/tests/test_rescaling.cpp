// Term-order tables for the two thin-layer rescalings, coordinate round
// trips, the finite-difference gate on closed-form bundles, limit-system
// residual gaps, and the wall-trace amplification factor.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "clayer/manufactured.hpp"
#include "clayer/rescaling.hpp"

namespace clayer {
namespace {

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const TermRowResult* find_row(const TermOrderTable& tbl, int eq, const std::string& label) {
  for (const auto& row : tbl.rows)
    if (row.eq == eq && label == row.label) return &row;
  return nullptr;
}

TEST(TermTables, PrandtlGenericBundle) {
  Params prm;
  const TermOrderTable tbl = scale_terms(Regime::prandtl, generic_bundle(), prm, default_smalls());
  EXPECT_EQ(tbl.regime, Regime::prandtl);
  EXPECT_EQ(tbl.rows.size(), 37u);
  EXPECT_TRUE(tbl.all_within_tol);
  EXPECT_FALSE(tbl.any_degenerate);
  for (const auto& row : tbl.rows) {
    EXPECT_NEAR(row.observed_exp, row.claimed_exp, 0.05) << row.label;
    EXPECT_LE(row.coeff_check_rel, 5e-9) << row.label;
  }
}

TEST(TermTables, HartmannGenericBundle) {
  Params prm;
  const TermOrderTable tbl =
      scale_terms(Regime::hartmann, generic_bundle(), prm, default_smalls());
  EXPECT_EQ(tbl.rows.size(), 25u);
  EXPECT_TRUE(tbl.all_within_tol);
  EXPECT_FALSE(tbl.any_degenerate);
  for (const auto& row : tbl.rows) {
    EXPECT_NEAR(row.observed_exp, row.claimed_exp, 0.05) << row.label;
    EXPECT_LE(row.coeff_check_rel, 5e-9) << row.label;
  }
}

TEST(TermTables, AsymmetricParameters) {
  // Coefficient maps carry J, kappa, Pr_m, and H; skew them all.
  Params prm;
  prm.H = 1.3;
  prm.J = 0.7;
  prm.kappa = 2.1;
  prm.Pr_m = 1.4;
  for (const Regime regime : {Regime::prandtl, Regime::hartmann}) {
    const TermOrderTable tbl = scale_terms(regime, generic_bundle(), prm, default_smalls());
    EXPECT_TRUE(tbl.all_within_tol);
    EXPECT_FALSE(tbl.any_degenerate);
  }
}

TEST(TermTables, VelocityDiffusionRowSweep) {
  // The streamwise diffusion term in the first momentum balance shrinks at
  // the square of the layer parameter over the sweep 0.2 .. 0.025.
  Params prm;
  const std::vector<double> smalls = {0.2, 0.1, 0.05, 0.025};
  const TermOrderTable tbl = scale_terms(Regime::prandtl, generic_bundle(), prm, smalls);
  const TermRowResult* row = find_row(tbl, 1, "-eps^2 dxx u");
  ASSERT_NE(row, nullptr);
  EXPECT_TRUE(row->printed);
  EXPECT_NEAR(row->observed_exp, 2.0, 0.05);
  EXPECT_LT(row->fit_residual, 1e-6);
}

TEST(TermTables, UnprintedRowsAreStillChecked) {
  Params prm;
  const TermOrderTable tbl = scale_terms(Regime::prandtl, generic_bundle(), prm, default_smalls());
  const TermRowResult* row = find_row(tbl, 2, "J eps dtt v");
  ASSERT_NE(row, nullptr);
  EXPECT_FALSE(row->printed);
  EXPECT_NEAR(row->observed_exp, 1.0, 0.05);
}

TEST(TermTables, TamperedBundleRejected) {
  FieldBundle bad = generic_bundle();
  const ScalarClosedForm::Fn orig = bad.u.fx;
  bad.u.fx = [orig](double t, double x, double y) { return 1.01 * orig(t, x, y); };
  Params prm;
  EXPECT_THROW(scale_terms(Regime::prandtl, bad, prm, default_smalls()), std::runtime_error);
}

TEST(TermTables, ZeroBundleFlagsDegeneracy) {
  Params prm;
  const TermOrderTable tbl = scale_terms(Regime::prandtl, zero_bundle(), prm, default_smalls());
  EXPECT_TRUE(tbl.any_degenerate);
}

TEST(RoundTrip, BothRegimesAtAllSweepValues) {
  for (const Regime regime : {Regime::prandtl, Regime::hartmann}) {
    for (const double small : default_smalls()) {
      EXPECT_LE(round_trip_error(regime, small), 1e-12);
    }
  }
}

TEST(LimitGap, ShrinksAtTheClaimedOrder) {
  Params prm;
  const FieldBundle bundle = mms_bundle(prm);
  const std::vector<double> smalls = default_smalls();
  for (const Regime regime : {Regime::prandtl, Regime::hartmann}) {
    std::vector<double> gaps;
    for (const double small : smalls) gaps.push_back(limit_residual_gap(regime, bundle, prm, small));
    const double want = regime == Regime::prandtl ? 1.8 : 0.9;
    if (*std::max_element(gaps.begin(), gaps.end()) <= 1e-13) continue;
    EXPECT_GE(loglog_slope(smalls, gaps), want);
  }
}

TEST(TraceRatio, MatchesInverseSquareRoot) {
  Params prm;
  const FieldBundle bundle = generic_bundle();
  for (const double delta : {1e-2, 1e-3, 1e-4}) {
    const double ratio = hartmann_trace_ratio(bundle, prm, delta);
    EXPECT_NEAR(ratio * std::sqrt(delta), 1.0, 1e-12);
  }
}

TEST(TraceRatio, VanishingWallTraceRejected) {
  Params prm;
  EXPECT_THROW(hartmann_trace_ratio(zero_bundle(), prm, 1e-2), std::invalid_argument);
}

}  // namespace
}  // namespace clayer
