// Reconstruction identities, pressure recovery, right-hand-side structure,
// and divergence-compatibility of the reduced evolution system.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "clayer/lemma.hpp"
#include "clayer/manufactured.hpp"
#include "clayer/model.hpp"
#include "clayer/norms.hpp"
#include "clayer/operators.hpp"

namespace clayer {
namespace {

constexpr double kTwoPi = 6.283185307179586;

PhysField sample(const Grid& g, double (*fn)(double, double)) {
  PhysField out(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) out.at(i, j) = fn(g.x(i), g.y(j));
  return out;
}

SpecField spectral_of(const Fourier& f, double (*fn)(double, double)) {
  SpecField out(f.grid());
  f.forward(sample(f.grid(), fn), out);
  return out;
}

double max_abs_diff_phys(const Fourier& f, const SpecField& a, const PhysField& want) {
  PhysField got(f.grid());
  f.backward(a, got);
  double m = 0.0;
  for (int i = 0; i < got.nx; ++i)
    for (int j = 0; j < got.ny; ++j) m = std::max(m, std::abs(got.at(i, j) - want.at(i, j)));
  return m;
}

double max_abs(const SpecField& a) {
  double m = 0.0;
  for (const auto& z : a.c) m = std::max(m, std::abs(z));
  return m;
}

TEST(Reconstruction, TransverseVelocityFromLinearProfile) {
  // u = sin(x) y gives v = -int_0^y cos(x) t dt = -cos(x) y^2/2, and the
  // trapezoid antiderivative is exact on the linear integrand.
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  const SpecField u = spectral_of(f, [](double x, double y) { return std::sin(x) * y; });
  SpecField v(g);
  reconstruct_v(g, u, v);
  const PhysField want =
      sample(g, [](double x, double y) { return -std::cos(x) * 0.5 * y * y; });
  EXPECT_LT(max_abs_diff_phys(f, v, want), 1e-13);
}

TEST(Reconstruction, TransverseMagneticAndElectricFields) {
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  const SpecField b1 = spectral_of(f, [](double x, double y) { return std::cos(x) * y; });
  SpecField b2(g);
  reconstruct_b2(g, b1, b2);
  const PhysField want_b2 =
      sample(g, [](double x, double y) { return std::sin(x) * 0.5 * y * y; });
  EXPECT_LT(max_abs_diff_phys(f, b2, want_b2), 1e-13);

  const SpecField b1t = spectral_of(f, [](double x, double y) { return std::sin(x) * y; });
  SpecField e(g);
  reconstruct_e(g, b1t, e);
  const PhysField want_e =
      sample(g, [](double x, double y) { return -std::sin(x) * 0.5 * y * y; });
  EXPECT_LT(max_abs_diff_phys(f, e, want_e), 1e-13);
}

TEST(Pressure, TopWallGaugeHoldsOnRandomState) {
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  const Params prm;
  const State st = random_state(g, 21, 0.5);
  DerivedFields d(g);
  reconstruct_all(f, prm, st, d);
  for (int m = 0; m < g.nx; ++m) {
    EXPECT_LT(std::abs(d.p.at(m, g.ny - 1)), 1e-13);
  }
}

TEST(Pressure, MatchesClosedFormAtSecondOrder) {
  // The manufactured state at t = 0 has a closed-form pressure; the discrete
  // recovery converges to it at the quadrature order.
  const Params prm;
  const FieldBundle bundle = mms_bundle(prm);
  auto worst = [&](int ny) {
    const Grid g(32, ny, kTwoPi);
    const Fourier f(g);
    const State st = mms_state(f, 0.0);
    DerivedFields d(g);
    reconstruct_all(f, prm, st, d);
    PhysField want(g);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) want.at(i, j) = bundle.p.f(0.0, g.x(i), g.y(j));
    return max_abs_diff_phys(f, d.p, want);
  };
  const double e1 = worst(33), e2 = worst(65);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 1.7);
  EXPECT_LT(order, 2.3);
}

TEST(Rhs, PureMagneticProfileReducesToDiffusion) {
  // With u = ut = b1t = 0 and b1 = cos(x) sin(pi y), every transport,
  // Lorentz, and pressure contribution vanishes and db1t collapses to
  // (1/kappa) dyy b1 while dut stays identically zero.
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  Params prm;
  prm.kappa = 1.7;
  prm.Pr_m = 1.3;
  State st(g);
  st.b1 = spectral_of(f, [](double x, double y) { return std::cos(x) * std::sin(M_PI * y); });
  Rhs out(g);
  rhs(f, prm, st, out);
  EXPECT_EQ(max_abs(out.du), 0.0);
  EXPECT_LT(max_abs(out.dut), 1e-14);
  EXPECT_EQ(max_abs(out.db1), 0.0);

  SpecField want(g);
  dyy(g, st.b1, want);
  double worst = 0.0;
  for (int m = 0; m < g.nx; ++m) {
    for (int j = 1; j < g.ny - 1; ++j) {
      worst = std::max(worst, std::abs(out.db1t.at(m, j) - want.at(m, j) / prm.kappa));
    }
    worst = std::max(worst, std::abs(out.db1t.at(m, 0)));
    worst = std::max(worst, std::abs(out.db1t.at(m, g.ny - 1)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Rhs, MagneticSectorStaysZero) {
  // b1 = b1t = 0 is preserved: nothing in the induction equation is sourced
  // by the velocity alone.
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  const Params prm;
  State st(g);
  st.u = spectral_of(f, [](double x, double y) {
    return std::sin(x) * std::sin(M_PI * y) + 0.3 * std::cos(2.0 * x) * y * (1.0 - y);
  });
  st.ut = spectral_of(f, [](double x, double y) { return std::cos(x) * std::sin(M_PI * y); });
  Rhs out(g);
  rhs(f, prm, st, out);
  EXPECT_EQ(max_abs(out.db1), 0.0);
  EXPECT_LT(max_abs(out.db1t), 1e-15);
}

TEST(Rhs, TangentiallyUniformStateHasNoTransverseFlow) {
  // A pure k = 0 state reconstructs v = b2 = 0 and a pressure with no
  // tangential gradient, so dut reduces to its linear part.
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  Params prm;
  prm.J = 2.3;
  State st(g);
  st.u = spectral_of(f, [](double, double y) { return std::sin(M_PI * y); });
  st.ut = spectral_of(f, [](double, double y) { return 0.4 * std::sin(2.0 * M_PI * y); });
  st.b1 = spectral_of(f, [](double, double y) { return y * (1.0 - y); });
  st.b1t = spectral_of(f, [](double, double y) { return 0.2 * std::sin(M_PI * y); });

  DerivedFields d(g);
  reconstruct_all(f, prm, st, d);
  EXPECT_EQ(max_abs(d.v), 0.0);
  EXPECT_EQ(max_abs(d.b2), 0.0);
  EXPECT_LT(max_abs(d.dpx), 1e-15);

  Rhs out(g);
  rhs(f, prm, st, out);
  SpecField lin(g);
  dyy(g, st.u, lin);
  double worst = 0.0;
  for (int m = 0; m < g.nx; ++m) {
    for (int j = 1; j < g.ny - 1; ++j) {
      const std::complex<double> want = (lin.at(m, j) - st.ut.at(m, j)) / prm.J;
      worst = std::max(worst, std::abs(out.dut.at(m, j) - want));
    }
  }
  EXPECT_LT(worst, 1e-13);
}

TEST(Rhs, WallRowsAreZeroed) {
  const Grid g(32, 33, kTwoPi);
  const Fourier f(g);
  const Params prm;
  const State st = random_state(g, 5, 0.3);
  Rhs out(g);
  rhs(f, prm, st, out);
  for (int m = 0; m < g.nx; ++m) {
    EXPECT_EQ(out.dut.at(m, 0), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(out.dut.at(m, g.ny - 1), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(out.db1t.at(m, 0), std::complex<double>(0.0, 0.0));
    EXPECT_EQ(out.db1t.at(m, g.ny - 1), std::complex<double>(0.0, 0.0));
  }
}

TEST(Rhs, NonFiniteInputIsRejected) {
  const Grid g(16, 9, kTwoPi);
  const Fourier f(g);
  const Params prm;
  State st = random_state(g, 3, 0.1);
  st.u.at(2, 3) = std::complex<double>(std::nan(""), 0.0);
  Rhs out(g);
  EXPECT_THROW(rhs(f, prm, st, out), std::runtime_error);
}

TEST(Divergence, CompatibleResidualIsRoundoffSmall) {
  // The staggered-midpoint residual annihilates the trapezoid antiderivative
  // by construction, independent of resolution.
  for (const std::uint64_t seed : {1u, 2u, 3u}) {
    const Grid g(64, 129, kTwoPi);
    const Fourier f(g);
    const State st = random_state(g, seed, 1.0);
    SpecField v(g), b2(g);
    reconstruct_v(g, st.u, v);
    reconstruct_b2(g, st.b1, b2);
    const double scale = std::max(1.0, norm_Hs0(g, st.u, 0.0));
    EXPECT_LT(divergence_residual_compatible(f, st.u, v), 1e-6 * scale);
    EXPECT_LT(divergence_residual_compatible(f, st.b1, b2), 1e-6 * scale);
  }
}

TEST(Divergence, CenteredResidualIsSecondOrderSmall) {
  const Grid g(32, 65, kTwoPi);
  const Fourier f(g);
  const SpecField u = spectral_of(f, [](double x, double y) {
    return std::sin(2.0 * x) * std::sin(M_PI * y);
  });
  SpecField v(g);
  reconstruct_v(g, u, v);
  // Field scale ~ 2 pi^2, node-centered defect ~ 5 h^2 times that.
  const double h = g.hy();
  EXPECT_LT(divergence_residual_centered(f, u, v), 5.0 * h * h * 25.0);
  EXPECT_GT(divergence_residual_centered(f, u, v), 1e-10);
}

}  // namespace
}  // namespace clayer
