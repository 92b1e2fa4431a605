#include "clayer/lemma.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>

#include "clayer/energy.hpp"
#include "clayer/norms.hpp"
#include "clayer/operators.hpp"

namespace clayer {

namespace {

double sq(double x) { return x * x; }

/// Fill slot pair (k, -k) with conjugate coefficients so the field is real.
void set_mode(const Grid& g, SpecField& f, int k, std::complex<double> z,
              const std::vector<double>& profile) {
  for (int j = 0; j < g.ny; ++j) {
    f.at(g.slot(k), j) += z * profile[j];
    if (k != 0) f.at(g.slot(-k), j) += std::conj(z) * profile[j];
  }
}

}  // namespace

SpecField random_band_field(const Grid& g, std::uint64_t seed, int kband, bool zero_trace_y0,
                            double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpecField f(g);
  kband = std::min(kband, g.nx / 2 - 1);
  std::vector<double> profile(g.ny);
  for (int k = 0; k <= kband; ++k) {
    const double decay = std::exp(-0.5 * k);
    std::complex<double> z(gauss(rng), k == 0 ? 0.0 : gauss(rng));
    z *= 0.5 * amplitude * decay;
    const double c0 = gauss(rng), c1 = 0.5 * gauss(rng), c2 = 0.25 * gauss(rng);
    for (int j = 0; j < g.ny; ++j) {
      const double y = g.y(j);
      double p = c0 + c1 * y + c2 * y * y;
      if (zero_trace_y0) p *= y;
      profile[j] = p;
    }
    set_mode(g, f, k, z, profile);
  }
  return f;
}

State random_state(const Grid& g, std::uint64_t seed, double amplitude) {
  State st(g);
  const int kband = g.dealias_kmax();
  // Profiles vanish at both walls: multiply by y(1-y) on top of the y factor.
  auto wall_field = [&](std::uint64_t s) {
    SpecField f = random_band_field(g, s, kband, false, amplitude);
    for (int m = 0; m < g.nx; ++m)
      for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        f.at(m, j) *= y * (1.0 - y);
      }
    return f;
  };
  st.u = wall_field(seed * 4 + 1);
  st.ut = wall_field(seed * 4 + 2);
  st.b1 = wall_field(seed * 4 + 3);
  st.b1t = wall_field(seed * 4 + 4);
  st.enforce_dirichlet();
  return st;
}

LemmaCaseResult product_law_check(const Fourier& f4, const SpecField& f, const SpecField& g,
                                  double sigma1, double sigma2, double tau) {
  const Grid& gg = f4.grid();
  if (!(sigma2 > 0.5) || !(sigma2 <= sigma1))
    throw std::invalid_argument("product_law_check: need 1/2 < sigma2 <= sigma1");
  for (int m = 0; m < gg.nx; ++m)
    if (std::abs(f.at(m, 0)) > 1e-12)
      throw std::invalid_argument("product_law_check: f must vanish at y=0");

  LemmaCaseResult r;
  r.sigma1 = sigma1;
  r.sigma2 = sigma2;
  r.tau = tau;

  // Exact product on the doubled-x grid, then restriction to the base band.
  const Grid g2(2 * gg.nx, gg.ny, gg.Lx);
  Fourier four2(g2);
  SpecField f2(g2), gg2(g2);
  for (int m = 0; m < gg.nx; ++m) {
    const int k = gg.mode_k(m);
    if (k == gg.nx / 2) continue;  // no Nyquist content in band-limited inputs
    for (int j = 0; j < gg.ny; ++j) {
      f2.at(g2.slot(k), j) = f.at(m, j);
      gg2.at(g2.slot(k), j) = g.at(m, j);
    }
  }
  PhysField pf(g2), pg(g2);
  four2.backward(f2, pf);
  four2.backward(gg2, pg);
  for (size_t i = 0; i < pf.a.size(); ++i) pf.a[i] *= pg.a[i];
  SpecField prod2(g2);
  four2.forward(pf, prod2);

  SpecField prod(gg);
  for (int m = 0; m < gg.nx; ++m) {
    const int k = gg.mode_k(m);
    for (int j = 0; j < gg.ny; ++j) prod.at(m, j) = prod2.at(g2.slot(k), j);
  }

  SpecField prodw = prod;
  apply_multiplier(gg, tau, prodw);
  r.lhs = norm_Hs0(gg, prodw, sigma1);

  SpecField fw = f, gw = g;
  apply_multiplier(gg, tau, fw);
  apply_multiplier(gg, tau, gw);
  SpecField dyfw(gg);
  dy(gg, fw, dyfw);
  const double c = std::pow(2.0, sigma1 - 0.5) / std::sqrt(sigma2 - 0.5);
  r.rhs = c * (norm_Hs0(gg, dyfw, sigma1) * norm_Hs0(gg, gw, sigma2) +
               norm_Hs0(gg, dyfw, sigma2) * norm_Hs0(gg, gw, sigma1));
  r.ratio = (r.rhs > 0.0) ? r.lhs / r.rhs : 0.0;
  return r;
}

LemmaCaseResult product_law_case(const Grid& g, std::uint64_t seed, double sigma1, double sigma2,
                                 double tau) {
  Fourier four(g);
  const int kband = g.dealias_kmax();
  SpecField f = random_band_field(g, seed * 2 + 1, kband, true);
  SpecField h = random_band_field(g, seed * 2 + 2, kband, false);
  LemmaCaseResult r = product_law_check(four, f, h, sigma1, sigma2, tau);
  r.seed = seed;
  return r;
}

double triangle_power_check(double sigma1, const std::vector<double>& xi_grid,
                            const std::vector<double>& eta_grid) {
  assert(sigma1 > 0.5);
  double worst = 0.0;
  for (double xi : xi_grid)
    for (double eta : eta_grid) {
      const double lhs = std::pow(1.0 + std::abs(xi), 2.0 * sigma1);
      const double rhs = std::pow(2.0, 2.0 * sigma1 - 1.0) *
                         (std::pow(1.0 + std::abs(xi - eta), 2.0 * sigma1) +
                          std::pow(1.0 + std::abs(eta), 2.0 * sigma1));
      worst = std::max(worst, lhs / rhs);
    }
  return worst;
}

std::pair<double, double> poincare_check(const Grid& g, const SpecField& f, double s) {
  SpecField d(g);
  dy(g, f, d);
  return {norm_Hs0(g, f, s), norm_Hs0(g, d, s)};
}

EnergyBoundResult energy_bound_check(const Fourier& f, const Params& prm, const State& st) {
  const Grid& g = f.grid();
  const double tau = tau_of_t(prm, st.t);
  SpecField uw = st.u, b1w = st.b1;
  apply_multiplier(g, tau, uw);
  apply_multiplier(g, tau, b1w);

  const double Es = compute_Es(f, prm, st);
  const DSuite d = compute_D_suite(f, prm, st);

  EnergyBoundResult r;
  r.worst_margin = std::min({2.0 * std::sqrt(Es) - norm_Hs0(g, uw, prm.s),
                             2.0 * std::sqrt(Es) - norm_Hs0(g, b1w, prm.s),
                             2.0 * std::sqrt(d.Ds_half) - norm_Hs0(g, uw, prm.s + 0.5),
                             2.0 * std::sqrt(d.Ds_half) - norm_Hs0(g, b1w, prm.s + 0.5)});
  const double scale = std::max({sq(norm_Hs0(g, uw, prm.s + 0.5)), 1.0});
  r.passes = r.worst_margin >= -1e-12 * scale;
  return r;
}

}  // namespace clayer
