#include "clayer/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clayer/norms.hpp"
#include "clayer/operators.hpp"

namespace clayer {

namespace {

double sq(double x) { return x * x; }

/// Weighted fields and their y-derivatives shared by all functionals.
struct WeightedState {
  SpecField uw, utw, b1w, b1tw, dyuw, dyb1w;
  double tau, eta_p, eta_pp;
};

WeightedState weigh(const Grid& g, const Params& prm, const State& st) {
  WeightedState w;
  w.tau = tau_of_t(prm, st.t);
  w.eta_p = eta_prime(prm, st.t);
  w.eta_pp = eta_second(prm, st.t);
  w.uw = st.u;
  w.utw = st.ut;
  w.b1w = st.b1;
  w.b1tw = st.b1t;
  apply_multiplier(g, w.tau, w.uw);
  apply_multiplier(g, w.tau, w.utw);
  apply_multiplier(g, w.tau, w.b1w);
  apply_multiplier(g, w.tau, w.b1tw);
  dy(g, w.uw, w.dyuw);
  dy(g, w.b1w, w.dyb1w);
  return w;
}

/// dt(f_eta) = (dt f)_eta - eta'(t (1+|xi|)) f_eta, the chain rule through
/// the time-dependent multiplier, assembled spectrally.
SpecField weighted_time_derivative(const Grid& g, const SpecField& ftw, const SpecField& fw,
                                   double eta_p) {
  SpecField out = ftw;
  for (int m = 0; m < g.nx; ++m) {
    const double factor = eta_p * (1.0 + std::abs(g.xi(m)));
    for (int j = 0; j < g.ny; ++j) out.at(m, j) -= factor * fw.at(m, j);
  }
  return out;
}

double Es_from(const Grid& g, const Params& prm, const WeightedState& w) {
  const double s = prm.s;
  const double kp = prm.kappa / prm.Pr_m;

  SpecField cu = w.uw;
  cu.axpy(prm.J, w.utw);  // J (dt u)_eta + u_eta
  SpecField cb = w.b1w;
  cb.axpy(kp, w.b1tw);    // (kappa/Pr_m)(dt b1)_eta + b1_eta

  return 0.5 * prm.J * prm.J * sq(norm_Hs0(g, w.utw, s)) + 0.5 * sq(norm_Hs0(g, cu, s)) +
         prm.J * sq(norm_Hs0(g, w.dyuw, s)) +
         0.5 * sq(prm.kappa / prm.Pr_m) * sq(norm_Hs0(g, w.b1tw, s)) +
         0.5 * sq(norm_Hs0(g, cb, s)) +
         (prm.kappa / (prm.Pr_m * prm.Pr_m)) * sq(norm_Hs0(g, w.dyb1w, s));
}

DSuite D_suite_from(const Grid& g, const Params& prm, const WeightedState& w) {
  const double s = prm.s;
  DSuite d;

  d.Ds0 = 0.5 * (sq(norm_Hs0(g, w.dyuw, s)) + sq(norm_Hs0(g, w.utw, s)) +
                 sq(norm_Hs0(g, w.dyb1w, s)) + sq(norm_Hs0(g, w.b1tw, s)));

  const SpecField dtuw = weighted_time_derivative(g, w.utw, w.uw, w.eta_p);
  const SpecField dtb1w = weighted_time_derivative(g, w.b1tw, w.b1w, w.eta_p);

  const double sh = s + 0.5;
  auto half_block = [&](const SpecField& fw, const SpecField& ftw, const SpecField& dyfw,
                        const SpecField& dtfw) {
    SpecField comb = fw;
    comb.axpy(1.0, ftw);  // (dt f)_eta + f_eta
    return 0.5 * sq(norm_Hs0(g, ftw, sh)) + 0.5 * sq(norm_Hs0(g, comb, sh)) +
           2.0 * sq(norm_Hs0(g, dyfw, sh)) + sq(norm_Hs0(g, dtfw, sh)) +
           (3.0 / 8.0) * sq(norm_Hs0(g, fw, sh));
  };
  d.Ds_half = half_block(w.uw, w.utw, w.dyuw, dtuw) + half_block(w.b1w, w.b1tw, w.dyb1w, dtb1w);

  d.Ds_one_printed = 0.75 * sq(norm_Hs0(g, w.uw, sh)) + 0.75 * sq(norm_Hs0(g, dtb1w, sh));
  d.Ds_one_derivation = 0.75 * (sq(norm_Hs0(g, w.uw, s + 1.0)) + sq(norm_Hs0(g, w.b1w, s + 1.0)));

  d.Ds_threehalf = sq(norm_Hs0(g, w.uw, s + 1.5)) + sq(norm_Hs0(g, w.b1w, s + 1.5));
  return d;
}

}  // namespace

SpecField eta_weight(const Grid& g, const Params& prm, const SpecField& f, double t) {
  SpecField out = f;
  apply_multiplier(g, tau_of_t(prm, t), out);
  return out;
}

double compute_Es(const Fourier& f, const Params& prm, const State& st) {
  return Es_from(f.grid(), prm, weigh(f.grid(), prm, st));
}

DSuite compute_D_suite(const Fourier& f, const Params& prm, const State& st) {
  return D_suite_from(f.grid(), prm, weigh(f.grid(), prm, st));
}

EnergyReport evaluate_energy_report(const Fourier& f, const Params& prm, const State& st) {
  const Grid& g = f.grid();
  const WeightedState w = weigh(g, prm, st);
  EnergyReport r;
  r.t = st.t;
  r.tau_t = w.tau;
  r.eta_p = w.eta_p;
  r.eta_pp = w.eta_pp;

  r.Es = Es_from(g, prm, w);
  const double sh = prm.s + 0.5;
  r.Es_half = 0.5 * (sq(norm_Hs0(g, w.uw, sh)) + sq(norm_Hs0(g, w.b1w, sh)));
  r.Es_one = sq(norm_Hs0(g, w.uw, prm.s + 1.0)) + sq(norm_Hs0(g, w.b1w, prm.s + 1.0));

  const DSuite d = D_suite_from(g, prm, w);
  r.Ds0 = d.Ds0;
  r.Ds_half = d.Ds_half;
  r.Ds_one = d.Ds_one_derivation;
  r.Ds_one_printed = d.Ds_one_printed;
  r.Ds_threehalf = d.Ds_threehalf;

  r.decay_sum = r.Es_one + sq(norm_Hs0(g, w.utw, prm.s)) + sq(norm_Hs0(g, w.b1tw, prm.s)) +
                sq(norm_Hs0(g, w.dyuw, prm.s)) + sq(norm_Hs0(g, w.dyb1w, prm.s));

  r.tau_empirical = empirical_radius(g, st.u);
  return r;
}

SmallnessResult check_smallness(const Fourier& f, const Params& prm, const State& initial) {
  const Grid& g = f.grid();
  const Constants ct = Constants::from(prm);

  SpecField uw = initial.u, utw = initial.ut, b1w = initial.b1, b1tw = initial.b1t;
  apply_multiplier(g, prm.tau0, uw);
  apply_multiplier(g, prm.tau0, utw);
  apply_multiplier(g, prm.tau0, b1w);
  apply_multiplier(g, prm.tau0, b1tw);
  SpecField dyuw(g), dyb1w(g);
  dy(g, uw, dyuw);
  dy(g, b1w, dyb1w);

  SmallnessResult r;
  r.lhs = norm_Hs0(g, uw, prm.s + 1.0) + norm_Hs0(g, dyuw, prm.s) + norm_Hs0(g, utw, prm.s) +
          norm_Hs0(g, b1w, prm.s + 1.0) + norm_Hs0(g, dyb1w, prm.s) + norm_Hs0(g, b1tw, prm.s);
  r.delta = ct.delta_small;
  r.margin = r.delta - r.lhs;
  r.passes = r.margin >= 0.0;
  return r;
}

DecayResult check_decay(const std::vector<std::pair<double, EnergyReport>>& reports,
                        const Params& prm) {
  const Constants ct = Constants::from(prm);
  DecayResult r;
  if (reports.empty()) {
    r.passes = true;
    return r;
  }
  const double base = reports.front().second.decay_sum;
  r.passes = true;
  r.worst_slack = std::numeric_limits<double>::infinity();
  for (const auto& [t, rep] : reports) {
    const double lhs = rep.decay_sum;
    const double rhs = ct.C_decay * base * std::exp(-t / (8.0 * ct.M_big));
    const double slack = rhs - lhs;
    const double floor = 1e-12 * std::max({lhs, rhs, 1.0});
    r.t.push_back(t);
    r.lhs.push_back(lhs);
    r.rhs.push_back(rhs);
    r.slack.push_back(slack);
    r.worst_slack = std::min(r.worst_slack, slack);
    if (slack < -floor) r.passes = false;
  }
  return r;
}

MasterResult check_master_inequality(const std::vector<std::pair<double, EnergyReport>>& reports,
                                     const Params& prm, DsOneReading reading) {
  const Constants ct = Constants::from(prm);
  MasterResult r;
  r.reading = reading;
  if (reports.empty()) {
    r.passes = true;
    return r;
  }

  const size_t n = reports.size();
  const double kp = prm.kappa / prm.Pr_m;
  const double K = std::max(1.0 / std::sqrt(prm.J), prm.Pr_m / std::sqrt(prm.kappa));
  const double maxH = std::max(1.0, prm.H * prm.H);

  // Pointwise integrand samples, all carrying the e^{R t} factor.
  std::vector<double> tt(n), dissip(n), rest(n), bil1(n), bil2(n), tril(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& [t, rep] = reports[i];
    const double ds1 = (reading == DsOneReading::derivation) ? rep.Ds_one : rep.Ds_one_printed;
    const double w = std::exp(ct.R * t);
    tt[i] = t;
    dissip[i] = w * (rep.Ds0 + rep.eta_p * rep.Ds_half + ct.m_small * sq(rep.eta_p) * ds1 +
                     sq(ct.m_small) * rep.eta_p * sq(rep.eta_p) * rep.Ds_threehalf);
    rest[i] = w * ((prm.J + kp) * rep.eta_pp * rep.Es_half +
                   2.0 * (prm.J * prm.J + kp * kp) * rep.eta_p * rep.eta_pp * rep.Es_one);
    bil1[i] = w * std::sqrt(rep.Es) * rep.Ds_half;
    bil2[i] = w * rep.Es * rep.Ds_half;
    tril[i] = w * rep.Es * std::sqrt(rep.Ds_half * rep.Ds_threehalf);
  }

  // Cumulative composite trapezoid.
  auto cumtrapz = [&](const std::vector<double>& f, size_t stride) {
    std::vector<double> acc(n, 0.0);
    double run = 0.0;
    size_t prev = 0;
    for (size_t i = stride; i < n; i += stride) {
      run += 0.5 * (tt[i] - tt[prev]) * (f[i] + f[prev]);
      acc[i] = run;
      prev = i;
    }
    // Fill skipped entries by carrying the running value forward.
    double cur = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (i % stride == 0) cur = acc[i];
      acc[i] = cur;
    }
    return acc;
  };

  const auto I_dissip = cumtrapz(dissip, 1);
  const auto I_rest = cumtrapz(rest, 1);
  const auto I_bil1 = cumtrapz(bil1, 1);
  const auto I_bil2 = cumtrapz(bil2, 1);
  const auto I_tril = cumtrapz(tril, 1);

  const auto& rep0 = reports.front().second;
  const double rhs0 = rep0.Es + ct.M_big * rep0.eta_p * rep0.Es_half +
                      sq(ct.M_big) * sq(rep0.eta_p) * rep0.Es_one;

  r.passes = true;
  r.worst_slack = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const auto& [t, rep] = reports[i];
    const double eblock = std::exp(ct.R * t) * (rep.Es + ct.m_small * rep.eta_p * rep.Es_half +
                                                sq(ct.m_small) * sq(rep.eta_p) * rep.Es_one);
    const double lhs = eblock + I_dissip[i] - I_rest[i];
    const double rhs = rhs0 + ct.D_s * maxH * (K * I_bil1[i] + I_bil2[i] + K * I_tril[i]);
    const double slack = rhs - lhs;
    const double floor = 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
    r.t.push_back(t);
    r.lhs.push_back(lhs);
    r.rhs.push_back(rhs);
    r.slack.push_back(slack);
    r.worst_slack = std::min(r.worst_slack, slack);
    if (slack < -floor) r.passes = false;
  }

  // Richardson half-sampling advisory on the dominant integrals.
  if (n >= 5) {
    const auto I2 = cumtrapz(dissip, 2);
    const double err = std::abs(I_dissip[n - 1] - I2[n - 1]) / 3.0;
    r.quad_error = err;
    double smallest = std::numeric_limits<double>::infinity();
    for (double v : {std::abs(r.lhs.back()), std::abs(r.rhs.back()), I_dissip[n - 1]})
      if (v > 0.0) smallest = std::min(smallest, v);
    if (std::isfinite(smallest) && err > 0.01 * smallest) r.quad_advisory = true;
  }
  return r;
}

std::optional<double> empirical_radius(const Grid& g, const SpecField& f) {
  const int kmax = g.dealias_kmax();
  std::vector<double> xs, ys;
  double peak = 0.0;
  std::vector<std::pair<double, double>> band;  // (|xi|, amp)
  for (int m = 0; m < g.nx; ++m) {
    if (std::abs(g.mode_k(m)) > kmax) continue;
    double amp = 0.0;
    for (int j = 0; j < g.ny; ++j) amp = std::max(amp, std::abs(f.at(m, j)));
    band.emplace_back(std::abs(g.xi(m)), amp);
    peak = std::max(peak, amp);
  }
  if (peak <= 0.0) return std::nullopt;
  const double floor = 1e-13 * peak;
  for (const auto& [xi, amp] : band) {
    if (amp > floor) {
      xs.push_back(xi);
      ys.push_back(-std::log(amp));
    }
  }
  if (xs.size() < 8) return std::nullopt;

  // Least squares y = a + slope * x.
  const double nn = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = nn * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  return (nn * sxy - sx * sy) / denom;
}

}  // namespace clayer
