#include "clayer/params.hpp"

#include <algorithm>
#include <cmath>

namespace clayer {

void Params::validate() const {
  if (!(H >= 0.0)) throw std::invalid_argument("params: H must be >= 0");
  if (!(J > 0.0)) throw std::invalid_argument("params: J must be > 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("params: kappa must be > 0");
  if (!(Pr_m > 0.0)) throw std::invalid_argument("params: Pr_m must be > 0");
  if (!(tau0 > 0.0)) throw std::invalid_argument("params: tau0 must be > 0");
  if (!(s > 2.0)) throw std::invalid_argument("params: s must be > 2");
}

Constants Constants::from(const Params& p) {
  p.validate();
  Constants c{};
  const double kp = p.kappa / p.Pr_m;
  c.m_small = std::min({1.0, p.J, kp});
  c.M_big = std::max({1.0, p.J, kp});
  c.R = 1.0 / (4.0 * c.M_big);
  c.lam = c.R / 4.0;

  const double s = p.s;
  const double shape = 1.0 + (s - 2.0) / std::sqrt(s - 1.0);
  c.D_s = std::pow(2.0, 2.0 * s + 6.0) / (s - 2.0) * shape;
  c.eps_s = (s - 2.0) / std::pow(2.0, 2.0 * s + 14.0) / shape;

  const double tmin = std::min(p.tau0, 1.0 / p.tau0);
  const double tmax = std::max(p.tau0, 1.0 / p.tau0);
  const double prmax = std::max(p.Pr_m, 1.0 / p.Pr_m);
  c.delta_small = std::pow(c.m_small, 1.5) / std::pow(c.M_big, 2.5) * std::pow(tmin, 1.5) /
                  (std::max(1.0, p.H * p.H) * std::sqrt(prmax)) * c.eps_s;
  c.C_decay = 64.0 * std::pow(c.M_big / c.m_small, 3.0) * prmax * tmax * tmax;
  return c;
}

double eta_of_t(const Params& p, double t) {
  const Constants c = Constants::from(p);
  return p.tau0 * (1.0 - std::exp(-c.lam * t));
}

double eta_prime(const Params& p, double t) {
  const Constants c = Constants::from(p);
  return c.lam * p.tau0 * std::exp(-c.lam * t);
}

double eta_second(const Params& p, double t) {
  const Constants c = Constants::from(p);
  return -c.lam * c.lam * p.tau0 * std::exp(-c.lam * t);
}

double tau_of_t(const Params& p, double t) {
  const Constants c = Constants::from(p);
  return p.tau0 * std::exp(-c.lam * t);
}

}  // namespace clayer
