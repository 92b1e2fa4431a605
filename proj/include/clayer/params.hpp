#ifndef CLAYER_PARAMS_HPP
#define CLAYER_PARAMS_HPP

#include <stdexcept>

namespace clayer {

// ============================================================================
// Physical parameters of the boundary-layer system and every derived
// constant of the a-priori machinery: the weight schedule eta/tau, the
// comparability constants m/M, the product constant D_s, the smallness
// threshold, and the decay constant.
// ============================================================================

/// Coefficients of the reduced system.
struct Params {
  double H = 1.0;      ///< Lorentz coupling strength (squared in the equations)
  double J = 1.0;      ///< Cattaneo inertia of the momentum balance
  double kappa = 1.0;  ///< displacement-current ratio
  double Pr_m = 1.0;   ///< magnetic Prandtl number
  double tau0 = 1.0;   ///< initial radius of x-analyticity
  double s = 3.0;      ///< tangential Sobolev index, s > 2

  /// Throws std::invalid_argument when a constraint is violated.
  void validate() const;
};

/// Derived constants, all closed-form in Params.
struct Constants {
  double m_small;      ///< min{1, J, kappa/Pr_m}
  double M_big;        ///< max{1, J, kappa/Pr_m}
  double R;            ///< 1/(4 M_big)
  double lam;          ///< R/4 = 1/(16 M_big)
  double D_s;          ///< 2^{2s+6}/(s-2) * (1 + (s-2)/sqrt(s-1))
  double eps_s;        ///< (s-2)/2^{2s+14} / (1 + (s-2)/sqrt(s-1))
  double delta_small;  ///< smallness threshold for the initial data
  double C_decay;      ///< 4^3 (M/m)^3 max{Pr_m,1/Pr_m} max{tau0,1/tau0}^2

  static Constants from(const Params& p);
};

/// Analyticity gained by the weight at time t: eta(t) = tau0 (1 - e^{-lam t}).
double eta_of_t(const Params& p, double t);

/// eta'(t) = lam tau0 e^{-lam t} > 0.
double eta_prime(const Params& p, double t);

/// eta''(t) = -lam^2 tau0 e^{-lam t} < 0.
double eta_second(const Params& p, double t);

/// Remaining radius tau(t) = tau0 - eta(t) = tau0 e^{-lam t}.
double tau_of_t(const Params& p, double t);

}  // namespace clayer

#endif
