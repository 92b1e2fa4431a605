#ifndef CLAYER_ENERGY_REPORT_HPP
#define CLAYER_ENERGY_REPORT_HPP

#include <optional>

namespace clayer {

// ============================================================================
// Per-sample values of the analytic-norm functionals. Kept header-only and
// dependency-free so both the integrator (which attaches reports to
// trajectories) and the energy monitor (which fills them) can share it.
// ============================================================================

struct EnergyReport {
  double t = 0.0;

  // Energy functionals at the H^{s,0}, H^{s+1/2,0}, H^{s+1,0} levels.
  double Es = 0.0;
  double Es_half = 0.0;
  double Es_one = 0.0;

  // Dissipation functionals; Ds_one is carried under both readings of its
  // definition (see energy.hpp).
  double Ds0 = 0.0;
  double Ds_half = 0.0;
  double Ds_one = 0.0;            ///< value under the default (derivation) reading
  double Ds_one_printed = 0.0;    ///< value under the printed reading
  double Ds_threehalf = 0.0;

  // Weight bookkeeping.
  double eta_p = 0.0;   ///< eta'(t)
  double eta_pp = 0.0;  ///< eta''(t)
  double tau_t = 0.0;   ///< remaining radius tau0 e^{-lam t}

  // Radius estimator on u; empty when fewer than 8 modes survive the floor.
  std::optional<double> tau_empirical;

  // Sum of the six weighted squared norms entering the decay statement,
  // taken with the multiplier e^{tau(t)(1+|xi|)}.
  double decay_sum = 0.0;
};

}  // namespace clayer

#endif
