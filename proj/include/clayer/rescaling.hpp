#ifndef CLAYER_RESCALING_HPP
#define CLAYER_RESCALING_HPP

#include <string>
#include <vector>

#include "clayer/manufactured.hpp"
#include "clayer/params.hpp"

namespace clayer {

// ============================================================================
// Boundary-layer rescaling verifier. Confirms, term by term, that the
// dimensionless bulk system collapses onto the reduced layer system under the
// two anisotropic rescalings (the viscous layer driven by large Reynolds
// number, and the magnetically dominated layer driven by large Hartmann
// number). Layer fields with closed-form derivatives are lifted to the bulk
// variables; every bulk term is then evaluated by the chain rule, its growth
// or decay exponent in the small parameter is fitted, and its displayed
// coefficient-times-layer-expression form is checked exactly.
// ============================================================================

/// Which boundary-layer regime ties the bulk parameters together.
enum class Regime { prandtl, hartmann };

/// Bulk-system parameters generated by the regime ties from the layer
/// parameters and the small parameter (eps for prandtl, delta for hartmann).
struct BulkParams {
  double Re = 0.0;
  double Ha = 0.0;
  double Re_m = 0.0;
  double U0c2 = 0.0;     ///< squared velocity-to-speed-of-light ratio
  double Jscript = 0.0;  ///< bulk relaxation parameter, layer J over kappa

  static BulkParams from_small(Regime regime, const Params& prm, double small);
};

/// One bulk term's bookkeeping after the scaling sweep.
struct TermRowResult {
  int eq = 0;               ///< bulk equation index, 1 through 8
  std::string label;        ///< the term as displayed in layer variables
  bool printed = true;      ///< false for terms the display leaves implicit
  double claimed_exp = 0.0; ///< exponent of the small parameter in the display
  double observed_exp = 0.0;
  double fit_residual = 0.0;   ///< worst log-log deviation from the fit line
  double coeff_check_rel = 0.0;///< worst rel. gap, chain rule vs coeff * layer
  bool degenerate = false;     ///< all sampled magnitudes were numerically zero
};

/// Full table for one regime.
struct TermOrderTable {
  Regime regime = Regime::prandtl;
  std::vector<double> smalls;
  std::vector<TermRowResult> rows;
  bool all_within_tol = true;
  bool any_degenerate = false;
};

/// Default small-parameter sweep, four values spanning two decades.
std::vector<double> default_smalls();

/// Sweep the small parameter and fit every bulk term's exponent.
/// Each field's chain-rule derivatives are cross-checked against high-order
/// finite differences first; an inconsistent bundle is rejected with a
/// diagnostic naming the offending field and derivative.
TermOrderTable scale_terms(Regime regime, const FieldBundle& bundle,
                           const Params& prm,
                           const std::vector<double>& smalls,
                           double tol = 0.2);

/// Worst relative mismatch between the chain-rule derivatives of the lifted
/// fields and sixth-order finite differences in the bulk coordinates.
double fd_cross_check(Regime regime, const FieldBundle& bundle, double small);

/// Maximum error of mapping a sample tuple layer -> bulk -> layer and
/// bulk -> layer -> bulk; the two maps are coded from their own formulas.
double round_trip_error(Regime regime, double small);

/// Aggregate residual of the reduced layer system on a bundle (max absolute
/// value over the eight equations and the sample points).
double limit_residual(const FieldBundle& bundle, const Params& prm);

/// | normalized bulk-system residual - layer-system residual | for a bundle
/// whose constraint equations hold exactly (the manufactured bundle does).
double limit_residual_gap(Regime regime, const FieldBundle& bundle,
                          const Params& prm, double small);

/// Lifted tangential magnetic field at the wall over its layer value; equals
/// sqrt(Ha / H) under the hartmann ties.
double hartmann_trace_ratio(const FieldBundle& bundle, const Params& prm,
                            double delta);

/// Fixed smooth test fields with nonvanishing wall traces for the magnetic
/// quantities, exercising every term in both tables.
FieldBundle generic_bundle();

/// All-zero fields; every table row degenerates and is flagged.
FieldBundle zero_bundle();

}  // namespace clayer

#endif
