#ifndef CLAYER_MANUFACTURED_HPP
#define CLAYER_MANUFACTURED_HPP

#include <functional>

#include "clayer/fourier.hpp"
#include "clayer/model.hpp"
#include "clayer/params.hpp"
#include "clayer/state.hpp"

namespace clayer {

// ============================================================================
// Closed-form reference solutions. One family feeds the convergence studies
// (forcings that make an explicit space-time field an exact solution of the
// evolution equations); the same family, packaged with all derivatives, is
// reused by the rescaling verifier as a concrete solution bundle.
// ============================================================================

/// A scalar of (t, x, y) with closed-form partial derivatives up to the
/// second order in each variable (no mixed derivatives are ever needed).
struct ScalarClosedForm {
  using Fn = std::function<double(double, double, double)>;
  Fn f, ft, fx, fy, ftt, fxx, fyy;
};

/// A full set of boundary-layer fields.
struct FieldBundle {
  ScalarClosedForm u, v, b1, b2, e, p;
};

/// The manufactured solution on L_x = 2 pi (checked):
///   u  = e^{-t} sin(x) sin(pi y),   b1 = e^{-t} cos(x) sin(pi y),
/// with v, b2, e reconstructed exactly and the pressure in closed form.
/// Satisfies the full system with the forcings below.
FieldBundle mms_bundle(const Params& prm);

/// Closed-form momentum forcing making the bundle exact, at (t, x, y).
double mms_Fu(const Params& prm, double t, double x, double y);

/// Closed-form tangential induction forcing.
double mms_Fb(const Params& prm, double t, double x, double y);

/// Closed-form transverse induction forcing (used only by the limit-system
/// residual bookkeeping, the reduced evolution never integrates b2).
double mms_Fb2(const Params& prm, double t, double x, double y);

/// Sample the exact state (u, ut, b1, b1t) on the grid at time t.
/// Requires L_x = 2 pi.
State mms_state(const Fourier& f, double t);

/// Forcing callback sampling the closed-form Fu, Fb on the grid.
Forcing mms_forcing_continuous(const Fourier& f, const Params& prm);

/// Forcing chosen so the grid-sampled exact state solves the semidiscrete
/// system exactly: F_u = J (dtt u* - dut_unforced(X*)), and likewise for b1.
/// Isolates the pure time-integration error for the temporal order study.
Forcing mms_forcing_discrete(const Fourier& f, const Params& prm);

/// L2-type error (norm_Hs0 at s=0) between the state and the exact fields
/// at the state's time; the maximum over the four components.
double mms_state_error(const Fourier& f, const State& st);

}  // namespace clayer

#endif
