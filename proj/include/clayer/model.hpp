#ifndef CLAYER_MODEL_HPP
#define CLAYER_MODEL_HPP

#include <functional>

#include "clayer/fourier.hpp"
#include "clayer/params.hpp"
#include "clayer/state.hpp"

namespace clayer {

// ============================================================================
// The reduced two-field formulation: everything but (u, b1) and their time
// derivatives is reconstructed. v and b2 come from the divergence-free
// relations, e from integrating the induction time derivative, and the
// pressure from its wall-normal gradient with the top-wall gauge p(y=1)=0.
// ============================================================================

/// Fields reconstructed from the state.
struct DerivedFields {
  SpecField v;    ///< transverse velocity, -integrate_from_0(dx u)
  SpecField b2;   ///< transverse magnetic component, -integrate_from_0(dx b1)
  SpecField e;    ///< electric field, -integrate_from_0(b1t)
  SpecField p;    ///< pressure, gauge p(y=1) = 0
  SpecField dpx;  ///< tangential pressure gradient

  DerivedFields() = default;
  explicit DerivedFields(const Grid& g) : v(g), b2(g), e(g), p(g), dpx(g) {}
};

/// Time-dependent source terms added to the two evolution equations
/// (momentum and tangential induction), sampled in spectral space.
using Forcing = std::function<void(double t, SpecField& Fu, SpecField& Fb)>;

/// v = -integrate_from_0(dx u); v(y=0) = 0.
void reconstruct_v(const Grid& g, const SpecField& u, SpecField& v);

/// b2 = -integrate_from_0(dx b1); b2(y=0) = 0.
void reconstruct_b2(const Grid& g, const SpecField& b1, SpecField& b2);

/// e = -integrate_from_0(b1t); e(y=0) = 0.
void reconstruct_e(const Grid& g, const SpecField& b1t, SpecField& e);

/// Wall-normal pressure gradient integrand
/// q = H^2 (b1 b2 u - b1^2 v + b1 e), trilinears as two successive
/// dealiased binary products; then p(y) = int_0^y q - int_0^1 q and
/// dpx = dx(p).
void recover_pressure(const Fourier& f, const Params& prm, const State& st,
                      const DerivedFields& d, SpecField& p, SpecField& dpx);

/// Fill v, b2, e, p, dpx from the state.
void reconstruct_all(const Fourier& f, const Params& prm, const State& st, DerivedFields& d);

/// Right-hand side of the reduced system in first-order form:
///   du   = ut
///   dut  = (1/J) [ -ut - u dx u - v dy u + dyy u - dpx
///                  + H^2 (b1 b2 v - u b2^2 - b2 e) + Fu ]
///   db1  = b1t
///   db1t = (Pr_m/kappa) [ -b1t - u dx b1 - v dy b1 + (1/Pr_m) dyy b1
///                         + b1 dx u + b2 dy u + Fb ]
/// with the wall rows of dut, db1t zeroed.
struct Rhs {
  SpecField du, dut, db1, db1t;

  Rhs() = default;
  explicit Rhs(const Grid& g) : du(g), dut(g), db1(g), db1t(g) {}
};

/// Explicit (non-stiff) part of the two second-order equations:
///   Nu = (1/J)       [ -u dx u - v dy u - dpx + H^2(b1 b2 v - u b2^2 - b2 e) + Fu ]
///   Nb = (Pr_m/kappa)[ -u dx b1 - v dy b1 + b1 dx u + b2 dy u + Fb ]
/// The stiff remainder (damping and wall-normal diffusion) is handled by the
/// integrator. Wall rows zeroed. Fu/Fb are optional (may be null).
void nonlinear_terms(const Fourier& f, const Params& prm, const State& st,
                     const DerivedFields& d, const SpecField* Fu, const SpecField* Fb,
                     SpecField& Nu, SpecField& Nb);

/// Full first-order RHS; composes nonlinear_terms with the stiff terms.
/// Throws std::runtime_error when a NaN/Inf appears in any product.
void rhs(const Fourier& f, const Params& prm, const State& st, Rhs& out,
         const Forcing* forcing = nullptr);

/// Node-centered divergence residual max_{i, interior j} |dx a + dy b| in
/// physical space. Second-order small (about 5 h_y^2 times the field scale)
/// because dy lands on the trapezoid antiderivative.
double divergence_residual_centered(const Fourier& f, const SpecField& a, const SpecField& b);

/// Compatible (staggered midpoint) divergence residual
///   max |(b[j]-b[j-1])/h + (g[j]+g[j-1])/2|,  g = dx a,
/// which the trapezoid reconstruction annihilates to roundoff.
double divergence_residual_compatible(const Fourier& f, const SpecField& a, const SpecField& b);

}  // namespace clayer

#endif
