#ifndef CLAYER_NORMS_HPP
#define CLAYER_NORMS_HPP

#include "clayer/field.hpp"
#include "clayer/grid.hpp"

namespace clayer {

// ============================================================================
// Anisotropic H^{s,0} norms: H^s regularity in x through the (1+|xi|)^{2s}
// weight, plain L^2 in y through composite-trapezoid quadrature.
// ============================================================================

/// Composite-trapezoid quadrature of |c(m,.)|^2 over y for one slot.
double trapz_abs2(const Grid& g, const SpecField& f, int m);

/// sqrt( sum_m (1+|xi_m|)^{2s} * trapz_y |c(m,.)|^2 ).
double norm_Hs0(const Grid& g, const SpecField& f, double s);

/// Real H^{s,0} pairing: Re sum_m (1+|xi_m|)^{2s} trapz_y conj(f) g.
double inner_Hs0(const Grid& g, const SpecField& f, const SpecField& h, double s);

/// Physical-side L^2 with the x-mean weight 1/n_x:
/// sqrt( (1/n_x) sum_i trapz_y f(i,.)^2 ). Matches norm_Hs0(.,0) by Parseval.
double norm_phys_L2(const Grid& g, const PhysField& f);

}  // namespace clayer

#endif
