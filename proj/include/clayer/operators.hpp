#ifndef CLAYER_OPERATORS_HPP
#define CLAYER_OPERATORS_HPP

#include "clayer/field.hpp"
#include "clayer/fourier.hpp"
#include "clayer/grid.hpp"

namespace clayer {

// ============================================================================
// Per-mode discrete calculus: exact spectral d/dx, second-order finite
// differences and composite-trapezoid quadrature in y, the analytic-norm
// Fourier multiplier, and the 2/3 dealiasing projector.
// ============================================================================

/// d/dx as the exact i*xi_k multiplier on every slot (Nyquist included).
void dx(const Grid& g, const SpecField& in, SpecField& out);

/// d/dy per mode: central second order inside, one-sided second order at
/// both walls.
void dy(const Grid& g, const SpecField& in, SpecField& out);

/// d2/dy2 per mode: 3-point stencil inside; one-sided 4-point second-order
/// stencils fill the wall rows (the integrators never read them, Dirichlet).
void dyy(const Grid& g, const SpecField& in, SpecField& out);

/// Cumulative composite-trapezoid antiderivative from y=0, per mode.
void integrate_from_0(const Grid& g, const SpecField& in, SpecField& out);

/// Zero every slot with |k| > n_x/3 (2/3 rule).
void dealias(const Grid& g, SpecField& io);

/// Multiply slot k by e^{tau (1 + |xi_k|)}.
/// Throws std::overflow_error when tau*(1+|xi_max|) > 700 and tau > 0.
void apply_multiplier(const Grid& g, double tau, SpecField& io);

/// out = dealias(forward(backward(a) * backward(b))): the pseudo-spectral
/// product with 2/3-rule hygiene. Inputs are expected dealiased.
void dealiased_product(const Fourier& f, const SpecField& a, const SpecField& b, SpecField& out);

}  // namespace clayer

#endif
