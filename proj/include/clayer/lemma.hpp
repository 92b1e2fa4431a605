#ifndef CLAYER_LEMMA_HPP
#define CLAYER_LEMMA_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "clayer/fourier.hpp"
#include "clayer/params.hpp"
#include "clayer/state.hpp"

namespace clayer {

// ============================================================================
// Numerical verification of the product law in weighted anisotropic norms,
// the elementary power-triangle inequality behind it, the Poincare step,
// and the norm-to-energy comparison bounds, all against concrete fields.
// ============================================================================

/// One randomized product-law case, fully determined by (seed, sigma1,
/// sigma2, tau) on a fixed grid.
struct LemmaCaseResult {
  std::uint64_t seed = 0;
  double sigma1 = 0.0, sigma2 = 0.0, tau = 0.0;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

/// Deterministic band-limited random real field. Modes |k| <= kband carry
/// y-profiles that are polynomials of degree <= 3; zero_trace_y0 multiplies
/// every profile by y so the trace at y=0 vanishes exactly.
SpecField random_band_field(const Grid& g, std::uint64_t seed, int kband, bool zero_trace_y0,
                            double amplitude = 1.0);

/// Random four-component state with homogeneous Dirichlet rows, for the
/// randomized inequality checks.
State random_state(const Grid& g, std::uint64_t seed, double amplitude = 1.0);

/// Check
///   ||(f g)_eta||_{H^{sigma1,0}} <= 2^{sigma1-1/2}/sqrt(sigma2-1/2)
///     * ( ||dy f_eta||_{H^{sigma1,0}} ||g_eta||_{H^{sigma2,0}}
///       + ||dy f_eta||_{H^{sigma2,0}} ||g_eta||_{H^{sigma1,0}} )
/// for given fields; the product is formed on a doubled-x grid (exact
/// convolution for band-limited inputs) and restricted back.
/// Requires f(y=0) = 0 and 1/2 < sigma2 <= sigma1.
LemmaCaseResult product_law_check(const Fourier& f4, const SpecField& f, const SpecField& g,
                                  double sigma1, double sigma2, double tau);

/// Randomized case built from the seed; kband = n_x/3 by default.
LemmaCaseResult product_law_case(const Grid& g, std::uint64_t seed, double sigma1, double sigma2,
                                 double tau);

/// Worst ratio LHS/RHS of
///   (1+|xi|)^{2 sigma1} <= 2^{2 sigma1 - 1} [ (1+|xi-eta|)^{2 sigma1}
///                                            + (1+|eta|)^{2 sigma1} ]
/// over the given frequency grids. Pure arithmetic, must be <= 1.
double triangle_power_check(double sigma1, const std::vector<double>& xi_grid,
                            const std::vector<double>& eta_grid);

/// Poincare comparison for zero trace at y=0: returns (lhs, rhs) with
/// lhs = ||f||_{H^{s,0}}, rhs = ||dy f||_{H^{s,0}}.
std::pair<double, double> poincare_check(const Grid& g, const SpecField& f, double s);

/// Norm-to-energy comparison on one state:
///   ||u_eta||_{H^{s,0}} <= 2 sqrt(Es), same for b1, and
///   ||u_eta||_{H^{s+1/2,0}} <= 2 sqrt(Ds_half), same for b1.
struct EnergyBoundResult {
  double worst_margin = 0.0;  ///< min over the four inequalities of rhs - lhs
  bool passes = false;
};
EnergyBoundResult energy_bound_check(const Fourier& f, const Params& prm, const State& st);

}  // namespace clayer

#endif
