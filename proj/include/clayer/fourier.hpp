#ifndef CLAYER_FOURIER_HPP
#define CLAYER_FOURIER_HPP

#include "clayer/field.hpp"
#include "clayer/grid.hpp"

namespace clayer {

// ============================================================================
// Batched 1-D transforms along x for every y-node at once. The forward
// transform carries the 1/n_x normalization so the k=0 coefficient equals
// the x-mean; the backward transform is the plain synthesis sum, making the
// round trip exact to roundoff.
// ============================================================================

/// Transform engine bound to one grid. Plans are cached process-wide per
/// (n_x, n_y), so constructing transformers is cheap.
class Fourier {
 public:
  explicit Fourier(const Grid& g);

  /// Analysis: real collocation values -> complex coefficients (1/n_x scale).
  void forward(const PhysField& in, SpecField& out) const;

  /// Synthesis: complex coefficients -> real collocation values.
  /// The imaginary residue of a Hermitian spectrum (roundoff) is discarded.
  void backward(const SpecField& in, PhysField& out) const;

  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
};

}  // namespace clayer

#endif
