#ifndef CLAYER_GRID_HPP
#define CLAYER_GRID_HPP

#include <cassert>
#include <cmath>

namespace clayer {

// ============================================================================
// Mixed discretization: Fourier collocation in the periodic x direction,
// uniform finite-difference grid in the wall-normal y direction on [0, 1].
// ============================================================================

/// Discretization descriptor shared by all fields and operators.
/// x carries n_x collocation points on a periodic interval of length L_x;
/// y carries n_y nodes including both walls y=0 and y=1.
struct Grid {
  int nx;     ///< number of Fourier collocation points (even, >= 4)
  int ny;     ///< number of wall-normal nodes including both walls (>= 3)
  double Lx;  ///< periodic length of the x interval

  Grid(int nx_, int ny_, double Lx_) : nx(nx_), ny(ny_), Lx(Lx_) {
    assert(nx >= 4 && nx % 2 == 0);
    assert(ny >= 3);
    assert(Lx > 0.0);
  }

  /// Wall-normal mesh width.
  double hy() const { return 1.0 / (ny - 1); }

  /// y coordinate of node j.
  double y(int j) const { return j * hy(); }

  /// x coordinate of collocation point i.
  double x(int i) const { return Lx * i / nx; }

  /// Signed integer mode of storage slot m (FFT layout).
  /// Slots 0..nx/2 map to k = 0..nx/2, slots nx/2+1..nx-1 to k = m - nx,
  /// so k ranges over {-nx/2+1, ..., nx/2} with the Nyquist mode at +nx/2.
  int mode_k(int m) const {
    assert(m >= 0 && m < nx);
    return (m <= nx / 2) ? m : m - nx;
  }

  /// Storage slot of signed mode k.
  int slot(int k) const {
    assert(k > -nx / 2 && k <= nx / 2);
    return (k >= 0) ? k : k + nx;
  }

  /// Scaled wavenumber xi_k = 2 pi k / L_x of storage slot m.
  double xi(int m) const { return 2.0 * M_PI * mode_k(m) / Lx; }

  /// Largest |xi| representable on this grid (Nyquist mode).
  double xi_max() const { return 2.0 * M_PI * (nx / 2) / Lx; }

  /// Largest |k| kept by the 2/3 dealiasing rule.
  int dealias_kmax() const { return nx / 3; }

  bool same_as(const Grid& o) const {
    return nx == o.nx && ny == o.ny && Lx == o.Lx;
  }
};

}  // namespace clayer

#endif
