#ifndef CLAYER_FIELD_HPP
#define CLAYER_FIELD_HPP

#include <cassert>
#include <complex>
#include <vector>

#include "clayer/grid.hpp"

namespace clayer {

// ============================================================================
// Value-semantic field containers. Spectral storage keeps the full complex
// spectrum (all n_x slots) so Hermitian symmetry is a testable invariant
// rather than a baked-in assumption.
// ============================================================================

/// Real collocation values, x-major: a[i*ny + j].
struct PhysField {
  int nx = 0, ny = 0;
  std::vector<double> a;

  PhysField() = default;
  explicit PhysField(const Grid& g) : nx(g.nx), ny(g.ny), a(static_cast<size_t>(g.nx) * g.ny, 0.0) {}

  double& at(int i, int j) {
    assert(i >= 0 && i < nx && j >= 0 && j < ny);
    return a[static_cast<size_t>(i) * ny + j];
  }
  double at(int i, int j) const {
    assert(i >= 0 && i < nx && j >= 0 && j < ny);
    return a[static_cast<size_t>(i) * ny + j];
  }
  void zero() { std::fill(a.begin(), a.end(), 0.0); }
};

/// Complex Fourier coefficients per y-node, slot-major: c[m*ny + j].
/// Slot m carries signed mode k = mode_k(m); for real fields the Hermitian
/// symmetry c(-k) = conj(c(k)) holds to roundoff.
struct SpecField {
  int nx = 0, ny = 0;
  std::vector<std::complex<double>> c;

  SpecField() = default;
  explicit SpecField(const Grid& g)
      : nx(g.nx), ny(g.ny), c(static_cast<size_t>(g.nx) * g.ny, std::complex<double>(0.0, 0.0)) {}

  std::complex<double>& at(int m, int j) {
    assert(m >= 0 && m < nx && j >= 0 && j < ny);
    return c[static_cast<size_t>(m) * ny + j];
  }
  std::complex<double> at(int m, int j) const {
    assert(m >= 0 && m < nx && j >= 0 && j < ny);
    return c[static_cast<size_t>(m) * ny + j];
  }
  void zero() { std::fill(c.begin(), c.end(), std::complex<double>(0.0, 0.0)); }

  /// y = y + alpha * x, elementwise.
  void axpy(double alpha, const SpecField& x) {
    assert(nx == x.nx && ny == x.ny);
    for (size_t i = 0; i < c.size(); ++i) c[i] += alpha * x.c[i];
  }

  void scale(double alpha) {
    for (auto& z : c) z *= alpha;
  }

  /// Zero the wall rows j=0 and j=ny-1 of every mode.
  void zero_wall_rows() {
    for (int m = 0; m < nx; ++m) {
      c[static_cast<size_t>(m) * ny] = 0.0;
      c[static_cast<size_t>(m) * ny + (ny - 1)] = 0.0;
    }
  }

  bool all_finite() const {
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }
};

}  // namespace clayer

#endif
