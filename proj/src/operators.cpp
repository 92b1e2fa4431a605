#include "clayer/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace clayer {

void dx(const Grid& g, const SpecField& in, SpecField& out) {
  if (out.nx != g.nx || out.ny != g.ny) out = SpecField(g);
  for (int m = 0; m < g.nx; ++m) {
    const std::complex<double> ixi(0.0, g.xi(m));
    for (int j = 0; j < g.ny; ++j) out.at(m, j) = ixi * in.at(m, j);
  }
}

void dy(const Grid& g, const SpecField& in, SpecField& out) {
  if (out.nx != g.nx || out.ny != g.ny) out = SpecField(g);
  const double h = g.hy();
  const int n = g.ny;
  for (int m = 0; m < g.nx; ++m) {
    out.at(m, 0) = (-3.0 * in.at(m, 0) + 4.0 * in.at(m, 1) - in.at(m, 2)) / (2.0 * h);
    for (int j = 1; j < n - 1; ++j)
      out.at(m, j) = (in.at(m, j + 1) - in.at(m, j - 1)) / (2.0 * h);
    out.at(m, n - 1) =
        (3.0 * in.at(m, n - 1) - 4.0 * in.at(m, n - 2) + in.at(m, n - 3)) / (2.0 * h);
  }
}

void dyy(const Grid& g, const SpecField& in, SpecField& out) {
  if (out.nx != g.nx || out.ny != g.ny) out = SpecField(g);
  const double h2 = g.hy() * g.hy();
  const int n = g.ny;
  for (int m = 0; m < g.nx; ++m) {
    for (int j = 1; j < n - 1; ++j)
      out.at(m, j) = (in.at(m, j + 1) - 2.0 * in.at(m, j) + in.at(m, j - 1)) / h2;
    if (n >= 4) {
      out.at(m, 0) =
          (2.0 * in.at(m, 0) - 5.0 * in.at(m, 1) + 4.0 * in.at(m, 2) - in.at(m, 3)) / h2;
      out.at(m, n - 1) = (2.0 * in.at(m, n - 1) - 5.0 * in.at(m, n - 2) +
                          4.0 * in.at(m, n - 3) - in.at(m, n - 4)) /
                         h2;
    } else {
      out.at(m, 0) = 0.0;
      out.at(m, n - 1) = 0.0;
    }
  }
}

void integrate_from_0(const Grid& g, const SpecField& in, SpecField& out) {
  if (out.nx != g.nx || out.ny != g.ny) out = SpecField(g);
  const double h = g.hy();
  for (int m = 0; m < g.nx; ++m) {
    std::complex<double> acc(0.0, 0.0);
    out.at(m, 0) = acc;
    for (int j = 1; j < g.ny; ++j) {
      acc += 0.5 * h * (in.at(m, j - 1) + in.at(m, j));
      out.at(m, j) = acc;
    }
  }
}

void dealias(const Grid& g, SpecField& io) {
  const int kmax = g.dealias_kmax();
  for (int m = 0; m < g.nx; ++m) {
    if (std::abs(g.mode_k(m)) > kmax)
      for (int j = 0; j < g.ny; ++j) io.at(m, j) = 0.0;
  }
}

void apply_multiplier(const Grid& g, double tau, SpecField& io) {
  if (tau > 0.0 && tau * (1.0 + g.xi_max()) > 700.0)
    throw std::overflow_error("apply_multiplier: amplification overflow, tau*(1+|xi_max|) > 700");
  for (int m = 0; m < g.nx; ++m) {
    const double w = std::exp(tau * (1.0 + std::abs(g.xi(m))));
    for (int j = 0; j < g.ny; ++j) io.at(m, j) *= w;
  }
}

void dealiased_product(const Fourier& f, const SpecField& a, const SpecField& b, SpecField& out) {
  const Grid& g = f.grid();
  PhysField pa(g), pb(g);
  f.backward(a, pa);
  f.backward(b, pb);
  for (size_t i = 0; i < pa.a.size(); ++i) pa.a[i] *= pb.a[i];
  f.forward(pa, out);
  dealias(g, out);
}

}  // namespace clayer
