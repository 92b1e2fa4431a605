#include "clayer/norms.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace clayer {

double trapz_abs2(const Grid& g, const SpecField& f, int m) {
  const double h = g.hy();
  double acc = 0.5 * (std::norm(f.at(m, 0)) + std::norm(f.at(m, g.ny - 1)));
  for (int j = 1; j < g.ny - 1; ++j) acc += std::norm(f.at(m, j));
  return acc * h;
}

double norm_Hs0(const Grid& g, const SpecField& f, double s) {
  double acc = 0.0;
  for (int m = 0; m < g.nx; ++m) {
    const double w = std::pow(1.0 + std::abs(g.xi(m)), 2.0 * s);
    acc += w * trapz_abs2(g, f, m);
  }
  return std::sqrt(acc);
}

double inner_Hs0(const Grid& g, const SpecField& f, const SpecField& h, double s) {
  if (f.nx != h.nx || f.ny != h.ny) throw std::invalid_argument("inner_Hs0: grid mismatch");
  const double hh = g.hy();
  double acc = 0.0;
  for (int m = 0; m < g.nx; ++m) {
    const double w = std::pow(1.0 + std::abs(g.xi(m)), 2.0 * s);
    double row = 0.5 * ((std::conj(f.at(m, 0)) * h.at(m, 0)).real() +
                        (std::conj(f.at(m, g.ny - 1)) * h.at(m, g.ny - 1)).real());
    for (int j = 1; j < g.ny - 1; ++j) row += (std::conj(f.at(m, j)) * h.at(m, j)).real();
    acc += w * row * hh;
  }
  return acc;
}

double norm_phys_L2(const Grid& g, const PhysField& f) {
  const double h = g.hy();
  double acc = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    double row = 0.5 * (f.at(i, 0) * f.at(i, 0) + f.at(i, g.ny - 1) * f.at(i, g.ny - 1));
    for (int j = 1; j < g.ny - 1; ++j) row += f.at(i, j) * f.at(i, j);
    acc += row * h;
  }
  return std::sqrt(acc / g.nx);
}

}  // namespace clayer
