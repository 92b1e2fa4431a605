#include "clayer/model.hpp"

#include <cmath>
#include <stdexcept>

#include "clayer/norms.hpp"
#include "clayer/operators.hpp"

namespace clayer {

void reconstruct_v(const Grid& g, const SpecField& u, SpecField& v) {
  SpecField gx(g);
  dx(g, u, gx);
  integrate_from_0(g, gx, v);
  v.scale(-1.0);
}

void reconstruct_b2(const Grid& g, const SpecField& b1, SpecField& b2) {
  reconstruct_v(g, b1, b2);
}

void reconstruct_e(const Grid& g, const SpecField& b1t, SpecField& e) {
  integrate_from_0(g, b1t, e);
  e.scale(-1.0);
}

void recover_pressure(const Fourier& f, const Params& prm, const State& st,
                      const DerivedFields& d, SpecField& p, SpecField& dpx) {
  const Grid& g = f.grid();
  if (p.nx != g.nx || p.ny != g.ny) p = SpecField(g);
  if (dpx.nx != g.nx || dpx.ny != g.ny) dpx = SpecField(g);
  if (prm.H == 0.0) {
    p.zero();
    dpx.zero();
    return;
  }

  // q = H^2 (b1 b2 u - b1^2 v + b1 e), each trilinear as two dealiased
  // binary products sharing the b1*b1 and b1*b2 intermediates.
  SpecField b1b2(g), b1b1(g), t1(g), t2(g), t3(g);
  dealiased_product(f, st.b1, d.b2, b1b2);
  dealiased_product(f, st.b1, st.b1, b1b1);
  dealiased_product(f, b1b2, st.u, t1);
  dealiased_product(f, b1b1, d.v, t2);
  dealiased_product(f, st.b1, d.e, t3);

  SpecField q(g);
  for (size_t i = 0; i < q.c.size(); ++i)
    q.c[i] = prm.H * prm.H * (t1.c[i] - t2.c[i] + t3.c[i]);

  // p(y) = int_0^y q - int_0^1 q, the gauge p(y=1) = 0.
  SpecField F(g);
  integrate_from_0(g, q, F);
  for (int m = 0; m < g.nx; ++m) {
    const std::complex<double> top = F.at(m, g.ny - 1);
    for (int j = 0; j < g.ny; ++j) p.at(m, j) = F.at(m, j) - top;
  }
  dx(g, p, dpx);
}

void reconstruct_all(const Fourier& f, const Params& prm, const State& st, DerivedFields& d) {
  const Grid& g = f.grid();
  reconstruct_v(g, st.u, d.v);
  reconstruct_b2(g, st.b1, d.b2);
  reconstruct_e(g, st.b1t, d.e);
  recover_pressure(f, prm, st, d, d.p, d.dpx);
}

void nonlinear_terms(const Fourier& f, const Params& prm, const State& st,
                     const DerivedFields& d, const SpecField* Fu, const SpecField* Fb,
                     SpecField& Nu, SpecField& Nb) {
  const Grid& g = f.grid();
  if (Nu.nx != g.nx || Nu.ny != g.ny) Nu = SpecField(g);
  if (Nb.nx != g.nx || Nb.ny != g.ny) Nb = SpecField(g);

  SpecField dxu(g), dyu(g), dxb1(g), dyb1(g);
  dx(g, st.u, dxu);
  dy(g, st.u, dyu);
  dx(g, st.b1, dxb1);
  dy(g, st.b1, dyb1);

  // Convective and induction stretching products.
  SpecField udxu(g), vdyu(g), udxb1(g), vdyb1(g), b1dxu(g), b2dyu(g);
  dealiased_product(f, st.u, dxu, udxu);
  dealiased_product(f, d.v, dyu, vdyu);
  dealiased_product(f, st.u, dxb1, udxb1);
  dealiased_product(f, d.v, dyb1, vdyb1);
  dealiased_product(f, st.b1, dxu, b1dxu);
  dealiased_product(f, d.b2, dyu, b2dyu);

  // Lorentz block H^2 (b1 b2 v - u b2^2 - b2 e).
  SpecField lorentz(g);
  if (prm.H != 0.0) {
    SpecField b1b2(g), b2b2(g), t1(g), t2(g), t3(g);
    dealiased_product(f, st.b1, d.b2, b1b2);
    dealiased_product(f, d.b2, d.b2, b2b2);
    dealiased_product(f, b1b2, d.v, t1);
    dealiased_product(f, st.u, b2b2, t2);
    dealiased_product(f, d.b2, d.e, t3);
    for (size_t i = 0; i < lorentz.c.size(); ++i)
      lorentz.c[i] = prm.H * prm.H * (t1.c[i] - t2.c[i] - t3.c[i]);
  }

  const double invJ = 1.0 / prm.J;
  const double PrK = prm.Pr_m / prm.kappa;
  for (size_t i = 0; i < Nu.c.size(); ++i) {
    std::complex<double> au = -udxu.c[i] - vdyu.c[i] - d.dpx.c[i] + lorentz.c[i];
    if (Fu) au += Fu->c[i];
    Nu.c[i] = invJ * au;

    std::complex<double> ab = -udxb1.c[i] - vdyb1.c[i] + b1dxu.c[i] + b2dyu.c[i];
    if (Fb) ab += Fb->c[i];
    Nb.c[i] = PrK * ab;
  }
  Nu.zero_wall_rows();
  Nb.zero_wall_rows();
  if (!Nu.all_finite() || !Nb.all_finite())
    throw std::runtime_error("rhs: NaN/Inf in nonlinear products");
}

void rhs(const Fourier& f, const Params& prm, const State& st, Rhs& out, const Forcing* forcing) {
  const Grid& g = f.grid();
  DerivedFields d(g);
  reconstruct_all(f, prm, st, d);

  SpecField Fu, Fb;
  const SpecField *pFu = nullptr, *pFb = nullptr;
  if (forcing) {
    Fu = SpecField(g);
    Fb = SpecField(g);
    (*forcing)(st.t, Fu, Fb);
    pFu = &Fu;
    pFb = &Fb;
  }

  SpecField Nu(g), Nb(g);
  nonlinear_terms(f, prm, st, d, pFu, pFb, Nu, Nb);

  SpecField lapu(g), lapb(g);
  dyy(g, st.u, lapu);
  dyy(g, st.b1, lapb);

  const double invJ = 1.0 / prm.J;
  const double PrK = prm.Pr_m / prm.kappa;
  out.du = st.ut;
  out.db1 = st.b1t;
  if (out.dut.nx != g.nx || out.dut.ny != g.ny) out.dut = SpecField(g);
  if (out.db1t.nx != g.nx || out.db1t.ny != g.ny) out.db1t = SpecField(g);
  for (size_t i = 0; i < out.dut.c.size(); ++i) {
    out.dut.c[i] = invJ * (-st.ut.c[i] + lapu.c[i]) + Nu.c[i];
    out.db1t.c[i] = PrK * (-st.b1t.c[i] + lapb.c[i] / prm.Pr_m) + Nb.c[i];
  }
  out.dut.zero_wall_rows();
  out.db1t.zero_wall_rows();
}

double divergence_residual_centered(const Fourier& f, const SpecField& a, const SpecField& b) {
  const Grid& g = f.grid();
  SpecField ga(g), gb(g);
  dx(g, a, ga);
  dy(g, b, gb);
  PhysField pa(g), pb(g);
  f.backward(ga, pa);
  f.backward(gb, pb);
  double worst = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 1; j < g.ny - 1; ++j) worst = std::max(worst, std::abs(pa.at(i, j) + pb.at(i, j)));
  return worst;
}

double divergence_residual_compatible(const Fourier& f, const SpecField& a, const SpecField& b) {
  const Grid& g = f.grid();
  SpecField ga(g);
  dx(g, a, ga);
  PhysField pg(g), pb(g);
  f.backward(ga, pg);
  f.backward(b, pb);
  const double h = g.hy();
  double worst = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 1; j < g.ny; ++j) {
      const double div = (pb.at(i, j) - pb.at(i, j - 1)) / h + 0.5 * (pg.at(i, j) + pg.at(i, j - 1));
      worst = std::max(worst, std::abs(div));
    }
  return worst;
}

}  // namespace clayer
