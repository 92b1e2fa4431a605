#include "clayer/manufactured.hpp"

#include <cmath>
#include <stdexcept>

#include "clayer/norms.hpp"

namespace clayer {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_two_pi(const Grid& g) {
  if (std::abs(g.Lx - 2.0 * kPi) > 1e-9) {
    throw std::invalid_argument(
        "manufactured solution requires L_x = 2*pi, got L_x = " +
        std::to_string(g.Lx));
  }
}

// Building blocks shared by every closed form below.
double T(double t) { return std::exp(-t); }
double S(double x) { return std::sin(x); }
double C(double x) { return std::cos(x); }
double P(double y) { return std::sin(kPi * y); }
double Q(double y) { return std::cos(kPi * y); }
double W(double y) { return (1.0 - Q(y)) / kPi; }

// Antiderivatives entering the closed-form pressure, shifted so that both
// vanish at y = 1 (the pressure gauge).
double a1(double y) {
  double s = std::sin(kPi * y);
  return 0.5 * y - std::sin(2.0 * kPi * y) / (4.0 * kPi) -
         s * s * s / (3.0 * kPi) - 0.5;
}
double a2(double y) {
  double s = std::sin(kPi * y);
  return (1.0 - std::cos(kPi * y)) / kPi - s * s / (2.0 * kPi) - 2.0 / kPi;
}

}  // namespace

FieldBundle mms_bundle(const Params& prm) {
  const double H2 = prm.H * prm.H;
  FieldBundle b;

  b.u.f = [](double t, double x, double y) { return T(t) * S(x) * P(y); };
  b.u.ft = [](double t, double x, double y) { return -T(t) * S(x) * P(y); };
  b.u.fx = [](double t, double x, double y) { return T(t) * C(x) * P(y); };
  b.u.fy = [](double t, double x, double y) {
    return kPi * T(t) * S(x) * Q(y);
  };
  b.u.ftt = [](double t, double x, double y) { return T(t) * S(x) * P(y); };
  b.u.fxx = [](double t, double x, double y) { return -T(t) * S(x) * P(y); };
  b.u.fyy = [](double t, double x, double y) {
    return -kPi * kPi * T(t) * S(x) * P(y);
  };

  b.v.f = [](double t, double x, double y) { return -T(t) * C(x) * W(y); };
  b.v.ft = [](double t, double x, double y) { return T(t) * C(x) * W(y); };
  b.v.fx = [](double t, double x, double y) { return T(t) * S(x) * W(y); };
  b.v.fy = [](double t, double x, double y) { return -T(t) * C(x) * P(y); };
  b.v.ftt = [](double t, double x, double y) { return -T(t) * C(x) * W(y); };
  b.v.fxx = [](double t, double x, double y) { return T(t) * C(x) * W(y); };
  b.v.fyy = [](double t, double x, double y) {
    return -kPi * T(t) * C(x) * Q(y);
  };

  b.b1.f = [](double t, double x, double y) { return T(t) * C(x) * P(y); };
  b.b1.ft = [](double t, double x, double y) { return -T(t) * C(x) * P(y); };
  b.b1.fx = [](double t, double x, double y) { return -T(t) * S(x) * P(y); };
  b.b1.fy = [](double t, double x, double y) {
    return kPi * T(t) * C(x) * Q(y);
  };
  b.b1.ftt = [](double t, double x, double y) { return T(t) * C(x) * P(y); };
  b.b1.fxx = [](double t, double x, double y) { return -T(t) * C(x) * P(y); };
  b.b1.fyy = [](double t, double x, double y) {
    return -kPi * kPi * T(t) * C(x) * P(y);
  };

  b.b2.f = [](double t, double x, double y) { return T(t) * S(x) * W(y); };
  b.b2.ft = [](double t, double x, double y) { return -T(t) * S(x) * W(y); };
  b.b2.fx = [](double t, double x, double y) { return T(t) * C(x) * W(y); };
  b.b2.fy = [](double t, double x, double y) { return T(t) * S(x) * P(y); };
  b.b2.ftt = [](double t, double x, double y) { return T(t) * S(x) * W(y); };
  b.b2.fxx = [](double t, double x, double y) { return -T(t) * S(x) * W(y); };
  b.b2.fyy = [](double t, double x, double y) {
    return kPi * T(t) * S(x) * Q(y);
  };

  b.e.f = [](double t, double x, double y) { return T(t) * C(x) * W(y); };
  b.e.ft = [](double t, double x, double y) { return -T(t) * C(x) * W(y); };
  b.e.fx = [](double t, double x, double y) { return -T(t) * S(x) * W(y); };
  b.e.fy = [](double t, double x, double y) { return T(t) * C(x) * P(y); };
  b.e.ftt = [](double t, double x, double y) { return T(t) * C(x) * W(y); };
  b.e.fxx = [](double t, double x, double y) { return -T(t) * C(x) * W(y); };
  b.e.fyy = [](double t, double x, double y) {
    return kPi * T(t) * C(x) * Q(y);
  };

  b.p.f = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t), c = C(x);
    return (H2 / kPi) * (t3 * c * a1(y) + t2 * c * c * a2(y));
  };
  b.p.ft = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t), c = C(x);
    return (H2 / kPi) * (-3.0 * t3 * c * a1(y) - 2.0 * t2 * c * c * a2(y));
  };
  b.p.fx = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t);
    return -(H2 / kPi) * S(x) * (t3 * a1(y) + 2.0 * t2 * C(x) * a2(y));
  };
  b.p.fy = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t), c = C(x);
    double oq = 1.0 - Q(y), p = P(y);
    return (H2 / kPi) * oq * (t3 * c * p * p + t2 * c * c * p);
  };
  b.p.ftt = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t), c = C(x);
    return (H2 / kPi) * (9.0 * t3 * c * a1(y) + 4.0 * t2 * c * c * a2(y));
  };
  b.p.fxx = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t), c = C(x), s = S(x);
    return -(H2 / kPi) * (t3 * c * a1(y) + 2.0 * t2 * (c * c - s * s) * a2(y));
  };
  b.p.fyy = [H2](double t, double x, double y) {
    double t3 = T(t) * T(t) * T(t), t2 = T(t) * T(t), c = C(x);
    double p = P(y), q = Q(y), oq = 1.0 - q;
    return H2 * (t3 * c * (2.0 * p * q * oq + p * p * p) +
                 t2 * c * c * (q * oq + p * p));
  };

  return b;
}

double mms_Fu(const Params& prm, double t, double x, double y) {
  const double H2 = prm.H * prm.H;
  double tt = T(t), s = S(x), c = C(x), p = P(y), q = Q(y);
  double px = -(H2 / kPi) * s *
              (tt * tt * tt * a1(y) + 2.0 * tt * tt * c * a2(y));
  double oq = 1.0 - q;
  return (prm.J - 1.0 + kPi * kPi) * tt * s * p + tt * tt * s * c * p * p -
         tt * tt * s * c * q * oq + px +
         (H2 / (kPi * kPi)) * oq * oq * (tt * tt * tt * s * p + tt * tt * s * c);
}

double mms_Fb(const Params& prm, double t, double x, double y) {
  double tt = T(t), c = C(x), p = P(y), q = Q(y);
  return ((prm.kappa + kPi * kPi) / prm.Pr_m - 1.0) * tt * c * p -
         tt * tt * p * p - tt * tt * q * (1.0 - q);
}

double mms_Fb2(const Params& prm, double t, double x, double y) {
  double tt = T(t), s = S(x), q = Q(y);
  return (prm.kappa / prm.Pr_m - 1.0) * tt * s * W(y) -
         (kPi / prm.Pr_m) * tt * s * q;
}

State mms_state(const Fourier& f, double t) {
  const Grid& g = f.grid();
  require_two_pi(g);
  State st(g);
  st.t = t;
  PhysField pu(g), put(g), pb1(g), pb1t(g);
  for (int i = 0; i < g.nx; ++i) {
    double x = g.x(i);
    for (int j = 0; j < g.ny; ++j) {
      double y = g.y(j);
      double val_u = T(t) * S(x) * P(y);
      double val_b = T(t) * C(x) * P(y);
      pu.at(i, j) = val_u;
      put.at(i, j) = -val_u;
      pb1.at(i, j) = val_b;
      pb1t.at(i, j) = -val_b;
    }
  }
  f.forward(pu, st.u);
  f.forward(put, st.ut);
  f.forward(pb1, st.b1);
  f.forward(pb1t, st.b1t);
  st.enforce_dirichlet();
  return st;
}

Forcing mms_forcing_continuous(const Fourier& f, const Params& prm) {
  const Fourier* fp = &f;
  Params p = prm;
  require_two_pi(f.grid());
  return [fp, p](double t, SpecField& Fu, SpecField& Fb) {
    const Grid& g = fp->grid();
    PhysField pfu(g), pfb(g);
    for (int i = 0; i < g.nx; ++i) {
      double x = g.x(i);
      for (int j = 0; j < g.ny; ++j) {
        double y = g.y(j);
        pfu.at(i, j) = mms_Fu(p, t, x, y);
        pfb.at(i, j) = mms_Fb(p, t, x, y);
      }
    }
    fp->forward(pfu, Fu);
    fp->forward(pfb, Fb);
  };
}

Forcing mms_forcing_discrete(const Fourier& f, const Params& prm) {
  const Fourier* fp = &f;
  Params p = prm;
  require_two_pi(f.grid());
  return [fp, p](double t, SpecField& Fu, SpecField& Fb) {
    const Grid& g = fp->grid();
    State ex = mms_state(*fp, t);
    Rhs r(g);
    rhs(*fp, p, ex, r, nullptr);
    // Exact second time derivatives equal the fields themselves here.
    SpecField utt = ex.u;
    SpecField b1tt = ex.b1;
    Fu = utt;
    Fb = b1tt;
    const double cb = p.kappa / p.Pr_m;
    for (int m = 0; m < g.nx; ++m) {
      for (int j = 0; j < g.ny; ++j) {
        Fu.at(m, j) = p.J * (utt.at(m, j) - r.dut.at(m, j));
        Fb.at(m, j) = cb * (b1tt.at(m, j) - r.db1t.at(m, j));
      }
    }
  };
}

double mms_state_error(const Fourier& f, const State& st) {
  const Grid& g = f.grid();
  State ex = mms_state(f, st.t);
  SpecField d = st.u;
  double worst = 0.0;
  auto acc = [&](const SpecField& a, const SpecField& b) {
    for (std::size_t i = 0; i < d.c.size(); ++i) d.c[i] = a.c[i] - b.c[i];
    double e = norm_Hs0(g, d, 0.0);
    if (e > worst) worst = e;
  };
  acc(st.u, ex.u);
  acc(st.ut, ex.ut);
  acc(st.b1, ex.b1);
  acc(st.b1t, ex.b1t);
  return worst;
}

}  // namespace clayer
