#include "clayer/rescaling.hpp"

#include <cassert>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace clayer {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ----------------------------------------------------------------------------
// Lifting layer fields to bulk variables
// ----------------------------------------------------------------------------

/// Scale factors of the lift. Layer coordinates are ct, cx, cy times the bulk
/// ones; each bulk field is amp times the layer field at the mapped point.
struct LiftFactors {
  double ct = 1.0, cx = 1.0, cy = 1.0;
  double au = 1.0, av = 1.0, ab1 = 1.0, ab2 = 1.0, ae = 1.0, ap = 1.0;
};

LiftFactors lift_factors(Regime regime, double small) {
  assert(small > 0.0);
  LiftFactors lf;
  if (regime == Regime::prandtl) {
    double eps = small;
    lf.ct = 1.0;
    lf.cx = 1.0;
    lf.cy = 1.0 / eps;
    lf.au = 1.0;
    lf.av = eps;
    lf.ab1 = 1.0;
    lf.ab2 = eps;
    lf.ae = eps;
    lf.ap = 1.0;
  } else {
    double del = small;
    double rt = std::sqrt(del);
    lf.ct = 1.0 / del;
    lf.cx = 1.0 / rt;
    lf.cy = 1.0 / del;
    lf.au = 1.0 / rt;
    lf.av = 1.0;
    lf.ab1 = 1.0 / rt;
    lf.ab2 = 1.0;
    lf.ae = 1.0 / rt;
    lf.ap = 1.0 / del;
  }
  return lf;
}

/// One lifted scalar: bulk value and bulk partial derivatives by chain rule.
struct Lifted {
  const ScalarClosedForm* s = nullptr;
  double amp = 1.0, ct = 1.0, cx = 1.0, cy = 1.0;

  double f(double t, double x, double y) const {
    return amp * s->f(ct * t, cx * x, cy * y);
  }
  double ft(double t, double x, double y) const {
    return amp * ct * s->ft(ct * t, cx * x, cy * y);
  }
  double fx(double t, double x, double y) const {
    return amp * cx * s->fx(ct * t, cx * x, cy * y);
  }
  double fy(double t, double x, double y) const {
    return amp * cy * s->fy(ct * t, cx * x, cy * y);
  }
  double ftt(double t, double x, double y) const {
    return amp * ct * ct * s->ftt(ct * t, cx * x, cy * y);
  }
  double fxx(double t, double x, double y) const {
    return amp * cx * cx * s->fxx(ct * t, cx * x, cy * y);
  }
  double fyy(double t, double x, double y) const {
    return amp * cy * cy * s->fyy(ct * t, cx * x, cy * y);
  }
};

struct LiftedBundle {
  Lifted u, v, b1, b2, e, p;
};

LiftedBundle lift(Regime regime, const FieldBundle& b, double small) {
  LiftFactors lf = lift_factors(regime, small);
  LiftedBundle L;
  L.u = {&b.u, lf.au, lf.ct, lf.cx, lf.cy};
  L.v = {&b.v, lf.av, lf.ct, lf.cx, lf.cy};
  L.b1 = {&b.b1, lf.ab1, lf.ct, lf.cx, lf.cy};
  L.b2 = {&b.b2, lf.ab2, lf.ct, lf.cx, lf.cy};
  L.e = {&b.e, lf.ae, lf.ct, lf.cx, lf.cy};
  L.p = {&b.p, lf.ap, lf.ct, lf.cx, lf.cy};
  return L;
}

// ----------------------------------------------------------------------------
// Sample points
// ----------------------------------------------------------------------------

struct Pt {
  double t, x, y;
};

std::vector<Pt> layer_points() {
  std::vector<Pt> pts;
  for (double t : {0.3, 0.7})
    for (double x : {0.5, 2.1, 4.0})
      for (double y : {0.2, 0.5, 0.9}) pts.push_back({t, x, y});
  return pts;
}

/// Bulk coordinates of a layer sample point under the lift.
Pt to_bulk(Regime regime, double small, const Pt& p) {
  LiftFactors lf = lift_factors(regime, small);
  return {p.t / lf.ct, p.x / lf.cx, p.y / lf.cy};
}

// ----------------------------------------------------------------------------
// Bulk term catalog
// ----------------------------------------------------------------------------

/// One bulk term, with its residual sign: the original expression evaluated
/// from lifted fields, the displayed coefficient as a function of the small
/// parameter, and the displayed layer expression.
struct TermSpec {
  int eq;
  const char* label;
  bool printed;
  double claimed;
  std::function<double(const LiftedBundle&, const BulkParams&, const Params&,
                       double, double, double)>
      original;
  std::function<double(const BulkParams&, const Params&, double)> coeff;
  std::function<double(const FieldBundle&, const Params&, double, double,
                       double)>
      bl;
};

double dotUB(const LiftedBundle& L, double t, double x, double y) {
  return L.u.f(t, x, y) * L.b1.f(t, x, y) + L.v.f(t, x, y) * L.b2.f(t, x, y);
}
double normB2(const LiftedBundle& L, double t, double x, double y) {
  double b1 = L.b1.f(t, x, y), b2 = L.b2.f(t, x, y);
  return b1 * b1 + b2 * b2;
}

/// Cattaneo prefactor of the bulk momentum equations.
double cat_u(const BulkParams& bp) { return bp.U0c2 * bp.Jscript / bp.Re; }
/// Cattaneo prefactor of the bulk induction equations.
double cat_b(const BulkParams& bp) { return bp.U0c2 / bp.Re_m; }

std::vector<TermSpec> prandtl_terms() {
  std::vector<TermSpec> T;
  auto P2 = [](double s) { return s * s; };
  auto P3 = [](double s) { return s * s * s; };
  auto P4 = [](double s) { return s * s * s * s; };

  // Equation 1: tangential momentum.
  T.push_back({1, "J dtt u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_u(bp) * L.u.ftt(t, x, y);
               },
               [](const BulkParams&, const Params& p, double) { return p.J; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.ftt(t, x, y); }});
  T.push_back({1, "dt u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.u.ft(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.ft(t, x, y); }});
  T.push_back({1, "u dx u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return L.u.f(t, x, y) * L.u.fx(t, x, y);
               },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.f(t, x, y) * b.u.fx(t, x, y); }});
  T.push_back({1, "v dy u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return L.v.f(t, x, y) * L.u.fy(t, x, y);
               },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.f(t, x, y) * b.u.fy(t, x, y); }});
  T.push_back({1, "-eps^2 dxx u", true, 2.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.u.fxx(t, x, y) / bp.Re;
               },
               [P2](const BulkParams&, const Params&, double s) {
                 return -P2(s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.fxx(t, x, y); }});
  T.push_back({1, "-dyy u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.u.fyy(t, x, y) / bp.Re;
               },
               [](const BulkParams&, const Params&, double) { return -1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.fyy(t, x, y); }});
  T.push_back({1, "dx p", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.p.fx(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.p.fx(t, x, y); }});
  T.push_back(
      {1, "-Ha^2 eps^4 (b1 b2 v - u b2^2 - b2 e)", true, 0.0,
       [](const LiftedBundle& L, const BulkParams& bp, const Params&, double t,
          double x, double y) {
         double lor = L.b1.f(t, x, y) * dotUB(L, t, x, y) -
                      L.u.f(t, x, y) * normB2(L, t, x, y) -
                      L.e.f(t, x, y) * L.b2.f(t, x, y);
         return -(bp.Ha * bp.Ha / bp.Re) * lor;
       },
       [P4](const BulkParams& bp, const Params&, double s) {
         return -bp.Ha * bp.Ha * P4(s);
       },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         double u = b.u.f(t, x, y), v = b.v.f(t, x, y);
         double b1 = b.b1.f(t, x, y), b2 = b.b2.f(t, x, y);
         double e = b.e.f(t, x, y);
         return b1 * b2 * v - u * b2 * b2 - b2 * e;
       }});

  // Equation 2: normal momentum.
  T.push_back(
      {2, "eps (dt v + u dx v + v dy v)", true, 1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.v.ft(t, x, y) + L.u.f(t, x, y) * L.v.fx(t, x, y) +
                L.v.f(t, x, y) * L.v.fy(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.v.ft(t, x, y) + b.u.f(t, x, y) * b.v.fx(t, x, y) +
                b.v.f(t, x, y) * b.v.fy(t, x, y);
       }});
  T.push_back({2, "-eps^3 dxx v", true, 3.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.v.fxx(t, x, y) / bp.Re;
               },
               [P3](const BulkParams&, const Params&, double s) {
                 return -P3(s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.fxx(t, x, y); }});
  T.push_back({2, "eps^-1 dy p", true, -1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.p.fy(t, x, y); },
               [](const BulkParams&, const Params&, double s) {
                 return 1.0 / s;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.p.fy(t, x, y); }});
  T.push_back(
      {2, "-Ha^2 eps^3 (b2 b1 u - b1^2 v + b1 e)", true, -1.0,
       [](const LiftedBundle& L, const BulkParams& bp, const Params&, double t,
          double x, double y) {
         double lor = L.b2.f(t, x, y) * dotUB(L, t, x, y) -
                      L.v.f(t, x, y) * normB2(L, t, x, y) +
                      L.e.f(t, x, y) * L.b1.f(t, x, y);
         return -(bp.Ha * bp.Ha / bp.Re) * lor;
       },
       [P3](const BulkParams& bp, const Params&, double s) {
         return -bp.Ha * bp.Ha * P3(s);
       },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         double u = b.u.f(t, x, y), v = b.v.f(t, x, y);
         double b1 = b.b1.f(t, x, y), b2 = b.b2.f(t, x, y);
         double e = b.e.f(t, x, y);
         return b2 * b1 * u - b1 * b1 * v + b1 * e;
       }});
  T.push_back({2, "J eps dtt v", false, 1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_u(bp) * L.v.ftt(t, x, y);
               },
               [](const BulkParams&, const Params& p, double s) {
                 return p.J * s;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.ftt(t, x, y); }});
  T.push_back({2, "-eps dyy v", false, 1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.v.fyy(t, x, y) / bp.Re;
               },
               [](const BulkParams&, const Params&, double s) { return -s; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.fyy(t, x, y); }});

  // Equation 3: incompressibility.
  T.push_back({3, "dx u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.u.fx(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.fx(t, x, y); }});
  T.push_back({3, "dy v", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.v.fy(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.fy(t, x, y); }});

  // Equation 4: tangential induction.
  T.push_back({4, "(kappa/Pr_m) dtt b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_b(bp) * L.b1.ftt(t, x, y);
               },
               [](const BulkParams&, const Params& p, double) {
                 return p.kappa / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.ftt(t, x, y); }});
  T.push_back({4, "dt b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b1.ft(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.ft(t, x, y); }});
  T.push_back({4, "-(eps^2/Pr_m) dxx b1", true, 2.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b1.fxx(t, x, y) / bp.Re_m;
               },
               [P2](const BulkParams&, const Params& p, double s) {
                 return -P2(s) / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.fxx(t, x, y); }});
  T.push_back({4, "-(1/Pr_m) dyy b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b1.fyy(t, x, y) / bp.Re_m;
               },
               [](const BulkParams&, const Params& p, double) {
                 return -1.0 / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.fyy(t, x, y); }});
  T.push_back({4, "-b1 dx u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return -L.b1.f(t, x, y) * L.u.fx(t, x, y);
               },
               [](const BulkParams&, const Params&, double) { return -1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.f(t, x, y) * b.u.fx(t, x, y); }});
  T.push_back({4, "-b2 dy u", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return -L.b2.f(t, x, y) * L.u.fy(t, x, y);
               },
               [](const BulkParams&, const Params&, double) { return -1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.f(t, x, y) * b.u.fy(t, x, y); }});
  T.push_back({4, "u dx b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return L.u.f(t, x, y) * L.b1.fx(t, x, y);
               },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.f(t, x, y) * b.b1.fx(t, x, y); }});
  T.push_back({4, "v dy b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return L.v.f(t, x, y) * L.b1.fy(t, x, y);
               },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.f(t, x, y) * b.b1.fy(t, x, y); }});

  // Equation 5: normal induction.
  T.push_back({5, "eps (kappa/Pr_m) dtt b2", true, 1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_b(bp) * L.b2.ftt(t, x, y);
               },
               [](const BulkParams&, const Params& p, double s) {
                 return s * p.kappa / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.ftt(t, x, y); }});
  T.push_back({5, "eps dt b2", true, 1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b2.ft(t, x, y); },
               [](const BulkParams&, const Params&, double s) { return s; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.ft(t, x, y); }});
  T.push_back({5, "-(eps^3/Pr_m) dxx b2", true, 3.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b2.fxx(t, x, y) / bp.Re_m;
               },
               [P3](const BulkParams&, const Params& p, double s) {
                 return -P3(s) / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.fxx(t, x, y); }});
  T.push_back({5, "-(eps/Pr_m) dyy b2", true, 1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b2.fyy(t, x, y) / bp.Re_m;
               },
               [](const BulkParams&, const Params& p, double s) {
                 return -s / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.fyy(t, x, y); }});
  T.push_back({5, "-eps b1 dx v", true, 1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return -L.b1.f(t, x, y) * L.v.fx(t, x, y);
               },
               [](const BulkParams&, const Params&, double s) { return -s; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.f(t, x, y) * b.v.fx(t, x, y); }});
  T.push_back({5, "-eps b2 dy v", true, 1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return -L.b2.f(t, x, y) * L.v.fy(t, x, y);
               },
               [](const BulkParams&, const Params&, double s) { return -s; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.f(t, x, y) * b.v.fy(t, x, y); }});
  T.push_back({5, "eps u dx b2", true, 1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return L.u.f(t, x, y) * L.b2.fx(t, x, y);
               },
               [](const BulkParams&, const Params&, double s) { return s; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.f(t, x, y) * b.b2.fx(t, x, y); }});
  T.push_back({5, "eps v dy b2", true, 1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) {
                 return L.v.f(t, x, y) * L.b2.fy(t, x, y);
               },
               [](const BulkParams&, const Params&, double s) { return s; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.f(t, x, y) * b.b2.fy(t, x, y); }});

  // Equation 6: tangential flux law.
  T.push_back({6, "dt b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b1.ft(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.ft(t, x, y); }});
  T.push_back({6, "dy e", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.e.fy(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.e.fy(t, x, y); }});

  // Equation 7: normal flux law, grouped as displayed.
  T.push_back(
      {7, "eps (dt b2 - dx e)", true, 1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.b2.ft(t, x, y) - L.e.fx(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.b2.ft(t, x, y) - b.e.fx(t, x, y);
       }});

  // Equation 8: solenoidality.
  T.push_back({8, "dx b1", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b1.fx(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.fx(t, x, y); }});
  T.push_back({8, "dy b2", true, 0.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b2.fy(t, x, y); },
               [](const BulkParams&, const Params&, double) { return 1.0; },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.fy(t, x, y); }});

  return T;
}

std::vector<TermSpec> hartmann_terms() {
  std::vector<TermSpec> T;
  // Ratio that the ties pin to one; kept symbolic so the displayed
  // coefficients are reproduced rather than assumed.
  auto hr = [](const BulkParams& bp, const Params& p) {
    return bp.Ha / (bp.Re * p.H);
  };
  auto pm32 = [](double s) { return std::pow(s, -1.5); };
  auto pm12 = [](double s) { return std::pow(s, -0.5); };

  // Equation 1: tangential momentum.
  T.push_back(
      {1, "delta^-3/2 (J dtt u + dt u + u dx u + v dy u)", true, -1.5,
       [](const LiftedBundle& L, const BulkParams& bp, const Params&, double t,
          double x, double y) {
         return cat_u(bp) * L.u.ftt(t, x, y) + L.u.ft(t, x, y) +
                L.u.f(t, x, y) * L.u.fx(t, x, y) +
                L.v.f(t, x, y) * L.u.fy(t, x, y);
       },
       [pm32](const BulkParams&, const Params&, double s) { return pm32(s); },
       [](const FieldBundle& b, const Params& p, double t, double x,
          double y) {
         return p.J * b.u.ftt(t, x, y) + b.u.ft(t, x, y) +
                b.u.f(t, x, y) * b.u.fx(t, x, y) +
                b.v.f(t, x, y) * b.u.fy(t, x, y);
       }});
  T.push_back({1, "-delta^-1/2 dxx u", true, -0.5,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.u.fxx(t, x, y) / bp.Re;
               },
               [hr, pm12](const BulkParams& bp, const Params& p, double s) {
                 return -hr(bp, p) * pm12(s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.fxx(t, x, y); }});
  T.push_back({1, "-delta^-3/2 dyy u", true, -1.5,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.u.fyy(t, x, y) / bp.Re;
               },
               [hr, pm32](const BulkParams& bp, const Params& p, double s) {
                 return -hr(bp, p) * pm32(s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.u.fyy(t, x, y); }});
  T.push_back({1, "delta^-3/2 dx p", true, -1.5,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.p.fx(t, x, y); },
               [pm32](const BulkParams&, const Params&, double s) {
                 return pm32(s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.p.fx(t, x, y); }});
  T.push_back(
      {1, "-(Ha^2/Re) delta^-1/2 (b1 b2 v - u b2^2 - b2 e)", true, -1.5,
       [](const LiftedBundle& L, const BulkParams& bp, const Params&, double t,
          double x, double y) {
         double lor = L.b1.f(t, x, y) * dotUB(L, t, x, y) -
                      L.u.f(t, x, y) * normB2(L, t, x, y) -
                      L.e.f(t, x, y) * L.b2.f(t, x, y);
         return -(bp.Ha * bp.Ha / bp.Re) * lor;
       },
       [pm12](const BulkParams& bp, const Params&, double s) {
         return -(bp.Ha * bp.Ha / bp.Re) * pm12(s);
       },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         double u = b.u.f(t, x, y), v = b.v.f(t, x, y);
         double b1 = b.b1.f(t, x, y), b2 = b.b2.f(t, x, y);
         double e = b.e.f(t, x, y);
         return b1 * b2 * v - u * b2 * b2 - b2 * e;
       }});

  // Equation 2: normal momentum.
  T.push_back(
      {2, "delta^-1 (dt v + u dx v + v dy v)", true, -1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.v.ft(t, x, y) + L.u.f(t, x, y) * L.v.fx(t, x, y) +
                L.v.f(t, x, y) * L.v.fy(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return 1.0 / s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.v.ft(t, x, y) + b.u.f(t, x, y) * b.v.fx(t, x, y) +
                b.v.f(t, x, y) * b.v.fy(t, x, y);
       }});
  T.push_back({2, "-dxx v", true, 0.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.v.fxx(t, x, y) / bp.Re;
               },
               [hr](const BulkParams& bp, const Params& p, double) {
                 return -hr(bp, p);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.fxx(t, x, y); }});
  T.push_back({2, "-delta^-1 dyy v", true, -1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.v.fyy(t, x, y) / bp.Re;
               },
               [hr](const BulkParams& bp, const Params& p, double s) {
                 return -hr(bp, p) / s;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.fyy(t, x, y); }});
  T.push_back({2, "delta^-2 dy p", true, -2.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.p.fy(t, x, y); },
               [](const BulkParams&, const Params&, double s) {
                 return 1.0 / (s * s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.p.fy(t, x, y); }});
  T.push_back(
      {2, "-(Ha^2/Re) delta^-1 (b2 b1 u - b1^2 v + b1 e)", true, -2.0,
       [](const LiftedBundle& L, const BulkParams& bp, const Params&, double t,
          double x, double y) {
         double lor = L.b2.f(t, x, y) * dotUB(L, t, x, y) -
                      L.v.f(t, x, y) * normB2(L, t, x, y) +
                      L.e.f(t, x, y) * L.b1.f(t, x, y);
         return -(bp.Ha * bp.Ha / bp.Re) * lor;
       },
       [](const BulkParams& bp, const Params&, double s) {
         return -(bp.Ha * bp.Ha / bp.Re) / s;
       },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         double u = b.u.f(t, x, y), v = b.v.f(t, x, y);
         double b1 = b.b1.f(t, x, y), b2 = b.b2.f(t, x, y);
         double e = b.e.f(t, x, y);
         return b2 * b1 * u - b1 * b1 * v + b1 * e;
       }});
  T.push_back({2, "J delta^-1 dtt v", false, -1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_u(bp) * L.v.ftt(t, x, y);
               },
               [](const BulkParams&, const Params& p, double s) {
                 return p.J / s;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.v.ftt(t, x, y); }});

  // Equation 3: incompressibility, grouped as displayed.
  T.push_back(
      {3, "delta^-1 (dx u + dy v)", true, -1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.u.fx(t, x, y) + L.v.fy(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return 1.0 / s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.u.fx(t, x, y) + b.v.fy(t, x, y);
       }});

  // Equation 4: tangential induction.
  T.push_back({4, "(kappa/Pr_m) delta^-3/2 dtt b1", true, -1.5,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_b(bp) * L.b1.ftt(t, x, y);
               },
               [hr, pm32](const BulkParams& bp, const Params& p, double s) {
                 return p.kappa * hr(bp, p) * pm32(s) / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.ftt(t, x, y); }});
  T.push_back({4, "delta^-3/2 dt b1", true, -1.5,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b1.ft(t, x, y); },
               [pm32](const BulkParams&, const Params&, double s) {
                 return pm32(s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.ft(t, x, y); }});
  T.push_back({4, "-(delta^-1/2/Pr_m) dxx b1", true, -0.5,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b1.fxx(t, x, y) / bp.Re_m;
               },
               [hr, pm12](const BulkParams& bp, const Params& p, double s) {
                 return -hr(bp, p) * pm12(s) / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.fxx(t, x, y); }});
  T.push_back({4, "-(delta^-3/2/Pr_m) dyy b1", true, -1.5,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b1.fyy(t, x, y) / bp.Re_m;
               },
               [hr, pm32](const BulkParams& bp, const Params& p, double s) {
                 return -hr(bp, p) * pm32(s) / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b1.fyy(t, x, y); }});
  T.push_back(
      {4, "delta^-3/2 (-b1 dx u - b2 dy u + u dx b1 + v dy b1)", true, -1.5,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return -L.b1.f(t, x, y) * L.u.fx(t, x, y) -
                L.b2.f(t, x, y) * L.u.fy(t, x, y) +
                L.u.f(t, x, y) * L.b1.fx(t, x, y) +
                L.v.f(t, x, y) * L.b1.fy(t, x, y);
       },
       [pm32](const BulkParams&, const Params&, double s) { return pm32(s); },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return -b.b1.f(t, x, y) * b.u.fx(t, x, y) -
                b.b2.f(t, x, y) * b.u.fy(t, x, y) +
                b.u.f(t, x, y) * b.b1.fx(t, x, y) +
                b.v.f(t, x, y) * b.b1.fy(t, x, y);
       }});

  // Equation 5: normal induction.
  T.push_back({5, "(kappa/Pr_m) delta^-1 dtt b2", true, -1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return cat_b(bp) * L.b2.ftt(t, x, y);
               },
               [hr](const BulkParams& bp, const Params& p, double s) {
                 return p.kappa * hr(bp, p) / (p.Pr_m * s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.ftt(t, x, y); }});
  T.push_back({5, "delta^-1 dt b2", true, -1.0,
               [](const LiftedBundle& L, const BulkParams&, const Params&,
                  double t, double x, double y) { return L.b2.ft(t, x, y); },
               [](const BulkParams&, const Params&, double s) {
                 return 1.0 / s;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.ft(t, x, y); }});
  T.push_back({5, "-(1/Pr_m) dxx b2", true, 0.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b2.fxx(t, x, y) / bp.Re_m;
               },
               [hr](const BulkParams& bp, const Params& p, double) {
                 return -hr(bp, p) / p.Pr_m;
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.fxx(t, x, y); }});
  T.push_back({5, "-(delta^-1/Pr_m) dyy b2", true, -1.0,
               [](const LiftedBundle& L, const BulkParams& bp, const Params&,
                  double t, double x, double y) {
                 return -L.b2.fyy(t, x, y) / bp.Re_m;
               },
               [hr](const BulkParams& bp, const Params& p, double s) {
                 return -hr(bp, p) / (p.Pr_m * s);
               },
               [](const FieldBundle& b, const Params&, double t, double x,
                  double y) { return b.b2.fyy(t, x, y); }});
  T.push_back(
      {5, "delta^-1 (-b1 dx v - b2 dy v + u dx b2 + v dy b2)", true, -1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return -L.b1.f(t, x, y) * L.v.fx(t, x, y) -
                L.b2.f(t, x, y) * L.v.fy(t, x, y) +
                L.u.f(t, x, y) * L.b2.fx(t, x, y) +
                L.v.f(t, x, y) * L.b2.fy(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return 1.0 / s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return -b.b1.f(t, x, y) * b.v.fx(t, x, y) -
                b.b2.f(t, x, y) * b.v.fy(t, x, y) +
                b.u.f(t, x, y) * b.b2.fx(t, x, y) +
                b.v.f(t, x, y) * b.b2.fy(t, x, y);
       }});

  // Equations 6, 7, 8: flux laws and solenoidality, grouped as displayed.
  T.push_back(
      {6, "delta^-3/2 (dt b1 + dy e)", true, -1.5,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.b1.ft(t, x, y) + L.e.fy(t, x, y);
       },
       [pm32](const BulkParams&, const Params&, double s) { return pm32(s); },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.b1.ft(t, x, y) + b.e.fy(t, x, y);
       }});
  T.push_back(
      {7, "delta^-1 (dt b2 - dx e)", true, -1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.b2.ft(t, x, y) - L.e.fx(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return 1.0 / s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.b2.ft(t, x, y) - b.e.fx(t, x, y);
       }});
  T.push_back(
      {8, "delta^-1 (dx b1 + dy b2)", true, -1.0,
       [](const LiftedBundle& L, const BulkParams&, const Params&, double t,
          double x, double y) {
         return L.b1.fx(t, x, y) + L.b2.fy(t, x, y);
       },
       [](const BulkParams&, const Params&, double s) { return 1.0 / s; },
       [](const FieldBundle& b, const Params&, double t, double x, double y) {
         return b.b1.fx(t, x, y) + b.b2.fy(t, x, y);
       }});

  return T;
}

std::vector<TermSpec> term_catalog(Regime regime) {
  return regime == Regime::prandtl ? prandtl_terms() : hartmann_terms();
}

// ----------------------------------------------------------------------------
// Finite-difference cross-check of the chain rule
// ----------------------------------------------------------------------------

struct FdReport {
  double worst = 0.0;
  std::string worst_what;
};

double fd1(const std::function<double(double)>& g, double h) {
  return (-g(-3.0 * h) + 9.0 * g(-2.0 * h) - 45.0 * g(-h) + 45.0 * g(h) -
          9.0 * g(2.0 * h) + g(3.0 * h)) /
         (60.0 * h);
}

double fd2(const std::function<double(double)>& g, double h) {
  return (2.0 * g(-3.0 * h) - 27.0 * g(-2.0 * h) + 270.0 * g(-h) -
          490.0 * g(0.0) + 270.0 * g(h) - 27.0 * g(2.0 * h) +
          2.0 * g(3.0 * h)) /
         (180.0 * h * h);
}

FdReport fd_check_impl(Regime regime, const FieldBundle& b, double small) {
  LiftedBundle L = lift(regime, b, small);
  LiftFactors lf = lift_factors(regime, small);
  Pt bp = to_bulk(regime, small, {0.35, 1.3, 0.45});
  FdReport rep;

  struct Entry {
    const char* name;
    const Lifted* s;
  };
  const Entry fields[] = {{"u", &L.u},   {"v", &L.v}, {"b1", &L.b1},
                          {"b2", &L.b2}, {"e", &L.e}, {"p", &L.p}};
  const double ht = 0.01 / lf.ct, hx = 0.01 / lf.cx, hy = 0.01 / lf.cy;

  auto consider = [&](const char* field, const char* deriv, double cr,
                      double fd, double fscale) {
    double denom = std::max({std::abs(cr), std::abs(fd), 1e-8 * fscale});
    double err = denom > 0.0 ? std::abs(cr - fd) / denom : 0.0;
    if (err > rep.worst) {
      rep.worst = err;
      rep.worst_what = std::string(field) + " " + deriv;
    }
  };

  for (const Entry& ent : fields) {
    const Lifted& s = *ent.s;
    double t = bp.t, x = bp.x, y = bp.y;
    auto gt = [&](double d) { return s.f(t + d, x, y); };
    auto gx = [&](double d) { return s.f(t, x + d, y); };
    auto gy = [&](double d) { return s.f(t, x, y + d); };
    double fscale = 0.0;
    for (int k = -3; k <= 3; ++k) {
      fscale = std::max(fscale, std::abs(gt(k * ht)));
      fscale = std::max(fscale, std::abs(gx(k * hx)));
      fscale = std::max(fscale, std::abs(gy(k * hy)));
    }
    double sct = fscale / std::max(ht, 1e-300), scx = fscale / hx,
           scy = fscale / hy;
    consider(ent.name, "dt", s.ft(t, x, y), fd1(gt, ht), sct);
    consider(ent.name, "dx", s.fx(t, x, y), fd1(gx, hx), scx);
    consider(ent.name, "dy", s.fy(t, x, y), fd1(gy, hy), scy);
    consider(ent.name, "dtt", s.ftt(t, x, y), fd2(gt, ht), sct / ht);
    consider(ent.name, "dxx", s.fxx(t, x, y), fd2(gx, hx), scx / hx);
    consider(ent.name, "dyy", s.fyy(t, x, y), fd2(gy, hy), scy / hy);
  }
  return rep;
}

// ----------------------------------------------------------------------------
// Reduced layer system residuals
// ----------------------------------------------------------------------------

double layer_eq_residual(int eq, const FieldBundle& b, const Params& p,
                         double t, double x, double y) {
  double H2 = p.H * p.H;
  switch (eq) {
    case 1:
      return p.J * b.u.ftt(t, x, y) + b.u.ft(t, x, y) +
             b.u.f(t, x, y) * b.u.fx(t, x, y) +
             b.v.f(t, x, y) * b.u.fy(t, x, y) - b.u.fyy(t, x, y) +
             b.p.fx(t, x, y) -
             H2 * (b.b1.f(t, x, y) * b.b2.f(t, x, y) * b.v.f(t, x, y) -
                   b.u.f(t, x, y) * b.b2.f(t, x, y) * b.b2.f(t, x, y) -
                   b.b2.f(t, x, y) * b.e.f(t, x, y));
    case 2:
      return b.p.fy(t, x, y) -
             H2 * (b.b1.f(t, x, y) * b.b2.f(t, x, y) * b.u.f(t, x, y) -
                   b.b1.f(t, x, y) * b.b1.f(t, x, y) * b.v.f(t, x, y) +
                   b.b1.f(t, x, y) * b.e.f(t, x, y));
    case 3:
      return b.u.fx(t, x, y) + b.v.fy(t, x, y);
    case 4:
      return (p.kappa / p.Pr_m) * b.b1.ftt(t, x, y) + b.b1.ft(t, x, y) -
             b.b1.fyy(t, x, y) / p.Pr_m +
             b.u.f(t, x, y) * b.b1.fx(t, x, y) +
             b.v.f(t, x, y) * b.b1.fy(t, x, y) -
             b.b1.f(t, x, y) * b.u.fx(t, x, y) -
             b.b2.f(t, x, y) * b.u.fy(t, x, y);
    case 5:
      return (p.kappa / p.Pr_m) * b.b2.ftt(t, x, y) + b.b2.ft(t, x, y) -
             b.b2.fyy(t, x, y) / p.Pr_m +
             b.u.f(t, x, y) * b.b2.fx(t, x, y) +
             b.v.f(t, x, y) * b.b2.fy(t, x, y) -
             b.b1.f(t, x, y) * b.v.fx(t, x, y) -
             b.b2.f(t, x, y) * b.v.fy(t, x, y);
    case 6:
      return b.b1.ft(t, x, y) + b.e.fy(t, x, y);
    case 7:
      return b.b2.ft(t, x, y) - b.e.fx(t, x, y);
    case 8:
      return b.b1.fx(t, x, y) + b.b2.fy(t, x, y);
    default:
      assert(false);
      return 0.0;
  }
}

/// Multiplier applied to each bulk equation's residual before comparing with
/// the layer system.
double normalization(Regime regime, int eq, double small) {
  if (regime == Regime::prandtl) {
    if (eq == 2) return small;
    if (eq == 5) return 1.0 / small;
    return 1.0;
  }
  switch (eq) {
    case 1:
    case 4:
    case 6:
      return std::pow(small, 1.5);
    case 2:
      return small * small;
    default:
      return small;
  }
}

}  // namespace

// ----------------------------------------------------------------------------
// Public interface
// ----------------------------------------------------------------------------

BulkParams BulkParams::from_small(Regime regime, const Params& prm,
                                  double small) {
  if (!(small > 0.0)) {
    throw std::invalid_argument("rescaling: small parameter must be positive");
  }
  BulkParams bp;
  if (regime == Regime::prandtl) {
    bp.Re = 1.0 / (small * small);
  } else {
    if (!(prm.H > 0.0)) {
      throw std::invalid_argument(
          "rescaling: the hartmann regime requires H > 0");
    }
    bp.Re = 1.0 / small;
  }
  bp.Ha = prm.H * bp.Re;
  bp.Re_m = prm.Pr_m * bp.Re;
  if (regime == Regime::prandtl) {
    bp.U0c2 = prm.kappa * bp.Re;
  } else {
    bp.U0c2 = prm.kappa;
  }
  bp.Jscript = prm.J / prm.kappa;
  return bp;
}

std::vector<double> default_smalls() { return {1e-1, 2e-2, 5e-3, 1e-3}; }

double fd_cross_check(Regime regime, const FieldBundle& bundle, double small) {
  return fd_check_impl(regime, bundle, small).worst;
}

TermOrderTable scale_terms(Regime regime, const FieldBundle& bundle,
                           const Params& prm,
                           const std::vector<double>& smalls, double tol) {
  if (smalls.size() < 2) {
    throw std::invalid_argument(
        "rescaling: need at least two small-parameter values to fit");
  }
  for (double s : smalls) {
    FdReport rep = fd_check_impl(regime, bundle, s);
    if (rep.worst > 1e-4) {
      throw std::runtime_error(
          "rescaling: bundle rejected at small = " + std::to_string(s) +
          ": chain-rule derivative of " + rep.worst_what +
          " disagrees with finite differences (rel. error " +
          std::to_string(rep.worst) + ")");
    }
  }

  std::vector<TermSpec> terms = term_catalog(regime);
  std::vector<Pt> pts = layer_points();

  TermOrderTable table;
  table.regime = regime;
  table.smalls = smalls;

  for (const TermSpec& ts : terms) {
    TermRowResult row;
    row.eq = ts.eq;
    row.label = ts.label;
    row.printed = ts.printed;
    row.claimed_exp = ts.claimed;

    std::vector<double> norms;
    double coeff_rel = 0.0;
    for (double s : smalls) {
      BulkParams bp = BulkParams::from_small(regime, prm, s);
      LiftedBundle L = lift(regime, bundle, s);
      double nrm = 0.0;
      for (const Pt& lp : pts) {
        Pt q = to_bulk(regime, s, lp);
        double orig = ts.original(L, bp, prm, q.t, q.x, q.y);
        double disp = ts.coeff(bp, prm, s) * ts.bl(bundle, prm, lp.t, lp.x,
                                                   lp.y);
        nrm = std::max(nrm, std::abs(orig));
        double denom = std::max(std::abs(orig), std::abs(disp));
        if (denom > 1e-300) {
          coeff_rel = std::max(coeff_rel, std::abs(orig - disp) / denom);
        }
      }
      norms.push_back(nrm);
    }
    row.coeff_check_rel = coeff_rel;

    double top = 0.0;
    for (double n : norms) top = std::max(top, n);
    if (top < 1e-20) {
      row.degenerate = true;
      row.observed_exp = row.claimed_exp;
      row.fit_residual = 0.0;
      table.any_degenerate = true;
    } else {
      // Least-squares slope of log norm against log small.
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      int n = static_cast<int>(smalls.size());
      for (int i = 0; i < n; ++i) {
        double lx = std::log(smalls[i]);
        double ly = std::log(std::max(norms[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
      }
      double denom = n * sxx - sx * sx;
      double slope = (n * sxy - sx * sy) / denom;
      double icept = (sy - slope * sx) / n;
      double resid = 0.0;
      for (int i = 0; i < n; ++i) {
        double lx = std::log(smalls[i]);
        double ly = std::log(std::max(norms[i], 1e-300));
        resid = std::max(resid, std::abs(ly - (icept + slope * lx)));
      }
      row.observed_exp = slope;
      row.fit_residual = resid;
      if (std::abs(row.observed_exp - row.claimed_exp) > tol) {
        table.all_within_tol = false;
      }
    }
    table.rows.push_back(row);
  }
  return table;
}

double round_trip_error(Regime regime, double small) {
  // Forward map, bulk tuple to layer tuple, written out from its own
  // formulas; the lift in lift_factors is the inverse to be validated.
  struct Tuple {
    double t, x, y, u, v, b1, b2, e, p;
  };
  auto forward = [&](const Tuple& q) {
    Tuple r;
    if (regime == Regime::prandtl) {
      double eps = small;
      r.t = q.t;
      r.x = q.x;
      r.y = q.y / eps;
      r.u = q.u;
      r.v = q.v / eps;
      r.b1 = q.b1;
      r.b2 = q.b2 / eps;
      r.e = q.e / eps;
      r.p = q.p;
    } else {
      double del = small, rt = std::sqrt(small);
      r.t = q.t / del;
      r.x = q.x / rt;
      r.y = q.y / del;
      r.u = rt * q.u;
      r.v = q.v;
      r.b1 = rt * q.b1;
      r.b2 = q.b2;
      r.e = rt * q.e;
      r.p = del * q.p;
    }
    return r;
  };
  auto backward = [&](const Tuple& q) {
    LiftFactors lf = lift_factors(regime, small);
    Tuple r;
    r.t = q.t / lf.ct;
    r.x = q.x / lf.cx;
    r.y = q.y / lf.cy;
    r.u = lf.au * q.u;
    r.v = lf.av * q.v;
    r.b1 = lf.ab1 * q.b1;
    r.b2 = lf.ab2 * q.b2;
    r.e = lf.ae * q.e;
    r.p = lf.ap * q.p;
    return r;
  };
  auto gap = [](const Tuple& a, const Tuple& b) {
    auto rel = [](double x, double y) {
      return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1.0});
    };
    return std::max({rel(a.t, b.t), rel(a.x, b.x), rel(a.y, b.y),
                     rel(a.u, b.u), rel(a.v, b.v), rel(a.b1, b.b1),
                     rel(a.b2, b.b2), rel(a.e, b.e), rel(a.p, b.p)});
  };

  double worst = 0.0;
  const Tuple samples[] = {
      {0.3, 0.5, 0.2, 0.7, -0.4, 1.1, 0.9, -0.6, 2.0},
      {1.7, 4.0, 0.9, -1.3, 0.8, -0.2, 0.4, 1.6, -0.5},
      {0.05, 2.1, 0.5, 3.0, 0.1, 0.6, -1.0, 0.3, 0.9},
  };
  for (const Tuple& q : samples) {
    worst = std::max(worst, gap(backward(forward(q)), q));
    worst = std::max(worst, gap(forward(backward(q)), q));
  }
  return worst;
}

double limit_residual(const FieldBundle& bundle, const Params& prm) {
  double worst = 0.0;
  for (const Pt& lp : layer_points()) {
    for (int eq = 1; eq <= 8; ++eq) {
      worst = std::max(worst, std::abs(layer_eq_residual(eq, bundle, prm,
                                                         lp.t, lp.x, lp.y)));
    }
  }
  return worst;
}

double limit_residual_gap(Regime regime, const FieldBundle& bundle,
                          const Params& prm, double small) {
  BulkParams bp = BulkParams::from_small(regime, prm, small);
  LiftedBundle L = lift(regime, bundle, small);
  std::vector<TermSpec> terms = term_catalog(regime);

  double r_scaled = 0.0;
  for (const Pt& lp : layer_points()) {
    Pt q = to_bulk(regime, small, lp);
    double res[9] = {0.0};
    for (const TermSpec& ts : terms) {
      res[ts.eq] += ts.original(L, bp, prm, q.t, q.x, q.y);
    }
    for (int eq = 1; eq <= 8; ++eq) {
      r_scaled = std::max(r_scaled,
                          std::abs(normalization(regime, eq, small) * res[eq]));
    }
  }
  return std::abs(r_scaled - limit_residual(bundle, prm));
}

double hartmann_trace_ratio(const FieldBundle& bundle, const Params& prm,
                            double delta) {
  BulkParams bp = BulkParams::from_small(Regime::hartmann, prm, delta);
  (void)bp;
  LiftedBundle L = lift(Regime::hartmann, bundle, delta);
  Pt lp{0.3, 0.5, 0.0};
  Pt q = to_bulk(Regime::hartmann, delta, lp);
  double layer_val = bundle.b1.f(lp.t, lp.x, lp.y);
  if (std::abs(layer_val) < 1e-300) {
    throw std::invalid_argument(
        "hartmann_trace_ratio: bundle has vanishing b1 wall trace");
  }
  return L.b1.f(q.t, q.x, q.y) / layer_val;
}

FieldBundle generic_bundle() {
  FieldBundle b;
  auto T = [](double t) { return std::exp(-t); };

  b.u.f = [T](double t, double x, double y) {
    return T(t) * (std::sin(x) * std::sin(kPi * y) +
                   0.5 * std::cos(x) * y * y * (1.0 - y));
  };
  b.u.ft = [T](double t, double x, double y) {
    return -T(t) * (std::sin(x) * std::sin(kPi * y) +
                    0.5 * std::cos(x) * y * y * (1.0 - y));
  };
  b.u.ftt = [T](double t, double x, double y) {
    return T(t) * (std::sin(x) * std::sin(kPi * y) +
                   0.5 * std::cos(x) * y * y * (1.0 - y));
  };
  b.u.fx = [T](double t, double x, double y) {
    return T(t) * (std::cos(x) * std::sin(kPi * y) -
                   0.5 * std::sin(x) * y * y * (1.0 - y));
  };
  b.u.fxx = [T](double t, double x, double y) {
    return -T(t) * (std::sin(x) * std::sin(kPi * y) +
                    0.5 * std::cos(x) * y * y * (1.0 - y));
  };
  b.u.fy = [T](double t, double x, double y) {
    return T(t) * (kPi * std::sin(x) * std::cos(kPi * y) +
                   0.5 * std::cos(x) * (2.0 * y - 3.0 * y * y));
  };
  b.u.fyy = [T](double t, double x, double y) {
    return T(t) * (-kPi * kPi * std::sin(x) * std::sin(kPi * y) +
                   0.5 * std::cos(x) * (2.0 - 6.0 * y));
  };

  b.v.f = [T](double t, double x, double y) {
    return 0.8 * T(t) * std::cos(x) * (y * y - y);
  };
  b.v.ft = [T](double t, double x, double y) {
    return -0.8 * T(t) * std::cos(x) * (y * y - y);
  };
  b.v.ftt = [T](double t, double x, double y) {
    return 0.8 * T(t) * std::cos(x) * (y * y - y);
  };
  b.v.fx = [T](double t, double x, double y) {
    return -0.8 * T(t) * std::sin(x) * (y * y - y);
  };
  b.v.fxx = [T](double t, double x, double y) {
    return -0.8 * T(t) * std::cos(x) * (y * y - y);
  };
  b.v.fy = [T](double t, double x, double y) {
    return 0.8 * T(t) * std::cos(x) * (2.0 * y - 1.0);
  };
  b.v.fyy = [T](double t, double x, double) {
    return 1.6 * T(t) * std::cos(x);
  };

  b.b1.f = [T](double t, double x, double y) {
    return 0.7 + T(t) * std::cos(x) * std::sin(kPi * y);
  };
  b.b1.ft = [T](double t, double x, double y) {
    return -T(t) * std::cos(x) * std::sin(kPi * y);
  };
  b.b1.ftt = [T](double t, double x, double y) {
    return T(t) * std::cos(x) * std::sin(kPi * y);
  };
  b.b1.fx = [T](double t, double x, double y) {
    return -T(t) * std::sin(x) * std::sin(kPi * y);
  };
  b.b1.fxx = [T](double t, double x, double y) {
    return -T(t) * std::cos(x) * std::sin(kPi * y);
  };
  b.b1.fy = [T](double t, double x, double y) {
    return kPi * T(t) * std::cos(x) * std::cos(kPi * y);
  };
  b.b1.fyy = [T](double t, double x, double y) {
    return -kPi * kPi * T(t) * std::cos(x) * std::sin(kPi * y);
  };

  b.b2.f = [T](double t, double x, double y) {
    return 0.4 + T(t) * std::sin(x) * y * (1.0 - 0.5 * y);
  };
  b.b2.ft = [T](double t, double x, double y) {
    return -T(t) * std::sin(x) * y * (1.0 - 0.5 * y);
  };
  b.b2.ftt = [T](double t, double x, double y) {
    return T(t) * std::sin(x) * y * (1.0 - 0.5 * y);
  };
  b.b2.fx = [T](double t, double x, double y) {
    return T(t) * std::cos(x) * y * (1.0 - 0.5 * y);
  };
  b.b2.fxx = [T](double t, double x, double y) {
    return -T(t) * std::sin(x) * y * (1.0 - 0.5 * y);
  };
  b.b2.fy = [T](double t, double x, double y) {
    return T(t) * std::sin(x) * (1.0 - y);
  };
  b.b2.fyy = [T](double t, double x, double) {
    return -T(t) * std::sin(x);
  };

  b.e.f = [T](double t, double x, double y) {
    return 0.6 + T(t) * std::cos(2.0 * x) * std::sin(0.5 * kPi * y);
  };
  b.e.ft = [T](double t, double x, double y) {
    return -T(t) * std::cos(2.0 * x) * std::sin(0.5 * kPi * y);
  };
  b.e.ftt = [T](double t, double x, double y) {
    return T(t) * std::cos(2.0 * x) * std::sin(0.5 * kPi * y);
  };
  b.e.fx = [T](double t, double x, double y) {
    return -2.0 * T(t) * std::sin(2.0 * x) * std::sin(0.5 * kPi * y);
  };
  b.e.fxx = [T](double t, double x, double y) {
    return -4.0 * T(t) * std::cos(2.0 * x) * std::sin(0.5 * kPi * y);
  };
  b.e.fy = [T](double t, double x, double y) {
    return 0.5 * kPi * T(t) * std::cos(2.0 * x) * std::cos(0.5 * kPi * y);
  };
  b.e.fyy = [T](double t, double x, double y) {
    return -0.25 * kPi * kPi * T(t) * std::cos(2.0 * x) *
           std::sin(0.5 * kPi * y);
  };

  b.p.f = [T](double t, double x, double y) {
    return T(t) * std::cos(x) * (1.0 + y - 0.5 * y * y);
  };
  b.p.ft = [T](double t, double x, double y) {
    return -T(t) * std::cos(x) * (1.0 + y - 0.5 * y * y);
  };
  b.p.ftt = [T](double t, double x, double y) {
    return T(t) * std::cos(x) * (1.0 + y - 0.5 * y * y);
  };
  b.p.fx = [T](double t, double x, double y) {
    return -T(t) * std::sin(x) * (1.0 + y - 0.5 * y * y);
  };
  b.p.fxx = [T](double t, double x, double y) {
    return -T(t) * std::cos(x) * (1.0 + y - 0.5 * y * y);
  };
  b.p.fy = [T](double t, double x, double y) {
    return T(t) * std::cos(x) * (1.0 - y);
  };
  b.p.fyy = [T](double t, double x, double) {
    return -T(t) * std::cos(x);
  };

  return b;
}

FieldBundle zero_bundle() {
  FieldBundle b;
  auto z = [](double, double, double) { return 0.0; };
  for (ScalarClosedForm* s : {&b.u, &b.v, &b.b1, &b.b2, &b.e, &b.p}) {
    s->f = s->ft = s->fx = s->fy = s->ftt = s->fxx = s->fyy = z;
  }
  return b;
}

}  // namespace clayer
