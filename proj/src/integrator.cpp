#include "clayer/integrator.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>

#include "clayer/norms.hpp"
#include "clayer/operators.hpp"

namespace clayer {

// ============================================================================
// Tridiagonal factorization
// ============================================================================

Thomas::Thomas(int n, double diag, double off) : n_(n), diag_(diag), off_(off) {
  assert(n >= 3);
  assert(std::abs(diag) > 2.0 * std::abs(off));
  const int ni = n - 2;  // interior unknowns
  cp_.resize(ni);
  inv_d_.resize(ni);
  double d = diag_;
  for (int j = 0; j < ni; ++j) {
    inv_d_[j] = 1.0 / d;
    cp_[j] = off_ * inv_d_[j];
    d = diag_ - off_ * cp_[j];
  }
}

void Thomas::solve(std::complex<double>* x) const {
  const int ni = n_ - 2;
  // Wall rows are identity; fold their values into the interior system.
  const std::complex<double> x0 = x[0];
  const std::complex<double> xn = x[n_ - 1];
  x[1] -= off_ * x0;
  x[n_ - 2] -= off_ * xn;

  // Forward sweep on rows 1..n-2 (0..ni-1 in interior numbering).
  x[1] *= inv_d_[0];
  for (int j = 1; j < ni; ++j) x[j + 1] = (x[j + 1] - off_ * x[j]) * inv_d_[j];

  // Back substitution.
  for (int j = ni - 2; j >= 0; --j) x[j + 1] -= cp_[j] * x[j + 2];
}

// ============================================================================
// Integrator
// ============================================================================

namespace {

/// Interior Dirichlet Laplacian applied per mode; wall rows of out are 0.
void laplacian_interior(const Grid& g, const SpecField& in, SpecField& out) {
  if (out.nx != g.nx || out.ny != g.ny) out = SpecField(g);
  const double h2 = g.hy() * g.hy();
  for (int m = 0; m < g.nx; ++m) {
    out.at(m, 0) = 0.0;
    for (int j = 1; j < g.ny - 1; ++j)
      out.at(m, j) = (in.at(m, j + 1) - 2.0 * in.at(m, j) + in.at(m, j - 1)) / h2;
    out.at(m, g.ny - 1) = 0.0;
  }
}

double guard_norm(const Grid& g, const State& st) {
  return std::max({norm_Hs0(g, st.u, 0.0), norm_Hs0(g, st.ut, 0.0), norm_Hs0(g, st.b1, 0.0),
                   norm_Hs0(g, st.b1t, 0.0)});
}

}  // namespace

Integrator::Integrator(const Grid& g, const Params& prm, const IntegratorConfig& cfg)
    : grid_(g), prm_(prm), cfg_(cfg), fourier_(g), Nu_prev_(g), Nb_prev_(g) {
  prm.validate();
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrator: dt must be > 0");
  const double h2 = g.hy() * g.hy();
  const double kp = prm.kappa / prm.Pr_m;
  double au, bu, ab, bb;
  if (cfg.scheme == Scheme::imex_cn_ab2) {
    au = prm.J + 0.5 * cfg.dt;
    bu = 0.25 * cfg.dt * cfg.dt;
    ab = kp + 0.5 * cfg.dt;
    bb = 0.25 * cfg.dt * cfg.dt / prm.Pr_m;
  } else {
    au = prm.J + cfg.dt;
    bu = cfg.dt * cfg.dt;
    ab = kp + cfg.dt;
    bb = cfg.dt * cfg.dt / prm.Pr_m;
  }
  thom_u_ = Thomas(g.ny, au + 2.0 * bu / h2, -bu / h2);
  thom_b_ = Thomas(g.ny, ab + 2.0 * bb / h2, -bb / h2);
}

void Integrator::explicit_block(const State& st, SpecField& Nu, SpecField& Nb) {
  if (cfg_.linear_only) {
    if (Nu.nx != grid_.nx || Nu.ny != grid_.ny) Nu = SpecField(grid_);
    if (Nb.nx != grid_.nx || Nb.ny != grid_.ny) Nb = SpecField(grid_);
    Nu.zero();
    Nb.zero();
    return;
  }
  DerivedFields d(grid_);
  reconstruct_all(fourier_, prm_, st, d);

  SpecField Fu, Fb;
  const SpecField *pFu = nullptr, *pFb = nullptr;
  if (cfg_.forcing) {
    Fu = SpecField(grid_);
    Fb = SpecField(grid_);
    cfg_.forcing(st.t, Fu, Fb);
    pFu = &Fu;
    pFb = &Fb;
  }
  nonlinear_terms(fourier_, prm_, st, d, pFu, pFb, Nu, Nb);
}

void Integrator::step(State& st) {
  const double dt = cfg_.dt;
  const double kp = prm_.kappa / prm_.Pr_m;

  SpecField Nu(grid_), Nb(grid_);
  explicit_block(st, Nu, Nb);

  // AB2 extrapolant of the explicit block; Euler bootstrap on step one.
  SpecField Nu_hat = Nu, Nb_hat = Nb;
  if (cfg_.scheme == Scheme::imex_cn_ab2 && have_prev_) {
    Nu_hat.scale(1.5);
    Nu_hat.axpy(-0.5, Nu_prev_);
    Nb_hat.scale(1.5);
    Nb_hat.axpy(-0.5, Nb_prev_);
  }

  SpecField Lu(grid_), Lw(grid_), Lb(grid_), Lz(grid_);
  laplacian_interior(grid_, st.u, Lu);
  laplacian_interior(grid_, st.b1, Lb);

  State next = st;
  if (cfg_.scheme == Scheme::imex_cn_ab2) {
    laplacian_interior(grid_, st.ut, Lw);
    laplacian_interior(grid_, st.b1t, Lz);
    // [ (J + dt/2) I - (dt^2/4) L ] w' = (J - dt/2) w + dt L u + (dt^2/4) L w
    //                                    + dt J N_hat
    for (int m = 0; m < grid_.nx; ++m) {
      std::complex<double>* wu = &next.ut.at(m, 0);
      std::complex<double>* wb = &next.b1t.at(m, 0);
      for (int j = 0; j < grid_.ny; ++j) {
        wu[j] = (prm_.J - 0.5 * dt) * st.ut.at(m, j) + dt * Lu.at(m, j) +
                0.25 * dt * dt * Lw.at(m, j) + dt * prm_.J * Nu_hat.at(m, j);
        wb[j] = (kp - 0.5 * dt) * st.b1t.at(m, j) + (dt / prm_.Pr_m) * Lb.at(m, j) +
                (0.25 * dt * dt / prm_.Pr_m) * Lz.at(m, j) + dt * kp * Nb_hat.at(m, j);
      }
      wu[0] = wb[0] = 0.0;
      wu[grid_.ny - 1] = wb[grid_.ny - 1] = 0.0;
      thom_u_.solve(wu);
      thom_b_.solve(wb);
    }
    // Trapezoidal update of the primary fields.
    for (int m = 0; m < grid_.nx; ++m)
      for (int j = 0; j < grid_.ny; ++j) {
        next.u.at(m, j) = st.u.at(m, j) + 0.5 * dt * (st.ut.at(m, j) + next.ut.at(m, j));
        next.b1.at(m, j) = st.b1.at(m, j) + 0.5 * dt * (st.b1t.at(m, j) + next.b1t.at(m, j));
      }
  } else {
    // [ J + dt - dt^2 L ] w' = J w + dt L u + dt J N; u' = u + dt w'.
    for (int m = 0; m < grid_.nx; ++m) {
      std::complex<double>* wu = &next.ut.at(m, 0);
      std::complex<double>* wb = &next.b1t.at(m, 0);
      for (int j = 0; j < grid_.ny; ++j) {
        wu[j] = prm_.J * st.ut.at(m, j) + dt * Lu.at(m, j) + dt * prm_.J * Nu_hat.at(m, j);
        wb[j] = kp * st.b1t.at(m, j) + (dt / prm_.Pr_m) * Lb.at(m, j) + dt * kp * Nb_hat.at(m, j);
      }
      wu[0] = wb[0] = 0.0;
      wu[grid_.ny - 1] = wb[grid_.ny - 1] = 0.0;
      thom_u_.solve(wu);
      thom_b_.solve(wb);
    }
    for (int m = 0; m < grid_.nx; ++m)
      for (int j = 0; j < grid_.ny; ++j) {
        next.u.at(m, j) = st.u.at(m, j) + dt * next.ut.at(m, j);
        next.b1.at(m, j) = st.b1.at(m, j) + dt * next.b1t.at(m, j);
      }
  }

  next.enforce_dirichlet();
  next.t = st.t + dt;

  if (!next.all_finite() || guard_norm(grid_, next) > cfg_.max_norm_guard)
    throw DivergenceError("integrator: norm guard exceeded at t = " + std::to_string(next.t));

  Nu_prev_ = Nu;
  Nb_prev_ = Nb;
  have_prev_ = true;
  st = next;
}

double dt_stability(const Grid& g, const Params& prm, const Fourier& f, const State& st) {
  double bound = std::min(0.5 * std::sqrt(prm.J), 0.5 * std::sqrt(prm.kappa / prm.Pr_m));
  PhysField pu(g);
  f.backward(st.u, pu);
  double umax = 0.0;
  for (double v : pu.a) umax = std::max(umax, std::abs(v));
  if (umax > 0.0) bound = std::min(bound, 0.5 / (umax * g.xi_max()));
  return bound;
}

Trajectory simulate(const Grid& g, const Params& prm, const IntegratorConfig& cfg,
                    const State& initial, int monitor_every, ReportFn report_fn,
                    std::ostream* log, bool store_states) {
  if (monitor_every < 1) throw std::invalid_argument("simulate: monitor_every must be >= 1");
  Trajectory traj(prm, g, cfg);
  Integrator integ(g, prm, cfg);

  State st = initial;
  st.enforce_dirichlet();

  const double advisory = dt_stability(g, prm, integ.fourier(), st);
  if (cfg.dt > advisory && log)
    (*log) << "warning: dt = " << cfg.dt << " exceeds stability advisory " << advisory << "\n";

  auto sample = [&](const State& s) {
    if (store_states || traj.snapshots.empty()) traj.snapshots.emplace_back(s.t, s);
    if (report_fn) traj.reports.emplace_back(s.t, report_fn(s));
  };
  sample(st);

  const long nsteps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
  for (long n = 1; n <= nsteps; ++n) {
    try {
      integ.step(st);
    } catch (const DivergenceError& err) {
      traj.diverged = true;
      traj.divergence_message = err.what();
      if (!store_states) traj.snapshots.emplace_back(st.t, st);
      return traj;
    }
    if (n % monitor_every == 0 || n == nsteps) sample(st);
  }
  if (!store_states) traj.snapshots.emplace_back(st.t, st);
  return traj;
}

}  // namespace clayer
