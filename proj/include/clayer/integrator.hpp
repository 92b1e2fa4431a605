#ifndef CLAYER_INTEGRATOR_HPP
#define CLAYER_INTEGRATOR_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "clayer/energy_report.hpp"
#include "clayer/fourier.hpp"
#include "clayer/model.hpp"
#include "clayer/params.hpp"
#include "clayer/state.hpp"

namespace clayer {

// ============================================================================
// IMEX time stepping. The stiff linear sub-system per mode,
//   J dw/dt = -w + dyy u   (w = du/dt),
//   (kappa/Pr_m) dz/dt = -z + (1/Pr_m) dyy b1   (z = db1/dt),
// is advanced by Crank-Nicolson with one k-independent tridiagonal solve per
// field; every other term goes through second-order Adams-Bashforth with an
// explicit Euler bootstrap on the first step.
// ============================================================================

enum class Scheme { imex_cn_ab2, imex_euler };

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::imex_cn_ab2;
  Forcing forcing;                ///< optional manufactured-solution source
  double max_norm_guard = 1e6;    ///< abort threshold on any field L2 norm
  bool linear_only = false;       ///< testing knob: drop all explicit terms
};

/// Thrown when a step would exceed max_norm_guard or produce NaN/Inf.
/// The state passed to step() is restored to the last valid one first.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Constant-coefficient tridiagonal solver with identity wall rows:
/// interior rows are off*x[j-1] + diag*x[j] + off*x[j+1] = rhs[j].
/// Strict diagonal dominance holds for all admissible coefficients.
class Thomas {
 public:
  Thomas() = default;
  Thomas(int n, double diag, double off);
  /// In-place solve; x enters as the right-hand side.
  void solve(std::complex<double>* x) const;

 private:
  int n_ = 0;
  double diag_ = 1.0, off_ = 0.0;
  std::vector<double> cp_;     // forward-eliminated superdiagonal
  std::vector<double> inv_d_;  // reciprocals of the pivot chain
};

class Integrator {
 public:
  Integrator(const Grid& g, const Params& prm, const IntegratorConfig& cfg);

  /// Advance by one dt. Throws DivergenceError with the input state intact.
  void step(State& st);

  /// Forget AB2 history (used when the state is replaced externally).
  void reset_history() { have_prev_ = false; }

  const Fourier& fourier() const { return fourier_; }

 private:
  void explicit_block(const State& st, SpecField& Nu, SpecField& Nb);

  Grid grid_;
  Params prm_;
  IntegratorConfig cfg_;
  Fourier fourier_;
  Thomas thom_u_, thom_b_;
  SpecField Nu_prev_, Nb_prev_;
  bool have_prev_ = false;
};

/// Stability advisory: min(0.5 sqrt(J), 0.5 sqrt(kappa/Pr_m),
/// 0.5/(max|u| xi_max)); the advective bound is dropped when u = 0.
double dt_stability(const Grid& g, const Params& prm, const Fourier& f, const State& st);

struct Trajectory {
  std::vector<std::pair<double, State>> snapshots;
  std::vector<std::pair<double, EnergyReport>> reports;
  Params params;
  Grid grid;
  IntegratorConfig cfg;
  bool diverged = false;
  std::string divergence_message;

  Trajectory(const Params& p, const Grid& g, const IntegratorConfig& c)
      : params(p), grid(g), cfg(c) {}
};

/// Evaluator attached by the energy monitor; may be empty.
using ReportFn = std::function<EnergyReport(const State&)>;

/// March from the initial state to t_end, sampling every monitor_every steps
/// (plus the initial and final states). Divergence stops the march, keeps
/// what was sampled, and sets the diverged flag. store_states=false keeps
/// reports only (snapshots then hold just the initial and final states).
Trajectory simulate(const Grid& g, const Params& prm, const IntegratorConfig& cfg,
                    const State& initial, int monitor_every, ReportFn report_fn = {},
                    std::ostream* log = nullptr, bool store_states = true);

}  // namespace clayer

#endif
