#ifndef CLAYER_STATE_HPP
#define CLAYER_STATE_HPP

#include "clayer/field.hpp"
#include "clayer/grid.hpp"

namespace clayer {

// ============================================================================
// First-order-in-time state of the reduced system. Keeping the time
// derivatives as explicit state makes the hyperbolic relaxation terms part
// of the data, matching the four-component initial condition.
// ============================================================================

/// Evolved fields: tangential velocity and magnetic component plus their
/// time derivatives. Homogeneous Dirichlet traces hold at both walls.
struct State {
  SpecField u, ut, b1, b1t;
  double t = 0.0;

  State() = default;
  explicit State(const Grid& g) : u(g), ut(g), b1(g), b1t(g) {}

  void zero() {
    u.zero();
    ut.zero();
    b1.zero();
    b1t.zero();
  }

  /// Re-pin the wall rows of all four fields to zero.
  void enforce_dirichlet() {
    u.zero_wall_rows();
    ut.zero_wall_rows();
    b1.zero_wall_rows();
    b1t.zero_wall_rows();
  }

  bool all_finite() const {
    return u.all_finite() && ut.all_finite() && b1.all_finite() && b1t.all_finite();
  }
};

}  // namespace clayer

#endif
