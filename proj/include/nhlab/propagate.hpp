#pragma once

#include <span>
#include <vector>

#include "nhlab/gridops.hpp"

namespace nhlab::prop {

struct PropagationControls {
  double dt = 1e-3;
  /// Halve the step while |lambda'/lambda| * dt exceeds this.
  double substepTrigger = 0.05;
  int maxHalvings = 10;
  int recordEvery = 10;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<WaveGrid> states;
  std::vector<double> etaNorms;
  std::vector<double> plainNorms;
};

PropagationControls validate_controls(const PropagationControls& c);

/// One Crank-Nicolson step of i hbar psi_t = [-kinetic d^2/dx^2 + V(x)] psi with
/// homogeneous Dirichlet ends and the compact fourth-order Laplacian
/// (1 + dx^2/12 D2)^{-1} D2, giving a single tridiagonal solve.
/// `potential` holds V at every grid point.
WaveGrid cn_step(const WaveGrid& s, double dt, double hbar, double kinetic,
                 std::span<const cdouble> potential);

/// Advances s from t to t + dt under H(t + dt/2). Throws BoundaryLeak if
/// the state is not compact before or after the step.
WaveGrid step(const WaveGrid& s, double t, double dt, const PhysParams& p);

/// Marches over the window with adaptive halving; records every
/// controls.recordEvery steps plus the final state.
Trajectory evolve(const WaveGrid& initial, const TimeWindow& window,
                  const PropagationControls& controls, const PhysParams& p);

}  // namespace nhlab::prop
