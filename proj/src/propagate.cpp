#include "nhlab/propagate.hpp"

#include <cmath>
#include <sstream>

#include "nhlab/auxsolve.hpp"
#include "nhlab/error.hpp"

namespace nhlab::prop {

PropagationControls validate_controls(const PropagationControls& c) {
  if (!(c.dt > 0.0)) throw Error(ErrorKind::InvalidControls, "dt must be positive");
  if (c.maxHalvings < 0 || c.maxHalvings > 20) {
    throw Error(ErrorKind::InvalidControls, "maxHalvings must lie in [0, 20]");
  }
  if (!(c.substepTrigger > 0.0)) {
    throw Error(ErrorKind::InvalidControls, "substepTrigger must be positive");
  }
  if (c.recordEvery < 1) throw Error(ErrorKind::InvalidControls, "recordEvery must be >= 1");
  return c;
}

WaveGrid cn_step(const WaveGrid& s, double dt, double hbar, double kinetic,
                 std::span<const cdouble> potential) {
  if (dt == 0.0) return s;
  const int n = s.size();
  const int m = n - 2;  // interior unknowns
  const double dx = s.spec.dx();
  const double k = kinetic / (dx * dx);
  const cdouble a{0.0, dt / (2.0 * hbar)};
  constexpr double kSide = 1.0 / 12.0;
  constexpr double kMid = 10.0 / 12.0;

  // B H = -k D2 + B V with B = (1, 10, 1)/12; solve (B + aBH) u' = (B - aBH) u.
  std::vector<cdouble> lower(m), diag(m), upper(m), rhs(m);
  const auto& u = s.amplitudes;
  for (int r = 0; r < m; ++r) {
    const int i = r + 1;
    const cdouble bhLeft = -k + kSide * potential[i - 1];
    const cdouble bhMid = 2.0 * k + kMid * potential[i];
    const cdouble bhRight = -k + kSide * potential[i + 1];
    lower[r] = kSide + a * bhLeft;
    diag[r] = kMid + a * bhMid;
    upper[r] = kSide + a * bhRight;
    rhs[r] = (kSide - a * bhLeft) * u[i - 1] + (kMid - a * bhMid) * u[i] +
             (kSide - a * bhRight) * u[i + 1];
  }
  // Dirichlet ends: u'_0 = u'_{n-1} = 0, so the boundary columns drop out.

  // Thomas algorithm.
  for (int r = 1; r < m; ++r) {
    const cdouble w = lower[r] / diag[r - 1];
    diag[r] -= w * upper[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  WaveGrid out{s.spec, std::vector<cdouble>(n), s.timestamp};
  out.amplitudes[m] = rhs[m - 1] / diag[m - 1];
  for (int r = m - 2; r >= 0; --r) {
    out.amplitudes[r + 1] = (rhs[r] - upper[r] * out.amplitudes[r + 2]) / diag[r];
  }
  return out;
}

namespace {

void check_leak(const WaveGrid& s, double t) {
  // Dirichlet zeros the end points; the first interior samples carry the leak.
  const int n = s.size();
  double peak = 0.0;
  for (const auto& z : s.amplitudes) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return;
  const double edge = std::max({std::abs(s.amplitudes[0]), std::abs(s.amplitudes[1]),
                                std::abs(s.amplitudes[n - 2]), std::abs(s.amplitudes[n - 1])});
  if (edge >= grid::kCompactTol * peak) {
    std::ostringstream msg;
    msg << "boundary amplitude ratio " << edge / peak << " at t = " << t;
    throw Error(ErrorKind::BoundaryLeak, msg.str(), t);
  }
}

}  // namespace

WaveGrid step(const WaveGrid& s, double t, double dt, const PhysParams& p) {
  check_leak(s, t);
  if (dt == 0.0) return s;
  const double tm = t + 0.5 * dt;
  const auto l = aux::lambda_derivs(tm, p);
  const double root = std::sqrt(l.lambda);
  std::vector<cdouble> potential(s.size());
  for (int i = 0; i < s.size(); ++i) potential[i] = cdouble{0.0, root * s.x(i)};
  WaveGrid out = cn_step(s, dt, p.hbar, p.hbar * p.hbar / (2.0 * p.m0 * l.lambda), potential);
  out.timestamp = t + dt;
  check_leak(out, t + dt);
  return out;
}

Trajectory evolve(const WaveGrid& initial, const TimeWindow& window,
                  const PropagationControls& controls, const PhysParams& p) {
  aux::validate_interval(window, p);
  validate_controls(controls);

  const double base = std::min(controls.dt, window.maxStep);
  const auto steps = static_cast<long>(std::ceil((window.t1 - window.t0) / base - 1e-9));
  const double h = (window.t1 - window.t0) / steps;

  Trajectory traj;
  auto record = [&](const WaveGrid& s, double t) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.etaNorms.push_back(std::sqrt(std::abs(grid::inner_eta_tilde(s, s, t, p).real())));
    traj.plainNorms.push_back(grid::norm(s));
  };

  WaveGrid state = initial;
  state.timestamp = window.t0;
  record(state, window.t0);
  for (long i = 0; i < steps; ++i) {
    const double t = window.t0 + i * h;
    const auto l = aux::lambda_derivs(t, p);
    double sub = h;
    int halvings = 0;
    while (std::abs(l.dlambda / l.lambda) * sub > controls.substepTrigger) {
      if (++halvings > controls.maxHalvings) {
        throw Error(ErrorKind::StepCollapse, "step halving limit exceeded", t);
      }
      sub *= 0.5;
    }
    const long parts = 1L << halvings;
    for (long k = 0; k < parts; ++k) state = step(state, t + k * sub, sub, p);
    const double tNext = i + 1 == steps ? window.t1 : window.t0 + (i + 1) * h;
    state.timestamp = tNext;
    if ((i + 1) % controls.recordEvery == 0 || i + 1 == steps) record(state, tNext);
  }
  return traj;
}

}  // namespace nhlab::prop
