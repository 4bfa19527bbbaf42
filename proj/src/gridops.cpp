#include "nhlab/gridops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhlab/auxsolve.hpp"
#include "nhlab/error.hpp"
#include "nhlab/fft.hpp"

namespace nhlab::grid {

namespace {

void require_same_grid(const WaveGrid& a, const WaveGrid& b) {
  if (!(a.spec == b.spec) || a.amplitudes.size() != b.amplitudes.size()) {
    throw Error(ErrorKind::GridMismatch, "states live on different grids");
  }
}

double max_abs(std::span<const cdouble> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

// Applies a real multiplier to the spectrum of s.
WaveGrid spectral_multiply(const WaveGrid& s, const std::function<double(double)>& symbol) {
  WaveGrid out = s;
  auto& fft = Fft::local(s.size());
  fft.forward(out.amplitudes);
  const auto k = wavenumbers(s.spec);
  for (int j = 0; j < s.size(); ++j) out.amplitudes[j] *= symbol(k[j]);
  fft.inverse(out.amplitudes);
  return out;
}

}  // namespace

WaveGrid sample(const GridSpec& spec, double t, const std::function<cdouble(double)>& f) {
  WaveGrid s{validate_grid(spec), std::vector<cdouble>(spec.numPoints), t};
  for (int i = 0; i < spec.numPoints; ++i) s.amplitudes[i] = f(spec.x(i));
  return s;
}

WaveGrid sample_analytic(const GridSpec& spec, double t, const analytic::AnalyticState& st) {
  const auto l = aux::lambda_derivs(t, st.params);  // fails early on alpha = 0
  (void)l;
  return sample(spec, t, [&](double x) { return analytic::psi(x, t, st); });
}

double boundary_ratio(const WaveGrid& s) {
  const double peak = max_abs(s.amplitudes);
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(s.amplitudes.front()), std::abs(s.amplitudes.back())) / peak;
}

bool is_compact(const WaveGrid& s, double tol) { return boundary_ratio(s) < tol; }

std::vector<double> wavenumbers(const GridSpec& spec) {
  const int n = spec.numPoints;
  const double dk = 2.0 * std::numbers::pi / (n * spec.dx());
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) k[j] = dk * (j < (n + 1) / 2 ? j : j - n);
  return k;
}

std::vector<cdouble> interpolate(const WaveGrid& s, std::span<const double> points) {
  const int n = s.size();
  std::vector<cdouble> c = s.amplitudes;
  Fft::local(n).forward(c);
  for (auto& v : c) v /= static_cast<double>(n);

  const double x0 = s.spec.xMin;
  const double xEnd = s.spec.xMax;
  const double dx = s.spec.dx();
  const double dk = 2.0 * std::numbers::pi / (n * dx);
  const int positive = (n + 1) / 2;          // j = 0 .. positive-1
  const int negative = n / 2 - (n % 2 == 0);  // j = 1 .. negative, k = -j dk
  const bool nyquist = n % 2 == 0;
  const double slack = 1e-9 * dx;

  std::vector<cdouble> out(points.size());
  for (std::size_t q = 0; q < points.size(); ++q) {
    const double xq = points[q];
    if (xq < x0 - slack || xq > xEnd + slack) continue;
    const double d = xq - x0;
    const cdouble z = std::polar(1.0, dk * d);
    const cdouble zc = std::conj(z);
    // Horner on the positive and negative halves.
    cdouble pos{};
    for (int j = positive - 1; j >= 0; --j) pos = pos * z + c[j];
    cdouble neg{};
    for (int j = negative; j >= 1; --j) neg = neg * zc + c[n - j];
    neg *= zc;
    cdouble v = pos + neg;
    if (nyquist) v += c[n / 2] * std::cos(dk * (n / 2) * d);
    out[q] = v;
  }
  return out;
}

WaveGrid apply_F(const WaveGrid& s, double t, const PhysParams& p, Direction dir) {
  const auto l = aux::lambda_derivs(t, p);
  const double root = std::sqrt(l.lambda);
  const int n = s.size();

  std::vector<double> points(n);
  for (int i = 0; i < n; ++i) points[i] = dir == Direction::Forward ? s.x(i) / root : s.x(i) * root;
  auto values = interpolate(s, points);

  WaveGrid out{s.spec, std::move(values), s.timestamp};
  const double amp = std::pow(l.lambda, dir == Direction::Forward ? -0.25 : 0.25);
  const double chirp = dir == Direction::Forward ? p.m0 * l.dlambda / (4.0 * l.lambda * p.hbar)
                                                 : -p.m0 * l.dlambda / (4.0 * p.hbar);
  for (int i = 0; i < n; ++i) {
    const double x = s.x(i);
    out.amplitudes[i] *= std::polar(amp, chirp * x * x);
  }
  if (!is_compact(out)) {
    throw Error(ErrorKind::InterpolationOverrun, "dilated state reaches the grid boundary", t);
  }
  return out;
}

WaveGrid apply_exp_alpha_p(const WaveGrid& s, double alphaCoeff, const PhysParams& p) {
  if (alphaCoeff == 0.0) return s;
  const int n = s.size();
  WaveGrid out = s;
  auto& fft = Fft::local(n);
  fft.forward(out.amplitudes);
  const auto k = wavenumbers(s.spec);

  const double peak = max_abs(out.amplitudes);
  if (peak == 0.0) return s;
  // Round-off plateau: largest coefficient in the top quarter of |k|.
  const double kMax = std::abs(k[n / 2]);
  double floor = 0.0;
  for (int j = 0; j < n; ++j) {
    if (std::abs(k[j]) > 0.75 * kMax) floor = std::max(floor, std::abs(out.amplitudes[j]));
  }
  const double cutoff = std::max(kSpectralFloor * peak, 10.0 * floor);

  for (int j = 0; j < n; ++j) {
    auto& c = out.amplitudes[j];
    if (std::abs(c) <= cutoff) {
      c = 0.0;
      continue;
    }
    c *= std::exp(alphaCoeff * p.hbar * k[j]);
    if (!(std::abs(c) <= kSpectralGuard * peak)) {
      throw Error(ErrorKind::SpectralOverflow,
                  "exp[alpha p] amplifies the spectrum beyond the dynamic-range guard",
                  s.timestamp);
    }
  }
  fft.inverse(out.amplitudes);
  return out;
}

cdouble inner(const WaveGrid& a, const WaveGrid& b) {
  require_same_grid(a, b);
  const int n = a.size();
  cdouble sum{};
  for (int i = 0; i < n; ++i) sum += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  sum -= 0.5 * (std::conj(a.amplitudes.front()) * b.amplitudes.front() +
                std::conj(a.amplitudes.back()) * b.amplitudes.back());
  return sum * a.spec.dx();
}

double norm(const WaveGrid& s) { return std::sqrt(std::max(0.0, inner(s, s).real())); }

cdouble inner_eta_tilde(const WaveGrid& s1, const WaveGrid& s2, double t, const PhysParams& p) {
  require_same_grid(s1, s2);
  const auto a = apply_F(s1, t, p, Direction::Forward);
  const auto b = apply_F(s2, t, p, Direction::Forward);
  const auto etaB = apply_exp_alpha_p(b, 2.0 * analytic::dyson_coefficient(p), p);
  return inner(a, etaB);
}

WaveGrid metric_frame(const WaveGrid& s, double t, const PhysParams& p) {
  return apply_exp_alpha_p(apply_F(s, t, p, Direction::Forward), analytic::dyson_coefficient(p),
                           p);
}

std::vector<double> metric_density(const WaveGrid& s, double t, const PhysParams& p) {
  const auto g = metric_frame(s, t, p);
  std::vector<double> rho(g.amplitudes.size());
  std::transform(g.amplitudes.begin(), g.amplitudes.end(), rho.begin(),
                 [](cdouble z) { return std::norm(z); });
  return rho;
}

WaveGrid apply_p(const WaveGrid& s, double hbar) {
  const int n = s.size();
  WaveGrid out = s;
  auto& fft = Fft::local(n);
  fft.forward(out.amplitudes);
  const auto k = wavenumbers(s.spec);
  for (int j = 0; j < n; ++j) {
    // Odd derivative: drop the unpaired Nyquist mode.
    const double kj = (n % 2 == 0 && j == n / 2) ? 0.0 : k[j];
    out.amplitudes[j] *= hbar * kj;
  }
  fft.inverse(out.amplitudes);
  return out;
}

WaveGrid apply_x(const WaveGrid& s) {
  WaveGrid out = s;
  for (int i = 0; i < s.size(); ++i) out.amplitudes[i] *= s.x(i);
  return out;
}

WaveGrid apply_H0(const WaveGrid& s, const PhysParams& p) {
  const double kin = p.hbar * p.hbar / (2.0 * p.m0);
  WaveGrid out = spectral_multiply(s, [kin](double k) { return kin * k * k; });
  const double quad = 0.5 * p.m0 * signed_omega0_sq(p);
  for (int i = 0; i < s.size(); ++i) {
    const double x = s.x(i);
    out.amplitudes[i] += cdouble{quad * x * x, x} * s.amplitudes[i];
  }
  return out;
}

WaveGrid apply_h(const WaveGrid& s, const PhysParams& p) {
  const double beta = analytic::dyson_coefficient(p);
  return apply_exp_alpha_p(apply_H0(apply_exp_alpha_p(s, -beta, p), p), beta, p);
}

namespace {

cdouble frame_moment(Observable op, const WaveGrid& g, double hbar) {
  switch (op) {
    case Observable::X: return inner(g, apply_x(g));
    case Observable::X2: {
      const auto xg = apply_x(g);
      return inner(xg, xg);
    }
    case Observable::P: return inner(g, apply_p(g, hbar));
    case Observable::P2: {
      const auto pg = apply_p(g, hbar);
      return inner(pg, pg);
    }
  }
  return {};
}

}  // namespace

cdouble moment(Observable op, const WaveGrid& s, double t, const PhysParams& p) {
  return frame_moment(op, metric_frame(s, t, p), p.hbar);
}

ObservableReport uncertainty_report(const WaveGrid& s, double t, const PhysParams& p) {
  const auto g = metric_frame(s, t, p);
  ObservableReport r;
  r.t = t;
  r.etaNorm = inner(g, g).real();
  const double w = r.etaNorm > 0.0 ? 1.0 / r.etaNorm : 0.0;
  r.meanX = frame_moment(Observable::X, g, p.hbar) * w;
  r.meanP = frame_moment(Observable::P, g, p.hbar) * w;
  const cdouble x2 = frame_moment(Observable::X2, g, p.hbar) * w;
  const cdouble p2 = frame_moment(Observable::P2, g, p.hbar) * w;
  r.varX = std::max(0.0, (x2 - r.meanX * r.meanX).real());
  r.varP = std::max(0.0, (p2 - r.meanP * r.meanP).real());
  r.product = std::sqrt(r.varX * r.varP);
  r.bound = 0.5 * p.hbar;
  r.satisfied = r.product >= r.bound * (1.0 - kBoundSlack);
  return r;
}

}  // namespace nhlab::grid
