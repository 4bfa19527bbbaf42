#include "nhlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "nhlab/auxsolve.hpp"
#include "nhlab/error.hpp"
#include "nhlab/specfun.hpp"

namespace nhlab::verify {

using grid::Direction;

namespace {

constexpr int kRandomTimes = 100;
constexpr int kRandomPairs = 20;

struct SuiteName {
  Suite suite;
  std::string_view name;
};

constexpr SuiteName kNames[] = {
    {Suite::Auxiliary, "auxiliary"},
    {Suite::PseudoHerm, "pseudoherm"},
    {Suite::TransformRules, "transform_rules"},
    {Suite::AnalyticResidual, "analytic_residual"},
    {Suite::DensityInvariance, "density_invariance"},
    {Suite::Uncertainty, "uncertainty"},
    {Suite::PropagationXcheck, "propagation_xcheck"},
    {Suite::InvertedResidual, "inverted_residual"},
};

std::string regime_tag(Regime r) { return r == Regime::Harmonic ? "harmonic" : "inverted"; }

std::mt19937_64 suite_rng(std::uint64_t seed, Suite s) {
  return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(s) + 1);
}

WaveGrid scaled(WaveGrid s, cdouble a) {
  for (auto& z : s.amplitudes) z *= a;
  return s;
}

WaveGrid combine(const WaveGrid& a, cdouble ca, const WaveGrid& b, cdouble cb) {
  WaveGrid out = a;
  for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
    out.amplitudes[i] = ca * a.amplitudes[i] + cb * b.amplitudes[i];
  }
  return out;
}

WaveGrid multiply(const WaveGrid& s, const std::function<cdouble(double)>& f) {
  WaveGrid out = s;
  for (int i = 0; i < s.size(); ++i) out.amplitudes[i] *= f(s.x(i));
  return out;
}

std::vector<double> times_in(const TimeWindow& w, int count) {
  std::vector<double> ts(count);
  for (int i = 0; i < count; ++i) ts[i] = w.t0 + (w.t1 - w.t0) * i / (count - 1);
  return ts;
}

// ---------------------------------------------------------------- auxiliary

void auxiliary_checks(SuiteReport& rep, const PhysParams& p, const TimeWindow& w,
                      std::mt19937_64& rng) {
  const std::string tag = regime_tag(p.regime);
  const double w2 = signed_omega0_sq(p);
  std::uniform_real_distribution<double> pick(w.t0, w.t1);

  double closedForm = 0.0, fdAlpha = 0.0, b08 = 0.0, omega = 0.0, fdLambda = 0.0;
  for (int i = 0; i < kRandomTimes; ++i) {
    const double t = pick(rng);
    const auto a = aux::alpha_derivs(t, p);
    const double scale = std::max(1.0, std::abs(w2 * a.alpha));
    closedForm = std::max(closedForm, std::abs(a.ddalpha + w2 * a.alpha) / scale);

    // alpha' from differences of alpha, alpha'' from differences of alpha'.
    constexpr double h = 1e-5;
    const double d1 = (aux::alpha(t + h, p) - aux::alpha(t - h, p)) / (2 * h);
    const double d2 =
        (aux::alpha_derivs(t + h, p).dalpha - aux::alpha_derivs(t - h, p).dalpha) / (2 * h);
    fdAlpha = std::max({fdAlpha, std::abs(d1 - a.dalpha) / std::max(1.0, std::abs(a.dalpha)),
                        std::abs(d2 + w2 * a.alpha) / scale});

    const auto l = aux::lambda_derivs(t, p);
    b08 = std::max(b08, aux::omega_sq_residual(l, w2) / aux::omega_sq_residual_scale(l, w2));
    omega = std::max(omega, std::abs(aux::omega_sq(l) - w2) / std::abs(w2));

    constexpr double hl = 1e-4;
    const double lp = aux::lambda_derivs(t + hl, p).lambda;
    const double lm = aux::lambda_derivs(t - hl, p).lambda;
    const double dl = (lp - lm) / (2 * hl);
    const double ddl = (lp - 2 * l.lambda + lm) / (hl * hl);
    const double s1 = std::max({std::abs(l.dlambda), std::abs(l.lambda) * p.freq, 1e-300});
    const double s2 = std::max({std::abs(l.ddlambda), std::abs(l.lambda) * p.freq * p.freq, 1e-300});
    fdLambda = std::max({fdLambda, std::abs(dl - l.dlambda) / s1, std::abs(ddl - l.ddlambda) / s2});
  }
  rep.add(tag + ".alpha_ode_closed_form", closedForm, 1e-10);
  rep.add(tag + ".alpha_ode_finite_difference", fdAlpha, 1e-10);
  rep.add(tag + ".auxiliary_equation_residual", b08, 1e-9);
  rep.add(tag + ".omega_sq_constancy", omega, 1e-9);
  rep.add(tag + ".lambda_derivs_vs_finite_difference", fdLambda, 1e-6);
}

SuiteReport suite_auxiliary(const VerifyInputs& in, std::mt19937_64& rng) {
  SuiteReport rep;
  for (Regime r : {Regime::Harmonic, Regime::Inverted}) {
    const PhysParams p = with_regime(in.params, r);
    auxiliary_checks(rep, p, usable_window(in.window, p), rng);
  }
  return rep;
}

// --------------------------------------------------------------- pseudoherm

SuiteReport suite_pseudoherm(const VerifyInputs& in, std::mt19937_64& rng) {
  SuiteReport rep;
  const PhysParams& p = in.params;
  const double eta = 2.0 * analytic::dyson_coefficient(p);
  double adjoint = 0.0, hermitian = 0.0;
  for (int i = 0; i < kRandomPairs; ++i) {
    const auto s1 = random_gaussian(in.grid, rng);
    const auto s2 = random_gaussian(in.grid, rng);

    const auto etaH2 = grid::apply_exp_alpha_p(grid::apply_H0(s2, p), eta, p);
    const cdouble lhs = grid::inner(s1, etaH2);
    const cdouble rhs = grid::inner(grid::apply_H0(s1, p), grid::apply_exp_alpha_p(s2, eta, p));
    adjoint = std::max(adjoint, std::abs(lhs - rhs) / (grid::norm(s1) * grid::norm(etaH2)));

    const auto h2 = grid::apply_h(s2, p);
    const auto h1 = grid::apply_h(s1, p);
    const cdouble a = grid::inner(s1, h2);
    const cdouble b = std::conj(grid::inner(s2, h1));
    hermitian = std::max(hermitian, std::abs(a - b) / (grid::norm(s1) * grid::norm(h2)));
  }
  const std::string tag = regime_tag(p.regime);
  rep.add(tag + ".eta_adjoint_identity", adjoint, 1e-7);
  rep.add(tag + ".similarity_hermitian", hermitian, 1e-7);
  return rep;
}

// ---------------------------------------------------------- transform_rules

SuiteReport suite_transform_rules(const VerifyInputs& in, std::mt19937_64& rng) {
  SuiteReport rep;
  const PhysParams& p = in.params;
  const TimeWindow w = usable_window(in.window, p);
  double xRule = 0.0, pRule = 0.0, x2Rule = 0.0, p2Rule = 0.0;
  for (double t : times_in(w, 3)) {
    const auto l = aux::lambda_derivs(t, p);
    const double root = std::sqrt(l.lambda);
    for (int i = 0; i < 4; ++i) {
      // F^+ dilates by 1/sqrt(lambda); keep the packet well inside the grid.
      const auto g = random_gaussian(in.grid, rng, 1.0, 0.8);
      const auto pre = grid::apply_F(g, t, p, Direction::Inverse);
      auto conj = [&](const WaveGrid& inner) { return grid::apply_F(inner, t, p, Direction::Forward); };

      // F x F^+ = x / sqrt(lambda)
      xRule = std::max(xRule, relative_l2(conj(grid::apply_x(pre)),
                                          multiply(g, [&](double x) { return x / root; })));
      // F x^2 F^+ = x^2 / lambda
      x2Rule = std::max(x2Rule,
                        relative_l2(conj(grid::apply_x(grid::apply_x(pre))),
                                    multiply(g, [&](double x) { return x * x / l.lambda; })));
      // F p F^+ = sqrt(lambda) p - m0 lambda' x / (2 sqrt(lambda))
      const auto pg = grid::apply_p(g, p.hbar);
      const auto pRhs = combine(pg, root, grid::apply_x(g), -p.m0 * l.dlambda / (2.0 * root));
      pRule = std::max(pRule, relative_l2(conj(grid::apply_p(pre, p.hbar)), pRhs));
      // F p^2 F^+ = lambda p^2 - m0 lambda'/2 {x, p} + m0^2 lambda'^2 x^2 / (4 lambda)
      const auto ppg = grid::apply_p(pg, p.hbar);
      const auto xp = grid::apply_x(pg);
      const auto px = grid::apply_p(grid::apply_x(g), p.hbar);
      auto p2Rhs = combine(ppg, l.lambda, combine(xp, 1.0, px, 1.0), -0.5 * p.m0 * l.dlambda);
      p2Rhs = combine(p2Rhs, 1.0, grid::apply_x(grid::apply_x(g)),
                      p.m0 * p.m0 * l.dlambda * l.dlambda / (4.0 * l.lambda));
      p2Rule = std::max(p2Rule,
                        relative_l2(conj(grid::apply_p(grid::apply_p(pre, p.hbar), p.hbar)), p2Rhs));
    }
  }
  rep.add("x_rule", xRule, 1e-7);
  rep.add("p_rule", pRule, 1e-7);
  rep.add("x2_rule", x2Rule, 1e-7);
  rep.add("p2_rule", p2Rule, 1e-7);
  return rep;
}

// -------------------------------------------------------- analytic_residual

SuiteReport suite_analytic_residual(const VerifyInputs& in) {
  SuiteReport rep;
  const PhysParams p = with_regime(in.params, Regime::Harmonic);
  const TimeWindow w = usable_window(in.window, p);
  for (int n = 0; n <= 3; ++n) {
    const auto s = analytic::make_state(p, n);
    double worst = 0.0;
    for (double t : times_in(w, 5)) worst = std::max(worst, tdse_residual(s, t, in.grid, false));
    rep.add("harmonic.n" + std::to_string(n) + ".tdse_residual", worst, 1e-5);
  }
  return rep;
}

// ------------------------------------------------------- density_invariance

SuiteReport suite_density_invariance(const VerifyInputs& in) {
  SuiteReport rep;
  const PhysParams p = with_regime(in.params, Regime::Harmonic);
  const TimeWindow w = usable_window(in.window, p);
  const auto ts = times_in(w, 5);
  double normDev = 0.0, orth = 0.0, frameNorm = 0.0;
  for (int n = 0; n <= 3; ++n) {
    const auto s = analytic::make_state(p, n);
    double worst = 0.0;
    for (double t : ts) {
      const auto psi = grid::sample_analytic(in.grid, t, s);
      const auto dens = grid::metric_density(psi, t, p);
      for (int i = 0; i < in.grid.numPoints; ++i) {
        const double ref = std::norm(specfun::eigenstate_ho(n, in.grid.x(i), p));
        worst = std::max(worst, std::abs(dens[i] - ref));
      }
      normDev = std::max(normDev, std::abs(grid::inner_eta_tilde(psi, psi, t, p) - 1.0));
      if (n > 0) {
        const auto other = grid::sample_analytic(in.grid, t, analytic::make_state(p, n - 1));
        orth = std::max(orth, std::abs(grid::inner_eta_tilde(other, psi, t, p)));
      }
      // eta-norm of the F-frame solution phi(t) carries only a phase.
      const auto phi = grid::sample(in.grid, t, [&](double y) { return analytic::phi_t(y, t, s); });
      const auto phi0 =
          grid::sample(in.grid, w.t0, [&](double y) { return analytic::phi_t(y, w.t0, s); });
      const double beta2 = 2.0 * analytic::dyson_coefficient(p);
      const double nt = grid::inner(phi, grid::apply_exp_alpha_p(phi, beta2, p)).real();
      const double n0 = grid::inner(phi0, grid::apply_exp_alpha_p(phi0, beta2, p)).real();
      frameNorm = std::max(frameNorm, std::abs(nt - n0) / n0);
    }
    rep.add("n" + std::to_string(n) + ".metric_density_deviation", worst, 1e-6);
  }
  rep.add("eta_tilde_norm_deviation", normDev, 1e-7);
  rep.add("eta_tilde_orthogonality", orth, 1e-7);
  rep.add("phi_eta_norm_constancy", frameNorm, 1e-10);
  return rep;
}

// -------------------------------------------------------------- uncertainty

SuiteReport suite_uncertainty(const VerifyInputs& in) {
  SuiteReport rep;
  const PhysParams p = with_regime(in.params, Regime::Harmonic);
  const TimeWindow w = usable_window(in.window, p);
  const double t = w.t1;
  for (int n = 0; n <= 5; ++n) {
    const auto psi = grid::sample_analytic(in.grid, t, analytic::make_state(p, n));
    const auto r = grid::uncertainty_report(psi, t, p);
    const double level = n + 0.5;
    const std::string tag = "n" + std::to_string(n);
    rep.add(tag + ".product", std::abs(r.product - p.hbar * level), 1e-6);
    rep.add(tag + ".x2", std::abs(r.varX + std::norm(r.meanX) - p.hbar / (p.m0 * p.freq) * level),
            1e-6);
    rep.add(tag + ".p2", std::abs(r.varP + std::norm(r.meanP) - p.hbar * p.m0 * p.freq * level),
            1e-6);
    rep.add(tag + ".means", std::max(std::abs(r.meanX), std::abs(r.meanP)), 1e-8);
    rep.add(tag + ".bound_margin", r.product - r.bound * (1.0 - grid::kBoundSlack), 0.0,
            Relation::Above);
  }
  return rep;
}

// ------------------------------------------------------- propagation_xcheck

struct RunSummary {
  double l2Error = 0.0;
  double etaDrift = 0.0;
  double plainVariation = 0.0;
};

RunSummary run_against(const VerifyInputs& in, const PhysParams& p, const TimeWindow& w,
                       const std::function<WaveGrid(double)>& exact) {
  const auto traj = prop::evolve(exact(w.t0), w, in.controls, p);
  RunSummary out;
  out.l2Error = relative_l2(traj.states.back(), exact(traj.times.back()));
  const double e0 = traj.etaNorms.front();
  const double p0 = traj.plainNorms.front();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out.etaDrift = std::max(out.etaDrift, std::abs(traj.etaNorms[i] - e0) / e0);
    out.plainVariation = std::max(out.plainVariation, std::abs(traj.plainNorms[i] - p0) / p0);
  }
  return out;
}

SuiteReport suite_propagation_xcheck(const VerifyInputs& in) {
  SuiteReport rep;
  const PhysParams p = with_regime(in.params, Regime::Harmonic);
  const TimeWindow w = usable_window(in.window, p);

  const auto state = analytic::make_state(p);
  const auto single =
      run_against(in, p, w, [&](double t) { return grid::sample_analytic(in.grid, t, state); });
  const std::string tag = "n" + std::to_string(p.n);
  rep.add(tag + ".l2_mismatch", single.l2Error, 1e-4);
  rep.add(tag + ".eta_norm_drift", single.etaDrift, 1e-5);

  // (psi_0 + psi_1)/sqrt(2) has <x>_plain != 0, so its plain norm moves.
  const auto s0 = analytic::make_state(p, 0);
  const auto s1 = analytic::make_state(p, 1);
  const double c = 1.0 / std::sqrt(2.0);
  const auto mixed = run_against(in, p, w, [&](double t) {
    return combine(grid::sample_analytic(in.grid, t, s0), c, grid::sample_analytic(in.grid, t, s1),
                   c);
  });
  rep.add("superposition.l2_mismatch", mixed.l2Error, 1e-4);
  rep.add("superposition.eta_norm_drift", mixed.etaDrift, 1e-5);
  rep.add("superposition.plain_norm_variation", mixed.plainVariation, 1e-3, Relation::Above);
  return rep;
}

// -------------------------------------------------------- inverted_residual

SuiteReport suite_inverted_residual(const VerifyInputs& in) {
  SuiteReport rep;
  const PhysParams p = with_regime(in.params, Regime::Inverted);
  TimeWindow w = in.window;
  w.t1 = std::min(w.t1, w.t0 + 0.5);
  w = usable_window(w, p);
  const GridSpec g = inverted_residual_grid();
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    PhysParams pb = p;
    pb.branchInverted = b;
    pb.energyInverted.reset();
    for (int n = 0; n <= 2; ++n) {
      const auto s = analytic::make_state(pb, n);
      double worst = 0.0;
      for (double t : times_in(w, 3)) worst = std::max(worst, tdse_residual(s, t, g, true));
      rep.add(std::string(b == Branch::Plus ? "plus" : "minus") + ".n" + std::to_string(n) +
                  ".apodized_residual",
              worst, 1e-5);
    }
  }
  return rep;
}

}  // namespace

std::string_view to_string(Suite s) {
  for (const auto& n : kNames) {
    if (n.suite == s) return n.name;
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.suite;
  }
  return std::nullopt;
}

void SuiteReport::add(std::string id, double measured, double tolerance, Relation rel) {
  const bool ok = rel == Relation::Below ? measured < tolerance : measured > tolerance;
  entries.push_back({std::move(id), measured, tolerance, rel, ok && std::isfinite(measured)});
  overall = overall && entries.back().pass;
}

SuiteReport run_suite(Suite name, const VerifyInputs& in) {
  const auto start = std::chrono::steady_clock::now();
  auto rng = suite_rng(in.seed, name);
  SuiteReport rep;
  switch (name) {
    case Suite::Auxiliary: rep = suite_auxiliary(in, rng); break;
    case Suite::PseudoHerm: rep = suite_pseudoherm(in, rng); break;
    case Suite::TransformRules: rep = suite_transform_rules(in, rng); break;
    case Suite::AnalyticResidual: rep = suite_analytic_residual(in); break;
    case Suite::DensityInvariance: rep = suite_density_invariance(in); break;
    case Suite::Uncertainty: rep = suite_uncertainty(in); break;
    case Suite::PropagationXcheck: rep = suite_propagation_xcheck(in); break;
    case Suite::InvertedResidual: rep = suite_inverted_residual(in); break;
  }
  rep.suite = std::string(to_string(name));
  rep.runtimeSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

PhysParams with_regime(const PhysParams& p, Regime r) {
  if (p.regime == r) return validate_params(p);
  PhysParams out;
  out.m0 = p.m0;
  out.hbar = p.hbar;
  out.regime = r;
  out.freq = p.freq;
  out.coeffA = 0.5;
  out.coeffB = 0.5;
  out.n = p.n;
  return validate_params(out);
}

TimeWindow usable_window(const TimeWindow& w, const PhysParams& p) {
  try {
    aux::validate_interval(w, p);
    return w;
  } catch (const Error&) {
    return {0.0, 0.5 / p.freq, w.maxStep};
  }
}

WaveGrid random_gaussian(const GridSpec& g, std::mt19937_64& rng, double centerMax,
                         double widthMax) {
  std::uniform_real_distribution<double> center(-centerMax, centerMax);
  std::uniform_real_distribution<double> width(0.5 * widthMax, widthMax);
  std::uniform_real_distribution<double> momentum(-1.5, 1.5);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const double c = center(rng), sigma = width(rng), k0 = momentum(rng), theta = phase(rng);
  auto s = grid::sample(g, 0.0, [&](double x) {
    const double u = (x - c) / sigma;
    return std::polar(std::exp(-0.5 * u * u), k0 * x + theta);
  });
  return scaled(s, 1.0 / grid::norm(s));
}

double relative_l2(const WaveGrid& a, const WaveGrid& reference) {
  return grid::norm(combine(a, 1.0, reference, -1.0)) / grid::norm(reference);
}

double tdse_residual(const analytic::AnalyticState& s, double t, const GridSpec& g, bool apodize) {
  const PhysParams& p = s.params;
  constexpr double h = 1e-6;
  const auto psi = grid::sample(g, t, [&](double x) { return analytic::psi(x, t, s); });
  const auto fwd = grid::sample(g, t, [&](double x) { return analytic::psi(x, t + h, s); });
  const auto bwd = grid::sample(g, t, [&](double x) { return analytic::psi(x, t - h, s); });
  const auto l = aux::lambda_derivs(t, p);
  const double kin = p.hbar * p.hbar / (2.0 * p.m0 * l.lambda);
  const double root = std::sqrt(l.lambda);
  const double dx = g.dx();
  const double xw = 0.7 * g.xMax;
  const auto& u = psi.amplitudes;

  double r2 = 0.0, h2 = 0.0;
  for (int i = 2; i < g.numPoints - 2; ++i) {
    const double x = g.x(i);
    const cdouble d2 =
        (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] + 16.0 * u[i - 1] - u[i - 2]) / (12.0 * dx * dx);
    const cdouble hPsi = -kin * d2 + cdouble{0.0, root * x} * u[i];
    const cdouble dt = (fwd.amplitudes[i] - bwd.amplitudes[i]) / (2.0 * h);
    const cdouble res = cdouble{0.0, p.hbar} * dt - hPsi;
    const double weight = apodize ? std::exp(-std::pow(x / xw, 8)) : 1.0;
    r2 += std::norm(weight * res);
    h2 += std::norm(weight * hPsi);
  }
  return std::sqrt(r2 / h2);
}

GridSpec inverted_residual_grid() { return {-8.0, 8.0, 4096}; }

std::string format_table(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << (r.overall ? "  PASS" : "  FAIL") << "  (" << r.runtimeSeconds
     << " s)\n";
  for (const auto& e : r.entries) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-4s %-48s %12.4e %s %.1e\n", e.pass ? "ok" : "FAIL",
                  e.id.c_str(), e.measured, e.relation == Relation::Below ? "<" : ">",
                  e.tolerance);
    os << line;
  }
  return os.str();
}

}  // namespace nhlab::verify
