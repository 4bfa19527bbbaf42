#include "nhlab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>
#include <vector>

#include "nhlab/auxsolve.hpp"
#include "nhlab/config.hpp"
#include "nhlab/error.hpp"
#include "nhlab/verify.hpp"

namespace nhlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigParse: return kExitConfig;
    case ErrorKind::NonPositiveScale:
    case ErrorKind::ComplexLambda:
    case ErrorKind::ZeroAuxiliary:
    case ErrorKind::InvalidGrid:
    case ErrorKind::InvalidWindow:
    case ErrorKind::AlphaZeroCrossing:
    case ErrorKind::InvalidControls:
    case ErrorKind::DegreeOutOfRange:
    case ErrorKind::RegimeMismatch: return kExitValidation;
    default: return kExitRuntime;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

// Loads and validates; parse problems and validation problems surface as
// distinct error kinds.
RunConfig prepare(const Options& opt) {
  RunConfig cfg = load_config(opt.config);
  if (opt.seed) cfg.seed = *opt.seed;
  cfg.params = validate_params(cfg.params);
  cfg.grid = validate_grid(cfg.grid);
  aux::validate_interval(cfg.window, cfg.params);
  cfg.controls = prop::validate_controls(cfg.controls);
  return cfg;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

std::vector<double> mesh_times(const RunConfig& cfg) {
  const double step = cfg.controls.dt * cfg.controls.recordEvery;
  std::vector<double> ts;
  for (long k = 0;; ++k) {
    const double t = cfg.window.t0 + k * step;
    if (t >= cfg.window.t1 - 1e-12 * std::max(1.0, std::abs(cfg.window.t1))) break;
    ts.push_back(t);
  }
  ts.push_back(cfg.window.t1);
  return ts;
}

}  // namespace

int cmd_analytic(const Options& opt) {
  return guarded([&] {
    const RunConfig cfg = prepare(opt);
    const auto state = analytic::make_state(cfg.params);
    const bool metric = cfg.params.regime == Regime::Harmonic && !opt.noMetricDensity;

    auto out = open_output(opt.out, "analytic_" + std::to_string(cfg.params.n) + ".csv");
    out << "t,x,re_psi,im_psi,abs2_plain" << (metric ? ",abs2_eta" : "") << "\n";
    for (double t : mesh_times(cfg)) {
      const auto psi = grid::sample_analytic(cfg.grid, t, state);
      std::vector<double> dens;
      if (metric) dens = grid::metric_density(psi, t, cfg.params);
      for (int i = 0; i < psi.size(); ++i) {
        const auto z = psi.amplitudes[i];
        out << num(t) << ',' << num(psi.x(i)) << ',' << num(z.real()) << ',' << num(z.imag())
            << ',' << num(std::norm(z));
        if (metric) out << ',' << num(dens[i]);
        out << '\n';
      }
    }
    return kExitOk;
  });
}

int cmd_propagate(const Options& opt) {
  return guarded([&] {
    const RunConfig cfg = prepare(opt);
    const auto state = analytic::make_state(cfg.params);
    const auto initial = grid::sample_analytic(cfg.grid, cfg.window.t0, state);
    const auto traj = prop::evolve(initial, cfg.window, cfg.controls, cfg.params);

    auto out = open_output(opt.out, "trajectory.csv");
    out << "t,eta_norm,plain_norm,l2_error_vs_analytic\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double t = traj.times[k];
      const auto exact = grid::sample_analytic(cfg.grid, t, state);
      out << num(t) << ',' << num(traj.etaNorms[k]) << ',' << num(traj.plainNorms[k]) << ','
          << num(verify::relative_l2(traj.states[k], exact)) << '\n';

      char name[40];
      std::snprintf(name, sizeof name, "snapshot_%04zu.csv", k);
      auto snap = open_output(opt.out / "snapshots", name);
      snap << "t,x,re_psi,im_psi\n";
      for (int i = 0; i < traj.states[k].size(); ++i) {
        const auto z = traj.states[k].amplitudes[i];
        snap << num(t) << ',' << num(traj.states[k].x(i)) << ',' << num(z.real()) << ','
             << num(z.imag()) << '\n';
      }
    }
    return kExitOk;
  });
}

int cmd_verify(const Options& opt) {
  return guarded([&] {
    const RunConfig cfg = prepare(opt);
    const verify::VerifyInputs in{cfg.params, cfg.grid, cfg.window, cfg.controls, cfg.seed};

    std::vector<std::future<verify::SuiteReport>> jobs;
    for (auto suite : verify::kAllSuites) {
      jobs.push_back(std::async(std::launch::async, [suite, &in] {
        try {
          return verify::run_suite(suite, in);
        } catch (const std::exception& e) {
          verify::SuiteReport r;
          r.suite = std::string(verify::to_string(suite));
          r.add(std::string("error: ") + e.what(), std::nan(""), 0.0);
          return r;
        }
      }));
    }

    json all = json::array();
    bool ok = true;
    for (auto& job : jobs) {
      const auto r = job.get();
      std::cout << verify::format_table(r);
      json entries = json::array();
      for (const auto& e : r.entries) {
        entries.push_back({{"id", e.id},
                           {"measured", std::isfinite(e.measured) ? json(e.measured) : json(nullptr)},
                           {"tolerance", e.tolerance},
                           {"relation", e.relation == verify::Relation::Below ? "below" : "above"},
                           {"pass", e.pass}});
      }
      json doc = {{"suite", r.suite}, {"entries", entries}, {"overall", r.overall},
                  {"runtimeSeconds", r.runtimeSeconds}};
      open_output(opt.out, "verify_" + r.suite + ".json") << doc.dump(2) << "\n";
      all.push_back(std::move(doc));
      ok = ok && r.overall;
    }
    open_output(opt.out, "verify_report.json") << all.dump(2) << "\n";
    std::cout << (ok ? "ALL SUITES PASS\n" : "SOME SUITES FAIL\n");
    return ok ? kExitOk : kExitRuntime;
  });
}

int cmd_uncertainty(const Options& opt) {
  return guarded([&] {
    const RunConfig cfg = prepare(opt);
    if (cfg.params.regime != Regime::Harmonic) {
      throw Error(ErrorKind::RegimeMismatch, "uncertainty relations need the harmonic regime");
    }
    if (opt.nMax < 0 || opt.nMax > 64) {
      throw Error(ErrorKind::DegreeOutOfRange, "nMax outside [0, 64]");
    }
    const double t = cfg.window.t1;
    auto out = open_output(opt.out, "uncertainty.csv");
    out << "n,dX,dP,product,bound\n";
    for (int n = 0; n <= opt.nMax; ++n) {
      const auto psi = grid::sample_analytic(cfg.grid, t, analytic::make_state(cfg.params, n));
      const auto r = grid::uncertainty_report(psi, t, cfg.params);
      const double dX = std::sqrt(r.varX);
      const double dP = std::sqrt(r.varP);
      out << n << ',' << num(dX) << ',' << num(dP) << ',' << num(dX * dP) << ',' << num(r.bound)
          << '\n';
    }
    return kExitOk;
  });
}

int cmd_sweep(const Options& opt) {
  return guarded([&] {
    const RunConfig base = load_config(opt.config);
    if (base.sweep.empty()) throw Error(ErrorKind::ConfigParse, "config has no 'sweep' section");
    int (*task)(const Options&) = nullptr;
    if (opt.task == "analytic") task = cmd_analytic;
    else if (opt.task == "propagate") task = cmd_propagate;
    else if (opt.task == "uncertainty") task = cmd_uncertainty;
    else if (opt.task == "verify") task = cmd_verify;
    else throw Error(ErrorKind::ConfigParse, "unknown sweep task '" + opt.task + "'");

    // Cartesian product, last axis fastest.
    std::vector<std::pair<std::string, std::vector<double>>> axes(base.sweep.begin(), base.sweep.end());
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.second.size();

    auto index = open_output(opt.out, "sweep_index.csv");
    index << "point,dir";
    for (const auto& a : axes) index << ',' << a.first;
    index << ",exit_code\n";

    std::vector<Options> points(total);
    std::vector<std::vector<double>> values(total);
    for (std::size_t k = 0; k < total; ++k) {
      RunConfig cfg = base;
      cfg.sweep.clear();
      std::size_t rest = k;
      for (auto a = axes.rbegin(); a != axes.rend(); ++a) {
        const double v = a->second[rest % a->second.size()];
        rest /= a->second.size();
        apply_override(cfg, a->first, v);
        values[k].insert(values[k].begin(), v);
      }
      char dir[32];
      std::snprintf(dir, sizeof dir, "point_%04zu", k);
      points[k] = opt;
      points[k].out = opt.out / dir;
      points[k].config = points[k].out / "config.json";
      open_output(points[k].out, "config.json") << to_json(cfg).dump(2) << "\n";
    }

    std::vector<int> codes(total, kExitOk);
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < total; begin += width) {
      std::vector<std::future<int>> batch;
      for (std::size_t k = begin; k < std::min(total, begin + width); ++k) {
        batch.push_back(std::async(std::launch::async, task, std::cref(points[k])));
      }
      for (std::size_t k = begin; k < std::min(total, begin + width); ++k) {
        codes[k] = batch[k - begin].get();
      }
    }

    int worst = kExitOk;
    for (std::size_t k = 0; k < total; ++k) {
      index << k << ',' << points[k].out.filename().string();
      for (double v : values[k]) index << ',' << num(v);
      index << ',' << codes[k] << '\n';
      worst = std::max(worst, codes[k]);
    }
    return worst;
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for time-dependent non-Hermitian Hamiltonians"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON run configuration")->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--seed", seed, "override the configured seed")
        ->each([&](const std::string&) { opt.seed = seed; });
  };
  auto* analyticCmd = app.add_subcommand("analytic", "sample exact solutions on the (t, x) mesh");
  common(analyticCmd);
  analyticCmd->add_flag("--no-metric-density", opt.noMetricDensity, "omit the abs2_eta column");
  auto* propagateCmd = app.add_subcommand("propagate", "Crank-Nicolson run against the exact solution");
  common(propagateCmd);
  auto* verifyCmd = app.add_subcommand("verify", "run every verification suite");
  common(verifyCmd);
  auto* uncertaintyCmd = app.add_subcommand("uncertainty", "metric-weighted uncertainty products");
  common(uncertaintyCmd);
  uncertaintyCmd->add_option("--nmax", opt.nMax, "largest quantum number");
  auto* sweepCmd = app.add_subcommand("sweep", "Cartesian parameter sweep");
  common(sweepCmd);
  sweepCmd->add_option("--task", opt.task, "analytic | propagate | uncertainty | verify");
  sweepCmd->add_flag("--no-metric-density", opt.noMetricDensity, "omit the abs2_eta column");
  sweepCmd->add_option("--nmax", opt.nMax, "largest quantum number");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (analyticCmd->parsed()) return cmd_analytic(opt);
  if (propagateCmd->parsed()) return cmd_propagate(opt);
  if (verifyCmd->parsed()) return cmd_verify(opt);
  if (uncertaintyCmd->parsed()) return cmd_uncertainty(opt);
  return cmd_sweep(opt);
}

}  // namespace nhlab::cli
