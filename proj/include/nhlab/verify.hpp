#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nhlab/propagate.hpp"

namespace nhlab::verify {

enum class Suite {
  Auxiliary,
  PseudoHerm,
  TransformRules,
  AnalyticResidual,
  DensityInvariance,
  Uncertainty,
  PropagationXcheck,
  InvertedResidual,
};

inline constexpr Suite kAllSuites[] = {
    Suite::Auxiliary,         Suite::PseudoHerm,  Suite::TransformRules,
    Suite::AnalyticResidual,  Suite::DensityInvariance, Suite::Uncertainty,
    Suite::PropagationXcheck, Suite::InvertedResidual,
};

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

/// A check passes when measured < tolerance (Below) or measured > tolerance (Above).
enum class Relation { Below, Above };

struct CheckEntry {
  std::string id;
  double measured = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::Below;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckEntry> entries;
  bool overall = true;
  double runtimeSeconds = 0.0;

  void add(std::string id, double measured, double tolerance, Relation rel = Relation::Below);
};

struct VerifyInputs {
  PhysParams params;
  GridSpec grid;
  TimeWindow window;
  prop::PropagationControls controls;
  std::uint64_t seed = 20240601;
};

SuiteReport run_suite(Suite name, const VerifyInputs& in);

// Helpers shared with the acceptance and unit tests.

/// Parameters of the requested regime: p itself when it matches, otherwise
/// the canonical companion (same m0, hbar, freq; A = B = 1/2; default branch).
PhysParams with_regime(const PhysParams& p, Regime r);

/// Window usable for p: w when alpha stays away from zero on it, otherwise
/// [0, 1/(2 freq)].
TimeWindow usable_window(const TimeWindow& w, const PhysParams& p);

/// Normalized Gaussian packet with randomized center, width, momentum and phase.
/// Centers are drawn from [-centerMax, centerMax], widths from [0.5 widthMax, widthMax].
WaveGrid random_gaussian(const GridSpec& g, std::mt19937_64& rng, double centerMax = 2.0,
                         double widthMax = 1.4);

double relative_l2(const WaveGrid& a, const WaveGrid& reference);

/// ||i hbar d_t psi - H(t) psi|| / ||H(t) psi|| for an exact state, with a
/// central time difference (step 1e-6) and fourth-order central differences
/// in x. With `apodize`, both fields are weighted by exp[-(x/xw)^8],
/// xw = 0.7 xMax, before the norms.
double tdse_residual(const analytic::AnalyticState& s, double t, const GridSpec& g, bool apodize);

/// Fine grid used for the inverted-regime residual.
GridSpec inverted_residual_grid();

/// Human-readable table.
std::string format_table(const SuiteReport& r);

}  // namespace nhlab::verify
