#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace nhlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

struct Options {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  bool noMetricDensity = false;
  int nMax = 5;
  std::string task = "analytic";
};

int cmd_analytic(const Options& opt);
int cmd_propagate(const Options& opt);
int cmd_verify(const Options& opt);
int cmd_uncertainty(const Options& opt);
int cmd_sweep(const Options& opt);

/// Parses argv and dispatches to one subcommand.
int run(int argc, char** argv);

}  // namespace nhlab::cli
