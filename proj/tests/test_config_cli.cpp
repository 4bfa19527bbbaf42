#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "nhlab/cli.hpp"
#include "nhlab/config.hpp"
#include "nhlab/verify.hpp"
#include "oracles.hpp"

using namespace nhlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("nhlab_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

json small_config() {
  return json::parse(R"({
    "params": {"m0": 1.0, "hbar": 1.0, "regime": "Harmonic", "freq": 1.0,
               "coeffA": [0.5, 0.0], "coeffB": [0.5, 0.0], "n": 0},
    "grid": {"xMin": -14.0, "xMax": 14.0, "numPoints": 561},
    "window": {"t0": 0.0, "t1": 1.0, "maxStep": 0.001},
    "controls": {"dt": 0.001, "substepTrigger": 0.05, "maxHalvings": 10, "recordEvery": 250},
    "seed": 7
  })");
}

fs::path write_config(const fs::path& dir, const json& doc, const std::string& name = "config.json") {
  const fs::path file = dir / name;
  std::ofstream(file) << doc.dump(2);
  return file;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nhlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

Csv read_csv(const fs::path& file) {
  Csv csv;
  std::ifstream in(file);
  std::string line, cell;
  std::getline(in, line);
  std::stringstream hs(line);
  while (std::getline(hs, cell, ',')) csv.header.push_back(cell);
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(small_config());
  CHECK(cfg.grid.numPoints == 561);
  CHECK(cfg.controls.recordEvery == 250);
  CHECK(cfg.seed == 7);

  json complex = small_config();
  complex["params"]["coeffA"] = json::array({0.3, 0.4});
  complex["params"]["coeffB"] = json::array({0.3, -0.4});
  CHECK(parse_config(complex).params.coeffA == cdouble{0.3, 0.4});

  const RunConfig back = parse_config(to_json(cfg));
  CHECK(back.grid == cfg.grid);
  CHECK(back.params.coeffA == cfg.params.coeffA);
  CHECK(back.controls.dt == cfg.controls.dt);

  CHECK(parse_config(json::object()).grid == GridSpec{});
}

TEST_CASE("config errors") {
  json bad = small_config();
  bad["params"]["mass"] = 1.0;
  CHECK_ERROR_KIND(parse_config(bad), ErrorKind::ConfigParse);
  bad = small_config();
  bad["params"]["regime"] = "Sideways";
  CHECK_ERROR_KIND(parse_config(bad), ErrorKind::ConfigParse);
  bad = small_config();
  bad["grid"]["numPoints"] = "many";
  CHECK_ERROR_KIND(parse_config(bad), ErrorKind::ConfigParse);
  bad = small_config();
  bad["sweep"] = {{"colour", {1, 2}}};
  CHECK_ERROR_KIND(parse_config(bad), ErrorKind::ConfigParse);
  CHECK_ERROR_KIND(load_config("/nonexistent/nhlab.json"), ErrorKind::ConfigParse);
}

TEST_CASE("overrides") {
  RunConfig cfg = parse_config(small_config());
  apply_override(cfg, "n", 3);
  apply_override(cfg, "controls.dt", 0.01);
  apply_override(cfg, "params.freq", 2.0);
  CHECK(cfg.params.n == 3);
  CHECK(cfg.controls.dt == 0.01);
  CHECK(cfg.params.freq == 2.0);
  CHECK_ERROR_KIND(apply_override(cfg, "nonsense", 1.0), ErrorKind::ConfigParse);
}

TEST_CASE("suite names round trip") {
  for (auto s : verify::kAllSuites) {
    const auto parsed = verify::parse_suite(verify::to_string(s));
    REQUIRE(parsed);
    CHECK(*parsed == s);
  }
  CHECK_FALSE(verify::parse_suite("nope"));
}

TEST_CASE("suite reports") {
  verify::SuiteReport r;
  r.add("small", 1e-9, 1e-8);
  CHECK(r.overall);
  r.add("above", 0.5, 1e-3, verify::Relation::Above);
  CHECK(r.overall);
  r.add("nan", std::nan(""), 1.0);
  CHECK_FALSE(r.entries.back().pass);
  CHECK_FALSE(r.overall);
}

TEST_CASE("cli exit codes") {
  TempDir tmp;
  CHECK(run_cli({"verify", "--config", (tmp.path / "missing.json").string()}) == cli::kExitConfig);

  std::ofstream(tmp.path / "broken.json") << "{ not json";
  CHECK(run_cli({"analytic", "--config", (tmp.path / "broken.json").string()}) == cli::kExitConfig);

  json neg = small_config();
  neg["params"]["m0"] = -1.0;
  CHECK(run_cli({"analytic", "--config", write_config(tmp.path, neg).string(), "--out",
                 tmp.path.string()}) == cli::kExitValidation);

  json zero = small_config();
  zero["window"]["t1"] = 2.0;
  CHECK(run_cli({"analytic", "--config", write_config(tmp.path, zero).string(), "--out",
                 tmp.path.string()}) == cli::kExitValidation);

  CHECK(run_cli({"frobnicate"}) == cli::kExitConfig);
}

TEST_CASE("analytic CSV: header, constant metric density, nodal line, determinism") {
  TempDir tmp;
  const auto cfg0 = write_config(tmp.path, small_config(), "n0.json");
  REQUIRE(run_cli({"analytic", "--config", cfg0.string(), "--out", (tmp.path / "a").string()}) == 0);
  const Csv c0 = read_csv(tmp.path / "a" / "analytic_0.csv");
  CHECK(c0.header == std::vector<std::string>{"t", "x", "re_psi", "im_psi", "abs2_plain", "abs2_eta"});
  REQUIRE(c0.rows.size() == 5 * 561);

  const int eta = c0.column("abs2_eta");
  double worst = 0.0;
  for (int i = 0; i < 561; ++i) {
    for (int k = 1; k < 5; ++k) {
      worst = std::max(worst, std::abs(c0.rows[k * 561 + i][eta] - c0.rows[i][eta]));
    }
  }
  CHECK(worst < 1e-6);

  json one = small_config();
  one["params"]["n"] = 1;
  const auto cfg1 = write_config(tmp.path, one, "n1.json");
  REQUIRE(run_cli({"analytic", "--config", cfg1.string(), "--out", (tmp.path / "b").string()}) == 0);
  const Csv c1 = read_csv(tmp.path / "b" / "analytic_1.csv");
  for (int k = 0; k < 5; ++k) {
    const auto& row = c1.rows[k * 561 + 280];
    CHECK(std::abs(row[1]) < 1e-12);
    CHECK(row[c1.column("abs2_eta")] < 1e-12);
  }

  REQUIRE(run_cli({"analytic", "--config", cfg0.string(), "--out", (tmp.path / "c").string()}) == 0);
  CHECK(slurp(tmp.path / "a" / "analytic_0.csv") == slurp(tmp.path / "c" / "analytic_0.csv"));

  REQUIRE(run_cli({"analytic", "--config", cfg0.string(), "--out", (tmp.path / "d").string(),
                   "--no-metric-density"}) == 0);
  CHECK(read_csv(tmp.path / "d" / "analytic_0.csv").column("abs2_eta") == -1);
}

TEST_CASE("inverted analytic output omits the metric density") {
  TempDir tmp;
  json inv = small_config();
  inv["params"]["regime"] = "Inverted";
  inv["window"]["t1"] = 0.5;
  const auto file = write_config(tmp.path, inv);
  REQUIRE(run_cli({"analytic", "--config", file.string(), "--out", tmp.path.string()}) == 0);
  const Csv c = read_csv(tmp.path / "analytic_0.csv");
  CHECK(c.header == std::vector<std::string>{"t", "x", "re_psi", "im_psi", "abs2_plain"});
}

TEST_CASE("propagate writes a trajectory that tracks the exact solution") {
  TempDir tmp;
  json doc = small_config();
  doc["grid"] = {{"xMin", -18.0}, {"xMax", 18.0}, {"numPoints", 2048}};
  const auto file = write_config(tmp.path, doc);
  REQUIRE(run_cli({"propagate", "--config", file.string(), "--out", tmp.path.string()}) == 0);
  const Csv c = read_csv(tmp.path / "trajectory.csv");
  CHECK(c.header == std::vector<std::string>{"t", "eta_norm", "plain_norm", "l2_error_vs_analytic"});
  REQUIRE(c.rows.size() == 5);
  CHECK(c.rows.back()[0] == 1.0);
  CHECK(c.rows.back()[3] < 1e-4);
  CHECK(fs::exists(tmp.path / "snapshots" / "snapshot_0004.csv"));
}

TEST_CASE("uncertainty CSV") {
  TempDir tmp;
  json doc = small_config();
  doc["grid"] = {{"xMin", -18.0}, {"xMax", 18.0}, {"numPoints", 2048}};
  const auto file = write_config(tmp.path, doc);
  REQUIRE(run_cli({"uncertainty", "--config", file.string(), "--out", tmp.path.string(), "--nmax", "5"}) == 0);
  const Csv c = read_csv(tmp.path / "uncertainty.csv");
  CHECK(c.header == std::vector<std::string>{"n", "dX", "dP", "product", "bound"});
  REQUIRE(c.rows.size() == 6);
  for (int n = 0; n <= 5; ++n) {
    CHECK(std::abs(c.rows[n][3] - (n + 0.5)) < 1e-6);
    CHECK(c.rows[n][4] == 0.5);
  }
}

TEST_CASE("sweep expands the Cartesian product") {
  TempDir tmp;
  json doc = small_config();
  doc["sweep"] = {{"n", {0, 1}}, {"params.freq", {1.0, 2.0, 3.0}}};
  doc["window"]["t1"] = 0.3;  // alpha = cos(freq t) stays positive for freq <= 3
  const auto file = write_config(tmp.path, doc);
  REQUIRE(run_cli({"sweep", "--config", file.string(), "--out", tmp.path.string(), "--task",
                   "uncertainty", "--nmax", "1"}) == 0);
  const std::string index = slurp(tmp.path / "sweep_index.csv");
  CHECK(index.rfind("point,dir,n,params.freq,exit_code\n", 0) == 0);
  for (int k = 0; k < 6; ++k) {
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%04d", k);
    CHECK(fs::exists(tmp.path / dir / "uncertainty.csv"));
    CHECK(fs::exists(tmp.path / dir / "config.json"));
  }
  const auto last = load_config(tmp.path / "point_0005" / "config.json");
  CHECK(last.params.n == 1);
  CHECK(last.params.freq == 3.0);
}

TEST_CASE("verify exits non-zero when the time step is too coarse") {
  TempDir tmp;
  json doc = small_config();
  doc["grid"] = {{"xMin", -18.0}, {"xMax", 18.0}, {"numPoints", 2048}};
  doc["window"]["maxStep"] = 0.05;
  doc["controls"]["dt"] = 0.05;
  doc["controls"]["recordEvery"] = 1;
  const auto file = write_config(tmp.path, doc);
  CHECK(run_cli({"verify", "--config", file.string(), "--out", tmp.path.string()}) == cli::kExitRuntime);
  const json report = json::parse(slurp(tmp.path / "verify_propagation_xcheck.json"));
  CHECK_FALSE(report["overall"].get<bool>());
  CHECK(fs::exists(tmp.path / "verify_report.json"));
}
