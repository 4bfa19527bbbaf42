#include "nhlab/config.hpp"

#include <fstream>
#include <set>

#include "nhlab/error.hpp"

namespace nhlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ConfigParse, msg); }

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail("'" + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail("'" + key + "' must be an integer");
  return v.get<int>();
}

cdouble complex_value(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail("'" + key + "' must be a number or [re, im]");
}

template <typename Fn>
void read(const json& obj, const char* key, Fn&& fn) {
  if (auto it = obj.find(key); it != obj.end()) fn(*it);
}

void parse_params(const json& j, PhysParams& p) {
  reject_unknown(j, "params", {"m0", "hbar", "regime", "freq", "coeffA", "coeffB", "n",
                               "energyInverted", "branchInverted"});
  read(j, "m0", [&](const json& v) { p.m0 = number(v, "m0"); });
  read(j, "hbar", [&](const json& v) { p.hbar = number(v, "hbar"); });
  read(j, "freq", [&](const json& v) { p.freq = number(v, "freq"); });
  read(j, "n", [&](const json& v) { p.n = integer(v, "n"); });
  read(j, "coeffA", [&](const json& v) { p.coeffA = complex_value(v, "coeffA"); });
  read(j, "coeffB", [&](const json& v) { p.coeffB = complex_value(v, "coeffB"); });
  read(j, "energyInverted",
       [&](const json& v) { p.energyInverted = complex_value(v, "energyInverted"); });
  read(j, "regime", [&](const json& v) {
    const auto s = v.is_string() ? v.get<std::string>() : std::string{};
    if (s == "Harmonic") p.regime = Regime::Harmonic;
    else if (s == "Inverted") p.regime = Regime::Inverted;
    else fail("'regime' must be \"Harmonic\" or \"Inverted\"");
  });
  read(j, "branchInverted", [&](const json& v) {
    const auto s = v.is_string() ? v.get<std::string>() : std::string{};
    if (s == "Plus") p.branchInverted = Branch::Plus;
    else if (s == "Minus") p.branchInverted = Branch::Minus;
    else fail("'branchInverted' must be \"Plus\" or \"Minus\"");
  });
}

json complex_json(cdouble z) { return json::array({z.real(), z.imag()}); }

}  // namespace

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "config", {"params", "grid", "window", "controls", "seed", "sweep"});
  RunConfig cfg;
  read(doc, "params", [&](const json& v) { parse_params(v, cfg.params); });
  read(doc, "grid", [&](const json& g) {
    reject_unknown(g, "grid", {"xMin", "xMax", "numPoints"});
    read(g, "xMin", [&](const json& v) { cfg.grid.xMin = number(v, "xMin"); });
    read(g, "xMax", [&](const json& v) { cfg.grid.xMax = number(v, "xMax"); });
    read(g, "numPoints", [&](const json& v) { cfg.grid.numPoints = integer(v, "numPoints"); });
  });
  read(doc, "window", [&](const json& w) {
    reject_unknown(w, "window", {"t0", "t1", "maxStep"});
    read(w, "t0", [&](const json& v) { cfg.window.t0 = number(v, "t0"); });
    read(w, "t1", [&](const json& v) { cfg.window.t1 = number(v, "t1"); });
    read(w, "maxStep", [&](const json& v) { cfg.window.maxStep = number(v, "maxStep"); });
  });
  read(doc, "controls", [&](const json& c) {
    reject_unknown(c, "controls", {"dt", "substepTrigger", "maxHalvings", "recordEvery"});
    read(c, "dt", [&](const json& v) { cfg.controls.dt = number(v, "dt"); });
    read(c, "substepTrigger",
         [&](const json& v) { cfg.controls.substepTrigger = number(v, "substepTrigger"); });
    read(c, "maxHalvings", [&](const json& v) { cfg.controls.maxHalvings = integer(v, "maxHalvings"); });
    read(c, "recordEvery", [&](const json& v) { cfg.controls.recordEvery = integer(v, "recordEvery"); });
  });
  read(doc, "seed", [&](const json& v) {
    if (!v.is_number_unsigned()) fail("'seed' must be a non-negative integer");
    cfg.seed = v.get<std::uint64_t>();
  });
  read(doc, "sweep", [&](const json& s) {
    if (!s.is_object()) fail("'sweep' must be an object");
    for (const auto& [key, values] : s.items()) {
      if (!values.is_array() || values.empty()) fail("sweep axis '" + key + "' must be a non-empty array");
      std::vector<double> axis;
      for (const auto& v : values) axis.push_back(number(v, key));
      RunConfig probe;
      apply_override(probe, key, axis.front());  // rejects unknown axes
      cfg.sweep[key] = std::move(axis);
    }
  });
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  const auto& p = cfg.params;
  json params = {{"m0", p.m0},
                 {"hbar", p.hbar},
                 {"regime", p.regime == Regime::Harmonic ? "Harmonic" : "Inverted"},
                 {"freq", p.freq},
                 {"coeffA", complex_json(p.coeffA)},
                 {"coeffB", complex_json(p.coeffB)},
                 {"n", p.n},
                 {"branchInverted", p.branchInverted == Branch::Plus ? "Plus" : "Minus"}};
  if (p.energyInverted) params["energyInverted"] = complex_json(*p.energyInverted);
  return {{"params", params},
          {"grid", {{"xMin", cfg.grid.xMin}, {"xMax", cfg.grid.xMax}, {"numPoints", cfg.grid.numPoints}}},
          {"window", {{"t0", cfg.window.t0}, {"t1", cfg.window.t1}, {"maxStep", cfg.window.maxStep}}},
          {"controls",
           {{"dt", cfg.controls.dt},
            {"substepTrigger", cfg.controls.substepTrigger},
            {"maxHalvings", cfg.controls.maxHalvings},
            {"recordEvery", cfg.controls.recordEvery}}},
          {"seed", cfg.seed}};
}

void apply_override(RunConfig& cfg, const std::string& key, double value) {
  const auto dot = key.find('.');
  const std::string field = dot == std::string::npos ? key : key.substr(dot + 1);
  auto& p = cfg.params;
  auto& c = cfg.controls;
  if (field == "m0") p.m0 = value;
  else if (field == "hbar") p.hbar = value;
  else if (field == "freq") p.freq = value;
  else if (field == "n") p.n = static_cast<int>(value);
  else if (field == "coeffA") p.coeffA = value;
  else if (field == "coeffB") p.coeffB = value;
  else if (field == "xMin") cfg.grid.xMin = value;
  else if (field == "xMax") cfg.grid.xMax = value;
  else if (field == "numPoints") cfg.grid.numPoints = static_cast<int>(value);
  else if (field == "t0") cfg.window.t0 = value;
  else if (field == "t1") cfg.window.t1 = value;
  else if (field == "maxStep") cfg.window.maxStep = value;
  else if (field == "dt") c.dt = value;
  else if (field == "substepTrigger") c.substepTrigger = value;
  else if (field == "maxHalvings") c.maxHalvings = static_cast<int>(value);
  else if (field == "recordEvery") c.recordEvery = static_cast<int>(value);
  else fail("unsupported sweep/override key '" + key + "'");
}

}  // namespace nhlab
