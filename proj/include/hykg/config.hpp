#pragma once

// Strict sectioned key = value run configuration.
//
//   [params]  K k1 k2 omega D_e M mu s_sign
//   [grid]    r_max N
//   [run]     engines n_max out formats intervals jobs
//   [sweep]   param start stop count scale
//
// '#' and ';' start comments. Unknown sections or keys, duplicates and
// malformed values are ConfigError.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hykg/error.hpp"
#include "hykg/hylleraas.hpp"
#include "hykg/io.hpp"
#include "hykg/level.hpp"

namespace hykg::config {

struct Sweep {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log = false;

  std::vector<double> values() const {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) {
      if (count == 1) {
        v.push_back(start);
      } else if (log) {
        v.push_back(start * std::pow(stop / start, static_cast<double>(i) / (count - 1)));
      } else {
        v.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
      }
    }
    if (count > 1) v.back() = stop;
    return v;
  }
};

struct RunConfig {
  model::HylleraasParams params = model::HylleraasParams::reference();
  std::optional<double> r_max;
  int N = 4000;
  std::vector<Engine> engines{std::begin(kAllEngines), std::end(kAllEngines)};
  int n_max = 3;
  std::string out = "out";
  bool csv = true;
  bool json = true;
  int intervals = 2000;
  int jobs = 1;
  std::optional<Sweep> sweep;

  bool selected(Engine e) const {
    for (Engine x : engines) {
      if (x == e) return true;
    }
    return false;
  }
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error(Errc::ConfigError, "empty list entry in '" + s + "'");
    out.push_back(item);
  }
  return out;
}

/// Assigns a numeric HylleraasParams field by name. Returns false for unknown names.
inline bool set_param(model::HylleraasParams& p, std::string_view name, double v) {
  if (name == "K") p.K = v;
  else if (name == "k1") p.k1 = v;
  else if (name == "k2") p.k2 = v;
  else if (name == "omega") p.omega = v;
  else if (name == "D_e") p.D_e = v;
  else if (name == "M") p.M = v;
  else if (name == "mu") p.mu = v;
  else return false;
  return true;
}

inline void validate(const RunConfig& c) {
  try {
    model::validate(c.params);
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, e.what());
  }
  if (c.N < 200) throw Error(Errc::ConfigError, "grid.N must be >= 200");
  if (c.r_max && !(*c.r_max > 0.0)) throw Error(Errc::ConfigError, "grid.r_max must be > 0");
  if (c.n_max < 0 || c.n_max > 10) throw Error(Errc::ConfigError, "run.n_max must be in [0, 10]");
  if (c.intervals < 1) throw Error(Errc::ConfigError, "run.intervals must be >= 1");
  if (c.jobs < 1) throw Error(Errc::ConfigError, "run.jobs must be >= 1");
  if (c.engines.empty()) throw Error(Errc::ConfigError, "run.engines is empty");
  if (c.out.empty()) throw Error(Errc::ConfigError, "run.out is empty");
  if (c.sweep) {
    const Sweep& s = *c.sweep;
    model::HylleraasParams probe = c.params;
    if (!set_param(probe, s.param, 1.0)) throw Error(Errc::ConfigError, "sweep.param unknown: " + s.param);
    if (s.count < 1) throw Error(Errc::ConfigError, "sweep.count must be >= 1");
    if (s.log && !(s.start > 0.0 && s.stop > 0.0)) throw Error(Errc::ConfigError, "log sweep needs positive ends");
    for (double v : s.values()) {
      probe = c.params;
      set_param(probe, s.param, v);
      try {
        model::validate(probe);
      } catch (const Error& e) {
        throw Error(Errc::ConfigError, std::string("sweep point invalid: ") + e.what());
      }
    }
  }
}

inline RunConfig parse(std::string_view text) {
  RunConfig c;
  static const std::map<std::string, std::set<std::string>> known = {
      {"params", {"K", "k1", "k2", "omega", "D_e", "M", "mu", "s_sign"}},
      {"grid", {"r_max", "N"}},
      {"run", {"engines", "n_max", "out", "formats", "intervals", "jobs"}},
      {"sweep", {"param", "start", "stop", "count", "scale"}},
  };
  std::string section;
  std::set<std::string> seen;
  std::set<std::string> seen_sections;
  std::map<std::string, std::string> sweep_keys;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ConfigError, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known.count(section)) fail("unknown section [" + section + "]");
      if (!seen_sections.insert(section).second) fail("duplicate section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail("key outside a section");
    if (!known.at(section).count(key)) fail("unknown key " + section + "." + key);
    if (!seen.insert(section + "." + key).second) fail("duplicate key " + section + "." + key);
    if (value.empty()) fail("empty value for " + section + "." + key);
    try {
      if (section == "params") {
        if (key == "s_sign") {
          if (value == "positive") c.params.s_sign = model::SSign::PositiveExponent;
          else if (value == "negative") c.params.s_sign = model::SSign::NegativeExponent;
          else fail("s_sign must be positive or negative");
        } else {
          set_param(c.params, key, io::parse_double(value));
        }
      } else if (section == "grid") {
        if (key == "r_max") c.r_max = io::parse_double(value);
        else c.N = static_cast<int>(io::parse_int(value));
      } else if (section == "run") {
        if (key == "engines") {
          c.engines.clear();
          for (const std::string& name : split_list(value)) {
            const auto e = engine_from_string(name);
            if (!e) fail("unknown engine " + name);
            c.engines.push_back(*e);
          }
        } else if (key == "n_max") {
          c.n_max = static_cast<int>(io::parse_int(value));
        } else if (key == "out") {
          c.out = value;
        } else if (key == "formats") {
          c.csv = c.json = false;
          for (const std::string& f : split_list(value)) {
            if (f == "csv") c.csv = true;
            else if (f == "json") c.json = true;
            else fail("unknown format " + f);
          }
        } else if (key == "intervals") {
          c.intervals = static_cast<int>(io::parse_int(value));
        } else {
          c.jobs = static_cast<int>(io::parse_int(value));
        }
      } else {
        sweep_keys[key] = value;
      }
    } catch (const Error& e) {
      if (e.code() == Errc::ConfigError && std::string_view(e.what()).find("line ") != std::string_view::npos) throw;
      fail(e.what());
    }
  }
  if (seen_sections.count("sweep")) {
    for (const char* k : {"param", "start", "stop", "count"}) {
      if (!sweep_keys.count(k)) throw Error(Errc::ConfigError, std::string("sweep.") + k + " missing");
    }
    Sweep s;
    s.param = sweep_keys["param"];
    s.start = io::parse_double(sweep_keys["start"]);
    s.stop = io::parse_double(sweep_keys["stop"]);
    s.count = static_cast<int>(io::parse_int(sweep_keys["count"]));
    const std::string scale = sweep_keys.count("scale") ? sweep_keys["scale"] : "linear";
    if (scale == "log") s.log = true;
    else if (scale != "linear") throw Error(Errc::ConfigError, "sweep.scale must be linear or log");
    c.sweep = s;
  }
  validate(c);
  return c;
}

inline RunConfig load(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error& e) {
    throw Error(Errc::ConfigError, e.what());
  }
  return parse(text);
}

}  // namespace hykg::config
