// Copyright 2026 The drne Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drne/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "drne/errors.hpp"
#include "json.hpp"

namespace drne {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void ConfigFail(const std::string& path, const std::string& what) {
  Fail(ErrorCode::kConfig, path + ": " + what);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void CheckObject(const json& j, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  if (!j.is_object()) ConfigFail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) ConfigFail(Join(path, item.key()), "unknown field");
  }
}

std::int64_t ReadInt(const json& j, const std::string& path) {
  if (!j.is_number_integer()) ConfigFail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t ReadSeed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  ConfigFail(path, "expected a nonnegative integer seed");
}

double ReadDouble(const json& j, const std::string& path) {
  if (!j.is_number()) ConfigFail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) ConfigFail(path, "expected a finite number");
  return v;
}

bool ReadBool(const json& j, const std::string& path) {
  if (!j.is_boolean()) ConfigFail(path, "expected true or false");
  return j.get<bool>();
}

UniformRange ReadRange(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) ConfigFail(path, "expected [lo, hi]");
  UniformRange r{ReadDouble(j[0], path + "[0]"), ReadDouble(j[1], path + "[1]")};
  if (r.lo > r.hi) ConfigFail(path, "lo must not exceed hi");
  return r;
}

StepSchedule ReadSchedule(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "theorem1") return StepSchedule::Theorem1();
    ConfigFail(path, "unknown schedule '" + j.get<std::string>() + "'");
  }
  CheckObject(j, path, {"kind", "value", "scale", "exponent"});
  if (!j.contains("kind") || !j["kind"].is_string()) ConfigFail(Join(path, "kind"), "expected a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "theorem1") return StepSchedule::Theorem1();
  if (kind == "constant") {
    if (!j.contains("value")) ConfigFail(Join(path, "value"), "required for constant schedules");
    const double v = ReadDouble(j["value"], Join(path, "value"));
    if (v <= 0.0) ConfigFail(Join(path, "value"), "must be positive");
    return StepSchedule::Constant(v);
  }
  if (kind == "power") {
    const double scale = j.contains("scale") ? ReadDouble(j["scale"], Join(path, "scale")) : 1.0;
    const double exponent =
        j.contains("exponent") ? ReadDouble(j["exponent"], Join(path, "exponent")) : 0.5;
    if (scale <= 0.0) ConfigFail(Join(path, "scale"), "must be positive");
    if (exponent < 0.0) ConfigFail(Join(path, "exponent"), "must be nonnegative");
    return StepSchedule::Power(scale, exponent);
  }
  ConfigFail(Join(path, "kind"), "unknown schedule kind '" + kind + "'");
}

ordered_json WriteSchedule(const StepSchedule& s) {
  switch (s.kind) {
    case StepSchedule::Kind::kTheorem1: return "theorem1";
    case StepSchedule::Kind::kConstant: return {{"kind", "constant"}, {"value", s.value}};
    case StepSchedule::Kind::kPower:
      return {{"kind", "power"}, {"scale", s.scale}, {"exponent", s.exponent}};
  }
  return "theorem1";
}

LogCadence ReadCadence(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "geometric") return LogCadence::Geometric();
    if (s == "full") return LogCadence::Full();
    ConfigFail(path, "unknown cadence '" + s + "'");
  }
  CheckObject(j, path, {"every", "checkpoints"});
  if (j.contains("every") == j.contains("checkpoints"))
    ConfigFail(path, "exactly one of 'every' or 'checkpoints' is required");
  if (j.contains("every")) {
    const auto k = ReadInt(j["every"], Join(path, "every"));
    if (k < 1) ConfigFail(Join(path, "every"), "must be >= 1");
    return LogCadence::Every(k);
  }
  const json& list = j["checkpoints"];
  const std::string lpath = Join(path, "checkpoints");
  if (!list.is_array()) ConfigFail(lpath, "expected an array");
  std::vector<std::int64_t> points;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto t = ReadInt(list[k], lpath + "[" + std::to_string(k) + "]");
    if (t < 1) ConfigFail(lpath + "[" + std::to_string(k) + "]", "must be >= 1");
    points.push_back(t);
  }
  return LogCadence::Explicit(std::move(points));
}

ordered_json WriteCadence(const LogCadence& c) {
  switch (c.kind) {
    case LogCadence::Kind::kGeometric: return "geometric";
    case LogCadence::Kind::kFull: return "full";
    case LogCadence::Kind::kEvery: return {{"every", c.every}};
    case LogCadence::Kind::kExplicit: return {{"checkpoints", c.points}};
  }
  return "geometric";
}

InstanceSpec ReadInstance(const json& j, const std::string& path) {
  CheckObject(j, path,
              {"family", "n", "n_i", "m", "alpha", "bounds", "seed", "xi1_range", "xi2_range"});
  InstanceSpec s = ExperimentConfig{}.instance;
  if (j.contains("family")) {
    const auto& f = j["family"];
    if (!f.is_string()) ConfigFail(Join(path, "family"), "expected a string");
    if (f == "cvar") s.family = CostFamily::kCvar;
    else if (f == "quadratic") s.family = CostFamily::kQuadratic;
    else ConfigFail(Join(path, "family"), "expected 'cvar' or 'quadratic'");
  }
  auto positive_int = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    const auto v = ReadInt(j[key], Join(path, key));
    if (v < 1 || v > 1000000) ConfigFail(Join(path, key), "must lie in [1, 10^6]");
    out = static_cast<int>(v);
  };
  positive_int("n", s.players);
  positive_int("n_i", s.decisions);
  positive_int("m", s.scenarios);
  if (j.contains("alpha")) s.alpha = ReadDouble(j["alpha"], Join(path, "alpha"));
  if (s.family == CostFamily::kCvar && !(s.alpha > 0.0 && s.alpha < 1.0))
    ConfigFail(Join(path, "alpha"), "must lie in (0, 1)");
  if (j.contains("bounds")) s.bounds = ReadDouble(j["bounds"], Join(path, "bounds"));
  if (s.bounds <= 0.0) ConfigFail(Join(path, "bounds"), "must be positive");
  if (j.contains("seed")) s.seed = ReadSeed(j["seed"], Join(path, "seed"));
  if (j.contains("xi1_range")) s.xi1 = ReadRange(j["xi1_range"], Join(path, "xi1_range"));
  if (s.xi1.lo <= 0.0) ConfigFail(Join(path, "xi1_range"), "lower end must be positive");
  if (j.contains("xi2_range")) s.xi2 = ReadRange(j["xi2_range"], Join(path, "xi2_range"));
  return s;
}

ordered_json WriteInstance(const InstanceSpec& s) {
  return {{"family", s.family == CostFamily::kCvar ? "cvar" : "quadratic"},
          {"n", s.players},
          {"n_i", s.decisions},
          {"m", s.scenarios},
          {"alpha", s.alpha},
          {"bounds", s.bounds},
          {"seed", s.seed},
          {"xi1_range", {s.xi1.lo, s.xi1.hi}},
          {"xi2_range", {s.xi2.lo, s.xi2.hi}}};
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kConfig, std::string("<root>: malformed JSON: ") + e.what());
  }
}

}  // namespace

ExperimentConfig ParseConfig(std::string_view text) {
  const json root = ParseJson(text);
  CheckObject(root, "", {"instance", "solver", "diagnostics", "output"});
  ExperimentConfig c;
  if (root.contains("instance")) c.instance = ReadInstance(root["instance"], "instance");

  if (root.contains("solver")) {
    const json& s = root["solver"];
    CheckObject(s, "solver",
                {"T", "batch_sizes", "schedule", "dual_schedule", "seeds", "log_cadence"});
    if (s.contains("T")) {
      c.solver.iterations = ReadInt(s["T"], "solver.T");
      if (c.solver.iterations < 1) ConfigFail("solver.T", "must be >= 1");
    }
    if (s.contains("batch_sizes")) {
      const json& list = s["batch_sizes"];
      if (!list.is_array() || list.empty())
        ConfigFail("solver.batch_sizes", "expected a nonempty array");
      c.solver.batch_sizes.clear();
      for (std::size_t k = 0; k < list.size(); ++k) {
        c.solver.batch_sizes.push_back(
            static_cast<int>(ReadInt(list[k], "solver.batch_sizes[" + std::to_string(k) + "]")));
      }
    }
    if (s.contains("schedule")) {
      c.solver.primal_schedule = ReadSchedule(s["schedule"], "solver.schedule");
      c.solver.dual_schedule = c.solver.primal_schedule;
    }
    if (s.contains("dual_schedule"))
      c.solver.dual_schedule = ReadSchedule(s["dual_schedule"], "solver.dual_schedule");
    if (s.contains("seeds")) {
      const json& list = s["seeds"];
      if (!list.is_array() || list.empty()) ConfigFail("solver.seeds", "expected a nonempty array");
      c.solver.seeds.clear();
      for (std::size_t k = 0; k < list.size(); ++k)
        c.solver.seeds.push_back(ReadSeed(list[k], "solver.seeds[" + std::to_string(k) + "]"));
    }
    if (s.contains("log_cadence"))
      c.solver.cadence = ReadCadence(s["log_cadence"], "solver.log_cadence");
  }
  for (std::size_t k = 0; k < c.solver.batch_sizes.size(); ++k) {
    const int b = c.solver.batch_sizes[k];
    if (b < 1 || b > c.instance.scenarios) {
      ConfigFail("solver.batch_sizes[" + std::to_string(k) + "]",
                 "batch size " + std::to_string(b) + " outside [1, m=" +
                     std::to_string(c.instance.scenarios) + "]");
    }
  }

  if (root.contains("diagnostics")) {
    const json& d = root["diagnostics"];
    CheckObject(d, "diagnostics", {"probe_samples", "vertex_probes", "probe_seed", "residual_step"});
    if (d.contains("probe_samples")) {
      const auto v = ReadInt(d["probe_samples"], "diagnostics.probe_samples");
      if (v < 0) ConfigFail("diagnostics.probe_samples", "must be >= 0");
      c.diagnostics.probe_samples = static_cast<int>(v);
    }
    if (d.contains("vertex_probes")) {
      const auto v = ReadInt(d["vertex_probes"], "diagnostics.vertex_probes");
      if (v < 0) ConfigFail("diagnostics.vertex_probes", "must be >= 0");
      c.diagnostics.vertex_probes = static_cast<int>(v);
    }
    if (d.contains("probe_seed"))
      c.diagnostics.probe_seed = ReadSeed(d["probe_seed"], "diagnostics.probe_seed");
    if (d.contains("residual_step")) {
      c.diagnostics.residual_step = ReadDouble(d["residual_step"], "diagnostics.residual_step");
      if (c.diagnostics.residual_step <= 0.0)
        ConfigFail("diagnostics.residual_step", "must be positive");
    }
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    CheckObject(o, "output", {"directory", "emit_svg", "emit_csv"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string() || o["directory"].get<std::string>().empty())
        ConfigFail("output.directory", "expected a nonempty string");
      c.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("emit_svg")) c.output.emit_svg = ReadBool(o["emit_svg"], "output.emit_svg");
    if (o.contains("emit_csv")) c.output.emit_csv = ReadBool(o["emit_csv"], "output.emit_csv");
  }
  return c;
}

std::string SerializeConfig(const ExperimentConfig& c) {
  ordered_json root;
  root["instance"] = WriteInstance(c.instance);
  root["solver"] = {{"T", c.solver.iterations},
                    {"batch_sizes", c.solver.batch_sizes},
                    {"schedule", WriteSchedule(c.solver.primal_schedule)},
                    {"dual_schedule", WriteSchedule(c.solver.dual_schedule)},
                    {"seeds", c.solver.seeds},
                    {"log_cadence", WriteCadence(c.solver.cadence)}};
  root["diagnostics"] = {{"probe_samples", c.diagnostics.probe_samples},
                         {"vertex_probes", c.diagnostics.vertex_probes},
                         {"probe_seed", c.diagnostics.probe_seed},
                         {"residual_step", c.diagnostics.residual_step}};
  root["output"] = {{"directory", c.output.directory},
                    {"emit_svg", c.output.emit_svg},
                    {"emit_csv", c.output.emit_csv}};
  return root.dump(2) + "\n";
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeInstance(const InstanceSpec& spec) {
  return WriteInstance(spec).dump(2) + "\n";
}

InstanceSpec ParseInstance(std::string_view text) {
  return ReadInstance(ParseJson(text), "instance");
}

}  // namespace drne
