//
// Copyright 2026 The pmlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pmlgame/serialization.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmlgame/error.h"

namespace pmlgame {
namespace {

void ConfigCheck(bool ok, const std::string& path, const std::string& what) {
  if (!ok) Fail(ErrorCode::kConfigError, path + ": " + what);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void AppendDouble(std::string* out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out->append(buf);
}

void AppendSequence(std::string* out, const Sequence& s) {
  out->push_back('[');
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out->append(",\n    ");
    out->push_back('[');
    for (std::size_t i = 0; i < s[k].size(); ++i) {
      if (i) out->push_back(',');
      out->push_back('[');
      for (Eigen::Index c = 0; c < s[k][i].size(); ++c) {
        if (c) out->push_back(',');
        AppendDouble(out, s[k][i][c]);
      }
      out->push_back(']');
    }
    out->push_back(']');
  }
  out->push_back(']');
}

Sequence SequenceFromJson(const Json& j, const std::string& path) {
  ConfigCheck(j.is_array(), path, "expected an array of iterations");
  Sequence s;
  s.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string kp = path + "[" + std::to_string(k) + "]";
    ConfigCheck(j[k].is_array(), kp, "expected an array of players");
    Profile p;
    for (std::size_t i = 0; i < j[k].size(); ++i) {
      p.push_back(VecFromJson(j[k][i], kp + "[" + std::to_string(i) + "]"));
    }
    s.push_back(std::move(p));
  }
  return s;
}

}  // namespace

Json VecToJson(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vec VecFromJson(const Json& j, const std::string& path) {
  ConfigCheck(j.is_array(), path, "expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    ConfigCheck(j[i].is_number(), path, "expected numeric entries");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Json MatToJson(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(VecToJson(m.row(r).transpose()));
  }
  return out;
}

Mat MatFromJson(const Json& j, const std::string& path) {
  ConfigCheck(j.is_array() && !j.empty(), path,
              "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vec row = VecFromJson(j[r], path + "[" + std::to_string(r) + "]");
    ConfigCheck(static_cast<std::size_t>(row.size()) == cols, path,
                "rows must have equal length");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

void RequireKnownKeys(const Json& j, const std::string& path,
                      std::initializer_list<const char*> allowed) {
  ConfigCheck(j.is_object(), path.empty() ? "<root>" : path,
              "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    ConfigCheck(known, Join(path, it.key()), "unknown key");
  }
}

const Json& RequireField(const Json& j, const std::string& path,
                         const char* key) {
  ConfigCheck(j.is_object() && j.contains(key), Join(path, key),
              "missing required field");
  return j.at(key);
}

double NumberAt(const Json& j, const std::string& path, const char* key) {
  const Json& v = RequireField(j, path, key);
  ConfigCheck(v.is_number(), Join(path, key), "expected a number");
  return v.get<double>();
}

Json NoiseToJson(const NoiseSchedule& s) {
  switch (s.kind) {
    case NoiseSchedule::Kind::kZero:
      return Json{{"kind", "zero"}};
    case NoiseSchedule::Kind::kPolynomial:
      return Json{
          {"kind", "polynomial"}, {"p1", s.p1}, {"p2", s.p2}, {"p3", s.p3}};
    case NoiseSchedule::Kind::kGeometric:
      return Json{{"kind", "geometric"}, {"d", s.d}, {"qbar", s.qbar}};
  }
  return Json{};
}

NoiseSchedule NoiseFromJson(const Json& j, const std::string& path) {
  const Json& kind = RequireField(j, path, "kind");
  ConfigCheck(kind.is_string(), Join(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "zero") {
      RequireKnownKeys(j, path, {"kind"});
      return NoiseSchedule::Zero();
    }
    if (k == "polynomial") {
      RequireKnownKeys(j, path, {"kind", "p1", "p2", "p3"});
      return NoiseSchedule::Polynomial(NumberAt(j, path, "p1"),
                                       NumberAt(j, path, "p2"),
                                       NumberAt(j, path, "p3"));
    }
    if (k == "geometric") {
      RequireKnownKeys(j, path, {"kind", "d", "qbar"});
      return NoiseSchedule::Geometric(NumberAt(j, path, "d"),
                                      NumberAt(j, path, "qbar"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, path + ": " + e.what());
  }
  Fail(ErrorCode::kConfigError,
       Join(path, "kind") + ": unknown noise kind '" + k + "'");
}

Json StepsToJson(const StepSchedule& s) {
  Json out;
  if (s.kind == StepSchedule::Kind::kHarmonic) {
    out = Json{{"kind", "harmonic"},
               {"q1", s.harmonic.q1},
               {"q2", s.harmonic.q2},
               {"q3", s.harmonic.q3}};
  } else {
    out = Json{{"kind", "geometric"}, {"c", s.c}, {"q", s.q}};
  }
  if (s.gamma) {
    out["gamma"] =
        Json{{"q1", s.gamma->q1}, {"q2", s.gamma->q2}, {"q3", s.gamma->q3}};
  }
  return out;
}

StepSchedule StepsFromJson(const Json& j, const std::string& path) {
  const Json& kind = RequireField(j, path, "kind");
  ConfigCheck(kind.is_string(), Join(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    StepSchedule s;
    if (k == "harmonic") {
      RequireKnownKeys(j, path, {"kind", "q1", "q2", "q3", "gamma"});
      s = StepSchedule::Harmonic(NumberAt(j, path, "q1"),
                                 NumberAt(j, path, "q2"),
                                 NumberAt(j, path, "q3"));
    } else if (k == "geometric") {
      RequireKnownKeys(j, path, {"kind", "c", "q", "gamma"});
      s = StepSchedule::Geometric(NumberAt(j, path, "c"),
                                  NumberAt(j, path, "q"));
    } else {
      Fail(ErrorCode::kConfigError,
           Join(path, "kind") + ": unknown step kind '" + k + "'");
    }
    if (j.contains("gamma")) {
      const std::string gp = Join(path, "gamma");
      const Json& g = j.at("gamma");
      RequireKnownKeys(g, gp, {"q1", "q2", "q3"});
      s.gamma = HarmonicParams{NumberAt(g, gp, "q1"), NumberAt(g, gp, "q2"),
                               NumberAt(g, gp, "q3")};
      s.Validate();
    }
    return s;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, path + ": " + e.what());
  }
}

Json RuleToJson(const UpdateRule& r) {
  if (r.kind == UpdateRule::Kind::kFullAveraging) {
    return Json{{"kind", "full_averaging"},
                {"projected", r.projected},
                {"weights", MatToJson(r.weights)}};
  }
  return Json{{"kind", "consensus"}, {"weights", MatToJson(r.weights)}};
}

UpdateRule RuleFromJson(const Json& j, int n_players, const std::string& path) {
  const Json& kind = RequireField(j, path, "kind");
  ConfigCheck(kind.is_string(), Join(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "full_averaging") {
      RequireKnownKeys(j, path, {"kind", "projected", "weights"});
      bool projected = false;
      if (j.contains("projected")) {
        ConfigCheck(j.at("projected").is_boolean(), Join(path, "projected"),
                    "expected a boolean");
        projected = j.at("projected").get<bool>();
      }
      if (!j.contains("weights") || j.at("weights") == "uniform") {
        return UpdateRule::FullAveraging(n_players, projected);
      }
      return UpdateRule::FullAveraging(
          MatFromJson(j.at("weights"), Join(path, "weights")), projected);
    }
    if (k == "consensus") {
      RequireKnownKeys(j, path, {"kind", "weights"});
      if (!j.contains("weights") || j.at("weights") == "complete") {
        return UpdateRule::CompleteConsensus(n_players);
      }
      return UpdateRule::Consensus(
          MatFromJson(j.at("weights"), Join(path, "weights")));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, path + ": " + e.what());
  }
  Fail(ErrorCode::kConfigError,
       Join(path, "kind") + ": unknown update rule '" + k + "'");
}

Json CostToJson(const PlayerCost& c) {
  Json out;
  if (c.family() == CostFamily::kDisease) {
    out =
        Json{{"a", VecToJson(c.disease().a)}, {"b", MatToJson(c.disease().b)}};
  } else {
    out = Json{{"q", MatToJson(c.quadratic().q)},
               {"r", VecToJson(c.quadratic().r)},
               {"s", c.quadratic().s}};
  }
  if (c.id() >= 0) out["id"] = c.id();
  return out;
}

PlayerCost CostFromJson(const Json& j, CostFamily family,
                        const std::string& path) {
  int id = -1;
  if (j.is_object() && j.contains("id")) {
    ConfigCheck(j.at("id").is_number_integer(), Join(path, "id"),
                "expected an integer");
    id = j.at("id").get<int>();
  }
  try {
    if (family == CostFamily::kDisease) {
      RequireKnownKeys(j, path, {"a", "b", "id"});
      return PlayerCost::Disease(
          VecFromJson(RequireField(j, path, "a"), Join(path, "a")),
          MatFromJson(RequireField(j, path, "b"), Join(path, "b")), id);
    }
    RequireKnownKeys(j, path, {"q", "r", "s", "id"});
    return PlayerCost::Quadratic(
        MatFromJson(RequireField(j, path, "q"), Join(path, "q")),
        VecFromJson(RequireField(j, path, "r"), Join(path, "r")),
        NumberAt(j, path, "s"), id);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    Fail(ErrorCode::kConfigError, path + ": " + e.what());
  }
}

Json ConstraintToJson(const ConstraintSet& cs) {
  Json out{{"kind", ConstraintKindName(cs.kind)}};
  if (cs.kind == ConstraintSet::Kind::kBox) {
    out["lower"] = VecToJson(cs.lower);
    out["upper"] = VecToJson(cs.upper);
  }
  return out;
}

ConstraintSet ConstraintFromJson(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string k = j.get<std::string>();
    if (k == "simplex") return ConstraintSet::Simplex();
    if (k == "unbounded") return ConstraintSet::Unbounded();
    Fail(ErrorCode::kConfigError, path + ": unknown constraint '" + k + "'");
  }
  const Json& kind = RequireField(j, path, "kind");
  ConfigCheck(kind.is_string(), Join(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "box") {
    RequireKnownKeys(j, path, {"kind", "lower", "upper"});
    try {
      return ConstraintSet::Box(
          VecFromJson(RequireField(j, path, "lower"), Join(path, "lower")),
          VecFromJson(RequireField(j, path, "upper"), Join(path, "upper")));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kConfigError) throw;
      Fail(ErrorCode::kConfigError, path + ": " + e.what());
    }
  }
  RequireKnownKeys(j, path, {"kind"});
  return ConstraintFromJson(Json(k), path);
}

std::string TrajectoryToString(const Trajectory& t) {
  Json header;
  header["format"] = "pmlgame.trajectory";
  header["version"] = 1;
  header["horizon"] = t.horizon;
  header["n_players"] = t.x.empty() ? 0 : t.x.front().size();
  header["dim"] =
      (t.x.empty() || t.x.front().empty()) ? 0 : t.x.front().front().size();
  header["seed"] = t.seed;
  header["noise"] = NoiseToJson(t.noise);
  header["steps"] = StepsToJson(t.steps);
  header["rule"] = RuleToJson(t.rule);
  std::string head = header.dump(2);
  // Splice the arrays in before the closing brace.
  head.erase(head.find_last_of('}'));
  while (!head.empty() && (head.back() == '\n' || head.back() == ' ')) {
    head.pop_back();
  }
  std::string out = head;
  const char* names[] = {"x", "v", "o"};
  const Sequence* seqs[] = {&t.x, &t.v, &t.o};
  for (int s = 0; s < 3; ++s) {
    out.append(",\n  \"");
    out.append(names[s]);
    out.append("\": ");
    AppendSequence(&out, *seqs[s]);
  }
  out.append("\n}\n");
  return out;
}

Trajectory TrajectoryFromString(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    Fail(ErrorCode::kConfigError, std::string("trajectory: ") + e.what());
  }
  RequireKnownKeys(j, "",
                   {"format", "version", "horizon", "n_players", "dim", "seed",
                    "noise", "steps", "rule", "x", "v", "o"});
  ConfigCheck(RequireField(j, "", "format") == "pmlgame.trajectory", "format",
              "not a trajectory file");
  ConfigCheck(RequireField(j, "", "version") == 1, "version",
              "unsupported version");
  Trajectory t;
  t.horizon = RequireField(j, "", "horizon").get<int>();
  const int n_players = RequireField(j, "", "n_players").get<int>();
  const int dim = RequireField(j, "", "dim").get<int>();
  t.seed = RequireField(j, "", "seed").get<std::uint64_t>();
  t.noise = NoiseFromJson(RequireField(j, "", "noise"), "noise");
  t.steps = StepsFromJson(RequireField(j, "", "steps"), "steps");
  t.rule = RuleFromJson(RequireField(j, "", "rule"), n_players, "rule");
  t.x = SequenceFromJson(RequireField(j, "", "x"), "x");
  t.v = SequenceFromJson(RequireField(j, "", "v"), "v");
  t.o = SequenceFromJson(RequireField(j, "", "o"), "o");
  for (const Sequence* s : {&t.x, &t.v, &t.o}) {
    ConfigCheck(static_cast<int>(s->size()) == t.horizon + 1, "horizon",
                "array length must be horizon + 1");
    for (const Profile& p : *s) {
      ConfigCheck(static_cast<int>(p.size()) == n_players, "n_players",
                  "profile size mismatch");
      for (const Vec& v : p) {
        ConfigCheck(v.size() == dim, "dim", "vector length mismatch");
      }
    }
  }
  return t;
}

void WriteFileAtomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    Check(static_cast<bool>(out), ErrorCode::kConfigError,
          "cannot open " + tmp.string() + " for writing");
    out << content;
    Check(static_cast<bool>(out), ErrorCode::kConfigError,
          "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Check(static_cast<bool>(in), ErrorCode::kConfigError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTrajectory(const Trajectory& t, const std::string& path) {
  const std::string text = TrajectoryToString(t);
  // Validate on write: the file must parse back to the same shapes.
  TrajectoryFromString(text);
  WriteFileAtomically(path, text);
}

Trajectory ReadTrajectory(const std::string& path) {
  return TrajectoryFromString(ReadFile(path));
}

}  // namespace pmlgame
