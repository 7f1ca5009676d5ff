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

#ifndef PMLGAME_SERIALIZATION_H_
#define PMLGAME_SERIALIZATION_H_

#include <nlohmann/json.hpp>
#include <string>

#include "pmlgame/engine.h"
#include "pmlgame/game.h"
#include "pmlgame/schedule.h"

namespace pmlgame {

using Json = nlohmann::ordered_json;

// Structured encodings shared by trajectory files, reports and configs.
// Matrices are row-major nested arrays.
Json VecToJson(const Vec& v);
Vec VecFromJson(const Json& j, const std::string& path);
Json MatToJson(const Mat& m);
Mat MatFromJson(const Json& j, const std::string& path);

Json NoiseToJson(const NoiseSchedule& s);
NoiseSchedule NoiseFromJson(const Json& j, const std::string& path);
Json StepsToJson(const StepSchedule& s);
StepSchedule StepsFromJson(const Json& j, const std::string& path);
Json RuleToJson(const UpdateRule& r);
UpdateRule RuleFromJson(const Json& j, int n_players, const std::string& path);

Json CostToJson(const PlayerCost& c);
PlayerCost CostFromJson(const Json& j, CostFamily family,
                        const std::string& path);
Json ConstraintToJson(const ConstraintSet& cs);
ConstraintSet ConstraintFromJson(const Json& j, const std::string& path);

// Rejects keys outside the allowed list, naming the offending path.
void RequireKnownKeys(const Json& j, const std::string& path,
                      std::initializer_list<const char*> allowed);
const Json& RequireField(const Json& j, const std::string& path,
                         const char* key);
double NumberAt(const Json& j, const std::string& path, const char* key);

// Trajectory files: schedules and seed as JSON fields, arrays written with
// 17 significant digits so every double round-trips exactly.
std::string TrajectoryToString(const Trajectory& t);
Trajectory TrajectoryFromString(const std::string& text);
void WriteTrajectory(const Trajectory& t, const std::string& path);
Trajectory ReadTrajectory(const std::string& path);

// Writes through a temporary file and renames it into place.
void WriteFileAtomically(const std::string& path, const std::string& content);
std::string ReadFile(const std::string& path);

}  // namespace pmlgame

#endif  // PMLGAME_SERIALIZATION_H_
