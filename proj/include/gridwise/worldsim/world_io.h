// Copyright 2026 The Gridwise Authors
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

#ifndef GRIDWISE_WORLDSIM_WORLD_IO_H_
#define GRIDWISE_WORLDSIM_WORLD_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "gridwise/worldsim/generator.h"
#include "gridwise/worldsim/trajectory.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::worldsim {

nlohmann::json world_to_json(const World& world);
World world_from_json(const nlohmann::json& json);
void save_world(const World& world, const std::filesystem::path& path);
World load_world(const std::filesystem::path& path);

// Keys: parked_cars, buildings, alleys, roundabouts. Missing keys read as 0.
SceneMix scene_mix_from_json(const nlohmann::json& json);
nlohmann::json scene_mix_to_json(const SceneMix& mix);

// CSV with header `t,x,y,heading`, one row per pose.
std::string trajectory_to_csv(const Trajectory& trajectory);
Trajectory trajectory_from_csv(const std::string& text);
void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& path);
Trajectory load_trajectory(const std::filesystem::path& path);

}  // namespace gridwise::worldsim

#endif  // GRIDWISE_WORLDSIM_WORLD_IO_H_
