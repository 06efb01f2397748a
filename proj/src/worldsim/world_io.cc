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

#include "gridwise/worldsim/world_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gridwise/common/error.h"

namespace gridwise::worldsim {

using nlohmann::json;

namespace {

json vec(const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); }

Eigen::Vector2d vec(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace

json world_to_json(const World& world) {
  json segments = json::array();
  for (const Segment& s : world.segments) {
    segments.push_back({{"a", vec(s.a)},
                        {"b", vec(s.b)},
                        {"reflectivity", s.reflectivity},
                        {"object", s.object_id},
                        {"kind", obstacle_kind_name(s.kind)}});
  }
  json movers = json::array();
  for (const Mover& m : world.movers) {
    json track = json::array();
    for (const TrackPoint& p : m.track) {
      track.push_back(json::array({p.t, p.position.x(), p.position.y()}));
    }
    movers.push_back({{"track", track},
                      {"half_extent", m.half_extent},
                      {"speed", m.speed},
                      {"reflectivity", m.reflectivity}});
  }
  json route = json::array();
  for (const auto& p : world.route) route.push_back(vec(p));
  return {{"seed", world.seed},
          {"bounds", {{"min", vec(world.bounds.min)}, {"max", vec(world.bounds.max)}}},
          {"segments", segments},
          {"movers", movers},
          {"route", route}};
}

World world_from_json(const json& j) {
  try {
    World world;
    world.seed = j.at("seed").get<std::uint64_t>();
    world.bounds.min = vec(j.at("bounds").at("min"));
    world.bounds.max = vec(j.at("bounds").at("max"));
    for (const json& s : j.at("segments")) {
      Segment seg;
      seg.a = vec(s.at("a"));
      seg.b = vec(s.at("b"));
      seg.reflectivity = s.at("reflectivity").get<double>();
      seg.object_id = s.at("object").get<int>();
      seg.kind = obstacle_kind_from_name(s.at("kind").get<std::string>());
      world.segments.push_back(seg);
    }
    for (const json& m : j.at("movers")) {
      Mover mover;
      for (const json& p : m.at("track")) {
        mover.track.push_back(TrackPoint{p.at(0).get<double>(),
                                         {p.at(1).get<double>(), p.at(2).get<double>()}});
      }
      mover.half_extent = m.at("half_extent").get<double>();
      mover.speed = m.at("speed").get<double>();
      mover.reflectivity = m.value("reflectivity", 0.9);
      world.movers.push_back(mover);
    }
    for (const json& p : j.at("route")) world.route.push_back(vec(p));
    return world;
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, std::string("malformed world JSON: ") + e.what());
  }
}

void save_world(const World& world, const std::filesystem::path& path) {
  write_text(path, world_to_json(world).dump(1) + "\n");
}

World load_world(const std::filesystem::path& path) {
  try {
    return world_from_json(json::parse(read_text(path)));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kIoError, path.string() + ": " + e.what());
  }
}

SceneMix scene_mix_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::kInvalidSpec, "scene mix must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "parked_cars" && key != "buildings" && key != "alleys" &&
        key != "roundabouts") {
      fail(ErrorCode::kInvalidSpec, "unknown scene-mix key '" + key + "'");
    }
    if (!value.is_number()) fail(ErrorCode::kInvalidSpec, "weight '" + key + "' is not a number");
  }
  SceneMix mix;
  mix.parked_cars = j.value("parked_cars", 0.0);
  mix.buildings = j.value("buildings", 0.0);
  mix.alleys = j.value("alleys", 0.0);
  mix.roundabouts = j.value("roundabouts", 0.0);
  return mix;
}

json scene_mix_to_json(const SceneMix& mix) {
  return {{"parked_cars", mix.parked_cars},
          {"buildings", mix.buildings},
          {"alleys", mix.alleys},
          {"roundabouts", mix.roundabouts}};
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  std::string text = "t,x,y,heading\n";
  char line[128];
  for (const TimedPose& p : trajectory.poses) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", p.t, p.pose.x,
                  p.pose.y, p.pose.heading);
    text += line;
  }
  return text;
}

Trajectory trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,y,heading", 0) != 0) {
    fail(ErrorCode::kIoError, "trajectory CSV lacks the t,x,y,heading header");
  }
  Trajectory trajectory;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, x, y, heading;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &x, &y, &heading) != 4) {
      fail(ErrorCode::kIoError, "bad trajectory row: " + line);
    }
    if (!trajectory.poses.empty() && t <= trajectory.poses.back().t) {
      fail(ErrorCode::kIoError, "trajectory timestamps must increase strictly");
    }
    trajectory.poses.push_back(TimedPose{t, gridcore::Pose2D{x, y, heading}});
  }
  return trajectory;
}

void save_trajectory(const Trajectory& trajectory, const std::filesystem::path& path) {
  write_text(path, trajectory_to_csv(trajectory));
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  return trajectory_from_csv(read_text(path));
}

}  // namespace gridwise::worldsim
