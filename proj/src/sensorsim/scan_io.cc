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

#include "gridwise/sensorsim/scan_io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gridwise/common/error.h"
#include "gridwise/worldsim/world_io.h"

namespace gridwise::sensorsim {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

json parse_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, path.string() + ": " + e.what());
  }
}

}  // namespace

std::string frame_stem(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06zu", index);
  return name;
}

void save_scan(const Scan& scan, const fs::path& csv_path) {
  std::string text = "t,range,azimuth,radial_velocity,amplitude\n";
  char line[160];
  for (const Detection& d : scan.detections) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", scan.timestamp,
                  d.range, d.azimuth, d.radial_velocity, d.amplitude);
    text += line;
  }
  write_text(csv_path, text);
  const json sidecar = {{"sensor", sensor_kind_name(scan.kind)},
                        {"timestamp", scan.timestamp},
                        {"pose", {scan.pose.x, scan.pose.y, scan.pose.heading}}};
  fs::path json_path = csv_path;
  json_path.replace_extension(".json");
  write_text(json_path, sidecar.dump(1) + "\n");
}

Scan load_scan(const fs::path& csv_path) {
  fs::path json_path = csv_path;
  json_path.replace_extension(".json");
  const json sidecar = parse_json(json_path);
  Scan scan;
  try {
    scan.kind = sensor_kind_from_name(sidecar.at("sensor").get<std::string>());
    scan.timestamp = sidecar.at("timestamp").get<double>();
    const json& pose = sidecar.at("pose");
    scan.pose = gridcore::Pose2D{pose.at(0).get<double>(), pose.at(1).get<double>(),
                                 pose.at(2).get<double>()};
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, json_path.string() + ": " + e.what());
  }

  std::istringstream in(read_text(csv_path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,range,azimuth", 0) != 0) {
    fail(ErrorCode::kIoError, csv_path.string() + " lacks the scan CSV header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t;
    Detection d;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &d.range, &d.azimuth,
                    &d.radial_velocity, &d.amplitude) != 5) {
      fail(ErrorCode::kIoError, "bad scan row in " + csv_path.string() + ": " + line);
    }
    scan.detections.push_back(d);
  }
  return scan;
}

void save_scan_set(const ScanSet& set, const fs::path& dir) {
  fs::create_directories(dir);
  if (set.scans.size() != set.trajectory.size()) {
    fail(ErrorCode::kLengthMismatch, "scan count differs from trajectory length");
  }
  const json manifest = {
      {"sensor", sensor_kind_name(set.kind)},
      {"world_seed", set.world_seed},
      {"trajectory_seed", set.trajectory_seed},
      {"frames", set.scans.size()},
      {"bounds",
       {{"min", {set.bounds.min.x(), set.bounds.min.y()}},
        {"max", {set.bounds.max.x(), set.bounds.max.y()}}}},
      {"odometry_noise",
       {{"translation_sigma", set.trajectory.noise.translation_sigma},
        {"rotation_sigma", set.trajectory.noise.rotation_sigma}}},
      {"sensor_params", set.sensor_params}};
  write_text(dir / "scans.json", manifest.dump(1) + "\n");
  worldsim::save_trajectory(set.trajectory, dir / "trajectory.csv");
  for (std::size_t i = 0; i < set.scans.size(); ++i) {
    save_scan(set.scans[i], dir / (frame_stem(i) + ".csv"));
  }
}

ScanSet load_scan_set(const fs::path& dir) {
  const json manifest = parse_json(dir / "scans.json");
  ScanSet set;
  std::size_t frames = 0;
  try {
    set.kind = sensor_kind_from_name(manifest.at("sensor").get<std::string>());
    set.world_seed = manifest.at("world_seed").get<std::uint64_t>();
    set.trajectory_seed = manifest.value("trajectory_seed", std::uint64_t{0});
    frames = manifest.at("frames").get<std::size_t>();
    const json& b = manifest.at("bounds");
    set.bounds.min = {b.at("min").at(0).get<double>(), b.at("min").at(1).get<double>()};
    set.bounds.max = {b.at("max").at(0).get<double>(), b.at("max").at(1).get<double>()};
    if (manifest.contains("sensor_params")) set.sensor_params = manifest["sensor_params"];
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, (dir / "scans.json").string() + ": " + e.what());
  }
  set.trajectory = worldsim::load_trajectory(dir / "trajectory.csv");
  if (manifest.contains("odometry_noise")) {
    set.trajectory.noise.translation_sigma =
        manifest["odometry_noise"].value("translation_sigma", 0.0);
    set.trajectory.noise.rotation_sigma =
        manifest["odometry_noise"].value("rotation_sigma", 0.0);
  }
  for (std::size_t i = 0; i < frames; ++i) {
    set.scans.push_back(load_scan(dir / (frame_stem(i) + ".csv")));
  }
  if (set.scans.size() != set.trajectory.size()) {
    fail(ErrorCode::kLengthMismatch, dir.string() + ": " + std::to_string(frames) +
                                         " frames but " +
                                         std::to_string(set.trajectory.size()) + " poses");
  }
  return set;
}

}  // namespace gridwise::sensorsim
