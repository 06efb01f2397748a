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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>

#include <unistd.h>

#include "gridwise/common/error.h"
#include "gridwise/sensorsim/lidar.h"
#include "gridwise/sensorsim/motion_filter.h"
#include "gridwise/sensorsim/radar.h"
#include "gridwise/sensorsim/rasterize.h"
#include "gridwise/sensorsim/scan_io.h"
#include "gridwise/worldsim/generator.h"
#include "gridwise/worldsim/raycast.h"
#include "gridwise/worldsim/trajectory.h"
#include "gtest/gtest.h"

namespace gridwise::sensorsim {
namespace {

using gridcore::Pose2D;
using worldsim::ObstacleKind;
using worldsim::Segment;
using worldsim::World;

constexpr double kPi = std::numbers::pi;

World polygon_world(const Eigen::Vector2d& center, double radius, int sides) {
  World world;
  for (int i = 0; i < sides; ++i) {
    const double a0 = 2.0 * kPi * i / sides;
    const double a1 = 2.0 * kPi * (i + 1) / sides;
    world.segments.push_back(
        Segment{center + radius * Eigen::Vector2d(std::cos(a0), std::sin(a0)),
                center + radius * Eigen::Vector2d(std::cos(a1), std::sin(a1)), 1.0, 0,
                ObstacleKind::kArcWall});
  }
  return world;
}

World single_wall(double reflectivity = 1.0) {
  World world;
  world.segments.push_back(
      Segment{{6.0, -10.0}, {6.0, 10.0}, reflectivity, 0, ObstacleKind::kFacade});
  return world;
}

TEST(LidarTest, EmptyWorldHasNoDetections) {
  Rng rng(1);
  EXPECT_TRUE(simulate_lidar(World{}, Pose2D{}, 0.0, LidarParams{}, rng).detections.empty());
}

TEST(LidarTest, PolygonChordBounds) {
  const World world = polygon_world({3.0, -2.0}, 10.0, 64);
  LidarParams params;
  params.n_beams = 500;
  params.range_sigma = 0.0;
  Rng rng(2);
  const Scan scan = simulate_lidar(world, Pose2D::make(3.0, -2.0, 0.3), 0.0, params, rng);
  ASSERT_EQ(scan.detections.size(), 500u);
  const double apothem = 10.0 * std::cos(kPi / 64);
  for (const Detection& d : scan.detections) {
    EXPECT_GE(d.range, apothem - 1e-9);
    EXPECT_LE(d.range, 10.0 + 1e-9);
    EXPECT_EQ(d.radial_velocity, 0.0);
  }
}

TEST(LidarTest, AzimuthsAreEvenlySpaced) {
  const World world = polygon_world({0.0, 0.0}, 10.0, 64);
  LidarParams params;
  params.n_beams = 360;
  Rng rng(3);
  const Scan scan = simulate_lidar(world, Pose2D{}, 0.0, params, rng);
  ASSERT_EQ(scan.detections.size(), 360u);
  for (int k = 0; k < 360; ++k) {
    const double expected = 2.0 * kPi * k / 360;
    const double az = scan.detections[k].azimuth;
    EXPECT_GT(az, -kPi);
    EXPECT_LE(az, kPi);
    EXPECT_NEAR(std::remainder(az - expected, 2.0 * kPi), 0.0, 1e-12);
  }
  params.n_beams = 7;
  EXPECT_THROW(simulate_lidar(world, Pose2D{}, 0.0, params, rng), Error);
}

TEST(LidarTest, DeterministicPerStream) {
  const World world = worldsim::generate_world(3, worldsim::SceneMix{});
  const Pose2D pose = worldsim::generate_trajectory(world, 1, 1.0).poses[10].pose;
  Rng a = make_stream(42, 10);
  Rng b = make_stream(42, 10);
  const Scan sa = simulate_lidar(world, pose, 2.0, LidarParams{}, a);
  const Scan sb = simulate_lidar(world, pose, 2.0, LidarParams{}, b);
  ASSERT_EQ(sa.detections.size(), sb.detections.size());
  for (std::size_t i = 0; i < sa.detections.size(); ++i) {
    EXPECT_EQ(sa.detections[i].range, sb.detections[i].range);
  }
}

TEST(RadarTest, SilentRadarIsEmpty) {
  RadarParams params;
  params.base_detection_p = 0.0;
  params.ghost_rate = 0.0;
  Rng rng(4);
  EXPECT_TRUE(simulate_radar(single_wall(), Pose2D{}, 0.0, params, rng).detections.empty());
}

TEST(RadarTest, NoiseFreeLimitEqualsRaycast) {
  RadarParams params;
  params.base_detection_p = 1.0;
  params.ghost_rate = 0.0;
  params.range_sigma = 0.0;
  params.azimuth_sigma = 0.0;
  params.velocity_sigma = 0.0;
  params.n_rays = 60;
  const World world = single_wall();
  const Pose2D pose = Pose2D::make(0.5, 0.2, 0.1);
  Rng rng(5);
  const Scan scan = simulate_radar(world, pose, 0.0, params, rng);
  ASSERT_FALSE(scan.detections.empty());
  for (const Detection& d : scan.detections) {
    const auto hit = worldsim::raycast(world, pose.translation(), pose.heading + d.azimuth,
                                       params.max_range, 0.0);
    ASSERT_TRUE(hit);
    EXPECT_EQ(d.range, hit->range);
    const Eigen::Vector2d local(d.range * std::cos(d.azimuth), d.range * std::sin(d.azimuth));
    EXPECT_NEAR(pose.to_world(local).x(), 6.0, 1e-9);
    EXPECT_EQ(d.radial_velocity, 0.0);
  }
}

TEST(RadarTest, GhostRateMonteCarlo) {
  RadarParams params;
  params.base_detection_p = 0.0;  // every detection is then a ghost
  params.ghost_rate = 1.5;
  params.azimuth_sigma = 0.0;
  const World world = single_wall();
  double total = 0.0;
  for (int frame = 0; frame < 1000; ++frame) {
    Rng rng = make_stream(77, frame);
    const Scan scan = simulate_radar(world, Pose2D{}, 0.0, params, rng);
    for (const Detection& d : scan.detections) {
      const auto hit = worldsim::raycast(world, {0, 0}, d.azimuth, 100.0, 0.0);
      ASSERT_TRUE(hit);
    }
    total += static_cast<double>(scan.detections.size());
  }
  const double mean = total / 1000.0;
  EXPECT_GE(mean, 1.3);
  EXPECT_LE(mean, 1.7);
}

TEST(RadarTest, GhostsSitBehindTrueReturns) {
  RadarParams params;
  params.base_detection_p = 0.0;
  params.ghost_rate = 5.0;
  params.azimuth_sigma = 0.0;
  const World world = single_wall();
  Rng rng(6);
  const Scan scan = simulate_radar(world, Pose2D{}, 0.0, params, rng);
  for (const Detection& d : scan.detections) {
    const auto hit = worldsim::raycast(world, {0, 0}, d.azimuth, params.max_range, 0.0);
    ASSERT_TRUE(hit);
    EXPECT_GE(d.range - hit->range, 2.0 - 1e-9);
    EXPECT_LE(d.range - hit->range, 8.0 + 1e-9);
  }
}

TEST(RadarTest, BudgetIsHardCap) {
  RadarParams params;
  params.base_detection_p = 1.0;
  params.ghost_rate = 10.0;
  params.n_rays = 400;
  const World world = polygon_world({0.0, 0.0}, 8.0, 32);
  for (int frame = 0; frame < 20; ++frame) {
    Rng rng = make_stream(8, frame);
    EXPECT_LE(simulate_radar(world, Pose2D{}, 0.0, params, rng).detections.size(), 64u);
  }
  params.budget = 65;
  Rng rng(9);
  EXPECT_THROW(simulate_radar(world, Pose2D{}, 0.0, params, rng), Error);
}

Scan scan_with_velocities(std::initializer_list<double> velocities) {
  Scan scan{SensorKind::kRadar, 0.0, Pose2D{}, {}};
  double range = 1.0;
  for (double v : velocities) scan.detections.push_back(Detection{range++, 0.0, v, 0.5});
  return scan;
}

TEST(MotionFilterTest, Examples) {
  const Scan still = scan_with_velocities({0.0, 0.0, 0.0});
  EXPECT_EQ(filter_moving(still, 0.4).detections.size(), 3u);
  const Scan mixed = scan_with_velocities({0.1, 5.0, -3.0});
  const Scan kept = filter_moving(mixed, 0.4);
  ASSERT_EQ(kept.detections.size(), 1u);
  EXPECT_EQ(kept.detections[0].radial_velocity, 0.1);
  EXPECT_THROW(filter_moving(mixed, 0.0), Error);
}

TEST(MotionFilterTest, ThresholdIsExact) {
  Rng rng(10);
  Scan scan{SensorKind::kRadar, 0.0, Pose2D{}, {}};
  for (int i = 0; i < 500; ++i) {
    scan.detections.push_back(Detection{1.0 + i, 0.0, uniform(rng, -2.0, 2.0), 0.5});
  }
  scan.detections.push_back(Detection{1.0, 0.0, 0.4, 0.5});
  scan.detections.push_back(Detection{1.0, 0.0, -0.4, 0.5});
  const Scan kept = filter_moving(scan, 0.4);
  const auto expected = std::count_if(scan.detections.begin(), scan.detections.end(),
                                      [](const Detection& d) {
                                        return std::abs(d.radial_velocity) <= 0.4;
                                      });
  EXPECT_EQ(static_cast<long>(kept.detections.size()), expected);
  for (const Detection& d : kept.detections) EXPECT_LE(std::abs(d.radial_velocity), 0.4);
}

TEST(MotionFilterTest, PerpendicularMoverLeaksThrough) {
  World world;
  worldsim::Mover mover;
  mover.speed = 2.0;
  mover.half_extent = 2.0;
  mover.track = {worldsim::TrackPoint{0.0, {8.0, -10.0}},
                 worldsim::TrackPoint{10.0, {8.0, 10.0}}};
  world.movers.push_back(mover);
  RadarParams params;
  params.base_detection_p = 1.0;
  params.ghost_rate = 0.0;
  params.azimuth_sigma = 0.0;
  params.n_rays = 472;  // first ray at ~0.0133 rad grazes the object
  Rng rng(11);
  // At t = 5.05 the object spans x in [6, 10] on the line y = 0.1.
  const Scan scan = simulate_radar(world, Pose2D{}, 5.05, params, rng);
  ASSERT_FALSE(scan.detections.empty());
  const Scan kept = filter_moving(scan, 0.4);
  bool ahead_survives = false;
  for (const Detection& d : kept.detections) {
    if (d.azimuth > 0.0 && d.azimuth < 0.02) ahead_survives = true;
  }
  EXPECT_TRUE(ahead_survives);
}

TEST(RasterizeTest, EmptyScanGivesEmptyImage) {
  const InputImage image = rasterize(Scan{}, 64, 15.0);
  EXPECT_EQ(image.pixels.size(), 64u * 64u);
  EXPECT_TRUE(std::all_of(image.pixels.begin(), image.pixels.end(),
                          [](std::uint8_t p) { return p == 0; }));
  EXPECT_DOUBLE_EQ(image.resolution, 15.0 / 64);
}

TEST(RasterizeTest, VehicleCenterConvention) {
  Scan scan;
  scan.detections.push_back(Detection{0.01, 0.0, 0.0, 1.0});
  const InputImage image = rasterize(scan, 128, 30.0);
  std::vector<std::size_t> lit;
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    if (image.pixels[i]) lit.push_back(i);
  }
  ASSERT_EQ(lit.size(), 1u);
  EXPECT_EQ(lit[0] / 128, 63u);
  EXPECT_EQ(lit[0] % 128, 64u);
}

TEST(RasterizeTest, OutOfWindowDropped) {
  Scan scan;
  scan.detections.push_back(Detection{20.0, 0.0, 0.0, 1.0});
  const InputImage image = rasterize(scan, 128, 30.0);
  EXPECT_EQ(std::count(image.pixels.begin(), image.pixels.end(), 1), 0);
}

TEST(RasterizeTest, ForwardIsUpLeftIsLeft) {
  const ImageGeometry g{64, 15.0};
  EXPECT_EQ(g.pixel_of({5.0, 0.1})->row, 10);   // forward: near the top
  EXPECT_LT(g.pixel_of({0.1, 5.0})->col, 32);   // left: left half
  EXPECT_GT(g.pixel_of({0.1, -5.0})->col, 32);  // right: right half
}

TEST(RasterizeTest, TranslationConsistency) {
  const ImageGeometry g{64, 15.0};
  const double res = g.resolution();
  Rng rng(12);
  std::vector<Eigen::Vector2d> points;
  for (int i = 0; i < 30; ++i) {
    const Pixel p{std::uniform_int_distribution<int>(10, 50)(rng),
                  std::uniform_int_distribution<int>(10, 50)(rng)};
    points.push_back(g.pixel_center(p));
  }
  auto image_of = [&](const Eigen::Vector2d& shift) {
    Scan scan;
    for (const auto& p : points) {
      const Eigen::Vector2d q = p + shift;
      scan.detections.push_back(Detection{q.norm(), std::atan2(q.y(), q.x()), 0.0, 1.0});
    }
    return rasterize(scan, g.side, g.window).pixels;
  };
  const auto base = image_of({0.0, 0.0});
  const int k = 3;
  const auto forward = image_of({k * res, 0.0});
  const auto right = image_of({0.0, -k * res});
  for (int row = 0; row < 64; ++row) {
    for (int col = 0; col < 64; ++col) {
      const auto v = base[row * 64 + col];
      if (row - k >= 0) EXPECT_EQ(forward[(row - k) * 64 + col], v);
      if (col + k < 64) EXPECT_EQ(right[row * 64 + col + k], v);
    }
  }
}

TEST(RasterizeTest, NoiseFreeLidarMatchesRaycastHits) {
  const World world = worldsim::generate_world(5, worldsim::SceneMix{});
  const auto trajectory = worldsim::generate_trajectory(world, 2, 1.0);
  LidarParams params;
  params.range_sigma = 0.0;
  for (std::size_t i = 0; i < trajectory.size(); i += 17) {
    const Pose2D pose = trajectory.poses[i].pose;
    Rng rng(13);
    const InputImage image =
        rasterize(simulate_lidar(world, pose, trajectory.poses[i].t, params, rng), 64, 15.0);
    std::vector<std::uint8_t> oracle(64 * 64, 0);
    const ImageGeometry g{64, 15.0};
    for (int k = 0; k < params.n_beams; ++k) {
      const double az = 2.0 * kPi * k / params.n_beams;
      const auto hit = worldsim::raycast(world, pose.translation(), pose.heading + az,
                                         params.max_range, trajectory.poses[i].t);
      if (!hit) continue;
      const Eigen::Vector2d local(hit->range * std::cos(az), hit->range * std::sin(az));
      if (auto px = g.pixel_of(local)) oracle[px->row * 64 + px->col] = 1;
    }
    EXPECT_EQ(image.pixels, oracle) << "pose " << i;
  }
}

TEST(ImageLayoutTest, PatchAndImageAgreeOnGeometry) {
  const ImageGeometry g{16, 4.0};
  gridcore::OccupancyGrid patch = gridcore::OccupancyGrid::centered(16, g.resolution());
  for (std::size_t i = 0; i < patch.size(); ++i) patch.cells()[i] = static_cast<double>(i);
  const std::vector<double> image = patch_to_image(patch);
  for (int r = 0; r < 16; ++r) {
    for (int c = 0; c < 16; ++c) {
      const auto px = g.pixel_of(patch.cell_center({r, c}));
      ASSERT_TRUE(px);
      EXPECT_EQ(image[px->row * 16 + px->col], patch.at(r, c));
    }
  }
  std::vector<float> as_float(image.begin(), image.end());
  const gridcore::OccupancyGrid back = image_to_patch(as_float, 16, g.resolution());
  for (std::size_t i = 0; i < patch.size(); ++i) EXPECT_EQ(back.cells()[i], patch.cells()[i]);
  EXPECT_THROW(image_to_patch(as_float, 15, g.resolution()), Error);
}

TEST(ScanIoTest, RoundTripIsBitExact) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("gridwise_scan_" + std::to_string(::getpid()));
  const World world = worldsim::generate_world(6, worldsim::SceneMix{});
  ScanSet set;
  set.kind = SensorKind::kRadar;
  set.world_seed = 6;
  set.bounds = world.bounds;
  set.trajectory = worldsim::generate_trajectory(world, 3, 1.0);
  set.trajectory.poses.resize(5);
  for (std::size_t i = 0; i < 5; ++i) {
    Rng rng = make_stream(1, i);
    set.scans.push_back(simulate_radar(world, set.trajectory.poses[i].pose,
                                       set.trajectory.poses[i].t, RadarParams{}, rng));
  }
  save_scan_set(set, dir);
  const ScanSet back = load_scan_set(dir);
  ASSERT_EQ(back.scans.size(), 5u);
  EXPECT_EQ(back.kind, SensorKind::kRadar);
  EXPECT_EQ(back.world_seed, 6u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(back.scans[i].pose, set.scans[i].pose);
    EXPECT_EQ(back.scans[i].timestamp, set.scans[i].timestamp);
    ASSERT_EQ(back.scans[i].detections.size(), set.scans[i].detections.size());
    for (std::size_t j = 0; j < set.scans[i].detections.size(); ++j) {
      const Detection& a = set.scans[i].detections[j];
      const Detection& b = back.scans[i].detections[j];
      EXPECT_EQ(a.range, b.range);
      EXPECT_EQ(a.azimuth, b.azimuth);
      EXPECT_EQ(a.radial_velocity, b.radial_velocity);
      EXPECT_EQ(a.amplitude, b.amplitude);
    }
  }
  std::filesystem::remove(dir / "frame_000004.csv");
  EXPECT_THROW(load_scan_set(dir), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gridwise::sensorsim
