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
#include "gridwise/dataset/augment.h"
#include "gridwise/dataset/dataset_io.h"
#include "gridwise/dataset/patch_pair.h"
#include "gtest/gtest.h"

namespace gridwise::dataset {
namespace {

using gridcore::OccupancyGrid;
using gridcore::Pose2D;
using sensorsim::Detection;
using sensorsim::ImageGeometry;
using sensorsim::Scan;
using sensorsim::SensorKind;

constexpr double kPi = std::numbers::pi;

worldsim::Trajectory trajectory_of(std::size_t n) {
  worldsim::Trajectory t;
  for (std::size_t i = 0; i < n; ++i) {
    t.poses.push_back({static_cast<double>(i), Pose2D::make(i * 1.0, 0.5, 0.1 * i)});
  }
  return t;
}

Scan lidar_scan(std::vector<Detection> detections) {
  return Scan{SensorKind::kLidar, 0.0, Pose2D{}, std::move(detections)};
}

// Detection landing on the center of `pixel`.
Detection at_pixel(const ImageGeometry& g, int row, int col, double velocity = 0.0) {
  const Eigen::Vector2d p = g.pixel_center({row, col});
  return Detection{p.norm(), std::atan2(p.y(), p.x()), velocity, 1.0};
}

TEST(MakePairsTest, EmptyAndMismatched) {
  PairOptions options;
  EXPECT_TRUE(make_pairs({}, {}, worldsim::Trajectory{}, options).empty());
  try {
    make_pairs({lidar_scan({})}, {}, trajectory_of(1), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  const OccupancyGrid wrong = OccupancyGrid::centered(32, 15.0 / 64);
  EXPECT_THROW(make_pairs({lidar_scan({})}, {wrong}, trajectory_of(1), options), Error);
}

TEST(MakePairsTest, AllUnknownLabel) {
  PairOptions options;
  const auto pairs = make_pairs({lidar_scan({})}, {OccupancyGrid::centered(64, 15.0 / 64)},
                                trajectory_of(1), options);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].counts, (ClassCounts{0, 4096, 0, 4096}));
  EXPECT_TRUE(std::all_of(pairs[0].input.begin(), pairs[0].input.end(),
                          [](float v) { return v == -1.0f; }));
}

TEST(MakePairsTest, TwoPercentOccupied) {
  PairOptions options;
  options.geometry = ImageGeometry{10, 2.5};
  OccupancyGrid label = OccupancyGrid::centered(10, 0.25);
  label.at(3, 4) = 5.0;
  label.at(7, 1) = 50.0;
  for (int c = 0; c < 10; ++c) label.at(0, c) = -3.0;
  const auto pairs = make_pairs({lidar_scan({})}, {label}, trajectory_of(1), options);
  const ClassCounts& counts = pairs[0].counts;
  EXPECT_DOUBLE_EQ(static_cast<double>(counts.occupied) / counts.total, 0.02);
  EXPECT_EQ(counts.free, 10);
  EXPECT_EQ(counts.free + counts.unknown + counts.occupied, counts.total);
}

TEST(MakePairsTest, LabelIsTanhInImageLayout) {
  PairOptions options;
  options.geometry = ImageGeometry{16, 4.0};
  OccupancyGrid label = OccupancyGrid::centered(16, 0.25);
  for (std::size_t i = 0; i < label.size(); ++i) label.cells()[i] = 0.01 * i - 1.0;
  const auto pairs = make_pairs({lidar_scan({})}, {label}, trajectory_of(1), options);
  const auto image = sensorsim::patch_to_image(label);
  for (std::size_t i = 0; i < image.size(); ++i) {
    EXPECT_EQ(pairs[0].label[i], static_cast<float>(std::tanh(0.5 * image[i])));
    EXPECT_GE(pairs[0].label[i], -1.0f);
    EXPECT_LE(pairs[0].label[i], 1.0f);
  }
}

TEST(MakePairsTest, InputIsFilteredAndNormalized) {
  PairOptions options;
  const ImageGeometry g = options.geometry;
  Scan scan = lidar_scan({at_pixel(g, 10, 20), at_pixel(g, 40, 40, 3.0)});
  scan.kind = SensorKind::kRadar;
  const auto pairs =
      make_pairs({scan}, {OccupancyGrid::centered(64, g.resolution())}, trajectory_of(1), options);
  const auto& input = pairs[0].input;
  EXPECT_EQ(std::count(input.begin(), input.end(), 1.0f), 1);
  EXPECT_EQ(std::count(input.begin(), input.end(), -1.0f), 4095);
  EXPECT_EQ(input[10 * 64 + 20], 1.0f);
  EXPECT_EQ(pairs[0].sensor, SensorKind::kRadar);
}

PatchPair random_pair(int side, std::uint64_t seed) {
  Rng rng(seed);
  PatchPair pair;
  pair.side = side;
  for (int i = 0; i < side * side; ++i) {
    pair.input.push_back(uniform(rng, 0, 1) < 0.1 ? 1.0f : -1.0f);
    pair.label.push_back(static_cast<float>(uniform(rng, -1.0, 1.0)));
  }
  classify_pair(pair, label_threshold(std::log(3.0)));
  return pair;
}

TEST(AugmentTest, IdentityAndCounts) {
  const PatchPair pair = random_pair(8, 1);
  const PatchPair same = apply(pair, D4Element{});
  EXPECT_EQ(same.input, pair.input);
  EXPECT_EQ(same.label, pair.label);
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const PatchPair aug = augment(pair, rng);
    EXPECT_EQ(aug.counts, pair.counts);
    PatchPair recount = aug;
    classify_pair(recount, label_threshold(std::log(3.0)));
    EXPECT_EQ(recount.classes, aug.classes);
  }
}

TEST(AugmentTest, OrbitHasEightElements) {
  const PatchPair pair = random_pair(8, 3);
  std::set<std::vector<float>> orbit;
  for (int g = 0; g < 8; ++g) orbit.insert(apply(pair, D4Element::from_index(g)).label);
  EXPECT_EQ(orbit.size(), 8u);

  PatchPair symmetric = pair;
  std::fill(symmetric.label.begin(), symmetric.label.end(), 0.25f);
  std::set<std::vector<float>> trivial;
  for (int g = 0; g < 8; ++g) trivial.insert(apply(symmetric, D4Element::from_index(g)).label);
  EXPECT_EQ(trivial.size(), 1u);
}

TEST(AugmentTest, GroupStructure) {
  const PatchPair pair = random_pair(6, 4);
  PatchPair turned = pair;
  for (int i = 0; i < 4; ++i) turned = apply(turned, D4Element{1, false});
  EXPECT_EQ(turned.label, pair.label);
  const PatchPair twice = apply(apply(pair, D4Element{0, true}), D4Element{0, true});
  EXPECT_EQ(twice.label, pair.label);
  // Quarter turn is counter-clockwise: the top-right corner moves to the top-left.
  const PatchPair q = apply(pair, D4Element{1, false});
  EXPECT_EQ(q.label[0], pair.label[5]);
}

TEST(AugmentTest, CommutesWithRasterization) {
  const ImageGeometry g{64, 15.0};
  Rng rng(5);
  std::vector<Detection> detections;
  for (int i = 0; i < 40; ++i) {
    detections.push_back(at_pixel(g, std::uniform_int_distribution<int>(0, 63)(rng),
                                  std::uniform_int_distribution<int>(0, 63)(rng)));
  }
  const auto base = sensorsim::rasterize(lidar_scan(detections), 64, 15.0).pixels;
  for (int g_index = 0; g_index < 8; ++g_index) {
    const D4Element e = D4Element::from_index(g_index);
    std::vector<Detection> moved = detections;
    for (Detection& d : moved) {
      // Scene rotation by the same element: turn counter-clockwise, then
      // mirror left and right (y -> -y).
      double az = d.azimuth + e.quarter_turns * 0.5 * kPi;
      if (e.flip) az = -az;
      d.azimuth = az;
    }
    const auto rotated = sensorsim::rasterize(lidar_scan(moved), 64, 15.0).pixels;
    EXPECT_EQ(rotated, transform_image<std::uint8_t>(base, 64, e)) << "element " << g_index;
  }
}

std::vector<PatchPair> world_pairs(int worlds, int frames_per_world) {
  std::vector<PatchPair> pairs;
  for (int w = 0; w < worlds; ++w) {
    for (int f = 0; f < frames_per_world; ++f) {
      PatchPair pair = random_pair(8, 100 * w + f);
      pair.world_seed = 1000 + w;
      pair.frame = f;
      pair.pose = Pose2D::make(0.1 * f, -0.3 * w, 0.7);
      pairs.push_back(pair);
    }
  }
  return pairs;
}

class DatasetIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("gridwise_dataset_" + std::to_string(::getpid()));
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(DatasetIoTest, SplitBySeedAndReload) {
  const auto pairs = world_pairs(10, 3);
  const DatasetInfo info = split_save(pairs, 0.8, 2.0, std::log(3.0), dir_);
  EXPECT_EQ(info.train_seeds.size(), 8u);
  EXPECT_EQ(info.test_seeds.size(), 2u);
  const Dataset loaded = load_dataset(dir_);
  ASSERT_EQ(loaded.train.size(), 24u);
  ASSERT_EQ(loaded.test.size(), 6u);
  std::set<std::uint64_t> train_seeds;
  for (const auto& p : loaded.train) train_seeds.insert(p.world_seed);
  for (const auto& p : loaded.test) EXPECT_FALSE(train_seeds.count(p.world_seed));

  std::size_t train_i = 0, test_i = 0;
  for (const PatchPair& p : pairs) {
    const bool in_train = std::count(info.train_seeds.begin(), info.train_seeds.end(),
                                     p.world_seed) > 0;
    const PatchPair& q = in_train ? loaded.train[train_i++] : loaded.test[test_i++];
    EXPECT_EQ(q.input, p.input);
    EXPECT_EQ(q.label, p.label);
    EXPECT_EQ(q.classes, p.classes);
    EXPECT_EQ(q.counts, p.counts);
    EXPECT_EQ(q.pose, p.pose);
    EXPECT_EQ(q.frame, p.frame);
  }
}

TEST_F(DatasetIoTest, DegenerateSplits) {
  const auto pairs = world_pairs(10, 1);
  for (double fraction : {1.0, 0.0, 0.01}) {
    try {
      split_save(pairs, fraction, 2.0, std::log(3.0), dir_);
      FAIL() << fraction;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateSplit);
    }
  }
  EXPECT_THROW(split_save(world_pairs(1, 5), 0.8, 2.0, 1.0, dir_), Error);
}

TEST_F(DatasetIoTest, TruncatedBlobIsRejected) {
  split_save(world_pairs(4, 2), 0.5, 2.0, std::log(3.0), dir_);
  std::filesystem::resize_file(dir_ / "train" / "samples.f32", 100);
  try {
    load_dataset(dir_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

}  // namespace
}  // namespace gridwise::dataset
