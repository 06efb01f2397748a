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

#include "gridwise/worldsim/trajectory.h"

#include <cmath>
#include <numbers>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/random.h"

namespace gridwise::worldsim {
namespace {

class Polyline {
 public:
  explicit Polyline(const std::vector<Eigen::Vector2d>& points) : points_(points) {
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      cumulative_.push_back(cumulative_.back() + (points_[i] - points_[i - 1]).norm());
    }
  }

  double length() const { return cumulative_.back(); }

  Eigen::Vector2d point(double s) const {
    const std::size_t i = segment(s);
    const double span = cumulative_[i + 1] - cumulative_[i];
    const double u = span > 0.0 ? (s - cumulative_[i]) / span : 0.0;
    return points_[i] + u * (points_[i + 1] - points_[i]);
  }

  Eigen::Vector2d tangent(double s) const {
    const std::size_t i = segment(s);
    return (points_[i + 1] - points_[i]).normalized();
  }

 private:
  std::size_t segment(double s) const {
    std::size_t i = 0;
    while (i + 2 < points_.size() && cumulative_[i + 1] < s) ++i;
    return i;
  }

  std::vector<Eigen::Vector2d> points_;
  std::vector<double> cumulative_;
};

}  // namespace

Trajectory generate_trajectory(const World& world, std::uint64_t seed, double step,
                               const TrajectoryConfig& config) {
  if (!(step > 0.1 && step <= 2.0)) {
    fail(ErrorCode::kInvalidArgument, "trajectory step must lie in (0.1, 2] m");
  }
  if (world.route.size() < 2) fail(ErrorCode::kNoPath, "world has no street route");
  const Polyline route(world.route);
  if (route.length() < step) fail(ErrorCode::kNoPath, "route shorter than one step");

  Rng rng = make_stream(seed, 0x7a11);
  const double amplitude = uniform(rng, 0.0, config.max_lateral_offset);
  const double period = uniform(rng, 20.0, 40.0);
  const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);

  auto position = [&](double s) {
    const Eigen::Vector2d t = route.tangent(s);
    const Eigen::Vector2d n(-t.y(), t.x());
    const double offset = amplitude * std::sin(2.0 * std::numbers::pi * s / period + phase);
    return Eigen::Vector2d(route.point(s) + offset * n);
  };

  Trajectory trajectory;
  const int count = static_cast<int>(std::floor(route.length() / step)) + 1;
  constexpr double kProbe = 0.25;
  for (int k = 0; k < count; ++k) {
    const double s = k * step;
    const Eigen::Vector2d p = position(s);
    const Eigen::Vector2d ahead = position(std::min(route.length(), s + kProbe));
    const Eigen::Vector2d behind = position(std::max(0.0, s - kProbe));
    const Eigen::Vector2d d = ahead - behind;
    if (clearance(world, p) < config.min_clearance) {
      fail(ErrorCode::kNoPath,
           "pose " + std::to_string(k) + " violates the clearance requirement");
    }
    trajectory.poses.push_back(
        TimedPose{s / config.speed,
                  gridcore::Pose2D::make(p.x(), p.y(), std::atan2(d.y(), d.x()))});
  }
  return trajectory;
}

Trajectory apply_odometry_noise(const Trajectory& truth, const OdometryNoise& noise,
                                std::uint64_t seed) {
  Trajectory estimate = truth;
  estimate.noise = noise;
  if (truth.poses.empty()) return estimate;
  if (noise.translation_sigma <= 0.0 && noise.rotation_sigma <= 0.0) return estimate;
  Rng rng = make_stream(seed, 0x0d0);
  for (std::size_t i = 1; i < truth.poses.size(); ++i) {
    const gridcore::Pose2D& a = truth.poses[i - 1].pose;
    const gridcore::Pose2D& b = truth.poses[i].pose;
    const Eigen::Vector2d delta = a.to_local(b.translation());
    const double dtheta = gridcore::normalize_angle(b.heading - a.heading);
    const Eigen::Vector2d noisy_delta(delta.x() + gaussian(rng, noise.translation_sigma),
                                      delta.y() + gaussian(rng, noise.translation_sigma));
    const double noisy_dtheta = dtheta + gaussian(rng, noise.rotation_sigma);
    const gridcore::Pose2D& prev = estimate.poses[i - 1].pose;
    const Eigen::Vector2d p = prev.to_world(noisy_delta);
    estimate.poses[i].pose =
        gridcore::Pose2D::make(p.x(), p.y(), prev.heading + noisy_dtheta);
  }
  return estimate;
}

}  // namespace gridwise::worldsim
