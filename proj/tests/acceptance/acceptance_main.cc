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


// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "gridwise/common/error.h"
#include "gridwise/common/random.h"
#include "gridwise/dataset/dataset_io.h"
#include "gridwise/dataset/patch_pair.h"
#include "gridwise/gridcore/log_odds.h"
#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/gtbuilder/bresenham.h"
#include "gridwise/gtbuilder/ground_truth.h"
#include "gridwise/mapper/metrics.h"
#include "gridwise/mapper/predictor.h"
#include "gridwise/mapper/stitch.h"
#include "gridwise/neuralnet/autoencoder.h"
#include "gridwise/neuralnet/gradient_check.h"
#include "gridwise/neuralnet/layers.h"
#include "gridwise/sensorsim/recording.h"
#include "gridwise/training/loss.h"
#include "gridwise/training/trainer.h"
#include "gridwise/training/weights.h"
#include "gridwise/worldsim/generator.h"

#ifndef GRIDWISE_CLI_PATH
#define GRIDWISE_CLI_PATH "gridwise"
#endif

namespace fs = std::filesystem;

namespace gridwise::acceptance {
namespace {

using gridcore::CellIndex;
using gridcore::OccupancyGrid;
using neuralnet::AeConfig;
using neuralnet::Autoencoder;
using neuralnet::Shape;
using neuralnet::Tensor;
using sensorsim::SensorKind;
using training::Scheme;

// Tolerances and budgets.
constexpr double kAlgebraTol = 1e-12;
constexpr double kAlgebraSeconds = 1.0;
constexpr int kRays = 1000;
constexpr double kRaySeconds = 10.0;
constexpr double kGradTol = 1e-4;
constexpr double kGradSeconds = 120.0;
constexpr std::size_t kGradEntriesPerTensor = 48;
constexpr double kLimitTol = 1e-6;
constexpr double kLimitK = 1e6;
constexpr double kLimitSeconds = 1.0;
constexpr double kStitchTol = 1e-6;
constexpr double kStitchSeconds = 30.0;
constexpr int kMinWorlds = 8;
constexpr std::size_t kMinFrames = 800;
constexpr double kTableSeconds = 3600.0;
constexpr double kOccupiedFractionLo = 0.005;
constexpr double kOccupiedFractionHi = 0.06;
constexpr double kIouFloor = 0.2;

constexpr double kRes = 15.0 / 64;
constexpr double kLn3 = 1.0986122886681098;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// 1 -------------------------------------------------------------------------

Outcome fusion_algebra() {
  using namespace gridcore;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> logit(-10.0, 10.0);
  std::uniform_real_distribution<double> prob(kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  bool commutative = true;
  double assoc = 0.0, round_trip = 0.0, identity = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double a = logit(rng), b = logit(rng), c = logit(rng);
    commutative &= fuse_cell(a, b) == fuse_cell(b, a);
    assoc = std::max(assoc, std::abs(fuse_cell(fuse_cell(a, b), c) - fuse_cell(a, fuse_cell(b, c))));
    const double p = prob(rng);
    round_trip = std::max(round_trip, std::abs(logit_to_prob(prob_to_logit(p)) - p));
    const double l = 6.0 * logit(rng);
    identity = std::max(identity, std::abs(std::tanh(l / 2.0) - (2.0 * logit_to_prob(l) - 1.0)));
  }
  const bool pass = commutative && assoc <= kAlgebraTol && round_trip <= kAlgebraTol &&
                    identity <= kAlgebraTol;
  return {pass, std::string("commutative ") + (commutative ? "exact" : "BROKEN") +
                    ", assoc " + fmt("%.1e", assoc) + ", round trip " + fmt("%.1e", round_trip) +
                    ", tanh identity " + fmt("%.1e", identity)};
}

// 2 -------------------------------------------------------------------------

// Enumerates the box spanned by the endpoints: per step along the major
// axis, the cell nearest the ideal line, ties away from the start.
std::vector<CellIndex> enumerate_line(const CellIndex& from, const CellIndex& to) {
  const int dr = to.row - from.row;
  const int dc = to.col - from.col;
  const bool row_major = std::abs(dr) > std::abs(dc);
  const int major = std::max(std::abs(dr), std::abs(dc));
  std::vector<CellIndex> line;
  for (int t = 0; t <= major; ++t) {
    CellIndex best{};
    double best_err = 1e300, best_off = -1.0;
    for (int r = std::min(from.row, to.row); r <= std::max(from.row, to.row); ++r) {
      for (int c = std::min(from.col, to.col); c <= std::max(from.col, to.col); ++c) {
        if ((row_major ? std::abs(r - from.row) : std::abs(c - from.col)) != t) continue;
        const double across = row_major ? c - from.col : r - from.row;
        const double ideal = major == 0 ? 0.0 : static_cast<double>(row_major ? dc : dr) * t / major;
        const double err = std::abs(across - ideal);
        if (err < best_err - 1e-12 || (std::abs(err - best_err) <= 1e-12 && std::abs(across) > best_off)) {
          best = CellIndex{r, c};
          best_err = err;
          best_off = std::abs(across);
        }
      }
    }
    line.push_back(best);
  }
  return line;
}

Outcome bresenham_oracle() {
  std::mt19937_64 rng(2);
  int mismatches = 0;
  for (int trial = 0; trial < kRays; ++trial) {
    const int side = std::uniform_int_distribution<int>(16, 64)(rng);
    std::uniform_int_distribution<int> cell(0, side - 1);
    const CellIndex from{cell(rng), cell(rng)};
    const CellIndex to{cell(rng), cell(rng)};
    if (gtbuilder::bresenham_cells(from, to) != enumerate_line(from, to)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(kRays - mismatches) + "/" + std::to_string(kRays) +
                               " rays match the enumeration"};
}

// 3 -------------------------------------------------------------------------

template <typename T>
Tensor<T> random_tensor(const Shape& shape, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  Rng rng(seed);
  Tensor<T> t(shape);
  for (T& v : t.data) v = static_cast<T>(uniform(rng, lo, hi));
  return t;
}

void randomize(neuralnet::Parameter<double>& p, std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (double& v : p.value.data) v = uniform(rng, -scale, scale);
}

Outcome gradient_checks() {
  using namespace neuralnet;
  GradCheckOptions options;
  // Conv layers are affine in each probed entry, so central differences have
  // no truncation error there and a wide step only cuts round-off.
  GradCheckOptions affine;
  affine.step = 1e-3;
  double worst = 0.0;
  std::string worst_name;
  std::size_t checked = 0, skipped = 0;
  auto note = [&](const std::string& name, const GradCheckResult& r) {
    checked += r.checked;
    skipped += r.skipped;
    if (r.max_relative_error >= worst) {
      worst = r.max_relative_error;
      worst_name = name + ":" + r.worst;
    }
  };

  // Every layer of the desk ladder, in isolation at reduced spatial size.
  const std::vector<int> ladder = AeConfig::desk().channels;
  int in = 1;
  std::uint64_t seed = 100;
  for (int out : ladder) {
    Conv2d<double> conv("enc.conv", ConvGeometry{in, out, 4, 2, 1}, false);
    randomize(conv.weight(), ++seed, 0.3);
    note("enc.conv", check_layer(conv, random_tensor<double>(Shape{2, in, 8, 8}, ++seed), affine));
    BatchNorm2d<double> bn("enc.bn", out);
    randomize(bn.gamma(), ++seed, 1.5);
    randomize(bn.beta(), ++seed, 0.5);
    note("bn", check_layer(bn, random_tensor<double>(Shape{2, out, 4, 4}, ++seed, -2.0, 3.0), options));
    TransposedConv2d<double> tconv("dec.tconv", ConvGeometry{out, in == 1 ? out : in, 4, 2, 1});
    randomize(tconv.weight(), ++seed, 0.3);
    note("dec.tconv", check_layer(tconv, random_tensor<double>(Shape{2, out, 4, 4}, ++seed), affine));
    in = out;
  }
  LeakyRelu<double> relu(0.2);
  Tensor<double> x = random_tensor<double>(Shape{2, 8, 8, 8}, ++seed);
  for (double& v : x.data) v += v > 0 ? 0.05 : -0.05;
  note("lrelu", check_layer(relu, x, options));
  Conv2d<double> head("head", ConvGeometry{ladder.front(), 1, 3, 1, 1}, true);
  randomize(head.weight(), ++seed, 0.3);
  randomize(*head.bias(), ++seed, 0.3);
  note("head", check_layer(head, random_tensor<double>(Shape{2, ladder.front(), 8, 8}, ++seed), affine));

  // Full desk autoencoder under the training loss.
  AeConfig config = AeConfig::desk();
  config.seed = 3;
  config.init_std = 0.1;
  Autoencoder<double> model(config);
  std::vector<dataset::PatchPair> pairs(2);
  Rng rng = make_stream(4, 0);
  for (auto& p : pairs) {
    p.side = 64;
    p.input.resize(64 * 64);
    p.label.resize(64 * 64);
    for (std::size_t i = 0; i < p.input.size(); ++i) {
      p.input[i] = uniform(rng, 0, 1) < 0.05 ? 1.0f : -1.0f;
      const double u = uniform(rng, 0, 1);
      p.label[i] = u < 0.03 ? 0.95f : u < 0.6 ? -0.9f : 0.0f;
    }
    dataset::classify_pair(p, dataset::label_threshold(kLn3));
  }
  Tensor<double> input(Shape{2, 1, 64, 64});
  for (int n = 0; n < 2; ++n) {
    std::copy(pairs[n].input.begin(), pairs[n].input.end(), input.sample(n));
  }
  const std::vector<const dataset::PatchPair*> ptrs{&pairs[0], &pairs[1]};
  for (Scheme scheme : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    GradCheckOptions full;
    full.max_per_tensor = kGradEntriesPerTensor;
    full.seed = static_cast<std::uint64_t>(scheme) + 1;
    auto objective = [&](const Tensor<double>& out, Tensor<double>* grad) {
      return training::batch_data_loss(out, ptrs, scheme, grad);
    };
    note(std::string("desk/") + std::string(training::scheme_name(scheme)),
         gradient_check(model, input, objective, 1e-4, full));
  }
  const bool pass = worst < kGradTol && skipped * 10 <= checked;
  return {pass, "max rel err " + fmt("%.2e", worst) + " at " + worst_name + ", " +
                    std::to_string(checked) + " entries, " + std::to_string(skipped) +
                    " kink-straddling probes skipped"};
}

// 4 -------------------------------------------------------------------------

Outcome weighting_limits() {
  const auto k = static_cast<std::int64_t>(kLimitK);
  const training::ClassAlpha a = training::inverse_class_ratio_alpha(dataset::ClassCounts{k, k, 1, 2 * k + 1});
  const double df = std::abs(a[0] - 0.5), du = std::abs(a[1] - 0.5), dox = std::abs(a[2] - 1.0);
  return {df <= kLimitTol && du <= kLimitTol && dox <= kLimitTol,
          "k=1e6: |a_f-1/2| " + fmt("%.2e", df) + ", |a_u-1/2| " + fmt("%.2e", du) +
              ", |a_o-1| " + fmt("%.2e", dox)};
}

// Shared world recordings ----------------------------------------------------

struct WorldRecording {
  std::uint64_t seed = 0;
  worldsim::World world;
  worldsim::Trajectory trajectory;
  std::vector<sensorsim::Scan> truth;  // noise-free LiDAR for ground truth
  std::vector<sensorsim::Scan> lidar;
  std::vector<sensorsim::Scan> radar;
  OccupancyGrid gt{1, 1, 1.0, Eigen::Vector2d::Zero()};
};

WorldRecording record_world(std::uint64_t seed) {
  WorldRecording rec;
  rec.seed = seed;
  rec.world = worldsim::generate_world(seed, worldsim::SceneMix{});
  rec.trajectory = worldsim::generate_trajectory(rec.world, seed + 100, 1.0);
  rec.truth = sensorsim::record_scans(rec.world, rec.trajectory, SensorKind::kLidar,
                                      sensorsim::RecordOptions::noise_free(seed + 100));
  sensorsim::RecordOptions noisy;
  noisy.seed = seed + 100;
  rec.lidar = sensorsim::record_scans(rec.world, rec.trajectory, SensorKind::kLidar, noisy);
  rec.radar = sensorsim::record_scans(rec.world, rec.trajectory, SensorKind::kRadar, noisy);
  rec.gt = gtbuilder::accumulate_map(rec.truth, rec.trajectory, gtbuilder::ground_truth_ism(kRes),
                                     gtbuilder::MapSpec{rec.world.bounds, kRes});
  return rec;
}

// 5 -------------------------------------------------------------------------

Outcome self_consistency(const WorldRecording& rec) {
  const gtbuilder::MapSpec spec{rec.world.bounds, kRes};
  const auto params = gtbuilder::ground_truth_ism(kRes);
  const OccupancyGrid gt = gtbuilder::accumulate_map(rec.truth, rec.trajectory, params, spec);
  const OccupancyGrid map =
      mapper::stitch(mapper::IdealIsmPredictor(params, kRes), rec.truth, rec.trajectory, spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    worst = std::max(worst, std::abs(gt.cells()[i] - map.cells()[i]));
  }
  return {map.same_geometry(gt) && worst <= kStitchTol,
          std::to_string(rec.trajectory.size()) + " frames, " + std::to_string(gt.size()) +
              " cells, max |diff| " + fmt("%.1e", worst)};
}

// 6-8 -----------------------------------------------------------------------

struct TrainedModel {
  SensorKind sensor;
  Scheme scheme;
  mapper::ModelPredictor predictor;
  mapper::ClassMseReport mse;
};

struct Study {
  std::vector<WorldRecording> worlds;
  std::map<SensorKind, dataset::Dataset> data;
  std::vector<TrainedModel> models;
  std::map<SensorKind, mapper::ClassMseReport> baseline;
  std::size_t frames = 0;
  double seconds = 0.0;
};

std::string sensor_name(SensorKind k) { return std::string(sensorsim::sensor_kind_name(k)); }

Study run_study(int n_worlds, int epochs, const fs::path& workdir, std::vector<WorldRecording> worlds) {
  const auto start = Clock::now();
  Study study;
  for (std::uint64_t s = worlds.size() + 1; s <= static_cast<std::uint64_t>(n_worlds); ++s) {
    worlds.push_back(record_world(s));
  }
  study.worlds = std::move(worlds);
  for (SensorKind kind : {SensorKind::kLidar, SensorKind::kRadar}) {
    std::vector<dataset::PatchPair> pairs;
    for (const auto& rec : study.worlds) {
      dataset::PairOptions options;
      options.world_seed = rec.seed;
      auto some = dataset::pairs_from_map(kind == SensorKind::kLidar ? rec.lidar : rec.radar,
                                          rec.trajectory, rec.gt, options);
      pairs.insert(pairs.end(), some.pairs.begin(), some.pairs.end());
    }
    if (kind == SensorKind::kLidar) study.frames = pairs.size();
    const fs::path dir = workdir / ("dataset_" + sensor_name(kind));
    dataset::split_save(pairs, 0.8, sensorsim::kDeskImage.window, kLn3, dir);
    study.data[kind] = dataset::load_dataset(dir);
    study.baseline[kind] =
        mapper::constant_unknown_baseline(mapper::labels_of(study.data[kind].test), kLn3);
  }
  for (SensorKind kind : {SensorKind::kLidar, SensorKind::kRadar}) {
    for (Scheme scheme : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
      const auto t0 = Clock::now();
      AeConfig ae = AeConfig::desk();
      ae.seed = 7;
      Autoencoder<float> model(ae);
      training::LossConfig loss;
      loss.scheme = scheme;
      training::TrainConfig config;
      config.epochs = epochs;
      config.seed = 7;
      training::train(model, study.data[kind].train, loss, config);
      mapper::ModelInfo info;
      info.sensor = kind;
      info.scheme = std::string(training::scheme_name(scheme));
      const auto& test = study.data[kind].test;
      const auto mse = mapper::per_class_mse(mapper::predict_probabilities(model, test),
                                             mapper::labels_of(test), kLn3);
      std::fprintf(stderr, "  trained %s/%s in %.0f s\n", sensor_name(kind).c_str(),
                   info.scheme.c_str(), seconds_since(t0));
      study.models.push_back({kind, scheme, mapper::ModelPredictor(std::move(model), info), mse});
    }
  }
  study.seconds = seconds_since(start);
  return study;
}

const TrainedModel& model_of(const Study& s, SensorKind k, Scheme scheme) {
  for (const auto& m : s.models) {
    if (m.sensor == k && m.scheme == scheme) return m;
  }
  fail(ErrorCode::kInvalidArgument, "model missing");
}

Outcome table_ordering(const Study& s) {
  bool pass = s.worlds.size() >= static_cast<std::size_t>(kMinWorlds) && s.frames >= kMinFrames &&
              s.seconds <= kTableSeconds;
  std::ostringstream detail;
  detail << s.worlds.size() << " worlds, " << s.frames << " frames, " << fmt("%.0f", s.seconds)
         << " s;";
  const auto inv = Scheme::kInverseClassRatio;
  const auto ind = Scheme::kIndependentClassMse;
  std::vector<std::string> failed;
  for (SensorKind k : {SensorKind::kLidar, SensorKind::kRadar}) {
    const auto& a = model_of(s, k, inv).mse;
    const auto& b = model_of(s, k, ind).mse;
    detail << " " << sensor_name(k) << " inv(f " << fmt("%.3f", *a.free_mse) << ", o "
           << fmt("%.3f", *a.occupied_mse) << ") ind(f " << fmt("%.3f", *b.free_mse) << ", o "
           << fmt("%.3f", *b.occupied_mse) << ");";
    if (!(*b.occupied_mse < *a.occupied_mse)) failed.push_back("(a) " + sensor_name(k));
    if (!(*a.free_mse < *b.free_mse)) failed.push_back("(b) " + sensor_name(k));
  }
  for (Scheme scheme : {inv, ind}) {
    if (!(*model_of(s, SensorKind::kLidar, scheme).mse.occupied_mse <=
          *model_of(s, SensorKind::kRadar, scheme).mse.occupied_mse)) {
      failed.push_back("(c) " + std::string(training::scheme_name(scheme)));
    }
  }
  for (const auto& m : s.models) {
    const auto& base = s.baseline.at(m.sensor);
    if (!(*m.mse.free_mse < *base.free_mse && *m.mse.occupied_mse < *base.occupied_mse)) {
      failed.push_back("(d) " + sensor_name(m.sensor) + "/" +
                       std::string(training::scheme_name(m.scheme)));
    }
  }
  const auto& bl = s.baseline.at(SensorKind::kLidar);
  detail << " baseline(f " << fmt("%.3f", *bl.free_mse) << ", o " << fmt("%.3f", *bl.occupied_mse)
         << ")";
  for (const auto& f : failed) detail << " FAILED " << f;
  return {pass && failed.empty(), detail.str()};
}

Outcome class_imbalance(const Study& s) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [kind, data] : s.data) {
    std::int64_t occ = 0, total = 0;
    for (const auto* split : {&data.train, &data.test}) {
      for (const auto& p : *split) {
        occ += p.counts.occupied;
        total += p.counts.total;
      }
    }
    const double f = static_cast<double>(occ) / static_cast<double>(total);
    pass &= f >= kOccupiedFractionLo && f <= kOccupiedFractionHi;
    detail << sensor_name(kind) << " occupied " << fmt("%.2f", 100.0 * f) << "% ";
  }
  return {pass, detail.str() + "(band 0.5%-6%)"};
}

Outcome mapping_iou(const Study& s) {
  const std::set<std::uint64_t> held_out(s.data.at(SensorKind::kLidar).info.test_seeds.begin(),
                                         s.data.at(SensorKind::kLidar).info.test_seeds.end());
  std::map<std::pair<SensorKind, Scheme>, double> iou;
  for (const auto& m : s.models) {
    mapper::MapAgreement pooled;
    for (const auto& rec : s.worlds) {
      if (!held_out.count(rec.seed)) continue;
      const OccupancyGrid map =
          mapper::stitch(m.predictor, m.sensor == SensorKind::kLidar ? rec.lidar : rec.radar,
                         rec.trajectory, gtbuilder::MapSpec{rec.world.bounds, kRes});
      const mapper::MapAgreement a = mapper::map_agreement(map, rec.gt, kLn3);
      for (int g = 0; g < 3; ++g) {
        for (int p = 0; p < 3; ++p) pooled.confusion[g][p] += a.confusion[g][p];
      }
    }
    const auto& c = pooled.confusion;
    const std::int64_t inter = c[2][2];
    const std::int64_t uni = c[2][0] + c[2][1] + c[2][2] + c[0][2];
    iou[{m.sensor, m.scheme}] = uni > 0 ? static_cast<double>(inter) / uni : 0.0;
  }
  bool pass = !held_out.empty();
  std::ostringstream detail;
  detail << held_out.size() << " held-out worlds;";
  for (Scheme scheme : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    const double l = iou[{SensorKind::kLidar, scheme}];
    const double r = iou[{SensorKind::kRadar, scheme}];
    pass &= l >= r && l > kIouFloor && r > kIouFloor;
    detail << " " << training::scheme_name(scheme) << " occ IoU lidar " << fmt("%.3f", l)
           << " radar " << fmt("%.3f", r) << ";";
  }
  return {pass, detail.str()};
}

// 9 -------------------------------------------------------------------------

int sh(const std::string& cmd, const fs::path& log) {
  const std::string full = cmd + " >>" + log.string() + " 2>&1";
  return std::system(full.c_str());
}

std::optional<std::string> cli_pipeline(const std::string& cli, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "log.txt";
  const std::string d = dir.string() + "/";
  std::string scans_args;
  for (int s : {1, 2}) {
    const std::string w = std::to_string(s);
    const std::string t = std::to_string(s + 100);
    if (sh(cli + " gen-world --seed " + w + " --out " + d + "w" + w, log) ||
        sh(cli + " simulate --world " + d + "w" + w + " --sensor lidar --traj-seed " + t +
               " --frames 40 --noise-free --out " + d + "gt" + w, log) ||
        sh(cli + " simulate --world " + d + "w" + w + " --sensor lidar --traj-seed " + t +
               " --frames 40 --seed " + w + " --out " + d + "l" + w, log) ||
        sh(cli + " build-gt --scans " + d + "gt" + w + " --out " + d + "gt" + w + ".grid", log)) {
      return std::nullopt;
    }
    scans_args += " --scans " + d + "l" + w + " --gt " + d + "gt" + w + ".grid";
  }
  {
    std::ofstream cfg(d + "train.json");
    cfg << "{\"epochs\": 2, \"seed\": 5, \"quiet\": true}\n";
  }
  if (sh(cli + " make-dataset" + scans_args + " --split 0.5 --out " + d + "ds", log) ||
      sh(cli + " train --dataset " + d + "ds --scheme independent --config " + d +
             "train.json --out " + d + "model.aenn", log) ||
      sh(cli + " stitch --model " + d + "model.aenn --scans " + d + "l2 --out " + d + "map.grid", log) ||
      sh(cli + " eval --model " + d + "model.aenn --dataset " + d + "ds --map " + d +
             "map.grid --gt " + d + "gt2.grid --out " + d + "METRICS.json", log)) {
    return std::nullopt;
  }
  std::ifstream in(d + "METRICS.json", std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome cli_determinism(const std::string& cli, const fs::path& workdir) {
  const auto a = cli_pipeline(cli, workdir / "cli_run_a");
  const auto b = cli_pipeline(cli, workdir / "cli_run_b");
  if (!a || !b) return {false, "pipeline failed, see " + (workdir / "cli_run_*/log.txt").string()};
  return {*a == *b && !a->empty(),
          std::to_string(a->size()) + "-byte METRICS.json, runs " + (*a == *b ? "identical" : "DIFFER")};
}

}  // namespace
}  // namespace gridwise::acceptance

int main(int argc, char** argv) {
  using namespace gridwise::acceptance;
  CLI::App app{"Acceptance run for the mapping pipeline"};
  std::string workdir;
  std::string cli = GRIDWISE_CLI_PATH;
  int worlds = 12;
  int epochs = 20;
  bool keep = false;
  std::vector<int> only;
  app.add_option("--workdir", workdir, "Scratch directory (default: a fresh temp directory)");
  app.add_option("--cli", cli, "Path of the gridwise executable")->capture_default_str();
  app.add_option("--worlds", worlds, "Worlds in the synthetic study")->capture_default_str();
  app.add_option("--epochs", epochs, "Training epochs per model")->capture_default_str();
  app.add_option("--only", only, "Run only these criteria");
  app.add_flag("--keep", keep, "Keep the scratch directory");
  CLI11_PARSE(app, argc, argv);

  const fs::path dir = workdir.empty() ? fs::temp_directory_path() /
                                             ("gridwise_acceptance_" + std::to_string(::getpid()))
                                       : fs::path(workdir);
  fs::create_directories(dir);
  auto wanted = [&](int n) { return only.empty() || std::count(only.begin(), only.end(), n) > 0; };

  int failures = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& body,
                    double budget = 0.0) {
    if (!wanted(n)) return;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double t = seconds_since(start);
    if (budget > 0.0 && t > budget) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", budget) + " s budget";
    }
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str(), t);
    std::fflush(stdout);
  };

  report(1, "fusion algebra", fusion_algebra, kAlgebraSeconds);
  report(2, "Bresenham vs enumeration", bresenham_oracle, kRaySeconds);
  report(3, "gradient checks (f64)", gradient_checks, kGradSeconds);
  report(4, "inverse-ratio imbalance limit", weighting_limits, kLimitSeconds);

  std::vector<WorldRecording> recordings;
  if (wanted(5) || wanted(6) || wanted(7) || wanted(8)) recordings.push_back(record_world(1));
  report(5, "ideal stitching reproduces ground truth",
         [&] { return self_consistency(recordings.front()); }, kStitchSeconds);

  if (wanted(6) || wanted(7) || wanted(8)) {
    std::optional<Study> study;
    try {
      study = run_study(worlds, epochs, dir, std::move(recordings));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "study failed: %s\n", e.what());
    }
    auto guarded = [&](auto fn) {
      return [&, fn]() -> Outcome {
        if (!study) return {false, "study did not complete"};
        return fn(*study);
      };
    };
    report(6, "per-class error ordering", guarded(table_ordering));
    report(7, "class imbalance", guarded(class_imbalance));
    report(8, "stitched map occupied IoU", guarded(mapping_iou));
  }
  report(9, "CLI determinism", [&] { return cli_determinism(cli, dir); });

  if (!keep && workdir.empty()) fs::remove_all(dir);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
