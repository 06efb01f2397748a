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


// Command-line driver for the mapping pipeline.
//
// Exit codes: 0 success, 2 bad arguments, 3 data contract violation,
// 4 training divergence.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "gridwise/common/error.h"
#include "gridwise/dataset/dataset_io.h"
#include "gridwise/dataset/patch_pair.h"
#include "gridwise/gridcore/grid_io.h"
#include "gridwise/gtbuilder/ground_truth.h"
#include "gridwise/mapper/metrics.h"
#include "gridwise/mapper/predictor.h"
#include "gridwise/mapper/stitch.h"
#include "gridwise/neuralnet/params_io.h"
#include "gridwise/sensorsim/recording.h"
#include "gridwise/sensorsim/scan_io.h"
#include "gridwise/training/trainer.h"
#include "gridwise/worldsim/generator.h"
#include "gridwise/worldsim/world_io.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gridwise::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArguments = 2;
constexpr int kExitDataContract = 3;
constexpr int kExitDivergence = 4;

constexpr double kDefaultResolution = 15.0 / 64;
constexpr double kLn3 = 1.0986122886681098;

// Reads a flat JSON object of flag names to values as a CLI11 config file.
// Nested objects address subcommands by name.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto results = opt->results();
        j[name] = results.size() == 1 ? json(results.front()) : json(results);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void flatten(const json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        std::vector<std::string> inner = parents;
        inner.push_back(key);
        flatten(value, inner, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

sensorsim::ImageGeometry geometry_for_side(int side) {
  if (side == sensorsim::kDeskImage.side) return sensorsim::kDeskImage;
  if (side == sensorsim::kFullImage.side) return sensorsim::kFullImage;
  fail(ErrorCode::kInvalidArgument, "side must be 64 or 128");
}

// ---------------------------------------------------------------------------

struct GenWorldArgs {
  std::uint64_t seed = 0;
  std::string spec;
  std::string out;
};

// Spec file: {"scene_mix": {...}, "world": {"legs": 5, ...}}, both optional.
worldsim::WorldConfig world_config_from_json(const json& j) {
  worldsim::WorldConfig c;
  c.legs = j.value("legs", c.legs);
  c.leg_min = j.value("leg_min", c.leg_min);
  c.leg_max = j.value("leg_max", c.leg_max);
  c.corner_radius = j.value("corner_radius", c.corner_radius);
  c.corner_margin = j.value("corner_margin", c.corner_margin);
  c.max_movers = j.value("max_movers", c.max_movers);
  c.build_clearance = j.value("build_clearance", c.build_clearance);
  return c;
}

int run_gen_world(const GenWorldArgs& a) {
  worldsim::SceneMix mix;
  worldsim::WorldConfig config;
  if (!a.spec.empty()) {
    const json spec = read_json(a.spec);
    if (spec.contains("scene_mix")) mix = worldsim::scene_mix_from_json(spec["scene_mix"]);
    if (spec.contains("world")) config = world_config_from_json(spec["world"]);
  }
  const worldsim::World world = worldsim::generate_world(a.seed, mix, config);
  fs::create_directories(a.out);
  worldsim::save_world(world, fs::path(a.out) / "world.json");
  std::fprintf(stderr, "world %llu: %zu segments, %zu movers -> %s\n",
               static_cast<unsigned long long>(a.seed), world.segments.size(),
               world.movers.size(), a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string world;
  std::string sensor = "lidar";
  std::uint64_t traj_seed = 0;
  std::optional<std::uint64_t> seed;
  std::size_t frames = 0;
  double step = 1.0;
  bool noise_free = false;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const worldsim::World world = worldsim::load_world(fs::path(a.world) / "world.json");
  const sensorsim::SensorKind kind = sensorsim::sensor_kind_from_name(a.sensor);
  worldsim::Trajectory trajectory = worldsim::generate_trajectory(world, a.traj_seed, a.step);
  if (a.frames > 0) {
    if (a.frames > trajectory.size()) {
      std::fprintf(stderr, "route has only %zu frames at step %g; using all of them\n",
                   trajectory.size(), a.step);
    } else {
      trajectory.poses.resize(a.frames);
    }
  }
  const std::uint64_t seed = a.seed.value_or(a.traj_seed);
  sensorsim::RecordOptions opts;
  if (a.noise_free) opts = sensorsim::RecordOptions::noise_free(seed);
  opts.seed = seed;

  sensorsim::ScanSet set;
  set.kind = kind;
  set.world_seed = world.seed;
  set.trajectory_seed = a.traj_seed;
  set.bounds = world.bounds;
  set.trajectory = trajectory;
  set.scans = sensorsim::record_scans(world, trajectory, kind, opts);
  set.sensor_params = opts.params_json(kind);
  set.sensor_params["step"] = a.step;
  sensorsim::save_scan_set(set, a.out);
  std::fprintf(stderr, "%s: %zu frames -> %s\n", a.sensor.c_str(), set.scans.size(),
               a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BuildGtArgs {
  std::string scans;
  double resolution = kDefaultResolution;
  std::string out;
};

int run_build_gt(const BuildGtArgs& a) {
  const sensorsim::ScanSet set = sensorsim::load_scan_set(a.scans);
  if (set.kind != sensorsim::SensorKind::kLidar) {
    fail(ErrorCode::kWrongSensor, "ground truth needs LiDAR scans, got " +
                                      std::string(sensorsim::sensor_kind_name(set.kind)));
  }
  const gtbuilder::MapSpec spec{set.bounds, a.resolution};
  const gridcore::OccupancyGrid map = gtbuilder::accumulate_map(
      set.scans, set.trajectory, gtbuilder::ground_truth_ism(a.resolution), spec);
  ensure_parent(a.out);
  gridcore::save_grid(map, a.out);
  std::fprintf(stderr, "ground truth %dx%d from %zu scans -> %s\n", map.width(), map.height(),
               set.scans.size(), a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MakeDatasetArgs {
  std::vector<std::string> scans;
  std::vector<std::string> gt;
  int side = 64;
  double split = 0.8;
  double tau = kLn3;
  std::string out;
};

int run_make_dataset(const MakeDatasetArgs& a) {
  if (a.scans.size() != a.gt.size()) {
    fail(ErrorCode::kInvalidArgument, "--scans and --gt must be given the same number of times");
  }
  const sensorsim::ImageGeometry geometry = geometry_for_side(a.side);
  std::vector<dataset::PatchPair> pairs;
  std::optional<sensorsim::SensorKind> kind;
  for (std::size_t k = 0; k < a.scans.size(); ++k) {
    const sensorsim::ScanSet set = sensorsim::load_scan_set(a.scans[k]);
    if (kind && *kind != set.kind) {
      fail(ErrorCode::kSensorKindMismatch, "scan sets mix LiDAR and radar");
    }
    kind = set.kind;
    dataset::PairOptions options;
    options.geometry = geometry;
    options.tau = a.tau;
    options.world_seed = set.world_seed;
    dataset::MapPairs some =
        dataset::pairs_from_map(set.scans, set.trajectory, gridcore::load_grid(a.gt[k]), options);
    std::fprintf(stderr, "world %llu: %zu pairs (%zu frames outside the map)\n",
                 static_cast<unsigned long long>(set.world_seed), some.pairs.size(), some.skipped);
    pairs.insert(pairs.end(), std::make_move_iterator(some.pairs.begin()),
                 std::make_move_iterator(some.pairs.end()));
  }
  const dataset::DatasetInfo info =
      dataset::split_save(pairs, a.split, geometry.window, a.tau, a.out);
  std::int64_t occupied = 0;
  std::int64_t total = 0;
  for (const auto& p : pairs) {
    occupied += p.counts.occupied;
    total += p.counts.total;
  }
  std::fprintf(stderr, "%zu pairs, %zu train / %zu test worlds, occupied fraction %.4f -> %s\n",
               pairs.size(), info.train_seeds.size(), info.test_seeds.size(),
               total > 0 ? static_cast<double>(occupied) / total : 0.0, a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string dataset;
  std::string scheme = "inverse-ratio";
  std::string out;
  std::string log;
  training::TrainConfig train;
  double lambda = 1e-4;
  double init_std = 0.02;
  bool no_augment = false;
  bool quiet = false;
};

int run_train(const TrainArgs& a) {
  const dataset::Dataset data = dataset::load_dataset(a.dataset);
  if (data.train.empty()) fail(ErrorCode::kDegenerateCounts, "training split is empty");

  training::LossConfig loss;
  loss.scheme = training::scheme_from_name(a.scheme);
  loss.lambda = a.lambda;
  loss.tau = data.info.tau;
  training::TrainConfig train = a.train;
  train.augment = !a.no_augment;

  neuralnet::AeConfig ae =
      data.info.side == 128 ? neuralnet::AeConfig::full() : neuralnet::AeConfig::desk();
  ae.side = data.info.side;
  ae.seed = train.seed;
  ae.init_std = a.init_std;
  neuralnet::Autoencoder<float> model(ae);

  mapper::ModelInfo info;
  info.sensor = data.info.sensor;
  info.geometry = sensorsim::ImageGeometry{data.info.side, data.info.window};
  info.tau = data.info.tau;
  info.scheme = a.scheme;
  json metadata = info.to_json();
  metadata["train"] = train.to_json();
  metadata["lambda"] = loss.lambda;
  metadata["train_samples"] = data.train.size();

  training::TrainOptions options;
  options.log_csv = a.log.empty() ? fs::path(a.out + ".csv") : fs::path(a.log);
  options.checkpoint = a.out + ".last_finite";
  options.metadata = metadata;
  if (!a.quiet) {
    options.on_epoch = [](const training::EpochStats& s) {
      std::fprintf(stderr, "epoch %3d  loss %.5f  free %.4f  occupied %.4f\n", s.epoch, s.loss,
                   s.free_mse.value_or(-1.0), s.occupied_mse.value_or(-1.0));
    };
  }
  ensure_parent(a.out);
  ensure_parent(options.log_csv);
  const training::TrainResult result = training::train(model, data.train, loss, train, options);
  if (!result.curve.empty()) metadata["final_loss"] = result.curve.back().loss;
  neuralnet::save_params(model, metadata, a.out);
  std::fprintf(stderr, "%s/%s model after %ld steps -> %s\n",
               std::string(sensorsim::sensor_kind_name(info.sensor)).c_str(), a.scheme.c_str(),
               result.steps, a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
  std::string model;
  std::string scan;
  std::string out;
};

int run_predict(const PredictArgs& a) {
  const mapper::ModelPredictor predictor = mapper::ModelPredictor::load(a.model);
  const gridcore::OccupancyGrid patch = predictor.predict(sensorsim::load_scan(a.scan));
  ensure_parent(a.out);
  gridcore::save_grid(patch, a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct StitchArgs {
  std::string model;
  bool ideal = false;
  std::string scans;
  double resolution = kDefaultResolution;
  std::string out;
};

int run_stitch(const StitchArgs& a) {
  if (a.ideal == !a.model.empty()) {
    fail(ErrorCode::kInvalidArgument, "give exactly one of --model and --ideal");
  }
  const sensorsim::ScanSet set = sensorsim::load_scan_set(a.scans);
  const gtbuilder::MapSpec spec{set.bounds, a.resolution};
  std::unique_ptr<mapper::PatchPredictor> predictor;
  if (a.ideal) {
    predictor = std::make_unique<mapper::IdealIsmPredictor>(
        gtbuilder::ground_truth_ism(a.resolution), a.resolution);
  } else {
    auto model = std::make_unique<mapper::ModelPredictor>(mapper::ModelPredictor::load(a.model));
    if (std::abs(model->info().geometry.resolution() - a.resolution) > 1e-9) {
      fail(ErrorCode::kShapeMismatch, "model resolution differs from the map resolution");
    }
    predictor = std::move(model);
  }
  const gridcore::OccupancyGrid map = mapper::stitch(*predictor, set.scans, set.trajectory, spec);
  ensure_parent(a.out);
  gridcore::save_grid(map, a.out);
  std::fprintf(stderr, "stitched %zu frames into %dx%d -> %s\n", set.scans.size(), map.width(),
               map.height(), a.out.c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string model;
  std::string dataset;
  std::string map;
  std::string gt;
  std::string out;
};

int run_eval(const EvalArgs& a) {
  if (a.map.empty() != a.gt.empty()) {
    fail(ErrorCode::kInvalidArgument, "--map and --gt go together");
  }
  const mapper::ModelPredictor predictor = mapper::ModelPredictor::load(a.model);
  const dataset::Dataset data = dataset::load_dataset(a.dataset);
  if (data.info.sensor != predictor.info().sensor) {
    fail(ErrorCode::kSensorKindMismatch, "model and dataset were recorded with different sensors");
  }
  if (data.info.side != predictor.info().geometry.side) {
    fail(ErrorCode::kShapeMismatch, "model and dataset differ in patch side");
  }
  const auto preds = mapper::predict_probabilities(predictor.model(), data.test);
  const auto labels = mapper::labels_of(data.test);
  const double tau = data.info.tau;
  const mapper::ClassMseReport mse = mapper::per_class_mse(preds, labels, tau);
  const mapper::ClassMseReport baseline = mapper::constant_unknown_baseline(labels, tau);
  std::optional<mapper::MapAgreement> agreement;
  if (!a.map.empty()) {
    agreement = mapper::map_agreement(gridcore::load_grid(a.map), gridcore::load_grid(a.gt), tau);
  }
  json metrics = mapper::metrics_json(predictor.info().scheme,
                                      std::string(sensorsim::sensor_kind_name(data.info.sensor)),
                                      mse, baseline, agreement);
  metrics["test_samples"] = data.test.size();
  write_text(a.out, metrics.dump(2) + "\n");
  std::fprintf(stderr, "%s\n", metrics.dump().c_str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ExportArgs {
  std::string grid;
  std::string format = "png";
  std::string out;
};

int run_export(const ExportArgs& a) {
  const gridcore::OccupancyGrid grid = gridcore::load_grid(a.grid);
  ensure_parent(a.out);
  if (a.format == "pgm") {
    gridcore::export_pgm(grid, a.out);
  } else {
    gridcore::export_png(grid, a.out);
  }
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitBadArguments;
    case ErrorCode::kDivergence:
      return kExitDivergence;
    default:
      return kExitDataContract;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Learned inverse sensor models for occupancy grid mapping"};
  app.name("gridwise");
  app.require_subcommand(1);
  auto config = std::make_shared<JsonConfig>();
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->config_formatter(config);
    sub->set_config("--config", "", "JSON file of flag values; flags on the command line win");
    return sub;
  };
  int status = kExitOk;

  GenWorldArgs gen;
  CLI::App* gen_cmd = add("gen-world", "Generate a random street world");
  gen_cmd->add_option("--seed", gen.seed, "World seed")->required();
  gen_cmd->add_option("--spec", gen.spec, "JSON with optional scene_mix and world sections")
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->callback([&] { status = run_gen_world(gen); });

  SimulateArgs sim;
  CLI::App* sim_cmd = add("simulate", "Drive the route and record scans");
  sim_cmd->add_option("--world", sim.world, "World directory")->required()->check(CLI::ExistingDirectory);
  sim_cmd->add_option("--sensor", sim.sensor, "Sensor")->check(CLI::IsMember({"lidar", "radar"}))
      ->capture_default_str();
  sim_cmd->add_option("--traj-seed", sim.traj_seed, "Trajectory seed")->required();
  sim_cmd->add_option("--seed", sim.seed, "Sensor noise seed (default: the trajectory seed)");
  sim_cmd->add_option("--frames", sim.frames, "Frames to record, 0 for the whole route")
      ->capture_default_str();
  sim_cmd->add_option("--step", sim.step, "Meters between frames")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_flag("--noise-free", sim.noise_free, "Disable measurement noise and ghosts");
  sim_cmd->add_option("--out", sim.out, "Output scan-set directory")->required();
  sim_cmd->callback([&] { status = run_simulate(sim); });

  BuildGtArgs gt;
  CLI::App* gt_cmd = add("build-gt", "Accumulate a ground-truth map from LiDAR scans");
  gt_cmd->add_option("--scans", gt.scans, "LiDAR scan-set directory")->required()
      ->check(CLI::ExistingDirectory);
  gt_cmd->add_option("--resolution", gt.resolution, "Cell size in meters")
      ->check(CLI::PositiveNumber)->capture_default_str();
  gt_cmd->add_option("--out", gt.out, "Output grid file")->required();
  gt_cmd->callback([&] { status = run_build_gt(gt); });

  MakeDatasetArgs ds;
  CLI::App* ds_cmd = add("make-dataset", "Pair rasterized scans with ground-truth patches");
  ds_cmd->add_option("--scans", ds.scans, "Scan-set directory (repeatable)")->required()
      ->check(CLI::ExistingDirectory);
  ds_cmd->add_option("--gt", ds.gt, "Ground-truth grid for the matching --scans (repeatable)")
      ->required()->check(CLI::ExistingFile);
  ds_cmd->add_option("--side", ds.side, "Patch side in pixels")
      ->check(CLI::IsMember({64, 128}))->capture_default_str();
  ds_cmd->add_option("--split", ds.split, "Fraction of worlds used for training")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  ds_cmd->add_option("--tau", ds.tau, "Log-odds threshold of the label classes")
      ->check(CLI::PositiveNumber)->capture_default_str();
  ds_cmd->add_option("--out", ds.out, "Output dataset directory")->required();
  ds_cmd->callback([&] { status = run_make_dataset(ds); });

  TrainArgs tr;
  CLI::App* tr_cmd = add("train", "Train an inverse sensor model");
  tr_cmd->add_option("--dataset", tr.dataset, "Dataset directory")->required();
  tr_cmd->add_option("--scheme", tr.scheme, "Loss weighting")
      ->check(CLI::IsMember({"inverse-ratio", "independent"}))->capture_default_str();
  tr_cmd->add_option("--epochs", tr.train.epochs, "Epochs")->capture_default_str();
  tr_cmd->add_option("--batch-size", tr.train.batch_size, "Minibatch size, at least 2")
      ->capture_default_str();
  tr_cmd->add_option("--lr", tr.train.adam.learning_rate, "Adam learning rate")
      ->capture_default_str();
  tr_cmd->add_option("--beta1", tr.train.adam.beta1, "Adam beta1")->capture_default_str();
  tr_cmd->add_option("--beta2", tr.train.adam.beta2, "Adam beta2")->capture_default_str();
  tr_cmd->add_option("--lambda", tr.lambda, "L2 coefficient")->capture_default_str();
  tr_cmd->add_option("--init-std", tr.init_std, "Std of the initial weights")
      ->check(CLI::PositiveNumber)->capture_default_str();
  tr_cmd->add_option("--seed", tr.train.seed, "Seed for initialization, shuffling, augmentation")
      ->capture_default_str();
  tr_cmd->add_flag("--no-augment", tr.no_augment, "Disable random flips and rotations");
  tr_cmd->add_option("--log", tr.log, "Loss curve CSV (default: <out>.csv)");
  tr_cmd->add_flag("--quiet", tr.quiet, "No per-epoch output");
  tr_cmd->add_option("--out", tr.out, "Output model file")->required();
  tr_cmd->callback([&] { status = run_train(tr); });

  PredictArgs pr;
  CLI::App* pr_cmd = add("predict", "Predict the log-odds patch of one scan");
  pr_cmd->add_option("--model", pr.model, "Model file")->required()->check(CLI::ExistingFile);
  pr_cmd->add_option("--scan", pr.scan, "Scan CSV (with its JSON sidecar)")->required()
      ->check(CLI::ExistingFile);
  pr_cmd->add_option("--out", pr.out, "Output grid file")->required();
  pr_cmd->callback([&] { status = run_predict(pr); });

  StitchArgs st;
  CLI::App* st_cmd = add("stitch", "Fuse per-frame predictions into a map");
  st_cmd->add_option("--model", st.model, "Model file")->check(CLI::ExistingFile);
  st_cmd->add_flag("--ideal", st.ideal, "Use the hand-made LiDAR model instead of a network");
  st_cmd->add_option("--scans", st.scans, "Scan-set directory")->required()
      ->check(CLI::ExistingDirectory);
  st_cmd->add_option("--resolution", st.resolution, "Cell size in meters")
      ->check(CLI::PositiveNumber)->capture_default_str();
  st_cmd->add_option("--out", st.out, "Output grid file")->required();
  st_cmd->callback([&] { status = run_stitch(st); });

  EvalArgs ev;
  CLI::App* ev_cmd = add("eval", "Per-class errors on the test split, optional map agreement");
  ev_cmd->add_option("--model", ev.model, "Model file")->required()->check(CLI::ExistingFile);
  ev_cmd->add_option("--dataset", ev.dataset, "Dataset directory")->required();
  ev_cmd->add_option("--map", ev.map, "Stitched map to compare")->check(CLI::ExistingFile);
  ev_cmd->add_option("--gt", ev.gt, "Ground-truth map of the same area")->check(CLI::ExistingFile);
  ev_cmd->add_option("--out", ev.out, "Output metrics JSON")->required();
  ev_cmd->callback([&] { status = run_eval(ev); });

  ExportArgs ex;
  CLI::App* ex_cmd = add("export", "Write a grid as an 8-bit image");
  ex_cmd->add_option("--grid", ex.grid, "Grid file")->required()->check(CLI::ExistingFile);
  ex_cmd->add_option("--format", ex.format, "Image format")
      ->check(CLI::IsMember({"pgm", "png"}))->capture_default_str();
  ex_cmd->add_option("--out", ex.out, "Output image")->required();
  ex_cmd->callback([&] { status = run_export(ex); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArguments;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDataContract;
  }
  return status;
}

}  // namespace
}  // namespace gridwise::cli

int main(int argc, char** argv) { return gridwise::cli::run(argc, argv); }
