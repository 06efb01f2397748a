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

#include "gridwise/dataset/dataset_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "gridwise/common/binary_io.h"
#include "gridwise/common/error.h"

namespace gridwise::dataset {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kSplits[] = {"train", "test"};

void write_samples(const std::vector<const PatchPair*>& pairs, const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  for (const PatchPair* pair : pairs) {
    for (float v : pair->input) binary_io::write_le(out, v);
    for (float v : pair->label) binary_io::write_le(out, v);
  }
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

json sample_json(const PatchPair& pair) {
  return json{{"world_seed", pair.world_seed},
              {"frame", pair.frame},
              {"pose", {pair.pose.x, pair.pose.y, pair.pose.heading}},
              {"counts",
               {pair.counts.free, pair.counts.unknown, pair.counts.occupied, pair.counts.total}}};
}

std::vector<PatchPair> read_split(const json& split, const DatasetInfo& info, const fs::path& path) {
  const auto& samples = split.at("samples");
  const std::size_t n = samples.size();
  const std::size_t pixels = static_cast<std::size_t>(info.side) * info.side;
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  if (size != n * 2 * pixels * sizeof(float)) {
    fail(ErrorCode::kIoError, path.string() + " holds " + std::to_string(size) +
                                  " bytes, manifest implies " +
                                  std::to_string(n * 2 * pixels * sizeof(float)));
  }
  const float threshold = label_threshold(info.tau);
  std::vector<PatchPair> pairs(n);
  for (std::size_t k = 0; k < n; ++k) {
    PatchPair& pair = pairs[k];
    const json& s = samples[k];
    pair.side = info.side;
    pair.sensor = info.sensor;
    pair.world_seed = s.at("world_seed").get<std::uint64_t>();
    pair.frame = s.at("frame").get<std::uint32_t>();
    const auto pose = s.at("pose").get<std::vector<double>>();
    if (pose.size() != 3) fail(ErrorCode::kIoError, "sample pose must have 3 entries");
    pair.pose = gridcore::Pose2D{pose[0], pose[1], pose[2]};
    pair.input.resize(pixels);
    pair.label.resize(pixels);
    for (float& v : pair.input) v = binary_io::read_le<float>(in);
    for (float& v : pair.label) v = binary_io::read_le<float>(in);
    classify_pair(pair, threshold);
    const auto counts = s.at("counts").get<std::vector<std::int64_t>>();
    if (counts != std::vector<std::int64_t>{pair.counts.free, pair.counts.unknown,
                                            pair.counts.occupied, pair.counts.total}) {
      fail(ErrorCode::kIoError, "class counts of sample " + std::to_string(k) + " in " +
                                    path.string() + " disagree with the manifest");
    }
  }
  return pairs;
}

}  // namespace

DatasetInfo split_save(const std::vector<PatchPair>& pairs, double train_fraction,
                       double window, double tau, const fs::path& dir) {
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "train fraction must lie in [0, 1]");
  }
  if (pairs.empty()) fail(ErrorCode::kDegenerateSplit, "no samples to split");
  DatasetInfo info;
  info.side = pairs.front().side;
  info.sensor = pairs.front().sensor;
  info.window = window;
  info.tau = tau;
  std::set<std::uint64_t> seeds;
  for (const PatchPair& pair : pairs) {
    if (pair.side != info.side || pair.sensor != info.sensor) {
      fail(ErrorCode::kShapeMismatch, "all samples must share side and sensor kind");
    }
    seeds.insert(pair.world_seed);
  }
  const auto n_train =
      static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(seeds.size())));
  if (n_train == 0 || n_train == seeds.size()) {
    fail(ErrorCode::kDegenerateSplit,
         std::to_string(seeds.size()) + " world seeds at fraction " +
             std::to_string(train_fraction) + " leave one split empty");
  }
  std::size_t i = 0;
  for (std::uint64_t seed : seeds) {
    (i++ < n_train ? info.train_seeds : info.test_seeds).push_back(seed);
  }

  std::vector<const PatchPair*> members[2];
  json splits = json::object();
  for (int s = 0; s < 2; ++s) {
    const auto& split_seeds = s == 0 ? info.train_seeds : info.test_seeds;
    json samples = json::array();
    for (const PatchPair& pair : pairs) {
      if (std::binary_search(split_seeds.begin(), split_seeds.end(), pair.world_seed)) {
        members[s].push_back(&pair);
        samples.push_back(sample_json(pair));
      }
    }
    write_samples(members[s], dir / kSplits[s] / "samples.f32");
    splits[kSplits[s]] = json{{"seeds", split_seeds},
                              {"count", members[s].size()},
                              {"file", std::string(kSplits[s]) + "/samples.f32"},
                              {"samples", std::move(samples)}};
  }

  const json manifest{{"format_version", kDatasetFormatVersion},
                      {"side", info.side},
                      {"window", info.window},
                      {"tau", info.tau},
                      {"sensor", std::string(sensorsim::sensor_kind_name(info.sensor))},
                      {"layout", "N x 2 x side x side little-endian f32; channel 0 input, "
                                 "channel 1 label"},
                      {"splits", std::move(splits)}};
  std::ofstream out(dir / "manifest.json");
  if (!out) fail(ErrorCode::kIoError, "cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
  if (!out) fail(ErrorCode::kIoError, "write failed for manifest.json");
  return info;
}

Dataset load_dataset(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) fail(ErrorCode::kIoError, "cannot open " + (dir / "manifest.json").string());
  json manifest;
  try {
    in >> manifest;
    if (manifest.at("format_version").get<int>() != kDatasetFormatVersion) {
      fail(ErrorCode::kVersionMismatch, "unsupported dataset format version");
    }
    Dataset dataset;
    DatasetInfo& info = dataset.info;
    info.side = manifest.at("side").get<int>();
    info.window = manifest.at("window").get<double>();
    info.tau = manifest.at("tau").get<double>();
    info.sensor = sensorsim::sensor_kind_from_name(manifest.at("sensor").get<std::string>());
    if (info.side <= 0) fail(ErrorCode::kIoError, "manifest side must be positive");
    const json& splits = manifest.at("splits");
    info.train_seeds = splits.at("train").at("seeds").get<std::vector<std::uint64_t>>();
    info.test_seeds = splits.at("test").at("seeds").get<std::vector<std::uint64_t>>();
    dataset.train = read_split(splits.at("train"), info,
                               dir / splits.at("train").at("file").get<std::string>());
    dataset.test = read_split(splits.at("test"), info,
                              dir / splits.at("test").at("file").get<std::string>());
    return dataset;
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, "malformed manifest: " + std::string(e.what()));
  }
}

}  // namespace gridwise::dataset
