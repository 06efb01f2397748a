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

#include "gridwise/training/trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/random.h"
#include "gridwise/dataset/augment.h"
#include "gridwise/neuralnet/params_io.h"

namespace gridwise::training {
namespace {

using neuralnet::Autoencoder;
using neuralnet::Shape;
using neuralnet::Tensor;

// Sub-streams of each epoch's seed.
constexpr std::uint64_t kShuffleStream = 0;
constexpr std::uint64_t kAugmentStream = 1;

struct Snapshot {
  std::vector<neuralnet::AlignedVector<float>> params;
  std::vector<neuralnet::AlignedVector<float>> buffers;

  void take(const Autoencoder<float>& model) {
    params.clear();
    buffers.clear();
    for (const auto* p : model.parameters()) params.push_back(p->value.data);
    for (const auto* b : model.buffers()) buffers.push_back(b->value.data);
  }
  void restore(Autoencoder<float>& model) const {
    auto ps = model.parameters();
    auto bs = model.buffers();
    for (std::size_t i = 0; i < ps.size(); ++i) ps[i]->value.data = params[i];
    for (std::size_t i = 0; i < bs.size(); ++i) bs[i]->value.data = buffers[i];
  }
};

bool all_finite(const Autoencoder<float>& model) {
  for (const auto* p : model.parameters()) {
    for (float v : p->value.data) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

std::string format_optional(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", *v);
  return buf;
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 0) fail(ErrorCode::kInvalidArgument, "epochs must be >= 0");
  if (batch_size < 2) fail(ErrorCode::kInvalidArgument, "batch size must be >= 2");
  if (!(adam.learning_rate >= 0.0)) fail(ErrorCode::kInvalidArgument, "learning rate must be >= 0");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "Adam betas must lie in [0, 1)");
  }
  if (!(adam.epsilon > 0.0)) fail(ErrorCode::kInvalidArgument, "Adam epsilon must be positive");
}

nlohmann::json TrainConfig::to_json() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"learning_rate", adam.learning_rate},
          {"beta1", adam.beta1},
          {"beta2", adam.beta2},
          {"epsilon", adam.epsilon},
          {"seed", seed},
          {"augment", augment}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& json) {
  TrainConfig c;
  c.epochs = json.value("epochs", c.epochs);
  c.batch_size = json.value("batch_size", c.batch_size);
  c.adam.learning_rate = json.value("learning_rate", c.adam.learning_rate);
  c.adam.beta1 = json.value("beta1", c.adam.beta1);
  c.adam.beta2 = json.value("beta2", c.adam.beta2);
  c.adam.epsilon = json.value("epsilon", c.adam.epsilon);
  c.seed = json.value("seed", c.seed);
  c.augment = json.value("augment", c.augment);
  return c;
}

TrainResult train(Autoencoder<float>& model, const std::vector<dataset::PatchPair>& samples,
                  const LossConfig& loss, const TrainConfig& config,
                  const TrainOptions& options) {
  loss.validate();
  config.validate();
  if (samples.empty()) fail(ErrorCode::kDegenerateCounts, "training set is empty");
  const int side = model.config().side;
  for (const auto& s : samples) {
    if (s.side != side) {
      fail(ErrorCode::kShapeMismatch, "sample side " + std::to_string(s.side) +
                                          " does not match the model side " +
                                          std::to_string(side));
    }
  }

  const float threshold = dataset::label_threshold(loss.tau);
  Adam adam(config.adam);
  TrainResult result;
  Snapshot last_good;
  const std::size_t n = samples.size();
  const std::size_t pixels = static_cast<std::size_t>(side) * side;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const std::uint64_t epoch_seed = stream_seed(config.seed, static_cast<std::uint64_t>(epoch));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle = make_stream(epoch_seed, kShuffleStream);
    std::shuffle(order.begin(), order.end(), shuffle);
    const std::uint64_t augment_seed = stream_seed(epoch_seed, kAugmentStream);

    ClassMse mse;
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t count = std::min<std::size_t>(config.batch_size, n - start);
      std::vector<dataset::PatchPair> batch;
      batch.reserve(count);
      for (std::size_t k = 0; k < count; ++k) {
        const std::size_t idx = order[start + k];
        if (config.augment) {
          Rng rng = make_stream(augment_seed, idx);
          batch.push_back(dataset::augment(samples[idx], rng));
        } else {
          batch.push_back(samples[idx]);
        }
        // Classes follow the configured threshold, not the stored one.
        dataset::classify_pair(batch.back(), threshold);
      }
      std::vector<const dataset::PatchPair*> ptrs;
      Tensor<float> x(Shape{static_cast<int>(count), 1, side, side});
      for (std::size_t k = 0; k < count; ++k) {
        ptrs.push_back(&batch[k]);
        std::copy(batch[k].input.begin(), batch[k].input.end(), x.sample(static_cast<int>(k)));
      }

      last_good.take(model);
      model.zero_grad();
      const Tensor<float> logits = model.forward(x, neuralnet::Mode::kTrain);
      Tensor<float> dlogits;
      const double data = batch_data_loss(logits, ptrs, loss.scheme, &dlogits);
      const double total = data + loss.lambda * model.l2_penalty();
      bool finite = std::isfinite(total);
      if (finite) {
        model.backward(dlogits);
        model.add_l2_gradient(loss.lambda);
        adam.step(model);
        finite = all_finite(model);
      }
      if (!finite) {
        last_good.restore(model);
        if (!options.checkpoint.empty()) {
          nlohmann::json meta = options.metadata;
          meta["diverged_at_epoch"] = epoch;
          neuralnet::save_params(model, meta, options.checkpoint);
        }
        if (!options.log_csv.empty()) write_curve_csv(result.curve, options.log_csv);
        fail(ErrorCode::kDivergence,
             "training diverged in epoch " + std::to_string(epoch) + " after " +
                 std::to_string(adam.steps()) + " steps");
      }
      for (std::size_t k = 0; k < count; ++k) {
        const float* z = logits.sample(static_cast<int>(k));
        for (std::size_t i = 0; i < pixels; ++i) {
          mse.add(neuralnet::head_to_prob(static_cast<double>(z[i])), batch[k].label[i],
                  batch[k].classes[i]);
        }
      }
      loss_sum += total;
      ++batches;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.loss = loss_sum / batches;
    stats.free_mse = mse.mse(CellClass::kFree);
    stats.unknown_mse = mse.mse(CellClass::kUnknown);
    stats.occupied_mse = mse.mse(CellClass::kOccupied);
    result.curve.push_back(stats);
    if (!options.log_csv.empty()) write_curve_csv(result.curve, options.log_csv);
    if (options.on_epoch) options.on_epoch(stats);
  }
  result.steps = adam.steps();
  return result;
}

void write_curve_csv(const std::vector<EpochStats>& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  out << "epoch,loss,free_mse,unknown_mse,occupied_mse\n";
  for (const auto& s : curve) {
    out << s.epoch << ',' << format_optional(s.loss) << ',' << format_optional(s.free_mse) << ','
        << format_optional(s.unknown_mse) << ',' << format_optional(s.occupied_mse) << '\n';
  }
  if (!out) fail(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace gridwise::training
