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
#include <fstream>
#include <random>
#include <string>

#include <unistd.h>

#include "gridwise/common/error.h"
#include "gridwise/common/random.h"
#include "gridwise/neuralnet/gradient_check.h"
#include "gridwise/training/loss.h"
#include "gridwise/training/trainer.h"
#include "gridwise/training/weights.h"
#include "gtest/gtest.h"

namespace gridwise::training {
namespace {

using dataset::PatchPair;
using neuralnet::AeConfig;
using neuralnet::Autoencoder;
using neuralnet::Mode;
using neuralnet::Shape;
using neuralnet::Tensor;

constexpr double kLn3 = 1.0986122886681098;

ClassCounts counts_of(std::int64_t f, std::int64_t u, std::int64_t o) {
  return ClassCounts{f, u, o, f + u + o};
}

// Occupied ring around a free disc on an unknown background; the input
// marks the ring where it faces the image center.
PatchPair ring_pair(int side, std::uint64_t seed) {
  PatchPair pair;
  pair.side = side;
  pair.input.assign(static_cast<std::size_t>(side) * side, -1.0f);
  pair.label.assign(pair.input.size(), 0.0f);
  Rng rng = make_stream(seed, 0);
  const double cx = side / 2.0 + uniform(rng, -2, 2);
  const double cy = side / 2.0 + uniform(rng, -2, 2);
  const double radius = side * uniform(rng, 0.25, 0.35);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double d = std::hypot(r + 0.5 - cy, c + 0.5 - cx);
      const std::size_t i = static_cast<std::size_t>(r) * side + c;
      if (std::abs(d - radius) < 0.75) {
        pair.label[i] = 0.95f;
        if (r < cy) pair.input[i] = 1.0f;
      } else if (d < radius) {
        pair.label[i] = -0.9f;
      }
    }
  }
  dataset::classify_pair(pair, dataset::label_threshold(kLn3));
  return pair;
}

Tensor<float> inputs_of(const std::vector<PatchPair>& pairs) {
  const int side = pairs.front().side;
  Tensor<float> x(Shape{static_cast<int>(pairs.size()), 1, side, side});
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    std::copy(pairs[k].input.begin(), pairs[k].input.end(), x.sample(static_cast<int>(k)));
  }
  return x;
}

std::vector<neuralnet::AlignedVector<float>> param_values(const Autoencoder<float>& model) {
  std::vector<neuralnet::AlignedVector<float>> out;
  for (const auto* p : model.parameters()) out.push_back(p->value.data);
  return out;
}

TEST(WeightsTest, InverseClassRatioExample) {
  const ClassAlpha a = inverse_class_ratio_alpha(counts_of(5, 3, 2));
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  EXPECT_DOUBLE_EQ(a[1], 0.7);
  EXPECT_DOUBLE_EQ(a[2], 0.8);
}

TEST(WeightsTest, SingleClassGetsZeroWeight) {
  EXPECT_EQ(inverse_class_ratio_alpha(counts_of(0, 64, 0))[1], 0.0);
  EXPECT_EQ(inverse_class_ratio_alpha(counts_of(9, 0, 0))[0], 0.0);
}

TEST(WeightsTest, InverseClassRatioImbalanceLimit) {
  const ClassAlpha a = inverse_class_ratio_alpha(counts_of(100, 100, 1));
  EXPECT_NEAR(a[0], 101.0 / 201.0, 1e-12);
  EXPECT_NEAR(a[2], 200.0 / 201.0, 1e-12);
  for (const auto& [k, tol] : {std::pair{1e3, 1e-3}, std::pair{1e6, 1e-6}}) {
    const auto big = static_cast<std::int64_t>(k);
    const ClassAlpha b = inverse_class_ratio_alpha(counts_of(big, big, 1));
    EXPECT_NEAR(b[0], 0.5, tol) << k;
    EXPECT_NEAR(b[1], 0.5, tol) << k;
    EXPECT_NEAR(b[2], 1.0, tol) << k;
  }
}

TEST(WeightsTest, IndependentExampleAndEmptyClass) {
  const ClassAlpha a = independent_class_alpha(counts_of(5, 3, 2));
  EXPECT_DOUBLE_EQ(a[0], 0.2);
  EXPECT_DOUBLE_EQ(a[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(a[2], 0.5);
  const ClassAlpha b = independent_class_alpha(counts_of(4, 6, 0));
  EXPECT_EQ(b[2], 0.0);
  EXPECT_TRUE(std::isfinite(b[0]) && std::isfinite(b[1]));
}

TEST(WeightsTest, DegenerateCounts) {
  for (Scheme s : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    try {
      class_alpha(s, counts_of(0, 0, 0));
      ADD_FAILURE() << "empty counts accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateCounts);
    }
    EXPECT_THROW(class_alpha(s, ClassCounts{1, 2, 3, 7}), Error);
  }
}

TEST(WeightsTest, SchemeNames) {
  for (Scheme s : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    EXPECT_EQ(scheme_from_name(scheme_name(s)), s);
  }
  EXPECT_THROW(scheme_from_name("balanced"), Error);
}

TEST(LossTest, Examples) {
  const std::vector<double> p{0.3, -0.2, 0.9};
  const std::vector<double> ones(3, 1.0);
  EXPECT_EQ(weighted_loss(p, p, ones).loss, 0.0);

  const std::vector<double> one_pred{1.5}, one_label{-0.5}, half{0.5};
  const LossValue v = weighted_loss(one_pred, one_label, half);
  EXPECT_DOUBLE_EQ(v.loss, 2.0);
  EXPECT_DOUBLE_EQ(v.grad[0], 2.0);

  EXPECT_THROW(weighted_loss(p, one_label, ones), Error);
}

TEST(LossTest, ZeroWeightsLeaveOnlyTheRegularizer) {
  // A single-class label gets zero inverse-ratio weight everywhere.
  PatchPair pair = ring_pair(8, 1);
  std::fill(pair.label.begin(), pair.label.end(), 0.0f);
  dataset::classify_pair(pair, dataset::label_threshold(kLn3));
  Autoencoder<float> model(AeConfig::tiny());
  const Tensor<float> logits = model.forward(inputs_of({pair, pair}), Mode::kTrain);
  const double data = batch_data_loss(logits, {&pair, &pair}, Scheme::kInverseClassRatio, nullptr);
  const double lambda = 0.25;
  EXPECT_EQ(data + lambda * model.l2_penalty(), lambda * model.l2_penalty());
}

TEST(LossTest, IndependentTotalIsSumOfClassMse) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> cls(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 50 + trial * 13;
    std::vector<CellClass> classes(n);
    std::vector<double> pred(n), label(n);
    ClassCounts counts{};
    for (std::size_t i = 0; i < n; ++i) {
      // Keep the occupied class rare, as in real labels.
      int c = cls(rng);
      if (c == 2 && i % 5 != 0) c = 0;
      classes[i] = static_cast<CellClass>(c);
      pred[i] = u(rng);
      label[i] = u(rng);
      ++(c == 0 ? counts.free : c == 1 ? counts.unknown : counts.occupied);
    }
    counts.total = static_cast<std::int64_t>(n);
    const auto alpha = pixel_weights(Scheme::kIndependentClassMse, counts, classes);
    const double loss = weighted_loss(pred, label, alpha).loss;

    double direct = 0.0;
    for (int c = 0; c < 3; ++c) {
      double sum = 0.0;
      int m = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(classes[i]) != c) continue;
        sum += (pred[i] - label[i]) * (pred[i] - label[i]);
        ++m;
      }
      if (m > 0) direct += sum / m;
    }
    EXPECT_NEAR(loss, direct, 1e-9);
  }
}

TEST(LossTest, GradientMatchesFiniteDifferences) {
  AeConfig config = AeConfig::tiny();
  config.seed = 9;
  config.init_std = 0.3;
  Autoencoder<double> model(config);
  const std::vector<PatchPair> pairs{ring_pair(8, 2), ring_pair(8, 3), ring_pair(8, 4)};
  std::vector<const PatchPair*> ptrs;
  for (const auto& p : pairs) ptrs.push_back(&p);
  const Tensor<double> x = inputs_of(pairs).cast<double>();
  for (Scheme scheme : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    auto objective = [&](const Tensor<double>& out, Tensor<double>* grad) {
      return batch_data_loss(out, ptrs, scheme, grad);
    };
    const auto r = neuralnet::gradient_check(model, x, objective, 1e-3);
    EXPECT_EQ(r.checked, model.parameter_count());
    EXPECT_LT(r.max_relative_error, 1e-4) << scheme_name(scheme) << " " << r.worst;
  }
}

TEST(LossTest, InvariantUnderPermutationWithinAClass) {
  PatchPair pair = ring_pair(64, 5);
  Autoencoder<float> model(AeConfig::desk());
  const Tensor<float> logits = model.infer(inputs_of({pair}));
  std::mt19937_64 rng(11);
  for (Scheme scheme : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    const double base = batch_data_loss(logits, {&pair}, scheme, nullptr);
    // Shuffle logits and labels jointly among the pixels of each class.
    for (int c = 0; c < 3; ++c) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < pair.classes.size(); ++i) {
        if (static_cast<int>(pair.classes[i]) == c) idx.push_back(i);
      }
      std::vector<std::size_t> perm = idx;
      std::shuffle(perm.begin(), perm.end(), rng);
      PatchPair moved = pair;
      Tensor<float> moved_logits = logits;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        moved.label[perm[k]] = pair.label[idx[k]];
        moved_logits.data[perm[k]] = logits.data[idx[k]];
      }
      const double after = batch_data_loss(moved_logits, {&moved}, scheme, nullptr);
      EXPECT_NEAR(after, base, 1e-9 * std::max(1.0, base)) << scheme_name(scheme) << c;
    }
  }
}

TEST(ClassMseTest, AbsentClassIsNotZero) {
  ClassMse m;
  m.add(0.5, 1.0, CellClass::kOccupied);
  m.add(-0.5, -1.0, CellClass::kFree);
  m.add(0.0, -1.0, CellClass::kFree);
  EXPECT_DOUBLE_EQ(*m.mse(CellClass::kOccupied), 0.25);
  EXPECT_DOUBLE_EQ(*m.mse(CellClass::kFree), 0.625);
  EXPECT_FALSE(m.mse(CellClass::kUnknown).has_value());
}

class TrainerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("gridwise_train_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  static std::vector<PatchPair> pairs(int side, int n) {
    std::vector<PatchPair> out;
    for (int k = 0; k < n; ++k) out.push_back(ring_pair(side, 100 + k));
    return out;
  }

  std::filesystem::path dir_;
};

TEST_F(TrainerTest, ZeroLearningRateLeavesParametersUnchanged) {
  Autoencoder<float> model(AeConfig::tiny());
  const auto before = param_values(model);
  TrainConfig config;
  config.epochs = 5;
  config.batch_size = 4;
  config.adam.learning_rate = 0.0;
  train(model, pairs(8, 10), LossConfig{}, config);
  EXPECT_EQ(param_values(model), before);
}

TEST_F(TrainerTest, MemorizesOneSample) {
  const std::vector<PatchPair> one = pairs(64, 1);
  AeConfig ae = AeConfig::desk();
  ae.seed = 1;
  Autoencoder<float> model(ae);
  TrainConfig config;
  config.epochs = 200;
  config.augment = false;
  // 200 single-sample steps are too few at the default rate.
  config.adam.learning_rate = 1e-3;
  for (Scheme scheme : {Scheme::kInverseClassRatio, Scheme::kIndependentClassMse}) {
    Autoencoder<float> m = model;
    LossConfig loss;
    loss.scheme = scheme;
    train(m, one, loss, config);
    const Tensor<float> prob = neuralnet::head_to_prob(m.infer(inputs_of(one)));
    ClassMse mse;
    mse.add(prob.data, one[0].label, one[0].classes);
    for (CellClass c : {CellClass::kFree, CellClass::kUnknown, CellClass::kOccupied}) {
      ASSERT_TRUE(mse.mse(c).has_value());
      EXPECT_LT(*mse.mse(c), 0.05) << scheme_name(scheme) << " class " << static_cast<int>(c);
    }
  }
}

TEST_F(TrainerTest, SameSeedSameCurve) {
  const auto data = pairs(8, 12);
  TrainConfig config;
  config.epochs = 4;
  config.batch_size = 5;
  config.seed = 21;
  auto run = [&] {
    Autoencoder<float> model(AeConfig::tiny());
    TrainResult r = train(model, data, LossConfig{}, config);
    return std::pair{r, param_values(model)};
  };
  const auto [a, pa] = run();
  const auto [b, pb] = run();
  ASSERT_EQ(a.curve.size(), 4u);
  for (std::size_t e = 0; e < a.curve.size(); ++e) {
    EXPECT_EQ(a.curve[e].loss, b.curve[e].loss);
    EXPECT_EQ(a.curve[e].occupied_mse, b.curve[e].occupied_mse);
  }
  EXPECT_EQ(pa, pb);
  EXPECT_EQ(a.steps, 12);  // 3 batches per epoch, last one partial

  config.seed = 22;
  Autoencoder<float> other(AeConfig::tiny());
  EXPECT_NE(train(other, data, LossConfig{}, config).curve.back().loss, a.curve.back().loss);
}

TEST_F(TrainerTest, WritesCurveCsv) {
  Autoencoder<float> model(AeConfig::tiny());
  TrainConfig config;
  config.epochs = 3;
  config.batch_size = 2;
  TrainOptions options;
  options.log_csv = dir_ / "curve.csv";
  train(model, pairs(8, 4), LossConfig{}, config, options);
  std::ifstream in(options.log_csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "epoch,loss,free_mse,unknown_mse,occupied_mse");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
    ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST_F(TrainerTest, RejectsBadInput) {
  Autoencoder<float> model(AeConfig::tiny());
  TrainConfig config;
  try {
    train(model, {}, LossConfig{}, config);
    ADD_FAILURE() << "empty training set accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateCounts);
  }
  EXPECT_THROW(train(model, pairs(16, 2), LossConfig{}, config), Error);
  config.batch_size = 1;
  EXPECT_THROW(train(model, pairs(8, 2), LossConfig{}, config), Error);
  LossConfig loss;
  loss.lambda = -1.0;
  config.batch_size = 2;
  EXPECT_THROW(train(model, pairs(8, 2), loss, config), Error);
}

TEST_F(TrainerTest, DivergenceKeepsLastFiniteState) {
  Autoencoder<float> model(AeConfig::tiny());
  TrainConfig config;
  config.epochs = 50;
  config.batch_size = 2;
  config.adam.learning_rate = 1e36;
  TrainOptions options;
  options.checkpoint = dir_ / "last.aenn";
  try {
    train(model, pairs(8, 4), LossConfig{}, config, options);
    FAIL() << "training did not diverge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergence);
  }
  for (const auto& values : param_values(model)) {
    for (float v : values) ASSERT_TRUE(std::isfinite(v));
  }
  ASSERT_TRUE(std::filesystem::exists(options.checkpoint));
}

TEST(TrainConfigTest, JsonRoundTripAndDefaults) {
  TrainConfig c;
  c.epochs = 7;
  c.adam.learning_rate = 1e-3;
  c.seed = 99;
  c.augment = false;
  const TrainConfig back = TrainConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  const TrainConfig partial = TrainConfig::from_json({{"epochs", 3}});
  EXPECT_EQ(partial.epochs, 3);
  EXPECT_EQ(partial.batch_size, 16);
  EXPECT_EQ(partial.adam.beta1, 0.5);
}

}  // namespace
}  // namespace gridwise::training
