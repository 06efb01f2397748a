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

#include "gridwise/neuralnet/gradient_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gridwise/common/random.h"

namespace gridwise::neuralnet {
namespace {

std::vector<std::size_t> probe_indices(std::size_t size, const GradCheckOptions& options,
                                       Rng& rng) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  if (options.max_per_tensor == 0 || options.max_per_tensor >= size) return idx;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(options.max_per_tensor);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void record(GradCheckResult& result, double analytic, double numeric, const std::string& name,
            std::size_t index) {
  const double err = relative_error(analytic, numeric);
  ++result.checked;
  if (err >= result.max_relative_error) {
    result.max_relative_error = err;
    result.worst = name + "[" + std::to_string(index) + "]";
  }
}

struct Evaluation {
  double loss;
  std::vector<bool> kinks;
};

// Probes `values` (a view into live state) with central differences of
// `evaluate`, whose kink pattern must match `reference` on both sides.
void probe(AlignedVector<double>& values, const AlignedVector<double>& analytic,
           const std::string& name, const std::function<Evaluation()>& evaluate,
           const std::vector<bool>& reference, const GradCheckOptions& options, Rng& rng,
           GradCheckResult& result) {
  for (std::size_t i : probe_indices(values.size(), options, rng)) {
    const double saved = values[i];
    double step = options.step;
    bool done = false;
    for (int attempt = 0; attempt <= options.kink_retries && !done; ++attempt, step *= 0.1) {
      values[i] = saved + step;
      const Evaluation plus = evaluate();
      values[i] = saved - step;
      const Evaluation minus = evaluate();
      values[i] = saved;
      if (plus.kinks != reference || minus.kinks != reference) continue;
      record(result, analytic[i], (plus.loss - minus.loss) / (2.0 * step), name, i);
      done = true;
    }
    if (!done) ++result.skipped;
  }
}

}  // namespace

double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / scale;
}

GradCheckResult gradient_check(Autoencoder<double>& model, const Tensor<double>& input,
                               const Objective& objective, double lambda,
                               const GradCheckOptions& options) {
  std::vector<Tensor<double>> saved_buffers;
  for (const Buffer<double>* b : model.buffers()) saved_buffers.push_back(b->value);

  model.zero_grad();
  const Tensor<double> out = model.forward(input, Mode::kTrain);
  Tensor<double> grad(out.shape);
  objective(out, &grad);
  model.backward(grad);
  model.add_l2_gradient(lambda);

  const std::vector<bool> reference = model.kink_state();

  auto evaluate = [&] {
    const double loss =
        objective(model.forward(input, Mode::kTrain), nullptr) + lambda * model.l2_penalty();
    return Evaluation{loss, model.kink_state()};
  };
  Rng rng = make_stream(options.seed, 0x9c);
  GradCheckResult result;
  for (Parameter<double>* p : model.parameters()) {
    probe(p->value.data, p->grad.data, p->name, evaluate, reference, options, rng, result);
  }

  auto buffers = model.buffers();
  for (std::size_t i = 0; i < buffers.size(); ++i) buffers[i]->value = saved_buffers[i];
  return result;
}

GradCheckResult check_layer(Layer<double>& layer, const Tensor<double>& input,
                            const GradCheckOptions& options) {
  Rng rng = make_stream(options.seed, 0x1a);
  const Shape out_shape = layer.output_shape(input.shape);
  AlignedVector<double> weights(out_shape.size());
  for (double& r : weights) r = uniform(rng, -1.0, 1.0);
  Tensor<double> x = input;
  auto evaluate = [&] {
    const Tensor<double> y = layer.forward(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += weights[i] * y.data[i];
    std::vector<bool> kinks;
    layer.append_kink_state(kinks);
    return Evaluation{sum, std::move(kinks)};
  };

  for (Parameter<double>* p : layer.parameters()) p->grad.fill(0.0);
  layer.forward(x);
  std::vector<bool> reference;
  layer.append_kink_state(reference);
  Tensor<double> dy(out_shape);
  dy.data = weights;
  const Tensor<double> dx = layer.backward(dy);

  GradCheckResult result;
  probe(x.data, dx.data, "input", evaluate, reference, options, rng, result);
  for (Parameter<double>* p : layer.parameters()) {
    probe(p->value.data, p->grad.data, p->name, evaluate, reference, options, rng, result);
  }
  return result;
}

}  // namespace gridwise::neuralnet
