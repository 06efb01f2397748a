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

#ifndef GRIDWISE_NEURALNET_PARAMS_IO_H_
#define GRIDWISE_NEURALNET_PARAMS_IO_H_

#include <filesystem>

#include "json.hpp"
#include "gridwise/neuralnet/autoencoder.h"

namespace gridwise::neuralnet {

inline constexpr std::uint32_t kParamsFormatVersion = 1;

// File layout (little-endian): "AENN", u32 version, u32 metadata length,
// metadata JSON (always holding "architecture"), u32 entry count, per entry
// {u32 name length, name, u8 kind (0 parameter, 1 buffer), 4 x u32 shape},
// then every entry's values as f32 in table order.
void save_params(const Autoencoder<float>& model, const nlohmann::json& metadata,
                 const std::filesystem::path& path);

// Loads into an existing model; the layer table must match its parameters
// and buffers exactly (ShapeMismatch otherwise). Returns the metadata.
nlohmann::json load_params(Autoencoder<float>& model, const std::filesystem::path& path);

struct LoadedModel {
  Autoencoder<float> model;
  nlohmann::json metadata;
};

// Builds the architecture recorded in the file, then loads it.
LoadedModel load_model(const std::filesystem::path& path);

}  // namespace gridwise::neuralnet

#endif  // GRIDWISE_NEURALNET_PARAMS_IO_H_
