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

#include "gridwise/neuralnet/params_io.h"

#include <fstream>
#include <string>
#include <vector>

#include "gridwise/common/binary_io.h"
#include "gridwise/common/error.h"

namespace gridwise::neuralnet {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint32_t kMaxNameLength = 1024;
constexpr std::uint32_t kMaxMetadataLength = 1 << 24;

struct Entry {
  std::string name;
  std::uint8_t kind;
  Shape shape;
  Tensor<float>* value;
};

std::vector<Entry> entries_of(Autoencoder<float>& model) {
  std::vector<Entry> out;
  for (Parameter<float>* p : model.parameters()) out.push_back({p->name, 0, p->value.shape, &p->value});
  for (Buffer<float>* b : model.buffers()) out.push_back({b->name, 1, b->value.shape, &b->value});
  return out;
}

struct Header {
  json metadata;
  std::vector<Entry> table;  // value pointers unset
};

Header read_header(std::istream& in, const fs::path& path) {
  if (binary_io::read_magic(in) != "AENN") {
    fail(ErrorCode::kIoError, path.string() + " is not a parameter file");
  }
  const auto version = binary_io::read_le<std::uint32_t>(in);
  if (version != kParamsFormatVersion) {
    fail(ErrorCode::kVersionMismatch, path.string() + " has format version " +
                                          std::to_string(version) + ", expected " +
                                          std::to_string(kParamsFormatVersion));
  }
  Header header;
  const auto meta_length = binary_io::read_le<std::uint32_t>(in);
  if (meta_length > kMaxMetadataLength) fail(ErrorCode::kIoError, "metadata block too large");
  std::string text(meta_length, '\0');
  in.read(text.data(), meta_length);
  if (in.gcount() != static_cast<std::streamsize>(meta_length)) {
    fail(ErrorCode::kIoError, path.string() + " truncated in metadata");
  }
  try {
    header.metadata = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, "malformed metadata in " + path.string() + ": " + e.what());
  }
  const auto count = binary_io::read_le<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto length = binary_io::read_le<std::uint32_t>(in);
    if (length > kMaxNameLength) fail(ErrorCode::kIoError, "entry name too long");
    std::string name(length, '\0');
    in.read(name.data(), length);
    if (in.gcount() != static_cast<std::streamsize>(length)) {
      fail(ErrorCode::kIoError, path.string() + " truncated in layer table");
    }
    const auto kind = binary_io::read_le<std::uint8_t>(in);
    Shape shape;
    shape.n = static_cast<int>(binary_io::read_le<std::uint32_t>(in));
    shape.c = static_cast<int>(binary_io::read_le<std::uint32_t>(in));
    shape.h = static_cast<int>(binary_io::read_le<std::uint32_t>(in));
    shape.w = static_cast<int>(binary_io::read_le<std::uint32_t>(in));
    header.table.push_back({std::move(name), kind, shape, nullptr});
  }
  return header;
}

}  // namespace

void save_params(const Autoencoder<float>& model, const json& metadata, const fs::path& path) {
  struct Saved {
    const std::string* name;
    std::uint8_t kind;
    const Tensor<float>* value;
  };
  std::vector<Saved> table;
  for (const Parameter<float>* p : model.parameters()) table.push_back({&p->name, 0, &p->value});
  for (const Buffer<float>* b : model.buffers()) table.push_back({&b->name, 1, &b->value});
  json meta = metadata;
  meta["architecture"] = model.config().to_json();
  const std::string text = meta.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  binary_io::write_magic(out, "AENN");
  binary_io::write_le<std::uint32_t>(out, kParamsFormatVersion);
  binary_io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  binary_io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.size()));
  for (const Saved& e : table) {
    binary_io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.name->size()));
    out.write(e.name->data(), static_cast<std::streamsize>(e.name->size()));
    binary_io::write_le<std::uint8_t>(out, e.kind);
    const Shape& shape = e.value->shape;
    for (int d : {shape.n, shape.c, shape.h, shape.w}) {
      binary_io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(d));
    }
  }
  for (const Saved& e : table) {
    for (float v : e.value->data) binary_io::write_le(out, v);
  }
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

json load_params(Autoencoder<float>& model, const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  const Header header = read_header(in, path);
  const std::vector<Entry> table = entries_of(model);
  if (header.table.size() != table.size()) {
    fail(ErrorCode::kShapeMismatch, path.string() + " holds " +
                                        std::to_string(header.table.size()) +
                                        " tensors, model has " + std::to_string(table.size()));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Entry& want = table[i];
    const Entry& got = header.table[i];
    if (got.name != want.name || got.kind != want.kind || !(got.shape == want.shape)) {
      fail(ErrorCode::kShapeMismatch, "entry " + std::to_string(i) + " is " + got.name + " " +
                                          got.shape.to_string() + ", model expects " +
                                          want.name + " " + want.shape.to_string());
    }
  }
  // Read into scratch first so a truncated file leaves the model untouched.
  std::vector<AlignedVector<float>> values(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    values[i].resize(table[i].shape.size());
    for (float& v : values[i]) v = binary_io::read_le<float>(in);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    fail(ErrorCode::kIoError, path.string() + " has trailing bytes");
  }
  for (std::size_t i = 0; i < table.size(); ++i) table[i].value->data = std::move(values[i]);
  return header.metadata;
}

LoadedModel load_model(const fs::path& path) {
  json metadata;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
    metadata = read_header(in, path).metadata;
  }
  if (!metadata.contains("architecture")) {
    fail(ErrorCode::kIoError, path.string() + " lacks an architecture record");
  }
  AeConfig config;
  try {
    config = AeConfig::from_json(metadata.at("architecture"));
  } catch (const json::exception& e) {
    fail(ErrorCode::kIoError, "malformed architecture in " + path.string() + ": " + e.what());
  }
  LoadedModel loaded{Autoencoder<float>(config), json()};
  loaded.metadata = load_params(loaded.model, path);
  return loaded;
}

}  // namespace gridwise::neuralnet
