// Copyright 2026 The Singledet Authors.
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

#include "singledet/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace singledet {

using json = nlohmann::json;

namespace {

constexpr char kMagic[8] = {'S', 'D', 'E', 'T', 'C', 'K', 'P', 'T'};

uint64_t Fnv1a(const char *data, size_t n) {
  uint64_t h = 14695981039346656037ULL;
  for (size_t i = 0; i < n; ++i) {
    h = (h ^ static_cast<unsigned char>(data[i])) * 1099511628211ULL;
  }
  return h;
}

class Writer {
 public:
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Bytes(const std::string &s) {
    U32(static_cast<uint32_t>(s.size()));
    out_ += s;
  }
  void Raw(const char *p, size_t n) { out_.append(p, n); }
  std::string &str() { return out_; }

 private:
  void Le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  Reader(const char *data, size_t size) : data_(data), size_(size) {}

  uint32_t U32() { return static_cast<uint32_t>(Le(4)); }
  uint64_t U64() { return Le(8); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Bytes() {
    const uint32_t n = U32();
    Need(n);
    std::string s(data_ + pos_, n);
    pos_ += n;
    return s;
  }
  void Expect(const char *p, size_t n) {
    Need(n);
    if (std::memcmp(data_ + pos_, p, n) != 0) {
      throw CheckpointError("not a checkpoint file (bad magic)");
    }
    pos_ += n;
  }
  size_t pos() const { return pos_; }
  size_t remaining() const { return size_ - pos_; }

 private:
  void Need(size_t n) const {
    if (size_ - pos_ < n) throw CheckpointError("truncated checkpoint");
  }
  uint64_t Le(int n) {
    Need(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += n;
    return v;
  }
  const char *data_;
  size_t size_;
  size_t pos_ = 0;
};

}  // namespace

std::string ModelConfigToJson(const ModelConfig &cfg) {
  json j = {
      {"embed_dim", cfg.embed_dim},
      {"max_mention_len", cfg.max_mention_len},
      {"context_len", cfg.context_len},
      {"context_mode", std::string(ContextModeName(cfg.context_mode))},
      {"filter_widths", cfg.filter_widths},
      {"filters_per_width", cfg.filters_per_width},
      {"cnn_dense_out", cfg.cnn_dense_out},
      {"syntactic_inputs", cfg.syntactic_inputs},
      {"syntactic_hidden", cfg.syntactic_hidden},
      {"final_hidden", cfg.final_hidden},
      {"classes", cfg.classes},
      {"dropout_rate", cfg.dropout_rate},
      {"use_words", cfg.use_words},
      {"use_context", cfg.use_context},
      {"use_syntactic", cfg.use_syntactic},
      {"seed", cfg.seed},
      {"init_gain", cfg.init_gain},
  };
  return j.dump();
}

ModelConfig ModelConfigFromJson(const std::string &text) {
  try {
    const json j = json::parse(text);
    ModelConfig cfg;
    cfg.embed_dim = j.at("embed_dim").get<int>();
    cfg.max_mention_len = j.at("max_mention_len").get<int>();
    cfg.context_len = j.at("context_len").get<int>();
    cfg.context_mode = ParseContextMode(j.at("context_mode").get<std::string>());
    cfg.filter_widths = j.at("filter_widths").get<std::vector<int>>();
    cfg.filters_per_width = j.at("filters_per_width").get<int>();
    cfg.cnn_dense_out = j.at("cnn_dense_out").get<int>();
    cfg.syntactic_inputs = j.at("syntactic_inputs").get<int>();
    cfg.syntactic_hidden = j.at("syntactic_hidden").get<std::vector<int>>();
    cfg.final_hidden = j.at("final_hidden").get<std::vector<int>>();
    cfg.classes = j.at("classes").get<int>();
    cfg.dropout_rate = j.at("dropout_rate").get<double>();
    cfg.use_words = j.at("use_words").get<bool>();
    cfg.use_context = j.at("use_context").get<bool>();
    cfg.use_syntactic = j.at("use_syntactic").get<bool>();
    cfg.seed = j.at("seed").get<uint64_t>();
    cfg.init_gain = j.at("init_gain").get<double>();
    return cfg;
  } catch (const json::exception &e) {
    throw CheckpointError(std::string("bad model config: ") + e.what());
  } catch (const FeatureError &e) {
    throw CheckpointError(std::string("bad model config: ") + e.what());
  }
}

std::string SerializeModel(const SingletonModel &model) {
  Writer w;
  w.Raw(kMagic, sizeof(kMagic));
  w.U32(kCheckpointVersion);
  w.Bytes(ModelConfigToJson(model.config()));
  w.U32(static_cast<uint32_t>(model.parameters().size()));
  for (const Parameter &p : model.parameters()) {
    w.Bytes(p.name);
    w.U32(static_cast<uint32_t>(p.value.rank()));
    for (size_t d : p.value.shape()) w.U64(d);
    for (double v : p.value.values()) w.F64(v);
  }
  const uint64_t hash = Fnv1a(w.str().data(), w.str().size());
  w.U64(hash);
  return std::move(w.str());
}

SingletonModel DeserializeModel(const std::string &bytes,
                                std::shared_ptr<const EmbeddingTable> table) {
  if (bytes.size() < sizeof(kMagic) + 8) throw CheckpointError("truncated checkpoint");
  Reader r(bytes.data(), bytes.size());
  r.Expect(kMagic, sizeof(kMagic));
  const uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    throw CheckpointError("checkpoint version " + std::to_string(version) +
                          " unsupported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }
  {
    Reader tail(bytes.data() + bytes.size() - 8, 8);
    const uint64_t stored = tail.U64();
    if (stored != Fnv1a(bytes.data(), bytes.size() - 8)) {
      throw CheckpointError("checkpoint checksum mismatch (corrupted file)");
    }
  }
  ModelConfig cfg = ModelConfigFromJson(r.Bytes());
  SingletonModel model(std::move(cfg), std::move(table));

  const uint32_t count = r.U32();
  if (count != model.parameters().size()) {
    throw CheckpointError("checkpoint holds " + std::to_string(count) +
                          " parameters, model has " +
                          std::to_string(model.parameters().size()));
  }
  for (Parameter &p : model.parameters()) {
    const std::string name = r.Bytes();
    if (name != p.name) {
      throw CheckpointError("unexpected parameter '" + name + "', expected '" +
                            p.name + "'");
    }
    const uint32_t rank = r.U32();
    Shape shape;
    for (uint32_t i = 0; i < rank; ++i) shape.push_back(r.U64());
    if (shape != p.value.shape()) {
      throw CheckpointError("parameter '" + name + "' has shape " +
                            ShapeString(shape) + ", expected " +
                            ShapeString(p.value.shape()));
    }
    for (double &v : p.value.values()) v = r.F64();
  }
  if (r.remaining() != 8) throw CheckpointError("trailing bytes in checkpoint");
  return model;
}

void SaveModel(const SingletonModel &model, const std::filesystem::path &path) {
  const std::string bytes = SerializeModel(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("write failed for " + path.string());
}

SingletonModel LoadModel(const std::filesystem::path &path,
                         std::shared_ptr<const EmbeddingTable> table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return DeserializeModel(bytes, std::move(table));
}

}  // namespace singledet
