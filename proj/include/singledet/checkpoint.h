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

#ifndef SINGLEDET_CHECKPOINT_H_
#define SINGLEDET_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "singledet/model.h"

// Checkpoint layout (all integers little-endian):
//
//   bytes 0..7   magic "SDETCKPT"
//   u32          format version (kCheckpointVersion)
//   u32 n, n B   model config as UTF-8 JSON
//   u32          parameter count P
//   P times:
//     u32 n, n B   parameter name
//     u32 r        rank
//     r x u64      dimensions
//     k x f64      values, row-major, IEEE-754 binary64
//   u64          FNV-1a 64 hash of every preceding byte
//
// Values are stored bit-exact, so a save/load round trip reproduces the
// model's outputs exactly.

namespace singledet {

inline constexpr uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string SerializeModel(const SingletonModel &model);
SingletonModel DeserializeModel(const std::string &bytes,
                                std::shared_ptr<const EmbeddingTable> table);

void SaveModel(const SingletonModel &model, const std::filesystem::path &path);
// Throws CheckpointError for unreadable, corrupted or version-mismatched
// files and ModelConfigError when `table` does not fit the stored config.
SingletonModel LoadModel(const std::filesystem::path &path,
                         std::shared_ptr<const EmbeddingTable> table);

std::string ModelConfigToJson(const ModelConfig &cfg);
ModelConfig ModelConfigFromJson(const std::string &text);

}  // namespace singledet

#endif  // SINGLEDET_CHECKPOINT_H_
