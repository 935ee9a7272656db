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

#ifndef SINGLEDET_EMBEDDINGS_H_
#define SINGLEDET_EMBEDDINGS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace singledet {

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frozen word-vector table. Row 0 is the all-zero vector shared by padding
// and out-of-vocabulary words; vocabulary words occupy rows 1..V in file
// order.
class EmbeddingTable {
 public:
  static constexpr int kPaddingIndex = 0;

  EmbeddingTable() = default;
  explicit EmbeddingTable(int dim);

  // Appends a word at the next free index. Returns false and leaves the
  // table untouched if the word is already present.
  bool Add(const std::string &word, std::span<const double> vector);

  int dim() const { return dim_; }
  size_t vocab_size() const { return words_.size(); }
  size_t rows() const { return words_.size() + 1; }

  // 0 for unknown words.
  int IndexOf(std::string_view word) const;

  std::span<const double> Row(int index) const;

  // Copy of the word's row; zeros for unknown words.
  std::vector<double> Lookup(std::string_view word) const;

  // The word stored at `index` (1-based); empty for index 0.
  const std::string &WordAt(int index) const;

  const std::vector<double> &matrix() const { return matrix_; }

  // FNV-1a over the matrix bytes, for frozen-weight checks.
  uint64_t Fingerprint() const;

 private:
  int dim_ = 0;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> matrix_;
};

struct EmbeddingLoadOptions {
  std::optional<size_t> max_words;
};

// Reads word2vec text format. A first line holding exactly two integers is
// taken as the "V D" header; otherwise D is inferred from the first vector
// line. Duplicate words keep their first vector and emit a warning on
// std::clog.
EmbeddingTable LoadWordVectors(const std::filesystem::path &path,
                               const EmbeddingLoadOptions &options = {});
EmbeddingTable ParseWordVectors(std::istream &in,
                                const EmbeddingLoadOptions &options = {},
                                const std::string &source_name = "<stream>");

void SaveWordVectors(const EmbeddingTable &table,
                     const std::filesystem::path &path);

}  // namespace singledet

#endif  // SINGLEDET_EMBEDDINGS_H_
