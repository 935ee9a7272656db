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

#include "singledet/embeddings.h"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>

namespace singledet {

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > begin) fields.push_back(line.substr(begin, i - begin));
  }
  return fields;
}

template <typename T>
bool ParseNumber(std::string_view s, T &out) {
  const char *end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

EmbeddingTable::EmbeddingTable(int dim) : dim_(dim) {
  if (dim <= 0) throw EmbeddingError("embedding dimension must be positive");
  matrix_.assign(static_cast<size_t>(dim), 0.0);
}

bool EmbeddingTable::Add(const std::string &word, std::span<const double> vector) {
  if (static_cast<int>(vector.size()) != dim_) {
    throw EmbeddingError("vector for '" + word + "' has " +
                         std::to_string(vector.size()) + " components, expected " +
                         std::to_string(dim_));
  }
  if (word.empty()) throw EmbeddingError("empty word in embedding table");
  const int index = static_cast<int>(words_.size()) + 1;
  if (!index_.emplace(word, index).second) return false;
  words_.push_back(word);
  matrix_.insert(matrix_.end(), vector.begin(), vector.end());
  return true;
}

int EmbeddingTable::IndexOf(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kPaddingIndex : it->second;
}

std::span<const double> EmbeddingTable::Row(int index) const {
  if (index < 0 || static_cast<size_t>(index) >= rows()) {
    throw EmbeddingError("embedding row " + std::to_string(index) +
                         " out of range");
  }
  return std::span<const double>(matrix_).subspan(
      static_cast<size_t>(index) * dim_, dim_);
}

std::vector<double> EmbeddingTable::Lookup(std::string_view word) const {
  auto row = Row(IndexOf(word));
  return {row.begin(), row.end()};
}

const std::string &EmbeddingTable::WordAt(int index) const {
  static const std::string kNone;
  if (index <= 0 || static_cast<size_t>(index) > words_.size()) return kNone;
  return words_[index - 1];
}

uint64_t EmbeddingTable::Fingerprint() const {
  uint64_t h = 14695981039346656037ULL;
  const auto *bytes = reinterpret_cast<const unsigned char *>(matrix_.data());
  for (size_t i = 0; i < matrix_.size() * sizeof(double); ++i) {
    h = (h ^ bytes[i]) * 1099511628211ULL;
  }
  return h;
}

EmbeddingTable ParseWordVectors(std::istream &in,
                                const EmbeddingLoadOptions &options,
                                const std::string &source_name) {
  if (options.max_words && *options.max_words == 0) {
    throw EmbeddingError("max_words must be positive");
  }
  std::string line;
  size_t line_no = 0;
  auto where = [&] { return source_name + ":" + std::to_string(line_no) + ": "; };

  std::optional<size_t> header_words;
  int dim = 0;
  EmbeddingTable table;
  std::vector<double> vec;
  size_t entries = 0;  // vector lines consumed, duplicates included
  bool first = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = SplitFields(line);
    if (fields.empty()) continue;

    if (first) {
      first = false;
      size_t v = 0;
      int d = 0;
      if (fields.size() == 2 && ParseNumber(fields[0], v) &&
          ParseNumber(fields[1], d)) {
        if (d <= 0) throw EmbeddingError(where() + "header dimension must be positive");
        header_words = v;
        dim = d;
        table = EmbeddingTable(dim);
        continue;
      }
      if (fields.size() < 2) {
        throw EmbeddingError(where() + "vector line has no components");
      }
      dim = static_cast<int>(fields.size() - 1);
      table = EmbeddingTable(dim);
    }

    if (options.max_words && entries >= *options.max_words) break;

    if (static_cast<int>(fields.size()) - 1 != dim) {
      throw EmbeddingError(where() + "dimension mismatch: word '" +
                           std::string(fields[0]) + "' has " +
                           std::to_string(fields.size() - 1) +
                           " components, expected " + std::to_string(dim));
    }
    vec.resize(dim);
    for (int j = 0; j < dim; ++j) {
      if (!ParseNumber(fields[j + 1], vec[j]) || !std::isfinite(vec[j])) {
        throw EmbeddingError(where() + "non-numeric vector component '" +
                             std::string(fields[j + 1]) + "'");
      }
    }
    ++entries;
    if (!table.Add(std::string(fields[0]), vec)) {
      std::clog << "warning: " << where() << "duplicate word '" << fields[0]
                << "' ignored, keeping first vector\n";
    }
  }

  if (dim == 0) throw EmbeddingError(source_name + ": no word vectors found");
  const bool truncated = options.max_words && entries >= *options.max_words;
  if (header_words && !truncated && entries != *header_words) {
    throw EmbeddingError(source_name + ": header declares " +
                         std::to_string(*header_words) + " words but file has " +
                         std::to_string(entries));
  }
  return table;
}

EmbeddingTable LoadWordVectors(const std::filesystem::path &path,
                               const EmbeddingLoadOptions &options) {
  std::ifstream in(path);
  if (!in) throw EmbeddingError("cannot open embeddings file " + path.string());
  return ParseWordVectors(in, options, path.string());
}

void SaveWordVectors(const EmbeddingTable &table,
                     const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw EmbeddingError("cannot write embeddings file " + path.string());
  out << table.vocab_size() << ' ' << table.dim() << '\n';
  char buf[32];
  for (size_t i = 1; i < table.rows(); ++i) {
    const int index = static_cast<int>(i);
    out << table.WordAt(index);
    for (double x : table.Row(index)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
      out << ' ' << std::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
  if (!out) throw EmbeddingError("write failed for " + path.string());
}

}  // namespace singledet
