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

#ifndef SINGLEDET_SYNTHETIC_H_
#define SINGLEDET_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "singledet/corpus.h"
#include "singledet/embeddings.h"

// Generated corpora and vector tables for tests, benchmarks and demos.

namespace singledet {

enum class SyntheticTask {
  // The token just before each mention is a class marker and the
  // proper-name flag equals the label, so the labels are learnable.
  kSeparable,
  // Labels are fair coin flips independent of every input.
  kRandom,
};

struct SyntheticSpec {
  size_t documents = 20;
  size_t sentences = 100;  // spread evenly over documents
  size_t tokens = 1200;    // spread evenly over sentences
  size_t mentions = 100;   // at most one per sentence
  size_t vocab = 500;      // filler/mention words w0..w{vocab-1}
  SyntheticTask task = SyntheticTask::kSeparable;
  // Randomly permute labels across mentions after generation.
  bool permute_labels = false;
  // Replace every token with a word that is absent from the table.
  bool all_oov = false;
  uint64_t seed = 1;
};

// Vector table covering the vocabulary of every corpus generated with the
// same `vocab`: words w0..w{vocab-1} and the two class markers.
EmbeddingTable MakeSyntheticTable(size_t vocab, int dim, uint64_t seed);

// Throws std::invalid_argument when the requested counts are inconsistent
// (e.g. more mentions than sentences, sentences shorter than 4 tokens).
Corpus GenerateSyntheticCorpus(const SyntheticSpec &spec);

std::string SyntheticWord(size_t i);

}  // namespace singledet

#endif  // SINGLEDET_SYNTHETIC_H_
