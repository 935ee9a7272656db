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

#ifndef SINGLEDET_FEATURES_H_
#define SINGLEDET_FEATURES_H_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "singledet/corpus.h"
#include "singledet/embeddings.h"

namespace singledet {

class FeatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ContextMode {
  kTwoByTwo,  // two tokens before and two after the mention
  kAllWords,  // every sentence token outside the mention
};

std::string_view ContextModeName(ContextMode mode);
ContextMode ParseContextMode(std::string_view name);

inline constexpr int kNumSyntacticFlags = 3;

struct FeatureConfig {
  int max_mention_len = 10;
  ContextMode context_mode = ContextMode::kTwoByTwo;
  int context_len = 10;
  bool use_words = true;
  bool use_context = true;
  bool use_syntactic = true;
  // Count of file-provided extra flags appended to the syntactic vector.
  int extra_flags = 0;

  int syntactic_width() const { return kNumSyntacticFlags + extra_flags; }

  // `min_len` is the widest convolution filter that will consume the
  // sequences.
  void Validate(int min_len = 4) const;

  bool operator==(const FeatureConfig &other) const = default;
};

// Parses a comma-separated subset of {words, context, syntactic} into the
// use_* flags of `cfg`.
void ParseFeatureList(std::string_view list, FeatureConfig &cfg);
std::string FeatureListName(const FeatureConfig &cfg);

struct EncodedExample {
  std::vector<int> mention_ids;
  std::vector<int> context_ids;
  std::vector<double> syntactic;
  int label = 0;

  bool operator==(const EncodedExample &other) const = default;
};

std::vector<int> EncodeMentionWords(const LabeledMention &mention,
                                    const Document &doc,
                                    const EmbeddingTable &table,
                                    const FeatureConfig &cfg);

std::vector<int> ExtractContext(const LabeledMention &mention,
                                const Document &doc,
                                const EmbeddingTable &table,
                                const FeatureConfig &cfg);

// [is_pronoun, is_proper_name, is_first_person_pronoun] followed by
// `extra_flags` file-provided flags (missing ones read as 0).
std::vector<double> SyntacticVector(const LabeledMention &mention,
                                    int extra_flags = 0);

EncodedExample EncodeMention(const LabeledMention &mention, const Document &doc,
                             const EmbeddingTable &table,
                             const FeatureConfig &cfg);

// One example per mention, in order. Unlabeled mentions encode with label 0.
std::vector<EncodedExample> EncodeCorpus(std::span<const LabeledMention> mentions,
                                         const Corpus &corpus,
                                         const EmbeddingTable &table,
                                         const FeatureConfig &cfg);

}  // namespace singledet

#endif  // SINGLEDET_FEATURES_H_
