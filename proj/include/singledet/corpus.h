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

#ifndef SINGLEDET_CORPUS_H_
#define SINGLEDET_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace singledet {

// Raised for malformed corpus files and invalid corpus contents.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Label : int { kNonSingleton = 0, kSingleton = 1 };

using Sentence = std::vector<std::string>;

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  size_t token_count() const;
};

// A token span inside one sentence of a document. The span is half-open:
// tokens [start, end) of sentence `sentence_index`.
struct LabeledMention {
  std::string doc_id;
  int sentence_index = 0;
  int start = 0;
  int end = 0;
  // Absent for unlabeled corpora (prediction input).
  std::optional<Label> label;
  bool is_pronoun = false;
  bool is_proper_name = false;
  bool is_first_person_pronoun = false;
  // Additional file-provided binary flags appended after the three above.
  std::vector<int> extra_flags;

  bool is_singleton() const { return label == Label::kSingleton; }
  int length() const { return end - start; }

  bool operator==(const LabeledMention &other) const = default;
};

// A validated set of documents and the mentions annotated on them. Corpus
// values are immutable after construction through Corpus::Create.
class Corpus {
 public:
  Corpus() = default;

  // Validates documents and mentions; throws CorpusError on the first
  // violated invariant.
  static Corpus Create(std::vector<Document> documents,
                       std::vector<LabeledMention> mentions);

  const std::vector<Document> &documents() const { return documents_; }
  const std::vector<LabeledMention> &mentions() const { return mentions_; }

  // Returns nullptr for unknown ids.
  const Document *FindDocument(std::string_view id) const;
  const Document &GetDocument(std::string_view id) const;

  // Tokens covered by the mention.
  std::vector<std::string> MentionTokens(const LabeledMention &mention) const;

  bool fully_labeled() const;

 private:
  std::vector<Document> documents_;
  std::vector<LabeledMention> mentions_;
  std::unordered_map<std::string, size_t> index_;
};

struct CorpusStats {
  size_t documents = 0;
  size_t sentences = 0;
  size_t tokens = 0;
  size_t mentions = 0;
  size_t singletons = 0;

  bool operator==(const CorpusStats &other) const = default;
};

struct SplitSpec {
  double test_fraction = 0.20;
  double validation_fraction_of_train = 0.20;
  uint64_t seed = 0;
};

// Mentions of each partition in corpus order, plus the document ids that
// were assigned to it.
struct CorpusSplit {
  std::vector<LabeledMention> train;
  std::vector<LabeledMention> validation;
  std::vector<LabeledMention> test;
  std::vector<std::string> train_docs;
  std::vector<std::string> validation_docs;
  std::vector<std::string> test_docs;
};

// Reads the JSON-lines corpus format. Errors carry the 1-based line number.
Corpus LoadCorpus(const std::filesystem::path &path);
Corpus ParseCorpus(std::istream &in, const std::string &source_name = "<stream>");

// Writes the JSON-lines format: all document lines, then all mention lines.
void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path);
void WriteCorpus(const Corpus &corpus, std::ostream &out);

// (|M| - |S|) / |M|, the fraction of mentions that take part in coreference.
// Throws CorpusError if the corpus has no mentions.
double SingletonRatio(const Corpus &corpus);

CorpusStats ComputeCorpusStats(const Corpus &corpus);

// Deterministic document-level split. Test gets round(n * test_fraction)
// documents, validation gets round(rest * validation_fraction_of_train),
// and train absorbs the remainder. Throws CorpusError if any partition is
// empty.
CorpusSplit SplitCorpus(const Corpus &corpus, const SplitSpec &spec);

// Built-in pronoun lexicon used to fill flags that a corpus file omits.
bool IsHindiPronoun(std::string_view word);
bool IsHindiFirstPersonPronoun(std::string_view word);

}  // namespace singledet

#endif  // SINGLEDET_CORPUS_H_
