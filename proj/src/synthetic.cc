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

#include "singledet/synthetic.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "singledet/rng.h"

namespace singledet {

namespace {

constexpr const char *kSingletonMarker = "MARK_S";
constexpr const char *kCoreferentMarker = "MARK_C";

std::vector<size_t> SpreadEvenly(size_t total, size_t buckets) {
  std::vector<size_t> sizes(buckets, total / buckets);
  for (size_t i = 0; i < total % buckets; ++i) ++sizes[i];
  return sizes;
}

}  // namespace

std::string SyntheticWord(size_t i) { return "w" + std::to_string(i); }

EmbeddingTable MakeSyntheticTable(size_t vocab, int dim, uint64_t seed) {
  EmbeddingTable table(dim);
  Rng rng(seed);
  std::vector<double> vec(dim);
  auto add = [&](const std::string &word) {
    for (double &v : vec) v = rng.Uniform(-0.5, 0.5);
    table.Add(word, vec);
  };
  for (size_t i = 0; i < vocab; ++i) add(SyntheticWord(i));
  add(kSingletonMarker);
  add(kCoreferentMarker);
  return table;
}

Corpus GenerateSyntheticCorpus(const SyntheticSpec &spec) {
  if (spec.documents == 0 || spec.sentences < spec.documents) {
    throw std::invalid_argument("need at least one sentence per document");
  }
  if (spec.tokens < 4 * spec.sentences) {
    throw std::invalid_argument("sentences need at least 4 tokens each");
  }
  if (spec.mentions > spec.sentences) {
    throw std::invalid_argument("at most one mention per sentence is generated");
  }
  if (spec.vocab == 0) throw std::invalid_argument("vocabulary must be non-empty");

  Rng rng(spec.seed);
  auto filler = [&] { return SyntheticWord(rng.UniformInt(spec.vocab)); };

  const std::vector<size_t> per_doc = SpreadEvenly(spec.sentences, spec.documents);
  const std::vector<size_t> per_sentence = SpreadEvenly(spec.tokens, spec.sentences);

  std::vector<Document> docs;
  // Global sentence number -> (document, sentence index).
  std::vector<std::pair<size_t, int>> where;
  size_t global = 0;
  for (size_t d = 0; d < spec.documents; ++d) {
    Document doc;
    doc.id = "doc" + std::to_string(d);
    for (size_t s = 0; s < per_doc[d]; ++s) {
      Sentence sentence(per_sentence[global]);
      for (std::string &tok : sentence) tok = filler();
      doc.sentences.push_back(std::move(sentence));
      where.emplace_back(d, static_cast<int>(s));
      ++global;
    }
    docs.push_back(std::move(doc));
  }

  // Exactly balanced labels in random order.
  std::vector<int> labels(spec.mentions, 0);
  for (size_t i = 0; i < spec.mentions / 2; ++i) labels[i] = 1;
  rng.Shuffle(labels);

  std::vector<LabeledMention> mentions;
  for (size_t i = 0; i < spec.mentions; ++i) {
    const size_t g = i * spec.sentences / spec.mentions;
    auto [d, s] = where[g];
    Sentence &sentence = docs[d].sentences[s];
    const int len = static_cast<int>(sentence.size());
    const int span = 1 + static_cast<int>(rng.UniformInt(std::min(3, len - 1)));
    const int start = 1 + static_cast<int>(rng.UniformInt(len - span));

    LabeledMention m;
    m.doc_id = docs[d].id;
    m.sentence_index = s;
    m.start = start;
    m.end = start + span;
    m.label = labels[i] == 1 ? Label::kSingleton : Label::kNonSingleton;
    if (spec.task == SyntheticTask::kSeparable) {
      sentence[start - 1] = labels[i] == 1 ? kSingletonMarker : kCoreferentMarker;
      m.is_proper_name = labels[i] == 1;
      m.is_pronoun = rng.Bernoulli(0.5);
    } else {
      m.is_proper_name = rng.Bernoulli(0.5);
      m.is_pronoun = rng.Bernoulli(0.5);
    }
    mentions.push_back(std::move(m));
  }

  if (spec.permute_labels) {
    std::vector<std::optional<Label>> shuffled;
    for (const LabeledMention &m : mentions) shuffled.push_back(m.label);
    rng.Shuffle(shuffled);
    for (size_t i = 0; i < mentions.size(); ++i) mentions[i].label = shuffled[i];
  }
  if (spec.all_oov) {
    for (Document &doc : docs) {
      for (Sentence &sentence : doc.sentences) {
        for (std::string &tok : sentence) tok = "oov_" + tok;
      }
    }
  }
  return Corpus::Create(std::move(docs), std::move(mentions));
}

}  // namespace singledet
