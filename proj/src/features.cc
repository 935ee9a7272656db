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

#include "singledet/features.h"

#include <algorithm>

namespace singledet {

std::string_view ContextModeName(ContextMode mode) {
  return mode == ContextMode::kTwoByTwo ? "two" : "all";
}

ContextMode ParseContextMode(std::string_view name) {
  if (name == "two") return ContextMode::kTwoByTwo;
  if (name == "all") return ContextMode::kAllWords;
  throw FeatureError("unknown context mode '" + std::string(name) +
                     "' (expected two|all)");
}

void FeatureConfig::Validate(int min_len) const {
  if (!use_words && !use_context && !use_syntactic) {
    throw FeatureError("at least one feature group must be enabled");
  }
  if (max_mention_len < min_len || context_len < min_len) {
    throw FeatureError("mention and context lengths must be at least " +
                       std::to_string(min_len));
  }
  if (extra_flags < 0) throw FeatureError("extra flag count must be >= 0");
}

void ParseFeatureList(std::string_view list, FeatureConfig &cfg) {
  cfg.use_words = cfg.use_context = cfg.use_syntactic = false;
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    const std::string_view item = list.substr(pos, comma - pos);
    if (item == "words") {
      cfg.use_words = true;
    } else if (item == "context") {
      cfg.use_context = true;
    } else if (item == "syntactic") {
      cfg.use_syntactic = true;
    } else {
      throw FeatureError("unknown feature group '" + std::string(item) + "'");
    }
    pos = comma + 1;
  }
  if (!cfg.use_words && !cfg.use_context && !cfg.use_syntactic) {
    throw FeatureError("empty feature list");
  }
}

std::string FeatureListName(const FeatureConfig &cfg) {
  std::string name;
  auto add = [&](bool on, const char *part) {
    if (!on) return;
    if (!name.empty()) name += ',';
    name += part;
  };
  add(cfg.use_words, "words");
  add(cfg.use_context, "context");
  add(cfg.use_syntactic, "syntactic");
  return name;
}

std::vector<int> EncodeMentionWords(const LabeledMention &mention,
                                    const Document &doc,
                                    const EmbeddingTable &table,
                                    const FeatureConfig &cfg) {
  const Sentence &sentence = doc.sentences.at(mention.sentence_index);
  std::vector<int> ids(cfg.max_mention_len, EmbeddingTable::kPaddingIndex);
  const int n = std::min(mention.length(), cfg.max_mention_len);
  for (int i = 0; i < n; ++i) {
    ids[i] = table.IndexOf(sentence[mention.start + i]);
  }
  return ids;
}

std::vector<int> ExtractContext(const LabeledMention &mention,
                                const Document &doc,
                                const EmbeddingTable &table,
                                const FeatureConfig &cfg) {
  const Sentence &sentence = doc.sentences.at(mention.sentence_index);
  const int len = static_cast<int>(sentence.size());
  const int budget = cfg.context_len;

  // Number of tokens taken from each side, nearest to the span first.
  int before = 0;
  int after = 0;
  if (cfg.context_mode == ContextMode::kTwoByTwo) {
    before = std::min(2, mention.start);
    after = std::min(2, len - mention.end);
    while (before + after > budget) {
      (after >= before ? after : before) -= 1;
    }
  } else {
    const int avail_before = mention.start;
    const int avail_after = len - mention.end;
    bool take_before = true;
    while (before + after < budget &&
           (before < avail_before || after < avail_after)) {
      if (take_before && before < avail_before) {
        ++before;
      } else if (!take_before && after < avail_after) {
        ++after;
      } else if (before < avail_before) {
        ++before;
      } else {
        ++after;
      }
      take_before = !take_before;
    }
  }

  std::vector<int> ids(budget, EmbeddingTable::kPaddingIndex);
  int pos = 0;
  for (int t = mention.start - before; t < mention.start; ++t) {
    ids[pos++] = table.IndexOf(sentence[t]);
  }
  for (int t = mention.end; t < mention.end + after; ++t) {
    ids[pos++] = table.IndexOf(sentence[t]);
  }
  return ids;
}

std::vector<double> SyntacticVector(const LabeledMention &mention,
                                    int extra_flags) {
  std::vector<double> v = {
      mention.is_pronoun ? 1.0 : 0.0,
      mention.is_proper_name ? 1.0 : 0.0,
      mention.is_first_person_pronoun ? 1.0 : 0.0,
  };
  for (int i = 0; i < extra_flags; ++i) {
    const bool set = static_cast<size_t>(i) < mention.extra_flags.size() &&
                     mention.extra_flags[i] != 0;
    v.push_back(set ? 1.0 : 0.0);
  }
  return v;
}

EncodedExample EncodeMention(const LabeledMention &mention, const Document &doc,
                             const EmbeddingTable &table,
                             const FeatureConfig &cfg) {
  EncodedExample ex;
  ex.mention_ids = EncodeMentionWords(mention, doc, table, cfg);
  ex.context_ids = ExtractContext(mention, doc, table, cfg);
  ex.syntactic = SyntacticVector(mention, cfg.extra_flags);
  ex.label = mention.is_singleton() ? 1 : 0;
  return ex;
}

std::vector<EncodedExample> EncodeCorpus(std::span<const LabeledMention> mentions,
                                         const Corpus &corpus,
                                         const EmbeddingTable &table,
                                         const FeatureConfig &cfg) {
  cfg.Validate(1);
  std::vector<EncodedExample> out;
  out.reserve(mentions.size());
  for (const LabeledMention &m : mentions) {
    out.push_back(EncodeMention(m, corpus.GetDocument(m.doc_id), table, cfg));
  }
  return out;
}

}  // namespace singledet
