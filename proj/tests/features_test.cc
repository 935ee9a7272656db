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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "singledet/features.h"
#include "singledet/rng.h"
#include "test_util.h"

using namespace singledet;

namespace {

// Table holding w0..w{n-1} at indices 1..n.
EmbeddingTable Table(int n) {
  EmbeddingTable t(2);
  for (int i = 0; i < n; ++i) t.Add("w" + std::to_string(i), std::vector<double>{1.0 * i, 0});
  return t;
}

Document Doc(int tokens) {
  Document d;
  d.id = "d";
  Sentence s;
  for (int i = 0; i < tokens; ++i) s.push_back("w" + std::to_string(i));
  d.sentences.push_back(s);
  return d;
}

LabeledMention Span(int start, int end) {
  LabeledMention m;
  m.doc_id = "d";
  m.start = start;
  m.end = end;
  return m;
}

}  // namespace

TEST_CASE("mention words: padding") {
  const EmbeddingTable t = Table(30);
  FeatureConfig cfg;
  CHECK(EncodeMentionWords(Span(4, 7), Doc(10), t, cfg) ==
        std::vector<int>{5, 6, 7, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("mention words: truncation keeps the first tokens") {
  const EmbeddingTable t = Table(30);
  FeatureConfig cfg;
  CHECK(EncodeMentionWords(Span(0, 12), Doc(12), t, cfg) ==
        std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("mention words: out-of-vocabulary words look like padding") {
  const EmbeddingTable t = Table(2);
  FeatureConfig cfg;
  CHECK(EncodeMentionWords(Span(4, 7), Doc(10), t, cfg) == std::vector<int>(10, 0));
}

TEST_CASE("context: two by two") {
  const EmbeddingTable t = Table(30);
  FeatureConfig cfg;
  CHECK(ExtractContext(Span(2, 4), Doc(6), t, cfg) ==
        std::vector<int>{1, 2, 5, 6, 0, 0, 0, 0, 0, 0});
  CHECK(ExtractContext(Span(0, 2), Doc(6), t, cfg) ==
        std::vector<int>{3, 4, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(ExtractContext(Span(5, 6), Doc(6), t, cfg) ==
        std::vector<int>{4, 5, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(ExtractContext(Span(0, 6), Doc(6), t, cfg) == std::vector<int>(10, 0));
  CHECK(ExtractContext(Span(1, 2), Doc(3), t, cfg) ==
        std::vector<int>{1, 3, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("context: all words keeps the tokens nearest the mention") {
  const EmbeddingTable t = Table(30);
  FeatureConfig cfg;
  cfg.context_mode = ContextMode::kAllWords;
  // Tokens 4..8 before and 10..14 after, in textual order.
  CHECK(ExtractContext(Span(9, 10), Doc(20), t, cfg) ==
        std::vector<int>{5, 6, 7, 8, 9, 11, 12, 13, 14, 15});
  // Short sentence: everything outside the span, then padding.
  CHECK(ExtractContext(Span(2, 4), Doc(6), t, cfg) ==
        std::vector<int>{1, 2, 5, 6, 0, 0, 0, 0, 0, 0});
  // One side runs out, the other fills the budget.
  CHECK(ExtractContext(Span(1, 2), Doc(20), t, cfg) ==
        std::vector<int>{1, 3, 4, 5, 6, 7, 8, 9, 10, 11});
}

TEST_CASE("context property: fixed length, bounded ids, at most four in two-by-two") {
  const EmbeddingTable t = Table(15);
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const int len = 1 + static_cast<int>(rng.UniformInt(25));
    const int start = static_cast<int>(rng.UniformInt(len));
    const int end = start + 1 + static_cast<int>(rng.UniformInt(len - start));
    FeatureConfig cfg;
    cfg.context_mode = rng.Bernoulli(0.5) ? ContextMode::kAllWords : ContextMode::kTwoByTwo;
    cfg.context_len = 4 + static_cast<int>(rng.UniformInt(10));
    cfg.max_mention_len = 4 + static_cast<int>(rng.UniformInt(10));
    const Document doc = Doc(len);
    const EncodedExample ex = EncodeMention(Span(start, end), doc, t, cfg);
    CHECK(ex.mention_ids.size() == static_cast<size_t>(cfg.max_mention_len));
    CHECK(ex.context_ids.size() == static_cast<size_t>(cfg.context_len));
    CHECK(ex.syntactic.size() == 3);
    for (int id : ex.mention_ids) CHECK((id >= 0 && id <= 15));
    for (int id : ex.context_ids) CHECK((id >= 0 && id <= 15));
    if (cfg.context_mode == ContextMode::kTwoByTwo) {
      const long nonzero = std::count_if(ex.context_ids.begin(), ex.context_ids.end(),
                                         [](int id) { return id != 0; });
      CHECK(nonzero <= 4);
    }
    CHECK(EncodeMention(Span(start, end), doc, t, cfg) == ex);
  }
}

TEST_CASE("syntactic vector") {
  LabeledMention m = Span(0, 1);
  m.is_pronoun = true;
  m.is_first_person_pronoun = true;
  CHECK(SyntacticVector(m) == std::vector<double>{1, 0, 1});
  m = Span(0, 2);
  m.is_proper_name = true;
  CHECK(SyntacticVector(m) == std::vector<double>{0, 1, 0});
  CHECK(SyntacticVector(Span(0, 1)) == std::vector<double>{0, 0, 0});
  m.extra_flags = {1};
  CHECK(SyntacticVector(m, 2) == std::vector<double>{0, 1, 0, 1, 0});
}

TEST_CASE("encode: label and corpus order") {
  const EmbeddingTable t = LoadWordVectors(testing::DataPath("vectors_3x4.txt"));
  const Corpus c = LoadCorpus(testing::DataPath("sh1.jsonl"));
  FeatureConfig cfg;
  const auto all = EncodeCorpus(c.mentions(), c, t, cfg);
  REQUIRE(all.size() == 8);
  for (size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].label == (c.mentions()[i].is_singleton() ? 1 : 0));
  }
  // गंगाजल is a known word.
  for (size_t i = 0; i < all.size(); ++i) {
    const auto tokens = c.MentionTokens(c.mentions()[i]);
    if (tokens == std::vector<std::string>{"गंगाजल"}) CHECK(all[i].mention_ids[0] == 2);
  }
}

TEST_CASE("config validation") {
  FeatureConfig cfg;
  CHECK_NOTHROW(cfg.Validate());
  cfg.max_mention_len = 3;
  CHECK_THROWS_AS(cfg.Validate(), FeatureError);
  cfg = FeatureConfig();
  cfg.context_len = 0;
  CHECK_THROWS_AS(cfg.Validate(), FeatureError);
  cfg = FeatureConfig();
  cfg.use_words = cfg.use_context = cfg.use_syntactic = false;
  CHECK_THROWS_AS(cfg.Validate(), FeatureError);
}

TEST_CASE("feature list and context mode names") {
  FeatureConfig cfg;
  ParseFeatureList("words,syntactic", cfg);
  CHECK(cfg.use_words);
  CHECK_FALSE(cfg.use_context);
  CHECK(cfg.use_syntactic);
  CHECK(FeatureListName(cfg) == "words,syntactic");
  CHECK_THROWS_AS(ParseFeatureList("words,pos", cfg), FeatureError);
  CHECK(ParseContextMode("all") == ContextMode::kAllWords);
  CHECK(ParseContextMode("two") == ContextMode::kTwoByTwo);
  CHECK(ContextModeName(ContextMode::kAllWords) == "all");
  CHECK_THROWS_AS(ParseContextMode("three"), FeatureError);
}
