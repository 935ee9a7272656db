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
#include <set>
#include <sstream>

#include "singledet/corpus.h"
#include "singledet/rng.h"
#include "singledet/synthetic.h"
#include "test_util.h"

using namespace singledet;

namespace {

Corpus Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseCorpus(in, "inline");
}

std::string ErrorOf(const std::string &text) {
  try {
    Parse(text);
  } catch (const CorpusError &e) {
    return e.what();
  }
  return "";
}

LabeledMention Span(const std::string &doc, int sent, int start, int end) {
  LabeledMention m;
  m.doc_id = doc;
  m.sentence_index = sent;
  m.start = start;
  m.end = end;
  return m;
}

// Random valid corpus for property tests.
Corpus RandomCorpus(Rng &rng, size_t max_docs = 6) {
  std::vector<Document> docs;
  std::vector<LabeledMention> mentions;
  const size_t n_docs = 1 + rng.UniformInt(max_docs);
  for (size_t d = 0; d < n_docs; ++d) {
    Document doc;
    doc.id = "d" + std::to_string(d);
    const size_t n_sent = 1 + rng.UniformInt(3);
    for (size_t s = 0; s < n_sent; ++s) {
      Sentence sent(1 + rng.UniformInt(8));
      for (auto &tok : sent) tok = "t" + std::to_string(rng.UniformInt(20));
      doc.sentences.push_back(sent);
    }
    const size_t n_mentions = rng.UniformInt(5);
    for (size_t i = 0; i < n_mentions; ++i) {
      LabeledMention m;
      m.doc_id = doc.id;
      m.sentence_index = static_cast<int>(rng.UniformInt(n_sent));
      const int len = static_cast<int>(doc.sentences[m.sentence_index].size());
      m.start = static_cast<int>(rng.UniformInt(len));
      m.end = m.start + 1 + static_cast<int>(rng.UniformInt(len - m.start));
      m.label = rng.Bernoulli(0.5) ? Label::kSingleton : Label::kNonSingleton;
      m.is_pronoun = rng.Bernoulli(0.3);
      m.is_proper_name = rng.Bernoulli(0.3);
      m.is_first_person_pronoun = rng.Bernoulli(0.1);
      mentions.push_back(m);
    }
    docs.push_back(doc);
  }
  return Corpus::Create(std::move(docs), std::move(mentions));
}

}  // namespace

TEST_CASE("load: counts echo the file") {
  const Corpus c = Parse(
      R"({"doc": "a", "sentences": [["x", "y", "z"], ["p", "q"]]})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 0, "end": 2, "label": 1}})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 1, "start": 1, "end": 2, "label": 0}})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 2, "end": 3, "label": 0}})"
      "\n");
  const CorpusStats s = ComputeCorpusStats(c);
  CHECK(s.documents == 1);
  CHECK(s.sentences == 2);
  CHECK(s.mentions == 3);
  CHECK(s.tokens == 5);
  CHECK(s.singletons == 1);
}

TEST_CASE("load: span out of bounds names the mention") {
  try {
    LoadCorpus(testing::DataPath("bad_span.jsonl"));
    FAIL("expected an error");
  } catch (const CorpusError &e) {
    const std::string msg = e.what();
    CHECK(msg.find("span out of bounds") != std::string::npos);
    CHECK(msg.find("start=1, end=4") != std::string::npos);
    CHECK(msg.find(":2:") != std::string::npos);
  }
}

TEST_CASE("load: malformed lines report their line number") {
  const std::string msg = ErrorOf(
      "{\"doc\": \"a\", \"sentences\": [[\"x\"]]}\n"
      "\n"
      "{\"mention\": {\"doc\": \"a\", \"sent\": 0,\n");
  CHECK(msg.find("inline:3:") != std::string::npos);
  CHECK(msg.find("malformed") != std::string::npos);
}

TEST_CASE("load: structural errors") {
  CHECK(ErrorOf(R"({"doc": "a", "sentences": [["x"]]})"
                "\n"
                R"({"doc": "a", "sentences": [["y"]]})")
            .find("duplicate document id") != std::string::npos);
  CHECK(ErrorOf(R"({"doc": "a", "sentences": [["x"]]})"
                "\n"
                R"({"mention": {"doc": "b", "sent": 0, "start": 0, "end": 1}})")
            .find("unknown doc id") != std::string::npos);
  CHECK(ErrorOf(R"({"doc": "a", "sentences": [[]]})").find("empty") !=
        std::string::npos);
  CHECK(ErrorOf(R"({"doc": "a", "sentences": []})").find("no sentences") !=
        std::string::npos);
  CHECK(ErrorOf(R"({"doc": "a", "sentences": [["x", "y"]]})"
                "\n"
                R"({"mention": {"doc": "a", "sent": 0, "start": 1, "end": 1}})")
            .find("span out of bounds") != std::string::npos);
  CHECK(ErrorOf(R"({"doc": "a", "sentences": [["x", "y"]]})"
                "\n"
                R"({"mention": {"doc": "a", "sent": 0, "start": 0, "end": 1, "label": 2}})")
            .find("0 or 1") != std::string::npos);
  CHECK(ErrorOf(R"({"what": 1})").find("unrecognized") != std::string::npos);
}

TEST_CASE("load: the SH1 example") {
  const Corpus c = LoadCorpus(testing::DataPath("sh1.jsonl"));
  const CorpusStats s = ComputeCorpusStats(c);
  CHECK(s.documents == 1);
  CHECK(s.sentences == 2);
  CHECK(s.tokens == 29);
  CHECK(s.mentions == 8);
  CHECK(s.singletons == 2);
  CHECK(SingletonRatio(c) == 0.75);

  // The two singletons are the film festival and Gangajal.
  std::vector<std::string> singles;
  for (const LabeledMention &m : c.mentions()) {
    if (!m.is_singleton()) continue;
    std::string text;
    for (const auto &tok : c.MentionTokens(m)) text += (text.empty() ? "" : " ") + tok;
    singles.push_back(text);
  }
  CHECK(singles == std::vector<std::string>{"फिल्म महोत्सव", "गंगाजल"});
}

TEST_CASE("load: missing flags are filled from the pronoun lexicon") {
  const Corpus c = Parse(
      R"({"doc": "a", "sentences": [["उसकी", "मैं", "किताब", "यह"]]})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 0, "end": 1, "label": 0}})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 1, "end": 2, "label": 0}})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 2, "end": 3, "label": 1}})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 3, "end": 4, "label": 0, "pron": 0}})"
      "\n");
  const auto &m = c.mentions();
  CHECK(m[0].is_pronoun);
  CHECK_FALSE(m[0].is_first_person_pronoun);
  CHECK(m[1].is_pronoun);
  CHECK(m[1].is_first_person_pronoun);
  CHECK_FALSE(m[2].is_pronoun);
  CHECK_FALSE(m[2].is_proper_name);
  // File-provided values win over the lexicon.
  CHECK_FALSE(m[3].is_pronoun);
}

TEST_CASE("load: unlabeled mentions are accepted for prediction") {
  const Corpus c = Parse(
      R"({"doc": "a", "sentences": [["x", "y"]]})"
      "\n"
      R"({"mention": {"doc": "a", "sent": 0, "start": 0, "end": 1}})"
      "\n");
  CHECK_FALSE(c.mentions()[0].label.has_value());
  CHECK_FALSE(c.fully_labeled());
}

TEST_CASE("singleton ratio") {
  std::vector<Document> docs = {{"a", {{"w", "x", "y", "z"}}}};
  auto mentions_with = [&](int singletons) {
    std::vector<LabeledMention> ms;
    for (int i = 0; i < 4; ++i) {
      LabeledMention m = Span("a", 0, i, i + 1);
      m.label = i < singletons ? Label::kSingleton : Label::kNonSingleton;
      ms.push_back(m);
    }
    return Corpus::Create(docs, ms);
  };
  CHECK(SingletonRatio(mentions_with(0)) == 1.0);
  CHECK(SingletonRatio(mentions_with(4)) == 0.0);
  CHECK(SingletonRatio(mentions_with(1)) == 0.75);
  CHECK_THROWS_AS(SingletonRatio(Corpus::Create(docs, {})), CorpusError);
}

TEST_CASE("singleton ratio property: in [0,1], equals 1 iff no singletons") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const Corpus c = RandomCorpus(rng);
    if (c.mentions().empty()) continue;
    const double r = SingletonRatio(c);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    const bool any = std::any_of(c.mentions().begin(), c.mentions().end(),
                                 [](const LabeledMention &m) { return m.is_singleton(); });
    CHECK((r == 1.0) == !any);
  }
}

TEST_CASE("corpus stats of an empty corpus are zero") {
  CHECK(ComputeCorpusStats(Corpus()) == CorpusStats{});
}

TEST_CASE("corpus stats echo the synthetic scale target") {
  SyntheticSpec spec;
  spec.documents = 275;
  spec.sentences = 3600;
  spec.tokens = 78000;
  spec.mentions = 3000;
  const CorpusStats s = ComputeCorpusStats(GenerateSyntheticCorpus(spec));
  CHECK(s.documents == 275);
  CHECK(s.sentences == 3600);
  CHECK(s.tokens == 78000);
  CHECK(s.mentions == 3000);
  CHECK(s.singletons == 1500);
}

TEST_CASE("split: ten documents with default fractions") {
  std::vector<Document> docs;
  std::vector<LabeledMention> mentions;
  for (int d = 0; d < 10; ++d) {
    docs.push_back({"d" + std::to_string(d), {{"a", "b", "c"}}});
    for (int i = 0; i < 3; ++i) {
      LabeledMention m = Span("d" + std::to_string(d), 0, i, i + 1);
      m.label = Label::kNonSingleton;
      mentions.push_back(m);
    }
  }
  const Corpus c = Corpus::Create(docs, mentions);
  SplitSpec spec;
  spec.seed = 7;
  const CorpusSplit s = SplitCorpus(c, spec);
  // test = round(10 * 0.2) = 2; validation = round(8 * 0.2) = round(1.6) = 2;
  // train = 10 - 2 - 2 = 6.
  CHECK(s.test_docs.size() == 2);
  CHECK(s.validation_docs.size() == 2);
  CHECK(s.train_docs.size() == 6);
  CHECK(s.test.size() == 6);
  CHECK(s.validation.size() == 6);
  CHECK(s.train.size() == 18);

  const CorpusSplit again = SplitCorpus(c, spec);
  CHECK(again.train_docs == s.train_docs);
  CHECK(again.validation_docs == s.validation_docs);
  CHECK(again.test_docs == s.test_docs);
  CHECK(again.train == s.train);
}

TEST_CASE("split: rounding that empties a partition is an error") {
  const Corpus c = Corpus::Create({{"a", {{"x"}}}, {"b", {{"y"}}}}, {});
  SplitSpec spec;
  spec.test_fraction = 0.999;
  CHECK_THROWS_AS(SplitCorpus(c, spec), CorpusError);
  spec.test_fraction = 0.0;
  CHECK_THROWS_AS(SplitCorpus(c, spec), CorpusError);
}

TEST_CASE("split property: disjoint, exhaustive, seed-deterministic, by document") {
  Rng rng(5);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Corpus c = RandomCorpus(rng, 30);
    SplitSpec spec;
    spec.seed = rng.NextU64();
    CorpusSplit s;
    try {
      s = SplitCorpus(c, spec);
    } catch (const CorpusError &) {
      continue;  // too few documents for three partitions
    }
    ++checked;
    std::set<std::string> train(s.train_docs.begin(), s.train_docs.end());
    std::set<std::string> val(s.validation_docs.begin(), s.validation_docs.end());
    std::set<std::string> test(s.test_docs.begin(), s.test_docs.end());
    CHECK(train.size() + val.size() + test.size() == c.documents().size());
    std::set<std::string> all = train;
    all.insert(val.begin(), val.end());
    all.insert(test.begin(), test.end());
    CHECK(all.size() == c.documents().size());
    CHECK(s.train.size() + s.validation.size() + s.test.size() == c.mentions().size());
    for (const auto &m : s.train) CHECK(train.contains(m.doc_id));
    for (const auto &m : s.validation) CHECK(val.contains(m.doc_id));
    for (const auto &m : s.test) CHECK(test.contains(m.doc_id));
    CHECK(SplitCorpus(c, spec).test_docs == s.test_docs);
  }
  CHECK(checked > 50);
}

TEST_CASE("round trip: parse(write(c)) == c") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const Corpus c = RandomCorpus(rng);
    std::ostringstream out;
    WriteCorpus(c, out);
    std::istringstream in(out.str());
    const Corpus back = ParseCorpus(in);
    REQUIRE(back.documents().size() == c.documents().size());
    for (size_t i = 0; i < c.documents().size(); ++i) {
      CHECK(back.documents()[i].id == c.documents()[i].id);
      CHECK(back.documents()[i].sentences == c.documents()[i].sentences);
    }
    CHECK(back.mentions() == c.mentions());
  }
}

TEST_CASE("round trip through a file keeps Devanagari intact") {
  const Corpus c = LoadCorpus(testing::DataPath("sh1.jsonl"));
  const auto path = testing::TempPath("sh1_copy.jsonl");
  SaveCorpus(c, path);
  const Corpus back = LoadCorpus(path);
  CHECK(back.documents()[0].sentences == c.documents()[0].sentences);
  CHECK(back.mentions() == c.mentions());
}
