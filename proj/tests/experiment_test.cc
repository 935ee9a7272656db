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

#include <set>

#include "singledet/experiment.h"
#include "singledet/synthetic.h"
#include "test_util.h"

using namespace singledet;

namespace {

ExperimentData SmallData(uint64_t seed = 1) {
  SyntheticSpec spec;
  spec.documents = 10;
  spec.sentences = 60;
  spec.tokens = 600;
  spec.mentions = 60;
  spec.vocab = 40;
  spec.seed = seed;
  auto corpus = std::make_shared<const Corpus>(GenerateSyntheticCorpus(spec));
  auto table = std::make_shared<const EmbeddingTable>(MakeSyntheticTable(40, 6, 2));
  SplitSpec split;
  split.seed = 3;
  return MakeExperimentData(corpus, table, split);
}

ExperimentConfig SmallExperiment() {
  ExperimentConfig cfg;
  cfg.model = testing::SmallConfig(6);
  cfg.train.epochs = 2;
  cfg.train.shuffle_seed = 4;
  return cfg;
}

}  // namespace

TEST_CASE("synthetic corpus: requested scale and balance") {
  SyntheticSpec spec;
  const Corpus c = GenerateSyntheticCorpus(spec);
  const CorpusStats s = ComputeCorpusStats(c);
  CHECK(s.documents == spec.documents);
  CHECK(s.sentences == spec.sentences);
  CHECK(s.tokens == spec.tokens);
  CHECK(s.mentions == spec.mentions);
  CHECK(s.singletons == spec.mentions / 2);
  CHECK(c.fully_labeled());
  // Every token is covered by the matching table.
  const EmbeddingTable t = MakeSyntheticTable(spec.vocab, 4, 1);
  for (const Document &d : c.documents()) {
    for (const Sentence &sent : d.sentences) {
      for (const std::string &tok : sent) CHECK(t.IndexOf(tok) != 0);
    }
  }
  // Same seed, same corpus.
  const Corpus again = GenerateSyntheticCorpus(spec);
  CHECK(again.mentions() == c.mentions());
}

TEST_CASE("synthetic corpus: the separable task marks each mention") {
  SyntheticSpec spec;
  const Corpus c = GenerateSyntheticCorpus(spec);
  for (const LabeledMention &m : c.mentions()) {
    const std::string &marker =
        c.GetDocument(m.doc_id).sentences[m.sentence_index][m.start - 1];
    CHECK(marker == (m.is_singleton() ? "MARK_S" : "MARK_C"));
    CHECK(m.is_proper_name == m.is_singleton());
  }
}

TEST_CASE("synthetic corpus: permuted and out-of-vocabulary variants") {
  SyntheticSpec spec;
  spec.permute_labels = true;
  const Corpus permuted = GenerateSyntheticCorpus(spec);
  CHECK(ComputeCorpusStats(permuted).singletons == spec.mentions / 2);
  spec.permute_labels = false;
  spec.all_oov = true;
  const Corpus oov = GenerateSyntheticCorpus(spec);
  const EmbeddingTable t = MakeSyntheticTable(spec.vocab, 4, 1);
  for (const Document &d : oov.documents()) {
    for (const Sentence &sent : d.sentences) {
      for (const std::string &tok : sent) CHECK(t.IndexOf(tok) == 0);
    }
  }
  spec = SyntheticSpec();
  spec.mentions = spec.sentences + 1;
  CHECK_THROWS_AS(GenerateSyntheticCorpus(spec), std::invalid_argument);
}

TEST_CASE("experiment data needs labels") {
  LabeledMention unlabeled;
  unlabeled.doc_id = "a";
  unlabeled.end = 1;
  auto corpus = std::make_shared<const Corpus>(
      Corpus::Create({{"a", {{"x", "y"}}}, {"b", {{"x"}}}, {"c", {{"y"}}}}, {unlabeled}));
  auto table = std::make_shared<const EmbeddingTable>(MakeSyntheticTable(2, 4, 1));
  CHECK_THROWS_AS(MakeExperimentData(corpus, table, SplitSpec()), CorpusError);
}

TEST_CASE("run experiment reports on both held-out sets") {
  const ExperimentData data = SmallData();
  const ExperimentResult r = RunExperiment(data, SmallExperiment());
  CHECK(r.history.epochs.size() == 2);
  REQUIRE(r.validation.has_value());
  REQUIRE(r.test.has_value());
  CHECK(r.test->counts.total == data.test.size());
  CHECK(r.validation->counts.total == data.validation.size());
  CHECK(r.model != nullptr);
}

TEST_CASE("sweep axis values") {
  const ExperimentConfig base = SmallExperiment();
  CHECK(ApplySweepValue(base, SweepAxis::kOptimizer, "adagrad").train.optimizer ==
        OptimizerKind::kAdagrad);
  CHECK(ApplySweepValue(base, SweepAxis::kEpochs, "7").train.epochs == 7);
  CHECK_THROWS(ApplySweepValue(base, SweepAxis::kEpochs, "7x"));
  CHECK_THROWS(ApplySweepValue(base, SweepAxis::kEpochs, "0"));
  CHECK(ApplySweepValue(base, SweepAxis::kContextMode, "all").model.context_mode ==
        ContextMode::kAllWords);
  const ModelConfig m = ApplySweepValue(base, SweepAxis::kFeatures, "words+context").model;
  CHECK(m.use_words);
  CHECK(m.use_context);
  CHECK_FALSE(m.use_syntactic);
  for (auto axis : {SweepAxis::kOptimizer, SweepAxis::kEpochs, SweepAxis::kContextMode,
                    SweepAxis::kFeatures}) {
    CHECK(ParseSweepAxis(SweepAxisName(axis)) == axis);
  }
  CHECK_THROWS(ParseSweepAxis("lr"));
}

TEST_CASE("a single-value sweep equals a plain run") {
  const ExperimentData data = SmallData();
  const ExperimentConfig base = SmallExperiment();
  const auto rows = Sweep(data, base, SweepAxis::kOptimizer, {"adam"});
  const ExperimentResult plain = RunExperiment(data, base);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].result.history == plain.history);
  CHECK(rows[0].result.model->ParameterFingerprint() == plain.model->ParameterFingerprint());
}

TEST_CASE("optimizer and context-mode sweeps") {
  const ExperimentData data = SmallData();
  const ExperimentConfig base = SmallExperiment();
  const auto rows =
      Sweep(data, base, SweepAxis::kOptimizer, {"adam", "rmsprop", "adagrad", "adadelta"});
  REQUIRE(rows.size() == 4);
  const std::string table = RenderSweepTable(SweepAxis::kOptimizer, rows);
  for (const char *name : {"adam", "rmsprop", "adagrad", "adadelta", "val_acc"}) {
    CHECK(table.find(name) != std::string::npos);
  }
  const auto modes = Sweep(data, base, SweepAxis::kContextMode, {"two", "all"});
  REQUIRE(modes.size() == 2);
  CHECK(modes[0].result.history != modes[1].result.history);
}
