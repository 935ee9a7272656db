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

// Command-line front end: corpus statistics, training, evaluation,
// prediction, hyperparameter sweeps and synthetic data generation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "singledet/checkpoint.h"
#include "singledet/corpus.h"
#include "singledet/embeddings.h"
#include "singledet/experiment.h"
#include "singledet/features.h"
#include "singledet/metrics.h"
#include "singledet/model.h"
#include "singledet/synthetic.h"
#include "singledet/training.h"

namespace {

using json = nlohmann::json;
using namespace singledet;

struct EmbeddingOptions {
  std::string path;
  size_t max_words = 0;

  void Register(CLI::App *app) {
    app->add_option("--embeddings", path, "word2vec text file")->required();
    app->add_option("--max-words", max_words,
                    "load at most this many vectors (0 = all)");
  }

  std::shared_ptr<const EmbeddingTable> Load() const {
    EmbeddingLoadOptions opts;
    if (max_words > 0) opts.max_words = max_words;
    return std::make_shared<const EmbeddingTable>(LoadWordVectors(path, opts));
  }
};

struct FeatureOptions {
  std::string context_mode = "two";
  std::string features = "words,context,syntactic";
  int max_mention_len = 10;
  int context_len = 10;
  int extra_flags = 0;

  void Register(CLI::App *app) {
    app->add_option("--context-mode", context_mode, "two|all")
        ->check(CLI::IsMember({"two", "all"}));
    app->add_option("--features", features,
                    "comma subset of words,context,syntactic");
    app->add_option("--max-mention-len", max_mention_len);
    app->add_option("--context-len", context_len);
    app->add_option("--extra-flags", extra_flags,
                    "number of file-provided extra syntactic flags");
  }

  FeatureConfig Build() const {
    FeatureConfig cfg;
    cfg.context_mode = ParseContextMode(context_mode);
    ParseFeatureList(features, cfg);
    cfg.max_mention_len = max_mention_len;
    cfg.context_len = context_len;
    cfg.extra_flags = extra_flags;
    return cfg;
  }
};

struct TrainOptions {
  std::string corpus;
  int epochs = 20;
  int batch_size = 5;
  double lr = 0.001;
  std::string optimizer = "adam";
  uint64_t seed = 0;
  double test_fraction = 0.2;
  double val_fraction = 0.2;
  double dropout = 0.2;
  bool no_dropout = false;

  void Register(CLI::App *app) {
    app->add_option("--corpus", corpus, "JSON-lines corpus")->required();
    app->add_option("--epochs", epochs);
    app->add_option("--batch-size", batch_size);
    app->add_option("--lr", lr, "learning rate");
    app->add_option("--optimizer", optimizer, "adam|rmsprop|adagrad|adadelta")
        ->check(CLI::IsMember({"adam", "rmsprop", "adagrad", "adadelta"}));
    app->add_option("--seed", seed, "seeds the split, initialization and shuffling");
    app->add_option("--test-fraction", test_fraction);
    app->add_option("--val-fraction", val_fraction,
                    "validation share of the training documents");
    app->add_option("--dropout", dropout, "dropout rate");
    app->add_flag("--no-dropout", no_dropout, "disable dropout during training");
  }

  ExperimentConfig Build(const FeatureConfig &features, int embed_dim) const {
    ExperimentConfig cfg;
    cfg.model.ApplyFeatures(features);
    cfg.model.embed_dim = embed_dim;
    cfg.model.seed = seed;
    cfg.model.dropout_rate = dropout;
    cfg.train.epochs = epochs;
    cfg.train.batch_size = batch_size;
    cfg.train.learning_rate = lr;
    cfg.train.optimizer = ParseOptimizer(optimizer);
    cfg.train.shuffle_seed = seed;
    cfg.train.dropout_enabled = !no_dropout;
    return cfg;
  }

  SplitSpec Split() const { return {test_fraction, val_fraction, seed}; }
};

std::string RowName(const ModelConfig &cfg) {
  std::string name = FeatureListName(cfg.features());
  if (cfg.use_context) name += " (" + std::string(ContextModeName(cfg.context_mode)) + ")";
  return name;
}

int RunStats(const std::string &corpus_path) {
  const Corpus corpus = LoadCorpus(corpus_path);
  const CorpusStats s = ComputeCorpusStats(corpus);
  json out = {{"documents", s.documents},
              {"sentences", s.sentences},
              {"tokens", s.tokens},
              {"mentions", s.mentions},
              {"singletons", s.singletons}};
  if (s.mentions > 0) out["singleton_ratio"] = SingletonRatio(corpus);
  std::cout << out.dump() << '\n';
  return 0;
}

int RunTrain(const TrainOptions &t, const EmbeddingOptions &e,
             const FeatureOptions &f, const std::string &out_path,
             const std::string &history_path) {
  auto table = e.Load();
  auto corpus = std::make_shared<const Corpus>(LoadCorpus(t.corpus));
  const ExperimentData data = MakeExperimentData(corpus, table, t.Split());
  ExperimentConfig cfg = t.Build(f.Build(), table->dim());

  std::cerr << "train " << data.train.size() << " / validation "
            << data.validation.size() << " / test " << data.test.size()
            << " mentions; single-threaded, deterministic\n";
  const FeatureConfig features = cfg.model.features();
  const auto train = EncodeCorpus(data.train, *corpus, *table, features);
  const auto val = EncodeCorpus(data.validation, *corpus, *table, features);
  const auto test = EncodeCorpus(data.test, *corpus, *table, features);

  SingletonModel model(cfg.model, table);
  const TrainHistory history =
      Train(model, train, val, cfg.train, [](const EpochRecord &r) {
        std::fprintf(stderr,
                     "epoch %3d  train_loss %.4f  train_acc %.4f  val_loss %.4f  "
                     "val_acc %.4f\n",
                     r.epoch, r.train_loss, r.train_accuracy, r.val_loss,
                     r.val_accuracy);
      });
  if (!out_path.empty()) SaveModel(model, out_path);
  if (!history_path.empty()) WriteHistoryCsv(history, history_path);

  if (!test.empty()) {
    const EvalResult eval = Evaluate(model, test);
    const ClassReport report = Report(eval.predictions, Labels(test));
    std::cout << RenderReportTable({{RowName(cfg.model), report}});
  }
  return 0;
}

int RunEval(const std::string &model_path, const std::string &corpus_path,
            const EmbeddingOptions &e, double beta, const std::string &format) {
  auto table = e.Load();
  const SingletonModel model = LoadModel(model_path, table);
  const Corpus corpus = LoadCorpus(corpus_path);
  if (!corpus.fully_labeled()) {
    throw CorpusError("evaluation needs every mention to carry a label");
  }
  const auto data =
      EncodeCorpus(corpus.mentions(), corpus, *table, model.config().features());
  const EvalResult eval = Evaluate(model, data);
  const ClassReport report = Report(eval.predictions, Labels(data), beta);
  if (format == "json") {
    json out = json::parse(ReportToJson(report));
    out["features"] = FeatureListName(model.config().features());
    out["context_mode"] = std::string(ContextModeName(model.config().context_mode));
    out["mean_loss"] = eval.mean_loss;
    std::cout << out.dump() << '\n';
  } else {
    std::cout << RenderReportTable({{RowName(model.config()), report}});
  }
  return 0;
}

int RunPredict(const std::string &model_path, const std::string &corpus_path,
               const EmbeddingOptions &e) {
  auto table = e.Load();
  const SingletonModel model = LoadModel(model_path, table);
  const Corpus corpus = LoadCorpus(corpus_path);
  const FeatureConfig features = model.config().features();
  for (const LabeledMention &m : corpus.mentions()) {
    const EncodedExample ex =
        EncodeMention(m, corpus.GetDocument(m.doc_id), *table, features);
    const Probabilities probs = model.Predict(ex);
    json mention = {{"doc", m.doc_id},
                    {"sent", m.sentence_index},
                    {"start", m.start},
                    {"end", m.end}};
    json line = {{"mention", mention},
                 {"p_singleton", probs[1]},
                 {"label", ArgMaxLabel(probs)}};
    std::cout << line.dump() << '\n';
  }
  return 0;
}

std::vector<std::string> SplitList(const std::string &list) {
  std::vector<std::string> items;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

int RunSweep(const TrainOptions &t, const EmbeddingOptions &e,
             const FeatureOptions &f, const std::string &axis_name,
             const std::string &values) {
  auto table = e.Load();
  auto corpus = std::make_shared<const Corpus>(LoadCorpus(t.corpus));
  const ExperimentData data = MakeExperimentData(corpus, table, t.Split());
  const ExperimentConfig base = t.Build(f.Build(), table->dim());
  const SweepAxis axis = ParseSweepAxis(axis_name);
  const auto rows = Sweep(data, base, axis, SplitList(values));
  std::cout << RenderSweepTable(axis, rows);
  return 0;
}

struct SynthOptions {
  std::string out_corpus;
  std::string out_embeddings;
  SyntheticSpec spec;
  std::string task = "separable";
  int dim = 300;
  uint64_t embed_seed = 7;
};

int RunSynth(const SynthOptions &o) {
  SyntheticSpec spec = o.spec;
  spec.task = o.task == "random" ? SyntheticTask::kRandom : SyntheticTask::kSeparable;
  SaveCorpus(GenerateSyntheticCorpus(spec), o.out_corpus);
  if (!o.out_embeddings.empty()) {
    SaveWordVectors(MakeSyntheticTable(spec.vocab, o.dim, o.embed_seed),
                    o.out_embeddings);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Singleton mention detection: train, evaluate and apply a "
               "CNN-FCN mention classifier"};
  app.require_subcommand(1);

  std::string stats_corpus;
  auto *stats = app.add_subcommand("stats", "print corpus statistics as JSON");
  stats->add_option("--corpus", stats_corpus)->required();

  TrainOptions train_opts;
  EmbeddingOptions train_emb;
  FeatureOptions train_feat;
  std::string out_path;
  std::string history_path;
  auto *train = app.add_subcommand("train", "train a model on a labeled corpus");
  train_opts.Register(train);
  train_emb.Register(train);
  train_feat.Register(train);
  train->add_option("--out", out_path, "checkpoint to write");
  train->add_option("--history", history_path, "per-epoch CSV to write");

  std::string eval_model;
  std::string eval_corpus;
  double beta = 1.0;
  std::string format = "table";
  EmbeddingOptions eval_emb;
  auto *eval = app.add_subcommand("eval", "report precision/recall/F per class");
  eval->add_option("--model", eval_model)->required();
  eval->add_option("--corpus", eval_corpus)->required();
  eval->add_option("--beta", beta);
  eval->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
  eval_emb.Register(eval);

  std::string predict_model;
  std::string predict_corpus;
  EmbeddingOptions predict_emb;
  auto *predict = app.add_subcommand("predict", "emit per-mention predictions as JSON lines");
  predict->add_option("--model", predict_model)->required();
  predict->add_option("--corpus", predict_corpus)->required();
  predict_emb.Register(predict);

  TrainOptions sweep_opts;
  EmbeddingOptions sweep_emb;
  FeatureOptions sweep_feat;
  std::string axis;
  std::string values;
  auto *sweep = app.add_subcommand("sweep", "train once per value of one axis");
  sweep_opts.Register(sweep);
  sweep_emb.Register(sweep);
  sweep_feat.Register(sweep);
  sweep->add_option("--axis", axis, "optimizer|epochs|context-mode|features")
      ->required();
  sweep->add_option("--values", values,
                    "comma-separated values (features use '+', e.g. words+context)")
      ->required();

  SynthOptions synth_opts;
  auto *synth = app.add_subcommand("synth", "generate a synthetic corpus and vectors");
  synth->add_option("--out-corpus", synth_opts.out_corpus)->required();
  synth->add_option("--out-embeddings", synth_opts.out_embeddings);
  synth->add_option("--docs", synth_opts.spec.documents);
  synth->add_option("--sentences", synth_opts.spec.sentences);
  synth->add_option("--tokens", synth_opts.spec.tokens);
  synth->add_option("--mentions", synth_opts.spec.mentions);
  synth->add_option("--vocab", synth_opts.spec.vocab);
  synth->add_option("--seed", synth_opts.spec.seed);
  synth->add_option("--dim", synth_opts.dim);
  synth->add_option("--embed-seed", synth_opts.embed_seed);
  synth->add_option("--task", synth_opts.task)
      ->check(CLI::IsMember({"separable", "random"}));
  synth->add_flag("--permute-labels", synth_opts.spec.permute_labels);
  synth->add_flag("--all-oov", synth_opts.spec.all_oov);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) return RunStats(stats_corpus);
    if (*train) return RunTrain(train_opts, train_emb, train_feat, out_path, history_path);
    if (*eval) return RunEval(eval_model, eval_corpus, eval_emb, beta, format);
    if (*predict) return RunPredict(predict_model, predict_corpus, predict_emb);
    if (*sweep) return RunSweep(sweep_opts, sweep_emb, sweep_feat, axis, values);
    if (*synth) return RunSynth(synth_opts);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
