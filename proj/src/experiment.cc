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

#include "singledet/experiment.h"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace singledet {

ExperimentData MakeExperimentData(std::shared_ptr<const Corpus> corpus,
                                  std::shared_ptr<const EmbeddingTable> table,
                                  const SplitSpec &split) {
  if (!corpus->fully_labeled()) {
    throw CorpusError("training and evaluation need a fully labeled corpus");
  }
  CorpusSplit parts = SplitCorpus(*corpus, split);
  ExperimentData data;
  data.corpus = std::move(corpus);
  data.table = std::move(table);
  data.train = std::move(parts.train);
  data.validation = std::move(parts.validation);
  data.test = std::move(parts.test);
  return data;
}

ExperimentResult RunExperiment(const ExperimentData &data,
                               const ExperimentConfig &cfg) {
  const FeatureConfig features = cfg.model.features();
  const auto encode = [&](const std::vector<LabeledMention> &mentions) {
    return EncodeCorpus(mentions, *data.corpus, *data.table, features);
  };
  const std::vector<EncodedExample> train = encode(data.train);
  const std::vector<EncodedExample> val = encode(data.validation);
  const std::vector<EncodedExample> test = encode(data.test);

  ExperimentResult result;
  result.model = std::make_shared<SingletonModel>(cfg.model, data.table);
  result.history = Train(*result.model, train, val, cfg.train);

  if (!val.empty()) {
    const EvalResult eval = Evaluate(*result.model, val);
    result.validation = Report(eval.predictions, Labels(val), cfg.beta);
  }
  if (!test.empty()) {
    const EvalResult eval = Evaluate(*result.model, test);
    result.test_loss = eval.mean_loss;
    result.test = Report(eval.predictions, Labels(test), cfg.beta);
  }
  return result;
}

SweepAxis ParseSweepAxis(std::string_view name) {
  if (name == "optimizer") return SweepAxis::kOptimizer;
  if (name == "epochs") return SweepAxis::kEpochs;
  if (name == "context-mode") return SweepAxis::kContextMode;
  if (name == "features") return SweepAxis::kFeatures;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected optimizer|epochs|context-mode|features)");
}

std::string_view SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kOptimizer: return "optimizer";
    case SweepAxis::kEpochs: return "epochs";
    case SweepAxis::kContextMode: return "context-mode";
    case SweepAxis::kFeatures: return "features";
  }
  return "unknown";
}

ExperimentConfig ApplySweepValue(const ExperimentConfig &base, SweepAxis axis,
                                 const std::string &value) {
  ExperimentConfig cfg = base;
  switch (axis) {
    case SweepAxis::kOptimizer:
      cfg.train.optimizer = ParseOptimizer(value);
      cfg.train.hyper.reset();
      break;
    case SweepAxis::kEpochs: {
      int epochs = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), epochs);
      if (ec != std::errc() || ptr != value.data() + value.size() || epochs < 1) {
        throw std::invalid_argument("bad epoch count '" + value + "'");
      }
      cfg.train.epochs = epochs;
      break;
    }
    case SweepAxis::kContextMode:
      cfg.model.context_mode = ParseContextMode(value);
      break;
    case SweepAxis::kFeatures: {
      std::string list = value;
      std::replace(list.begin(), list.end(), '+', ',');
      FeatureConfig f = cfg.model.features();
      ParseFeatureList(list, f);
      cfg.model.ApplyFeatures(f);
      break;
    }
  }
  return cfg;
}

std::vector<SweepRow> Sweep(const ExperimentData &data,
                            const ExperimentConfig &base, SweepAxis axis,
                            const std::vector<std::string> &values) {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  std::vector<SweepRow> rows;
  for (const std::string &value : values) {
    rows.push_back({value, RunExperiment(data, ApplySweepValue(base, axis, value))});
  }
  return rows;
}

std::string RenderSweepTable(SweepAxis axis, const std::vector<SweepRow> &rows) {
  size_t width = SweepAxisName(axis).size();
  for (const SweepRow &r : rows) width = std::max(width, r.value.size());
  const int w = static_cast<int>(width);

  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %10s  %8s  %8s  %8s  %5s %5s %5s\n", w,
                std::string(SweepAxisName(axis)).c_str(), "train_loss", "train_acc",
                "val_acc", "test_acc", "S-P", "S-R", "S-F");
  out += buf;
  for (const SweepRow &r : rows) {
    const EpochRecord &last = r.result.history.epochs.back();
    const std::optional<ClassReport> &test = r.result.test;
    std::snprintf(buf, sizeof(buf),
                  "%-*s  %10.4f  %8.4f  %8.4f  %8s  %5s %5s %5s\n", w,
                  r.value.c_str(), last.train_loss, last.train_accuracy,
                  last.val_accuracy,
                  test ? std::to_string(test->accuracy).substr(0, 6).c_str() : "-",
                  test ? std::to_string(Percent(test->classes[1].precision.value)).c_str() : "-",
                  test ? std::to_string(Percent(test->classes[1].recall.value)).c_str() : "-",
                  test ? std::to_string(Percent(test->classes[1].f_measure)).c_str() : "-");
    out += buf;
  }
  return out;
}

}  // namespace singledet
