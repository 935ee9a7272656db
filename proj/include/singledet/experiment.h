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

#ifndef SINGLEDET_EXPERIMENT_H_
#define SINGLEDET_EXPERIMENT_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "singledet/corpus.h"
#include "singledet/embeddings.h"
#include "singledet/metrics.h"
#include "singledet/model.h"
#include "singledet/training.h"

namespace singledet {

// Labeled mentions for one experiment, all resolvable in `corpus`.
struct ExperimentData {
  std::shared_ptr<const Corpus> corpus;
  std::shared_ptr<const EmbeddingTable> table;
  std::vector<LabeledMention> train;
  std::vector<LabeledMention> validation;
  std::vector<LabeledMention> test;
};

ExperimentData MakeExperimentData(std::shared_ptr<const Corpus> corpus,
                                  std::shared_ptr<const EmbeddingTable> table,
                                  const SplitSpec &split);

struct ExperimentConfig {
  ModelConfig model;
  TrainConfig train;
  double beta = 1.0;
};

struct ExperimentResult {
  TrainHistory history;
  std::optional<ClassReport> validation;
  std::optional<ClassReport> test;
  double test_loss = 0.0;
  std::shared_ptr<SingletonModel> model;
};

// Encodes the data with cfg.model.features(), builds a fresh model from
// cfg.model.seed, trains, and reports on the validation and test sets.
ExperimentResult RunExperiment(const ExperimentData &data,
                               const ExperimentConfig &cfg);

enum class SweepAxis { kOptimizer, kEpochs, kContextMode, kFeatures };

SweepAxis ParseSweepAxis(std::string_view name);
std::string_view SweepAxisName(SweepAxis axis);

// Copy of `base` with the axis set to `value` (e.g. "adam", "20", "all",
// "words+context").
ExperimentConfig ApplySweepValue(const ExperimentConfig &base, SweepAxis axis,
                                 const std::string &value);

struct SweepRow {
  std::string value;
  ExperimentResult result;
};

// One independent seeded run per value.
std::vector<SweepRow> Sweep(const ExperimentData &data,
                            const ExperimentConfig &base, SweepAxis axis,
                            const std::vector<std::string> &values);

std::string RenderSweepTable(SweepAxis axis, const std::vector<SweepRow> &rows);

}  // namespace singledet

#endif  // SINGLEDET_EXPERIMENT_H_
