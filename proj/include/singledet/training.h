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

#ifndef SINGLEDET_TRAINING_H_
#define SINGLEDET_TRAINING_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "singledet/features.h"
#include "singledet/model.h"
#include "singledet/optimizer.h"

namespace singledet {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  int epochs = 20;
  int batch_size = 5;
  double learning_rate = 0.001;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  // Overrides OptimizerHyper::Defaults(optimizer) when set.
  std::optional<OptimizerHyper> hyper;
  uint64_t shuffle_seed = 0;
  bool dropout_enabled = true;

  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;      // mean over the epoch's training-mode passes
  double train_accuracy = 0.0;  // of those same passes
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  int64_t steps = 0;            // optimizer steps taken this epoch

  bool operator==(const EpochRecord &other) const = default;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;

  bool operator==(const TrainHistory &other) const = default;
};

struct EvalResult {
  double mean_loss = 0.0;
  std::vector<int> predictions;
  std::vector<double> p_singleton;
};

// Evaluation-mode pass over `data`. An empty set yields loss 0 and no
// predictions.
EvalResult Evaluate(const SingletonModel &model,
                    std::span<const EncodedExample> data);

std::vector<int> Labels(std::span<const EncodedExample> data);

using EpochCallback = std::function<void(const EpochRecord &)>;

// Mini-batch training. Each epoch shuffles the training set with a
// generator seeded from cfg.shuffle_seed, averages the cross-entropy
// gradient over each batch of up to batch_size examples (the last partial
// batch included) and applies one optimizer step per batch, then evaluates
// on `val` with dropout off. Runs are single-threaded and bitwise
// reproducible. Throws TrainingError on a non-finite batch loss.
TrainHistory Train(SingletonModel &model, std::span<const EncodedExample> train,
                   std::span<const EncodedExample> val, const TrainConfig &cfg,
                   const EpochCallback &on_epoch = {});

// CSV with header "epoch,train_loss,train_acc,val_loss,val_acc"; reals
// printed with 17 significant digits.
std::string HistoryToCsv(const TrainHistory &history);
void WriteHistoryCsv(const TrainHistory &history,
                     const std::filesystem::path &path);

}  // namespace singledet

#endif  // SINGLEDET_TRAINING_H_
