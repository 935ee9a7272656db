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

#include "singledet/training.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace singledet {

namespace {

// Separates the dropout stream from the shuffle stream.
constexpr uint64_t kDropoutStream = 0x9E3779B97F4A7C15ULL;

}  // namespace

void TrainConfig::Validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (batch_size < 1) throw std::invalid_argument("batch size must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
}

std::vector<int> Labels(std::span<const EncodedExample> data) {
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const EncodedExample &ex : data) labels.push_back(ex.label);
  return labels;
}

EvalResult Evaluate(const SingletonModel &model,
                    std::span<const EncodedExample> data) {
  EvalResult result;
  if (data.empty()) return result;
  result.predictions.reserve(data.size());
  result.p_singleton.reserve(data.size());
  double total = 0.0;
  Rng unused(0);
  ForwardPass pass;
  for (const EncodedExample &ex : data) {
    const Probabilities probs = model.Forward(ex, false, unused, &pass);
    total += CrossEntropyFromLogits(pass.logits, ex.label);
    result.predictions.push_back(ArgMaxLabel(probs));
    result.p_singleton.push_back(probs[1]);
  }
  result.mean_loss = total / static_cast<double>(data.size());
  return result;
}

TrainHistory Train(SingletonModel &model, std::span<const EncodedExample> train,
                   std::span<const EncodedExample> val, const TrainConfig &cfg,
                   const EpochCallback &on_epoch) {
  cfg.Validate();
  if (train.empty()) throw TrainingError("training set is empty");

  Optimizer optimizer =
      cfg.hyper ? Optimizer(cfg.optimizer, cfg.learning_rate, *cfg.hyper)
                : Optimizer(cfg.optimizer, cfg.learning_rate);
  std::vector<Parameter *> params = model.parameter_ptrs();
  Rng shuffle_rng(cfg.shuffle_seed);
  Rng dropout_rng(cfg.shuffle_seed ^ kDropoutStream);

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<size_t>(cfg.batch_size);

  TrainHistory history;
  ForwardPass pass;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.Shuffle(order);
    double loss_sum = 0.0;
    size_t correct = 0;
    int64_t steps = 0;
    for (size_t begin = 0; begin < order.size(); begin += batch) {
      const size_t end = std::min(begin + batch, order.size());
      const double weight = 1.0 / static_cast<double>(end - begin);
      model.ZeroGrad();
      double batch_loss = 0.0;
      for (size_t i = begin; i < end; ++i) {
        const EncodedExample &ex = train[order[i]];
        const Probabilities probs =
            model.Forward(ex, cfg.dropout_enabled, dropout_rng, &pass);
        batch_loss += model.Backward(pass, ex.label, weight);
        if (ArgMaxLabel(probs) == ex.label) ++correct;
      }
      if (!std::isfinite(batch_loss)) {
        std::ostringstream msg;
        msg << "non-finite loss " << batch_loss << " at epoch " << epoch
            << ", batch " << steps + 1;
        throw TrainingError(msg.str());
      }
      loss_sum += batch_loss;
      optimizer.Step(params);
      ++steps;
    }

    EpochRecord record;
    record.epoch = epoch;
    record.steps = steps;
    record.train_loss = loss_sum / static_cast<double>(train.size());
    record.train_accuracy =
        static_cast<double>(correct) / static_cast<double>(train.size());
    const EvalResult eval = Evaluate(model, val);
    record.val_loss = eval.mean_loss;
    if (!val.empty()) {
      const std::vector<int> gold = Labels(val);
      size_t hits = 0;
      for (size_t i = 0; i < gold.size(); ++i) {
        if (eval.predictions[i] == gold[i]) ++hits;
      }
      record.val_accuracy = static_cast<double>(hits) / static_cast<double>(gold.size());
    }
    history.epochs.push_back(record);
    if (on_epoch) on_epoch(record);
  }
  return history;
}

std::string HistoryToCsv(const TrainHistory &history) {
  std::string out = "epoch,train_loss,train_acc,val_loss,val_acc\n";
  char buf[256];
  for (const EpochRecord &r : history.epochs) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", r.epoch,
                  r.train_loss, r.train_accuracy, r.val_loss, r.val_accuracy);
    out += buf;
  }
  return out;
}

void WriteHistoryCsv(const TrainHistory &history,
                     const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw TrainingError("cannot write history file " + path.string());
  out << HistoryToCsv(history);
  if (!out) throw TrainingError("write failed for " + path.string());
}

}  // namespace singledet
