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

#ifndef SINGLEDET_OPTIMIZER_H_
#define SINGLEDET_OPTIMIZER_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "singledet/tensor.h"

namespace singledet {

enum class OptimizerKind { kAdam, kRmsProp, kAdagrad, kAdadelta };

std::string_view OptimizerName(OptimizerKind kind);
OptimizerKind ParseOptimizer(std::string_view name);

struct OptimizerHyper {
  double beta1 = 0.9;     // Adam first-moment decay
  double beta2 = 0.999;   // Adam second-moment decay
  double rho = 0.9;       // RMSProp / Adadelta running-average decay
  double epsilon = 1e-8;

  static OptimizerHyper Defaults(OptimizerKind kind);
};

class OptimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies one update per Step() to every parameter from its accumulated
// gradient. State lives in the parameters' slot tensors:
//   Adam      slot1 = m, slot2 = v (bias-corrected)
//   RMSProp   slot1 = running mean of g^2
//   Adagrad   slot1 = sum of g^2
//   Adadelta  slot1 = running mean of g^2, slot2 = running mean of dx^2
class Optimizer {
 public:
  Optimizer(OptimizerKind kind, double learning_rate);
  Optimizer(OptimizerKind kind, double learning_rate, OptimizerHyper hyper);

  // Throws OptimizerError, leaving every parameter untouched, if any
  // gradient is non-finite.
  void Step(std::span<Parameter *const> params);

  OptimizerKind kind() const { return kind_; }
  double learning_rate() const { return lr_; }
  const OptimizerHyper &hyper() const { return hyper_; }
  int64_t steps() const { return t_; }

 private:
  OptimizerKind kind_;
  double lr_;
  OptimizerHyper hyper_;
  int64_t t_ = 0;
};

}  // namespace singledet

#endif  // SINGLEDET_OPTIMIZER_H_
