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

#include "singledet/optimizer.h"

#include <cmath>
#include <string>

namespace singledet {

std::string_view OptimizerName(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kAdam: return "adam";
    case OptimizerKind::kRmsProp: return "rmsprop";
    case OptimizerKind::kAdagrad: return "adagrad";
    case OptimizerKind::kAdadelta: return "adadelta";
  }
  return "unknown";
}

OptimizerKind ParseOptimizer(std::string_view name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "rmsprop") return OptimizerKind::kRmsProp;
  if (name == "adagrad") return OptimizerKind::kAdagrad;
  if (name == "adadelta") return OptimizerKind::kAdadelta;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) +
                              "' (expected adam|rmsprop|adagrad|adadelta)");
}

OptimizerHyper OptimizerHyper::Defaults(OptimizerKind kind) {
  OptimizerHyper h;
  switch (kind) {
    case OptimizerKind::kAdam:
      break;
    case OptimizerKind::kRmsProp:
      h.rho = 0.9;
      h.epsilon = 1e-7;
      break;
    case OptimizerKind::kAdagrad:
      h.epsilon = 1e-8;
      break;
    case OptimizerKind::kAdadelta:
      h.rho = 0.95;
      h.epsilon = 1e-7;
      break;
  }
  return h;
}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate)
    : Optimizer(kind, learning_rate, OptimizerHyper::Defaults(kind)) {}

Optimizer::Optimizer(OptimizerKind kind, double learning_rate,
                     OptimizerHyper hyper)
    : kind_(kind), lr_(learning_rate), hyper_(hyper) {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
}

void Optimizer::Step(std::span<Parameter *const> params) {
  for (const Parameter *p : params) {
    if (!p->grad.AllFinite()) {
      throw OptimizerError("non-finite gradient in parameter '" + p->name + "'");
    }
  }
  ++t_;
  const double eps = hyper_.epsilon;
  // Bias corrections for Adam at step t.
  const double c1 = 1.0 - std::pow(hyper_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(hyper_.beta2, static_cast<double>(t_));

  for (Parameter *p : params) {
    double *theta = p->value.data();
    const double *g = p->grad.data();
    double *s1 = p->slot1.data();
    double *s2 = p->slot2.data();
    const size_t n = p->value.size();
    switch (kind_) {
      case OptimizerKind::kAdam: {
        const double b1 = hyper_.beta1;
        const double b2 = hyper_.beta2;
        for (size_t i = 0; i < n; ++i) {
          s1[i] = b1 * s1[i] + (1.0 - b1) * g[i];
          s2[i] = b2 * s2[i] + (1.0 - b2) * g[i] * g[i];
          const double m_hat = s1[i] / c1;
          const double v_hat = s2[i] / c2;
          theta[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps);
        }
        break;
      }
      case OptimizerKind::kRmsProp: {
        const double rho = hyper_.rho;
        for (size_t i = 0; i < n; ++i) {
          s1[i] = rho * s1[i] + (1.0 - rho) * g[i] * g[i];
          theta[i] -= lr_ * g[i] / (std::sqrt(s1[i]) + eps);
        }
        break;
      }
      case OptimizerKind::kAdagrad: {
        for (size_t i = 0; i < n; ++i) {
          s1[i] += g[i] * g[i];
          theta[i] -= lr_ * g[i] / (std::sqrt(s1[i]) + eps);
        }
        break;
      }
      case OptimizerKind::kAdadelta: {
        const double rho = hyper_.rho;
        for (size_t i = 0; i < n; ++i) {
          s1[i] = rho * s1[i] + (1.0 - rho) * g[i] * g[i];
          const double delta =
              -std::sqrt(s2[i] + eps) / std::sqrt(s1[i] + eps) * g[i];
          s2[i] = rho * s2[i] + (1.0 - rho) * delta * delta;
          theta[i] += lr_ * delta;
        }
        break;
      }
    }
  }
}

}  // namespace singledet
