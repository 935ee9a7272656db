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

#ifndef SINGLEDET_GRADIENT_CHECK_H_
#define SINGLEDET_GRADIENT_CHECK_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "singledet/tensor.h"

namespace singledet {

struct GradientCheckOptions {
  double epsilon = 1e-5;
  // Relative error is |analytic - numeric| / max(|numeric|, floor), so
  // coordinates whose true gradient is tiny are judged on absolute error.
  double floor = 1e-3;
  // Check at most this many randomly chosen coordinates per parameter.
  std::optional<size_t> max_coords_per_param;
  uint64_t seed = 0;
};

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::string worst_param;
  size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  size_t coords_checked = 0;
};

// Compares analytic gradients against central differences
// (f(x+eps) - f(x-eps)) / (2 eps). `loss` evaluates the scalar objective at
// the current parameter values; `backward` zeroes and refills every
// parameter's grad. Parameter values are restored exactly afterwards.
GradientCheckResult CheckGradients(const std::function<double()> &loss,
                                   const std::function<void()> &backward,
                                   std::span<Parameter *const> params,
                                   const GradientCheckOptions &options = {});

}  // namespace singledet

#endif  // SINGLEDET_GRADIENT_CHECK_H_
