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

#include "singledet/gradient_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "singledet/rng.h"

namespace singledet {

GradientCheckResult CheckGradients(const std::function<double()> &loss,
                                   const std::function<void()> &backward,
                                   std::span<Parameter *const> params,
                                   const GradientCheckOptions &options) {
  backward();
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (const Parameter *p : params) analytic.push_back(p->grad);

  Rng rng(options.seed);
  GradientCheckResult result;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Parameter &p = *params[pi];
    std::vector<size_t> coords(p.value.size());
    std::iota(coords.begin(), coords.end(), 0);
    if (options.max_coords_per_param &&
        coords.size() > *options.max_coords_per_param) {
      rng.Shuffle(coords);
      coords.resize(*options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    for (size_t i : coords) {
      const double saved = p.value[i];
      p.value[i] = saved + options.epsilon;
      const double up = loss();
      p.value[i] = saved - options.epsilon;
      const double down = loss();
      p.value[i] = saved;

      const double numeric = (up - down) / (2.0 * options.epsilon);
      const double a = analytic[pi][i];
      const double err =
          std::abs(a - numeric) / std::max(std::abs(numeric), options.floor);
      ++result.coords_checked;
      if (err > result.max_relative_error || std::isnan(err)) {
        result.max_relative_error = err;
        result.worst_param = p.name;
        result.worst_index = i;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace singledet
