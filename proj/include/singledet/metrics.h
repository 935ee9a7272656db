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

#ifndef SINGLEDET_METRICS_H_
#define SINGLEDET_METRICS_H_

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace singledet {

class MetricsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ClassCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;

  bool operator==(const ClassCounts &other) const = default;
};

// Counts for the binary task, tabulated once with each class in turn taken
// as the positive class. Index 0 is NON-SINGLETON, 1 is SINGLETON.
struct ConfusionCounts {
  std::array<ClassCounts, 2> per_class;
  size_t total = 0;
  size_t correct = 0;

  bool operator==(const ConfusionCounts &other) const = default;
};

// A ratio whose denominator may be zero. Undefined ratios carry value 0.
struct Ratio {
  double value = 0.0;
  bool defined = true;
};

ConfusionCounts Confusion(std::span<const int> preds, std::span<const int> gold);

Ratio Precision(const ConfusionCounts &counts, int cls);
Ratio Recall(const ConfusionCounts &counts, int cls);

// (1 + b^2) p r / (b^2 p + r), or 0 when the denominator vanishes.
double FMeasure(double precision, double recall, double beta = 1.0);

double Accuracy(std::span<const int> preds, std::span<const int> gold);

struct ClassMetrics {
  Ratio precision;
  Ratio recall;
  double f_measure = 0.0;
};

struct ClassReport {
  std::array<ClassMetrics, 2> classes;
  double accuracy = 0.0;
  double beta = 1.0;
  ConfusionCounts counts;
};

ClassReport Report(std::span<const int> preds, std::span<const int> gold,
                   double beta = 1.0);
ClassReport ReportFromCounts(const ConfusionCounts &counts, double beta = 1.0);

// Integer percentage as printed in the result tables.
int Percent(double value);

// Rows of (feature configuration, report) rendered with per-class
// precision / recall / F-measure in integer percent plus accuracy.
std::string RenderReportTable(
    const std::vector<std::pair<std::string, ClassReport>> &rows);

// JSON object with raw values, undefined flags and counts.
std::string ReportToJson(const ClassReport &report);

}  // namespace singledet

#endif  // SINGLEDET_METRICS_H_
