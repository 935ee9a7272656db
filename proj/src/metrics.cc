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

#include "singledet/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace singledet {

namespace {

void CheckInputs(std::span<const int> preds, std::span<const int> gold) {
  if (preds.size() != gold.size()) {
    throw MetricsError("prediction/gold length mismatch: " +
                       std::to_string(preds.size()) + " vs " +
                       std::to_string(gold.size()));
  }
  if (preds.empty()) throw MetricsError("metrics need at least one prediction");
}

Ratio Divide(size_t num, size_t den) {
  if (den == 0) return {0.0, false};
  return {static_cast<double>(num) / static_cast<double>(den), true};
}

}  // namespace

ConfusionCounts Confusion(std::span<const int> preds, std::span<const int> gold) {
  CheckInputs(preds, gold);
  ConfusionCounts c;
  c.total = preds.size();
  for (size_t i = 0; i < preds.size(); ++i) {
    const int p = preds[i];
    const int g = gold[i];
    if ((p != 0 && p != 1) || (g != 0 && g != 1)) {
      throw MetricsError("labels must be 0 or 1");
    }
    if (p == g) {
      ++c.correct;
      ++c.per_class[p].tp;
    } else {
      ++c.per_class[p].fp;
      ++c.per_class[g].fn;
    }
  }
  return c;
}

Ratio Precision(const ConfusionCounts &counts, int cls) {
  const ClassCounts &c = counts.per_class.at(cls);
  return Divide(c.tp, c.tp + c.fp);
}

Ratio Recall(const ConfusionCounts &counts, int cls) {
  const ClassCounts &c = counts.per_class.at(cls);
  return Divide(c.tp, c.tp + c.fn);
}

double FMeasure(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double den = b2 * precision + recall;
  if (den == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / den;
}

double Accuracy(std::span<const int> preds, std::span<const int> gold) {
  CheckInputs(preds, gold);
  size_t correct = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

ClassReport ReportFromCounts(const ConfusionCounts &counts, double beta) {
  if (!(beta > 0.0)) throw MetricsError("beta must be positive");
  ClassReport report;
  report.beta = beta;
  report.counts = counts;
  for (int cls = 0; cls < 2; ++cls) {
    ClassMetrics &m = report.classes[cls];
    m.precision = Precision(counts, cls);
    m.recall = Recall(counts, cls);
    m.f_measure = FMeasure(m.precision.value, m.recall.value, beta);
  }
  report.accuracy = counts.total == 0 ? 0.0
                                      : static_cast<double>(counts.correct) /
                                            static_cast<double>(counts.total);
  return report;
}

ClassReport Report(std::span<const int> preds, std::span<const int> gold,
                   double beta) {
  return ReportFromCounts(Confusion(preds, gold), beta);
}

int Percent(double value) { return static_cast<int>(std::lround(value * 100.0)); }

std::string RenderReportTable(
    const std::vector<std::pair<std::string, ClassReport>> &rows) {
  size_t width = 8;
  for (const auto &[name, _] : rows) width = std::max(width, name.size());

  auto cell = [](const Ratio &r) {
    return r.defined ? std::to_string(Percent(r.value)) : std::string("-");
  };
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %-17s  %-17s  %s\n",
                static_cast<int>(width), "", "Non-Singleton", "Singleton", "");
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-*s  %5s %5s %5s  %5s %5s %5s  %5s\n",
                static_cast<int>(width), "Features", "P", "R", "F", "P", "R",
                "F", "Acc");
  out += buf;
  for (const auto &[name, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s  %5s %5s %5d  %5s %5s %5d  %5d\n",
                  static_cast<int>(width), name.c_str(),
                  cell(r.classes[0].precision).c_str(),
                  cell(r.classes[0].recall).c_str(),
                  Percent(r.classes[0].f_measure),
                  cell(r.classes[1].precision).c_str(),
                  cell(r.classes[1].recall).c_str(),
                  Percent(r.classes[1].f_measure), Percent(r.accuracy));
    out += buf;
  }
  return out;
}

std::string ReportToJson(const ClassReport &report) {
  using nlohmann::json;
  json classes = json::object();
  const char *names[] = {"non_singleton", "singleton"};
  for (int cls = 0; cls < 2; ++cls) {
    const ClassMetrics &m = report.classes[cls];
    const ClassCounts &c = report.counts.per_class[cls];
    classes[names[cls]] = {
        {"precision", m.precision.value},
        {"precision_defined", m.precision.defined},
        {"recall", m.recall.value},
        {"recall_defined", m.recall.defined},
        {"f_measure", m.f_measure},
        {"tp", c.tp},
        {"fp", c.fp},
        {"fn", c.fn},
    };
  }
  json j = {{"beta", report.beta},
            {"accuracy", report.accuracy},
            {"total", report.counts.total},
            {"correct", report.counts.correct},
            {"classes", classes}};
  return j.dump();
}

}  // namespace singledet
