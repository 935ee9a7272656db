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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "json.hpp"

#include "singledet/metrics.h"
#include "singledet/rng.h"

using namespace singledet;

namespace {

ConfusionCounts Counts(const std::vector<int> &preds, const std::vector<int> &gold) {
  return Confusion(preds, gold);
}

}  // namespace

TEST_CASE("confusion counts") {
  ConfusionCounts c = Counts({1, 0, 1}, {1, 0, 1});
  CHECK(c.per_class[1] == ClassCounts{2, 0, 0});
  CHECK(c.per_class[0].tp == 1);
  c = Counts({1, 1, 1}, {0, 0, 0});
  CHECK(c.per_class[1] == ClassCounts{0, 3, 0});
  CHECK(c.per_class[0] == ClassCounts{0, 0, 3});
  c = Counts({1, 0, 0, 1}, {1, 1, 0, 0});
  CHECK(c.per_class[1] == ClassCounts{1, 1, 1});
  CHECK(c.total == 4);
  CHECK(c.correct == 2);
  CHECK_THROWS_AS(Counts({1, 0}, {1}), MetricsError);
  CHECK_THROWS_AS(Counts({2}, {1}), MetricsError);
}

TEST_CASE("precision") {
  ConfusionCounts c;
  c.per_class[1] = {7, 3, 0};
  CHECK(Precision(c, 1).value == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(Precision(c, 1).defined);
  c.per_class[1] = {0, 0, 4};
  CHECK(Precision(c, 1).value == 0.0);
  CHECK_FALSE(Precision(c, 1).defined);
  c.per_class[1] = {9, 0, 4};
  CHECK(Precision(c, 1).value == 1.0);
}

TEST_CASE("recall") {
  ConfusionCounts c;
  c.per_class[0] = {7, 0, 7};
  CHECK(Recall(c, 0).value == 0.5);
  c.per_class[0] = {5, 2, 0};
  CHECK(Recall(c, 0).value == 1.0);
  c.per_class[0] = {0, 2, 0};
  CHECK(Recall(c, 0).value == 0.0);
  CHECK_FALSE(Recall(c, 0).defined);
}

TEST_CASE("f-measure") {
  CHECK(FMeasure(0.63, 0.72) == doctest::Approx(0.672).epsilon(1e-12));
  CHECK(Percent(FMeasure(0.63, 0.72)) == 67);
  for (double x : {0.0, 0.1, 0.5, 0.99, 1.0}) CHECK(FMeasure(x, x) == doctest::Approx(x));
  CHECK(FMeasure(0.0, 0.8) == 0.0);
  CHECK(FMeasure(0.8, 0.0) == 0.0);
  // beta = 2 weights recall: 5 p r / (4 p + r).
  CHECK(FMeasure(0.5, 1.0, 2.0) == doctest::Approx(5 * 0.5 / 3.0));
}

TEST_CASE("f-measure property: bounds and monotonicity") {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const double p = rng.Uniform(), r = rng.Uniform();
    const double f = FMeasure(p, r);
    CHECK(f <= std::max(p, r) + 1e-15);
    CHECK(f <= 2 * std::min(p, r) + 1e-15);
    CHECK(f >= std::min(p, r) - 1e-15);
    CHECK(f <= (p + r) / 2 + 1e-15);
    const double dp = rng.Uniform(0, 1 - p);
    CHECK(FMeasure(p + dp, r) >= f - 1e-15);
    const double dr = rng.Uniform(0, 1 - r);
    CHECK(FMeasure(p, r + dr) >= f - 1e-15);
  }
}

TEST_CASE("accuracy") {
  const std::vector<int> a = {1, 0, 1}, b = {1, 1, 1}, c = {0, 1, 0};
  CHECK(Accuracy(a, b) == doctest::Approx(2.0 / 3));
  CHECK(Accuracy(a, a) == 1.0);
  CHECK(Accuracy(a, c) == 0.0);
  CHECK_THROWS_AS(Accuracy(std::vector<int>{}, std::vector<int>{}), MetricsError);
}

TEST_CASE("report: perfect predictions") {
  const std::vector<int> gold = {1, 0, 0, 1, 1};
  const ClassReport r = Report(gold, gold);
  for (const ClassMetrics &m : r.classes) {
    CHECK(m.precision.value == 1.0);
    CHECK(m.recall.value == 1.0);
    CHECK(m.f_measure == 1.0);
  }
  CHECK(r.accuracy == 1.0);
}

TEST_CASE("report: singleton row of the result table") {
  ConfusionCounts c;
  // 504 / 800 = 0.63 precision, 504 / 700 = 0.72 recall.
  c.per_class[1] = {504, 296, 196};
  c.per_class[0] = {1000, 196, 296};
  c.total = 504 + 296 + 196 + 1000;
  c.correct = 1504;
  const ClassReport r = ReportFromCounts(c);
  CHECK(r.classes[1].precision.value == doctest::Approx(0.63));
  CHECK(r.classes[1].recall.value == doctest::Approx(0.72));
  CHECK(Percent(r.classes[1].f_measure) == 67);
  const std::string table = RenderReportTable({{"Word+Context+Syntactic", r}});
  CHECK(table.find("Word+Context+Syntactic") != std::string::npos);
  CHECK(table.find("63") != std::string::npos);
  CHECK(table.find("72") != std::string::npos);
  CHECK(table.find("67") != std::string::npos);
}

TEST_CASE("report: coin flips on balanced gold") {
  Rng rng(22);
  std::vector<int> gold(10000), preds(10000);
  for (size_t i = 0; i < gold.size(); ++i) {
    gold[i] = i % 2;
    preds[i] = rng.Bernoulli(0.5) ? 1 : 0;
  }
  CHECK(std::abs(Report(preds, gold).accuracy - 0.5) <= 0.02);
}

TEST_CASE("report property: class views agree") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.UniformInt(40);
    std::vector<int> gold(n), preds(n);
    for (size_t i = 0; i < n; ++i) {
      gold[i] = static_cast<int>(rng.UniformInt(2));
      preds[i] = static_cast<int>(rng.UniformInt(2));
    }
    const ClassReport r = Report(preds, gold);
    const auto &c = r.counts;
    CHECK(r.accuracy == doctest::Approx(double(c.per_class[0].tp + c.per_class[1].tp) / n));
    for (const ClassMetrics &m : r.classes) {
      CHECK((m.precision.value >= 0 && m.precision.value <= 1));
      CHECK((m.recall.value >= 0 && m.recall.value <= 1));
    }
    // Swapping the positive-class convention swaps the rows.
    std::vector<int> fg(n), fp(n);
    for (size_t i = 0; i < n; ++i) {
      fg[i] = 1 - gold[i];
      fp[i] = 1 - preds[i];
    }
    const ClassReport s = Report(fp, fg);
    CHECK(s.accuracy == r.accuracy);
    for (int k = 0; k < 2; ++k) {
      CHECK(s.classes[k].precision.value == r.classes[1 - k].precision.value);
      CHECK(s.classes[k].recall.value == r.classes[1 - k].recall.value);
      CHECK(s.classes[k].f_measure == r.classes[1 - k].f_measure);
    }
  }
}

TEST_CASE("percent rounding") {
  CHECK(Percent(0.7045) == 70);
  CHECK(Percent(0.675) == 68);
  CHECK(Percent(0.0) == 0);
  CHECK(Percent(1.0) == 100);
}

TEST_CASE("json report") {
  const ClassReport r = Report(std::vector<int>{1, 1, 1}, std::vector<int>{1, 1, 1});
  const auto j = nlohmann::json::parse(ReportToJson(r));
  CHECK(j["accuracy"].get<double>() == 1.0);
  CHECK(j.dump().find("defined") != std::string::npos);
}
