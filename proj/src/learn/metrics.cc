// Copyright 2026 The revjudge Authors.
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

#include "revjudge/learn/metrics.h"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "revjudge/common/error.h"

namespace revjudge::learn {
namespace {

std::size_t index_of(Label l) { return l == Label::Better ? 0 : 1; }

}  // namespace

MetricsReport evaluate(const std::vector<Label>& gold, const std::vector<Label>& predicted) {
  if (gold.size() != predicted.size())
    throw ArgumentError("gold and predicted labels differ in length");
  if (gold.empty()) throw ArgumentError("cannot evaluate an empty prediction set");
  MetricsReport report;
  for (std::size_t i = 0; i < gold.size(); ++i)
    ++report.confusion[index_of(gold[i])][index_of(predicted[i])];
  for (Label l : {Label::Better, Label::NotBetter}) {
    const std::size_t c = index_of(l);
    const double tp = static_cast<double>(report.confusion[c][c]);
    const double predicted_c =
        static_cast<double>(report.confusion[0][c] + report.confusion[1][c]);
    const double gold_c = static_cast<double>(report.confusion[c][0] + report.confusion[c][1]);
    ClassMetrics m;
    m.precision = predicted_c > 0.0 ? tp / predicted_c : 0.0;
    m.recall = gold_c > 0.0 ? tp / gold_c : 0.0;
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                                        : 0.0;
    report.per_class[l] = m;
  }
  const auto& b = report.per_class[Label::Better];
  const auto& n = report.per_class[Label::NotBetter];
  report.macro = {(b.precision + n.precision) / 2.0, (b.recall + n.recall) / 2.0,
                  (b.f1 + n.f1) / 2.0};
  return report;
}

MajorityBaseline::MajorityBaseline(const std::vector<Label>& train_labels) {
  if (train_labels.empty()) throw ArgumentError("majority baseline needs training labels");
  std::size_t better = 0;
  for (Label l : train_labels) better += l == Label::Better;
  label_ = better * 2 >= train_labels.size() ? Label::Better : Label::NotBetter;
}

double students_t_two_tailed(double t, double df) {
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
}

SignificanceResult significance_vs_baseline(const std::vector<double>& model,
                                            const std::vector<double>& baseline) {
  if (model.size() != baseline.size())
    throw ArgumentError("paired series differ in length");
  if (model.size() < 2) throw ArgumentError("a paired t-test needs at least 2 folds");
  SignificanceResult r;
  const double n = static_cast<double>(model.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    r.deltas.push_back(model[i] - baseline[i]);
    mean += r.deltas.back();
  }
  mean /= n;
  double ss = 0.0;
  for (double d : r.deltas) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) {
    if (mean == 0.0) {
      r.p_value = 1.0;
      r.t_statistic = 0.0;
    } else {
      r.p_value = 0.0;
      r.t_statistic = mean > 0.0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
    }
    return r;
  }
  r.t_statistic = mean / (sd / std::sqrt(n));
  r.p_value = students_t_two_tailed(r.t_statistic, n - 1.0);
  return r;
}

}  // namespace revjudge::learn
