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

#ifndef REVJUDGE_LEARN_METRICS_H_
#define REVJUDGE_LEARN_METRICS_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "revjudge/corpus/types.h"

namespace revjudge::learn {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool operator==(const ClassMetrics&) const = default;
};

struct MetricsReport {
  std::map<Label, ClassMetrics> per_class;
  ClassMetrics macro;
  // confusion[gold][predicted], index 0 = Better, 1 = NotBetter.
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  bool operator==(const MetricsReport&) const = default;
};

// Precision of a class never predicted is 0, and F1 is 0 when P + R = 0.
MetricsReport evaluate(const std::vector<Label>& gold, const std::vector<Label>& predicted);

// Constant classifier for the most frequent training label (ties to Better).
class MajorityBaseline {
 public:
  explicit MajorityBaseline(const std::vector<Label>& train_labels);
  Label predict() const { return label_; }
  std::vector<Label> predict(std::size_t n) const { return std::vector<Label>(n, label_); }

 private:
  Label label_;
};

struct SignificanceResult {
  double p_value = 1.0;
  double t_statistic = 0.0;
  std::string test = "paired t-test (two-tailed)";
  std::vector<double> deltas;
};

// Two-tailed paired t-test on model - baseline per fold.
SignificanceResult significance_vs_baseline(const std::vector<double>& model,
                                            const std::vector<double>& baseline);

// Two-tailed p-value of a t statistic with df degrees of freedom.
double students_t_two_tailed(double t, double df);

}  // namespace revjudge::learn

#endif  // REVJUDGE_LEARN_METRICS_H_
