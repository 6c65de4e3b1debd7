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

#ifndef REVJUDGE_TEXTMETRICS_SPECIFICITY_H_
#define REVJUDGE_TEXTMETRICS_SPECIFICITY_H_

#include <string>
#include <unordered_map>
#include <unordered_set>

#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

struct SpecificityScore {
  double value = 0.5;  // in (0, 1)
};

// Shallow-cue logistic stand-in for a sentence specificity predictor. Cues
// and weights are documented in data/resources/specificity_weights.txt.
class SpecificityModel {
 public:
  struct Weights {
    double bias = 0.0;
    double log_tokens = 0.0;
    double numerals = 0.0;
    double capitalized = 0.0;
    double mean_idf = 0.0;
    double connectives = 0.0;
  };

  struct Cues {
    double log_tokens = 0.0;
    double numerals = 0.0;
    double capitalized = 0.0;
    double mean_idf = 0.0;
    double connectives = 0.0;
  };

  // Throws ConfigurationError on a missing file or missing weight key.
  static SpecificityModel load(const std::string& weights_path,
                               const std::string& frequency_path,
                               const std::string& connectives_path);

  SpecificityModel(Weights weights, std::unordered_map<std::string, double> counts,
                   double total, std::unordered_set<std::string> connectives);

  Cues cues(const TokenizedSentence& ts) const;
  SpecificityScore score(const TokenizedSentence& ts) const;
  double idf(const std::string& lower_word) const;
  const Weights& weights() const { return weights_; }

 private:
  Weights weights_;
  std::unordered_map<std::string, double> counts_;
  double total_;
  std::unordered_set<std::string> connectives_;
};

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_SPECIFICITY_H_
