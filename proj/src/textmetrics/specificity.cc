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

#include "revjudge/textmetrics/specificity.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge::text {

SpecificityModel SpecificityModel::load(const std::string& weights_path,
                                        const std::string& frequency_path,
                                        const std::string& connectives_path) {
  std::ifstream win(weights_path);
  if (!win) throw ConfigurationError("cannot open specificity weights '" + weights_path + "'");
  std::map<std::string, double> kv;
  std::string line;
  while (std::getline(win, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string key;
    double value = 0.0;
    if (!(fields >> key >> value))
      throw ConfigurationError("malformed specificity weight line: " + line);
    kv[key] = value;
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ConfigurationError(std::string("specificity weight '") + key + "' missing");
    return it->second;
  };
  Weights w{need("bias"), need("log_tokens"), need("numerals"),
            need("capitalized"), need("mean_idf"), need("connectives")};

  std::ifstream fin(frequency_path);
  if (!fin) throw ConfigurationError("cannot open frequency table '" + frequency_path + "'");
  std::unordered_map<std::string, double> counts;
  double total = 0.0;
  while (std::getline(fin, line)) {
    if (line.empty()) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 2) continue;
    if (cols[0] == "#total") {
      total = std::stod(cols[1]);
      continue;
    }
    if (cols[0][0] == '#') continue;
    counts[cols[0]] = std::stod(cols[1]);
  }
  if (total <= 0.0)
    for (const auto& [_, c] : counts) total += c;

  std::ifstream cin(connectives_path);
  if (!cin) throw ConfigurationError("cannot open connectives '" + connectives_path + "'");
  std::unordered_set<std::string> connectives;
  while (std::getline(cin, line)) {
    std::string word = trim(line);
    if (!word.empty() && word[0] != '#') connectives.insert(to_lower(word));
  }
  return SpecificityModel(w, std::move(counts), total, std::move(connectives));
}

SpecificityModel::SpecificityModel(Weights weights,
                                   std::unordered_map<std::string, double> counts,
                                   double total,
                                   std::unordered_set<std::string> connectives)
    : weights_(weights),
      counts_(std::move(counts)),
      total_(total > 1.0 ? total : 1.0),
      connectives_(std::move(connectives)) {}

double SpecificityModel::idf(const std::string& lower_word) const {
  auto it = counts_.find(lower_word);
  const double count = it == counts_.end() ? 0.0 : it->second;
  return std::log(total_ / (count + 1.0));
}

SpecificityModel::Cues SpecificityModel::cues(const TokenizedSentence& ts) const {
  Cues c;
  double words = 0.0, idf_sum = 0.0, alpha = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& tok = ts.tokens[i];
    if (!has_alnum(tok)) continue;
    words += 1.0;
    if (has_digit(tok)) c.numerals += 1.0;
    if (i > 0 && is_capitalized(tok) && tok != "I") c.capitalized += 1.0;
    if (connectives_.count(ts.lower_tokens[i])) c.connectives += 1.0;
    if (is_alphabetic(tok)) {
      idf_sum += idf(ts.lower_tokens[i]);
      alpha += 1.0;
    }
  }
  c.log_tokens = std::log1p(words);
  c.mean_idf = alpha > 0.0 ? idf_sum / alpha : 0.0;
  return c;
}

SpecificityScore SpecificityModel::score(const TokenizedSentence& ts) const {
  const Cues c = cues(ts);
  const double z = weights_.bias + weights_.log_tokens * c.log_tokens +
                   weights_.numerals * c.numerals +
                   weights_.capitalized * c.capitalized +
                   weights_.mean_idf * c.mean_idf +
                   weights_.connectives * c.connectives;
  return {1.0 / (1.0 + std::exp(-z))};
}

}  // namespace revjudge::text
