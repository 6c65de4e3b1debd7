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

#ifndef REVJUDGE_CORPUS_AGREEMENT_H_
#define REVJUDGE_CORPUS_AGREEMENT_H_

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "revjudge/corpus/corpus.h"

namespace revjudge {

// Rows are items, columns are categories, cells are rater counts.
using RatingMatrix = std::vector<std::vector<int>>;

// Fleiss's kappa, (P_bar - Pe_bar) / (1 - Pe_bar).
// Requires >= 2 items and a constant row total >= 2. Throws
// UndefinedKappaError when every rating falls in one category.
double fleiss_kappa(const RatingMatrix& ratings);

// Column order is {Better, NotBetter}.
RatingMatrix rating_matrix(const std::vector<CorpusEntry>& entries);

enum class AgreementBand { Poor, Slight, Fair, Moderate, Substantial, AlmostPerfect };

std::string_view band_name(AgreementBand band);

// Landis & Koch bands. Their table is stated at two decimals, so kappa is
// rounded to two places before banding (0.201 reads as 0.20, Slight).
AgreementBand landis_koch_band(double kappa);

struct AgreementReport {
  std::size_t n_items = 0;
  std::size_t n_raters = 0;
  double kappa = 0.0;
  AgreementBand band = AgreementBand::Poor;
  std::map<Label, std::size_t> class_counts;
};

AgreementReport agreement_report(const std::vector<CorpusEntry>& entries);

}  // namespace revjudge

#endif  // REVJUDGE_CORPUS_AGREEMENT_H_
