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

#include "revjudge/corpus/agreement.h"

#include <cmath>

#include "revjudge/common/error.h"

namespace revjudge {

double fleiss_kappa(const RatingMatrix& ratings) {
  if (ratings.size() < 2) throw ArgumentError("fleiss_kappa needs >= 2 items");
  const std::size_t n_categories = ratings.front().size();
  if (n_categories < 2) throw ArgumentError("fleiss_kappa needs >= 2 categories");

  long raters = -1;
  std::vector<double> category_totals(n_categories, 0.0);
  double agreement_sum = 0.0;
  for (const auto& row : ratings) {
    if (row.size() != n_categories)
      throw ArgumentError("rating rows have different category counts");
    long total = 0;
    double pairs = 0.0;
    for (std::size_t j = 0; j < n_categories; ++j) {
      if (row[j] < 0) throw ArgumentError("negative rating count");
      total += row[j];
      pairs += static_cast<double>(row[j]) * (row[j] - 1);
      category_totals[j] += row[j];
    }
    if (raters < 0) raters = total;
    if (total != raters)
      throw ArgumentError("every item must have the same number of ratings");
    if (raters < 2) throw ArgumentError("fleiss_kappa needs >= 2 raters per item");
    agreement_sum += pairs / (static_cast<double>(raters) * (raters - 1));
  }

  const double n_items = static_cast<double>(ratings.size());
  const double p_bar = agreement_sum / n_items;
  double pe_bar = 0.0;
  for (double t : category_totals) {
    const double p = t / (n_items * raters);
    pe_bar += p * p;
  }
  if (pe_bar >= 1.0 - 1e-15)
    throw UndefinedKappaError(
        "kappa undefined: every rating falls in a single category");
  return (p_bar - pe_bar) / (1.0 - pe_bar);
}

RatingMatrix rating_matrix(const std::vector<CorpusEntry>& entries) {
  RatingMatrix m;
  m.reserve(entries.size());
  for (const auto& entry : entries) {
    if (!entry.annotations)
      throw ArgumentError("entry '" + entry.pair.id + "' has no raw labels");
    int better = 0, not_better = 0;
    for (Label l : entry.annotations->labels)
      (l == Label::Better ? better : not_better)++;
    m.push_back({better, not_better});
  }
  return m;
}

std::string_view band_name(AgreementBand band) {
  switch (band) {
    case AgreementBand::Poor: return "Poor";
    case AgreementBand::Slight: return "Slight";
    case AgreementBand::Fair: return "Fair";
    case AgreementBand::Moderate: return "Moderate";
    case AgreementBand::Substantial: return "Substantial";
    case AgreementBand::AlmostPerfect: return "AlmostPerfect";
  }
  return "Poor";
}

AgreementBand landis_koch_band(double kappa) {
  const double k = std::round(kappa * 100.0) / 100.0;
  if (k <= 0.0) return AgreementBand::Poor;
  if (k <= 0.20) return AgreementBand::Slight;
  if (k <= 0.40) return AgreementBand::Fair;
  if (k <= 0.60) return AgreementBand::Moderate;
  if (k <= 0.80) return AgreementBand::Substantial;
  return AgreementBand::AlmostPerfect;
}

AgreementReport agreement_report(const std::vector<CorpusEntry>& entries) {
  AgreementReport report;
  report.n_items = entries.size();
  RatingMatrix m = rating_matrix(entries);
  report.n_raters = entries.empty() ? 0 : entries.front().annotations->labels.size();
  report.kappa = fleiss_kappa(m);
  report.band = landis_koch_band(report.kappa);
  report.class_counts = class_distribution(aggregate_labels(entries));
  return report;
}

}  // namespace revjudge
