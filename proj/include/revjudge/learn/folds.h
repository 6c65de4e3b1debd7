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

#ifndef REVJUDGE_LEARN_FOLDS_H_
#define REVJUDGE_LEARN_FOLDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "revjudge/corpus/types.h"

namespace revjudge::learn {

struct FoldPlan {
  int k = 10;
  std::uint64_t seed = 0;
  bool stratified = true;
  std::vector<std::string> ids;  // dataset order
  std::vector<int> fold;         // fold index per id

  std::vector<std::size_t> test_indices(int f) const;
  std::vector<std::size_t> train_indices(int f) const;
  std::vector<std::size_t> fold_sizes() const;
  // Hash of (id, fold) assignments; equal plans have equal digests.
  std::string digest() const;
  bool operator==(const FoldPlan&) const = default;
};

// Each class (or the whole set when unstratified) is shuffled with the seed,
// then dealt round-robin with one pointer that carries over between classes.
// Fold sizes differ by at most one, and so do per-class counts.
FoldPlan make_folds(const std::vector<std::string>& ids, const std::vector<Label>& labels, int k,
                    std::uint64_t seed, bool stratified = true);

// One JSON object per id: {"id":..,"fold":..}; the first line carries k, seed, stratified.
void write_fold_plan(std::ostream& out, const FoldPlan& plan);
FoldPlan read_fold_plan(std::istream& in);

}  // namespace revjudge::learn

#endif  // REVJUDGE_LEARN_FOLDS_H_
