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

#include "revjudge/learn/folds.h"

#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "revjudge/common/error.h"
#include "revjudge/common/random.h"
#include "revjudge/common/util.h"

namespace revjudge::learn {

using nlohmann::json;

std::vector<std::size_t> FoldPlan::test_indices(int f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] == f) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i)
    if (fold[i] != f) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (int f : fold) ++sizes[f];
  return sizes;
}

std::string FoldPlan::digest() const {
  std::uint64_t h = fnv1a64("fold-plan " + std::to_string(k));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    h = fnv1a64(ids[i], h);
    h = fnv1a64("\t" + std::to_string(fold[i]) + "\n", h);
  }
  return to_hex(h);
}

FoldPlan make_folds(const std::vector<std::string>& ids, const std::vector<Label>& labels, int k,
                    std::uint64_t seed, bool stratified) {
  if (k < 2) throw ArgumentError("k must be at least 2 so every fold has training data");
  if (ids.size() != labels.size()) throw ArgumentError("ids and labels differ in length");
  if (ids.size() < static_cast<std::size_t>(k))
    throw ArgumentError("cannot make " + std::to_string(k) + " folds from " +
                        std::to_string(ids.size()) + " items");
  if (std::set<std::string>(ids.begin(), ids.end()).size() != ids.size())
    throw ArgumentError("duplicate ids in fold input");

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.stratified = stratified;
  plan.ids = ids;
  plan.fold.assign(ids.size(), -1);

  std::vector<std::vector<std::size_t>> groups;
  if (stratified) {
    groups.resize(2);
    for (std::size_t i = 0; i < ids.size(); ++i)
      groups[labels[i] == Label::Better ? 0 : 1].push_back(i);
  } else {
    groups.emplace_back();
    for (std::size_t i = 0; i < ids.size(); ++i) groups[0].push_back(i);
  }
  Rng rng(mix_seed(seed, 0xf01d));
  std::size_t pointer = 0;
  for (auto& group : groups) {
    rng.shuffle(group);
    for (std::size_t i : group) plan.fold[i] = static_cast<int>(pointer++ % k);
  }
  return plan;
}

void write_fold_plan(std::ostream& out, const FoldPlan& plan) {
  json header = {{"k", plan.k}, {"seed", plan.seed}, {"stratified", plan.stratified},
                 {"digest", plan.digest()}};
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < plan.ids.size(); ++i)
    out << json{{"id", plan.ids[i]}, {"fold", plan.fold[i]}}.dump() << '\n';
}

FoldPlan read_fold_plan(std::istream& in) {
  FoldPlan plan;
  std::string line;
  std::size_t line_no = 0;
  std::string digest;
  try {
    if (!std::getline(in, line)) throw ParseError("empty fold plan", 1);
    ++line_no;
    json header = json::parse(line);
    plan.k = header.at("k").get<int>();
    plan.seed = header.at("seed").get<std::uint64_t>();
    plan.stratified = header.at("stratified").get<bool>();
    digest = header.at("digest").get<std::string>();
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      json record = json::parse(line);
      plan.ids.push_back(record.at("id").get<std::string>());
      const int f = record.at("fold").get<int>();
      if (f < 0 || f >= plan.k) throw ParseError("fold index out of range", line_no);
      plan.fold.push_back(f);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed fold plan: ") + e.what(), line_no);
  }
  if (plan.digest() != digest) throw ProtocolError("fold plan digest does not match its contents");
  return plan;
}

}  // namespace revjudge::learn
