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

#include "revjudge/corpus/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge {
namespace {

using nlohmann::json;

std::string require_string(const json& record, const char* field,
                           std::size_t line) {
  auto it = record.find(field);
  if (it == record.end() || !it->is_string())
    throw ParseError(std::string("missing or non-string field '") + field + "'",
                     line);
  return it->get<std::string>();
}

Label label_at(const json& value, std::size_t line) {
  if (!value.is_string()) throw SchemaError("label is not a string", line);
  try {
    return parse_label(value.get<std::string>());
  } catch (const ArgumentError& e) {
    throw SchemaError(e.what(), line);
  }
}

CorpusEntry parse_json_record(const std::string& text, std::size_t line,
                              const ParseOptions& options) {
  json record;
  try {
    record = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed record: ") + e.what(), line);
  }
  if (!record.is_object()) throw ParseError("record is not an object", line);

  CorpusEntry entry;
  RevisionPair& pair = entry.pair;
  pair.id = require_string(record, "id", line);
  pair.s1 = require_string(record, "s1", line);
  pair.s2 = require_string(record, "s2", line);
  if (auto it = record.find("source"); it != record.end()) {
    try {
      pair.source = parse_source(it->get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError(e.what(), line);
    }
  }
  if (auto it = record.find("meta"); it != record.end()) {
    if (!it->is_object()) throw SchemaError("meta is not an object", line);
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) throw SchemaError("meta values must be strings", line);
      pair.meta[key] = value.get<std::string>();
    }
  }

  auto labels = record.find("labels");
  auto label = record.find("label");
  if (labels != record.end()) {
    if (!labels->is_array()) throw SchemaError("labels is not an array", line);
    if (labels->size() != options.n_raters)
      throw SchemaError("expected " + std::to_string(options.n_raters) +
                            " labels, found " + std::to_string(labels->size()),
                        line);
    AnnotationSet annotations;
    annotations.pair_id = pair.id;
    for (const auto& v : *labels) annotations.labels.push_back(label_at(v, line));
    if (auto c = record.find("comments"); c != record.end()) {
      if (!c->is_array() || c->size() != annotations.labels.size())
        throw SchemaError("comments must be an array parallel to labels", line);
      for (const auto& v : *c) {
        if (!v.is_string()) throw SchemaError("comment is not a string", line);
        annotations.comments.push_back(v.get<std::string>());
      }
    }
    entry.annotations = std::move(annotations);
  } else if (label != record.end() && !label->is_null()) {
    pair.label = label_at(*label, line);
  }
  return entry;
}

CorpusEntry parse_tsv_record(const std::string& text, std::size_t line) {
  auto cols = split(text, '\t');
  if (cols.size() < 3 || cols.size() > 4)
    throw ParseError("expected 3 or 4 tab-separated columns, found " +
                         std::to_string(cols.size()),
                     line);
  CorpusEntry entry;
  entry.pair.id = cols[0];
  entry.pair.s1 = cols[1];
  entry.pair.s2 = cols[2];
  if (cols.size() == 4 && !trim(cols[3]).empty()) {
    try {
      entry.pair.label = parse_label(trim(cols[3]));
    } catch (const ArgumentError& e) {
      throw SchemaError(e.what(), line);
    }
  }
  return entry;
}

}  // namespace

ParseResult parse_pairs(std::istream& in, const ParseOptions& options) {
  if (options.n_raters % 2 == 0)
    throw ArgumentError("rater count must be odd for decisive majority votes");
  ParseResult result;
  std::string text;
  std::size_t line = 0;
  enum class Format { Unknown, Json, Tsv } format = Format::Unknown;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (trim(text).empty()) continue;
    if (format == Format::Unknown) {
      format = trim(text).front() == '{' ? Format::Json : Format::Tsv;
      if (format == Format::Tsv && text.rfind("id\ts1\ts2", 0) == 0) continue;
    }
    CorpusEntry entry = format == Format::Json
                            ? parse_json_record(text, line, options)
                            : parse_tsv_record(text, line);
    try {
      validate_pair(entry.pair);
    } catch (const RejectedRecordError& e) {
      if (options.strict) throw RejectedRecordError(e.what(), line);
      log_warning("line " + std::to_string(line) + ": rejected: " + e.what());
      result.rejected.push_back({line, entry.pair.id, e.what()});
      continue;
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

ParseResult parse_pairs_file(const std::string& path,
                             const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open pair file '" + path + "'");
  return parse_pairs(in, options);
}

void write_pairs(std::ostream& out, const std::vector<CorpusEntry>& entries) {
  for (const auto& entry : entries) {
    const RevisionPair& pair = entry.pair;
    json record = json::object();
    record["id"] = pair.id;
    record["s1"] = pair.s1;
    record["s2"] = pair.s2;
    if (pair.source != Source::ArgRewrite)
      record["source"] = std::string(source_name(pair.source));
    if (!pair.meta.empty()) record["meta"] = pair.meta;
    if (entry.annotations) {
      json labels = json::array();
      for (Label l : entry.annotations->labels)
        labels.push_back(std::string(label_name(l)));
      record["labels"] = std::move(labels);
      if (!entry.annotations->comments.empty())
        record["comments"] = entry.annotations->comments;
    }
    if (pair.label) record["label"] = std::string(label_name(*pair.label));
    out << record.dump() << '\n';
  }
}

Label majority_label(const AnnotationSet& annotations) {
  std::size_t better = 0;
  for (Label l : annotations.labels) better += l == Label::Better;
  return 2 * better > annotations.labels.size() ? Label::Better
                                                : Label::NotBetter;
}

std::size_t majority_votes(const AnnotationSet& annotations) {
  std::size_t better = 0;
  for (Label l : annotations.labels) better += l == Label::Better;
  return std::max(better, annotations.labels.size() - better);
}

std::vector<CorpusEntry> filter_by_majority(
    const std::vector<CorpusEntry>& entries, std::size_t threshold,
    std::size_t n_raters) {
  if (threshold < (n_raters + 1) / 2 || threshold > n_raters)
    throw ArgumentError("majority threshold " + std::to_string(threshold) +
                        " outside [" + std::to_string((n_raters + 1) / 2) +
                        ", " + std::to_string(n_raters) + "]");
  std::vector<CorpusEntry> kept;
  for (const auto& entry : entries) {
    if (!entry.annotations)
      throw ArgumentError("entry '" + entry.pair.id + "' has no raw labels");
    if (majority_votes(*entry.annotations) >= threshold) kept.push_back(entry);
  }
  return kept;
}

std::vector<RevisionPair> aggregate_labels(
    const std::vector<CorpusEntry>& entries) {
  std::vector<RevisionPair> pairs;
  pairs.reserve(entries.size());
  for (const auto& entry : entries) {
    RevisionPair pair = entry.pair;
    if (entry.annotations) pair.label = majority_label(*entry.annotations);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::map<Label, std::size_t> class_distribution(
    const std::vector<RevisionPair>& pairs) {
  std::map<Label, std::size_t> counts;
  for (const auto& pair : pairs) {
    if (!pair.label)
      throw ArgumentError("pair '" + pair.id + "' is unlabeled");
    ++counts[*pair.label];
  }
  return counts;
}

}  // namespace revjudge
