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

#include "revjudge/aesw/aesw.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

#include "revjudge/common/error.h"
#include "revjudge/common/random.h"
#include "revjudge/common/util.h"

namespace revjudge::aesw {

std::string EditedSentence::original() const {
  std::string out;
  for (const auto& s : segments)
    if (s.kind != SegmentKind::Inserted) out += s.text;
  return out;
}

std::string EditedSentence::revised() const {
  std::string out;
  for (const auto& s : segments)
    if (s.kind != SegmentKind::Deleted) out += s.text;
  return out;
}

bool EditedSentence::has_edits() const {
  for (const auto& s : segments)
    if (s.kind != SegmentKind::Kept && !s.text.empty()) return true;
  return false;
}

EditedSentence EditedSentence::inverted() const {
  EditedSentence out = *this;
  for (auto& s : out.segments) {
    if (s.kind == SegmentKind::Deleted)
      s.kind = SegmentKind::Inserted;
    else if (s.kind == SegmentKind::Inserted)
      s.kind = SegmentKind::Deleted;
  }
  return out;
}

namespace {

struct Tag {
  std::string name;
  bool closing = false;
  bool self_closing = false;
  bool skip = false;  // comment, declaration, processing instruction
  std::map<std::string, std::string> attrs;
};

std::string decode_entities(std::string_view text) {
  static const std::map<std::string, std::string, std::less<>> kEntities = {
      {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}};
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '&') {
      const std::size_t semi = text.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 8) {
        auto it = kEntities.find(text.substr(i + 1, semi - i - 1));
        if (it != kEntities.end()) {
          out += it->second;
          i = semi;
          continue;
        }
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

Tag parse_tag(const std::string& body) {
  Tag tag;
  if (body.empty() || body[0] == '!' || body[0] == '?') {
    tag.skip = true;
    return tag;
  }
  std::size_t i = 0;
  if (body[0] == '/') {
    tag.closing = true;
    i = 1;
  }
  std::size_t end = body.size();
  if (end > 0 && body[end - 1] == '/') {
    tag.self_closing = true;
    --end;
  }
  while (i < end && !std::isspace(static_cast<unsigned char>(body[i])))
    tag.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(body[i++]))));
  while (i < end) {
    while (i < end && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    std::string key;
    while (i < end && body[i] != '=' && !std::isspace(static_cast<unsigned char>(body[i])))
      key.push_back(body[i++]);
    while (i < end && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    std::string value;
    if (i < end && body[i] == '=') {
      ++i;
      while (i < end && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
      if (i < end && (body[i] == '"' || body[i] == '\'')) {
        const char quote = body[i++];
        while (i < end && body[i] != quote) value.push_back(body[i++]);
        ++i;
      } else {
        while (i < end && !std::isspace(static_cast<unsigned char>(body[i])))
          value.push_back(body[i++]);
      }
    }
    if (!key.empty()) tag.attrs[to_lower(key)] = decode_entities(value);
  }
  return tag;
}

void append_segment(std::vector<Segment>& segments, SegmentKind kind,
                    std::string& raw) {
  if (raw.empty()) return;
  std::string text = decode_entities(raw);
  raw.clear();
  if (!segments.empty() && segments.back().kind == kind)
    segments.back().text += text;
  else
    segments.push_back({kind, std::move(text)});
}

}  // namespace

AeswReader::AeswReader(std::istream& in) : in_(in) {}

int AeswReader::get() { return in_.get(); }

std::string AeswReader::read_tag() {
  std::string body;
  char quote = 0;
  for (int c = get(); c != EOF; c = get()) {
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      // Quotes only delimit attribute values inside element tags.
      if (!body.empty() && body[0] != '!' && body[0] != '?') quote = static_cast<char>(c);
    } else if (c == '>') {
      if (body.rfind("!--", 0) == 0 &&
          (body.size() < 5 || body.compare(body.size() - 2, 2, "--") != 0)) {
        body.push_back('>');
        continue;
      }
      return body;
    }
    body.push_back(static_cast<char>(c));
  }
  throw ParseError("unterminated tag at end of input");
}

std::optional<EditedSentence> AeswReader::next() {
  for (int c = get(); c != EOF; c = get()) {
    if (c != '<') continue;
    Tag tag = parse_tag(read_tag());
    if (tag.skip) continue;
    if (!tag.closing) {
      if (auto it = tag.attrs.find("domain"); it != tag.attrs.end()) genre_ = it->second;
      if (auto it = tag.attrs.find("genre"); it != tag.attrs.end()) genre_ = it->second;
    } else if (tag.name == "doc") {
      genre_.reset();
    }
    if (tag.name == "del" || tag.name == "ins")
      throw ParseError("edit span outside any sentence");
    if (tag.name != "sentence" || tag.closing || tag.self_closing) continue;

    EditedSentence sentence;
    sentence.sid = tag.attrs.count("sid") ? tag.attrs["sid"]
                   : tag.attrs.count("id") ? tag.attrs["id"] : "";
    sentence.genre = genre_;
    SegmentKind kind = SegmentKind::Kept;
    std::string raw;
    const std::string where = "sentence '" + sentence.sid + "'";
    for (int d = get();; d = get()) {
      if (d == EOF) throw ParseError("unbalanced markup: " + where + " is not closed");
      if (d != '<') {
        raw.push_back(static_cast<char>(d));
        continue;
      }
      Tag inner = parse_tag(read_tag());
      if (inner.skip || inner.self_closing) continue;
      if (inner.name == "del" || inner.name == "ins") {
        const SegmentKind span = inner.name == "del" ? SegmentKind::Deleted
                                                     : SegmentKind::Inserted;
        if (!inner.closing) {
          if (kind != SegmentKind::Kept)
            throw UnsupportedStructureError("nested edit span in " + where);
          append_segment(sentence.segments, kind, raw);
          kind = span;
        } else {
          if (kind != span)
            throw ParseError("unbalanced markup: stray </" + inner.name + "> in " + where);
          append_segment(sentence.segments, kind, raw);
          kind = SegmentKind::Kept;
        }
      } else if (inner.name == "sentence") {
        if (!inner.closing)
          throw ParseError("unbalanced markup: sentence opened inside " + where);
        if (kind != SegmentKind::Kept)
          throw ParseError("unbalanced markup: unclosed edit span in " + where);
        append_segment(sentence.segments, kind, raw);
        return sentence;
      }
    }
  }
  return std::nullopt;
}

std::vector<EditedSentence> parse_aesw(std::istream& in) {
  AeswReader reader(in);
  std::vector<EditedSentence> out;
  while (auto s = reader.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<EditedSentence> parse_aesw_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open AESW file '" + path + "'");
  return parse_aesw(in);
}

std::optional<RevisionPair> reconstruct_pair(const EditedSentence& sentence) {
  if (!sentence.has_edits()) return std::nullopt;
  RevisionPair pair;
  pair.id = sentence.sid;
  pair.s1 = normalize_for_equality(sentence.original());
  pair.s2 = normalize_for_equality(sentence.revised());
  if (pair.s1 == pair.s2 || pair.s1.empty() || pair.s2.empty()) return std::nullopt;
  pair.label = Label::Better;
  pair.source = Source::AESW;
  if (sentence.genre) pair.meta["genre"] = *sentence.genre;
  return pair;
}

const std::set<std::string>& default_placeholders() {
  static const std::set<std::string> kDefault = {"MATH", "MATHDISP", "CITE",
                                                 "REF", "MATHDISPS"};
  return kDefault;
}

bool contains_placeholder(std::string_view text,
                          const std::set<std::string>& placeholders) {
  auto strip = [](unsigned char c) { return !std::isalnum(c); };
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t b = i, e = j;
    while (b < e && strip(text[b])) ++b;
    while (e > b && strip(text[e - 1])) --e;
    if (e > b && placeholders.count(std::string(text.substr(b, e - b)))) return true;
    i = j;
  }
  return false;
}

std::string_view sample_mode_name(SampleMode mode) {
  return mode == SampleMode::All ? "all" : "plaintext";
}

SampleMode parse_sample_mode(std::string_view text) {
  const std::string lower = to_lower(text);
  if (lower == "all") return SampleMode::All;
  if (lower == "plaintext") return SampleMode::Plaintext;
  throw ArgumentError("unknown sample mode '" + std::string(text) + "'");
}

std::vector<RevisionPair> eligible_pairs(const std::vector<RevisionPair>& pairs,
                                         const SampleConfig& config) {
  if (config.mode == SampleMode::All) return pairs;
  std::vector<RevisionPair> out;
  for (const auto& p : pairs) {
    if (contains_placeholder(p.s1, config.placeholder_tokens) ||
        contains_placeholder(p.s2, config.placeholder_tokens))
      continue;
    out.push_back(p);
  }
  return out;
}

std::vector<RevisionPair> sample_pairs(const std::vector<RevisionPair>& pairs,
                                       const SampleConfig& config) {
  if (config.n < 1) throw ArgumentError("sample size must be >= 1");
  if (config.flip_prob < 0.0 || config.flip_prob > 1.0)
    throw ArgumentError("flip_prob must lie in [0, 1]");
  std::vector<RevisionPair> pool = eligible_pairs(pairs, config);
  if (pool.size() < config.n)
    throw CapacityError("requested " + std::to_string(config.n) +
                            " pairs but only " + std::to_string(pool.size()) +
                            " are eligible",
                        pool.size());
  Rng rng(mix_seed(config.seed, 0x5a3b1e));
  // Partial Fisher-Yates: the first n slots are a uniform sample.
  for (std::size_t i = 0; i < config.n; ++i)
    std::swap(pool[i], pool[i + rng.uniform_index(pool.size() - i)]);
  pool.resize(config.n);
  return pool;
}

std::vector<RevisionPair> flip_labels(const std::vector<RevisionPair>& pairs,
                                      double flip_prob, std::uint64_t seed) {
  if (flip_prob < 0.0 || flip_prob > 1.0)
    throw ArgumentError("flip_prob must lie in [0, 1]");
  Rng rng(mix_seed(seed, 0xf119));
  std::vector<RevisionPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.label != Label::Better)
      throw ArgumentError("pair '" + p.id + "' is not labeled Better; cannot flip");
    RevisionPair q = p;
    const bool flip = rng.uniform01() < flip_prob;
    if (flip) {
      std::swap(q.s1, q.s2);
      q.label = Label::NotBetter;
    }
    q.meta["flipped"] = flip ? "true" : "false";
    out.push_back(std::move(q));
  }
  return out;
}

DevSplit split_dev(const std::vector<RevisionPair>& pairs, double fraction,
                   std::uint64_t seed) {
  if (fraction < 0.0 || fraction >= 1.0)
    throw ArgumentError("dev fraction must lie in [0, 1)");
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(mix_seed(seed, 0xde7));
  rng.shuffle(order);
  const auto n_dev = static_cast<std::size_t>(std::llround(fraction * pairs.size()));
  std::vector<bool> is_dev(pairs.size(), false);
  for (std::size_t i = 0; i < n_dev; ++i) is_dev[order[i]] = true;
  DevSplit split;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    (is_dev[i] ? split.dev : split.rest).push_back(pairs[i]);
  return split;
}

void write_export(std::ostream& out, const std::vector<RevisionPair>& pairs) {
  for (const auto& p : pairs) {
    nlohmann::json record = nlohmann::json::object();
    record["sid"] = p.id;
    record["s1"] = p.s1;
    record["s2"] = p.s2;
    record["label"] = p.label ? std::string(label_name(*p.label)) : "";
    auto flipped = p.meta.find("flipped");
    record["flipped"] = flipped != p.meta.end() && flipped->second == "true";
    if (auto g = p.meta.find("genre"); g != p.meta.end()) record["genre"] = g->second;
    out << record.dump() << '\n';
  }
}

std::vector<RevisionPair> read_export(std::istream& in) {
  std::vector<RevisionPair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
      RevisionPair p;
      p.id = record.at("sid").get<std::string>();
      p.s1 = record.at("s1").get<std::string>();
      p.s2 = record.at("s2").get<std::string>();
      const std::string label = record.at("label").get<std::string>();
      if (!label.empty()) p.label = parse_label(label);
      p.source = Source::AESW;
      p.meta["flipped"] = record.value("flipped", false) ? "true" : "false";
      if (record.contains("genre")) p.meta["genre"] = record["genre"].get<std::string>();
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed AESW export record: ") + e.what(), line_no);
    } catch (const ArgumentError& e) {
      throw SchemaError(e.what(), line_no);
    }
  }
  return out;
}

std::vector<RevisionPair> read_export_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open AESW export '" + path + "'");
  return read_export(in);
}

}  // namespace revjudge::aesw
