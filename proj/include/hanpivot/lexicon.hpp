// Copyright 2026 The hanpivot Authors
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

#ifndef HANPIVOT_LEXICON_HPP_
#define HANPIVOT_LEXICON_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hanpivot/errors.hpp"
#include "hanpivot/unicode.hpp"

namespace hanpivot {

enum class PosTag { noun, verb_stem, proper, other };

inline std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::noun: return "Noun";
    case PosTag::verb_stem: return "VerbStem";
    case PosTag::proper: return "Proper";
    case PosTag::other: return "Other";
  }
  return "Other";
}

struct Cue {
  std::string word;
  double weight = 1.0;
};

/// One Hanja reading of a Hangul surface form. Homophones are separate
/// entries sharing hangul_surface; the prior and cues drive disambiguation.
struct SenseEntry {
  std::string sense_id;
  std::string hangul_surface;
  std::string hanja_traditional;
  PosTag pos = PosTag::noun;
  double prior = 1.0;
  std::vector<Cue> cues;
  std::string gloss;

  // Scalar views, decoded once at load time.
  std::u32string surface32;
  std::u32string hanja32;
};

struct LexiconMatch {
  std::size_t matched_length = 0;  // scalar count
  std::vector<const SenseEntry*> senses;
};

/// Hangul-surface dictionary indexed by a prefix tree over scalars.
/// Immutable after load; concurrent reads are safe.
class Lexicon {
 public:
  static Lexicon parse(std::string_view tsv_content);

  /// Longest surface that is a prefix of text at `offset`, if any.
  std::optional<LexiconMatch> lookup_longest(const std::u32string& text,
                                             std::size_t offset) const {
    auto all = prefix_matches(text, offset);
    if (all.empty()) return std::nullopt;
    return all.back();
  }

  std::optional<LexiconMatch> lookup_longest(std::string_view text,
                                             std::size_t offset) const {
    return lookup_longest(decode_utf8(text), offset);
  }

  /// Every surface that is a prefix of text at `offset`, shortest first.
  /// The tokenizer walks this list back to front when the boundary rule
  /// rejects a longer match.
  std::vector<LexiconMatch> prefix_matches(const std::u32string& text,
                                           std::size_t offset) const {
    std::vector<LexiconMatch> out;
    std::uint32_t node = 0;
    for (std::size_t i = offset; i < text.size(); ++i) {
      auto it = nodes_[node].children.find(text[i]);
      if (it == nodes_[node].children.end()) break;
      node = it->second;
      if (!nodes_[node].senses.empty()) {
        LexiconMatch m;
        m.matched_length = i - offset + 1;
        for (std::uint32_t idx : nodes_[node].senses)
          m.senses.push_back(&entries_[idx]);
        out.push_back(std::move(m));
      }
    }
    return out;
  }

  const std::vector<SenseEntry>& entries() const { return entries_; }
  std::size_t entry_count() const { return entries_.size(); }
  std::size_t surface_count() const { return surface_count_; }
  std::size_t max_surface_length() const { return max_surface_length_; }

 private:
  struct TrieNode {
    std::map<char32_t, std::uint32_t> children;
    std::vector<std::uint32_t> senses;  // indices into entries_
  };

  std::uint32_t child(std::uint32_t node, char32_t c) {
    auto it = nodes_[node].children.find(c);
    if (it != nodes_[node].children.end()) return it->second;
    nodes_.emplace_back();
    const auto idx = static_cast<std::uint32_t>(nodes_.size() - 1);
    nodes_[node].children.emplace(c, idx);
    return idx;
  }

  std::vector<SenseEntry> entries_;
  std::vector<TrieNode> nodes_{1};  // nodes_[0] is the root
  std::size_t surface_count_ = 0;
  std::size_t max_surface_length_ = 0;
};

namespace detail {

inline std::vector<std::string_view> split_tsv(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

inline bool parse_weight(std::string_view s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(std::string(s), &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

inline std::vector<Cue> parse_cues(std::string_view col, std::size_t line_no) {
  std::vector<Cue> cues;
  std::size_t start = 0;
  while (start < col.size()) {
    std::size_t semi = col.find(';', start);
    if (semi == std::string_view::npos) semi = col.size();
    std::string_view item = col.substr(start, semi - start);
    start = semi + 1;
    if (item.empty()) continue;
    Cue cue;
    const std::size_t colon = item.rfind(':');
    if (colon == std::string_view::npos) {
      cue.word = std::string(item);
    } else {
      cue.word = std::string(item.substr(0, colon));
      if (!parse_weight(item.substr(colon + 1), cue.weight))
        throw ParseError("MalformedRow", line_no,
                         "bad cue weight in '" + std::string(item) + "'");
    }
    if (cue.word.empty())
      throw ParseError("MalformedRow", line_no, "empty cue word");
    if (!(cue.weight > 0.0))
      throw ParseError("MalformedRow", line_no,
                       "cue weight must be > 0 in '" + std::string(item) + "'");
    cues.push_back(std::move(cue));
  }
  return cues;
}

inline PosTag parse_pos(std::string_view s, std::size_t line_no) {
  if (s == "Noun") return PosTag::noun;
  if (s == "VerbStem") return PosTag::verb_stem;
  if (s == "Proper") return PosTag::proper;
  if (s == "Other") return PosTag::other;
  throw ParseError("MalformedRow", line_no, "unknown POS tag '" + std::string(s) + "'");
}

}  // namespace detail

/// Lexicon file: UTF-8 TSV with columns
///   sense_id  hangul  hanja_traditional  pos  prior  cues
/// where cues is `word:weight;word:weight;...`. prior and cues may be
/// empty (prior defaults to 1.0). `#` lines are comments. Row order does
/// not affect the resulting index.
inline Lexicon Lexicon::parse(std::string_view tsv_content) {
  Lexicon lex;
  std::unordered_set<std::string> seen_ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= tsv_content.size()) {
    std::size_t nl = tsv_content.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv_content.size();
    std::string_view line = tsv_content.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto cols = detail::split_tsv(line);
    if (cols.size() < 4 || cols.size() > 6)
      throw ParseError("MalformedRow", line_no,
                       "expected 4..6 columns, got " + std::to_string(cols.size()));

    SenseEntry entry;
    entry.sense_id = std::string(cols[0]);
    entry.hangul_surface = std::string(cols[1]);
    entry.hanja_traditional = std::string(cols[2]);
    entry.pos = detail::parse_pos(cols[3], line_no);
    if (cols.size() >= 5 && !cols[4].empty()) {
      if (!detail::parse_weight(cols[4], entry.prior) || entry.prior < 0.0)
        throw ParseError("MalformedRow", line_no,
                         "bad prior '" + std::string(cols[4]) + "'");
    }
    if (cols.size() == 6) entry.cues = detail::parse_cues(cols[5], line_no);

    if (entry.sense_id.empty())
      throw ParseError("MalformedRow", line_no, "empty sense_id");
    if (!seen_ids.insert(entry.sense_id).second)
      throw ParseError("DuplicateSenseId", line_no, entry.sense_id);

    entry.surface32 = decode_utf8(entry.hangul_surface);
    entry.hanja32 = decode_utf8(entry.hanja_traditional);
    if (entry.surface32.empty())
      throw ParseError("InvalidSurface", line_no, "empty surface");
    for (char32_t c : entry.surface32)
      if (!is_hangul_syllable(c))
        throw ParseError("InvalidSurface", line_no,
                         "non-Hangul scalar in '" + entry.hangul_surface + "'");
    for (char32_t c : entry.hanja32)
      if (!is_hanja_ideograph(c))
        throw ParseError("MalformedRow", line_no,
                         "non-Hanja scalar in '" + entry.hanja_traditional + "'");
    if (entry.surface32.size() != entry.hanja32.size())
      throw ParseError("LengthMismatch", line_no,
                       entry.hangul_surface + " has " +
                           std::to_string(entry.surface32.size()) +
                           " syllables but " + entry.hanja_traditional + " has " +
                           std::to_string(entry.hanja32.size()) + " characters");

    lex.entries_.push_back(std::move(entry));
  }

  // Index pass. Entries were fully validated above, so the trie only sees
  // well-formed surfaces. Senses under one surface keep a canonical order
  // (by sense_id) so that permuting input rows cannot change behavior.
  std::vector<std::uint32_t> order(lex.entries_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return lex.entries_[a].sense_id < lex.entries_[b].sense_id;
  });
  for (std::uint32_t idx : order) {
    const SenseEntry& e = lex.entries_[idx];
    std::uint32_t node = 0;
    for (char32_t c : e.surface32) node = lex.child(node, c);
    if (lex.nodes_[node].senses.empty()) ++lex.surface_count_;
    lex.nodes_[node].senses.push_back(idx);
    lex.max_surface_length_ = std::max(lex.max_surface_length_, e.surface32.size());
  }
  return lex;
}

/// Per-character Traditional -> Simplified mapping. Keys are unique;
/// characters without a mapping pass through unchanged.
class TradSimpTable {
 public:
  static TradSimpTable parse(std::string_view tsv_content) {
    TradSimpTable table;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= tsv_content.size()) {
      std::size_t nl = tsv_content.find('\n', start);
      if (nl == std::string_view::npos) nl = tsv_content.size();
      std::string_view line = tsv_content.substr(start, nl - start);
      start = nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;

      auto cols = detail::split_tsv(line);
      if (cols.size() != 2)
        throw ParseError("MalformedRow", line_no,
                         "expected 2 columns, got " + std::to_string(cols.size()));
      const std::u32string key = decode_utf8(cols[0]);
      const std::u32string val = decode_utf8(cols[1]);
      if (key.size() != 1 || val.size() != 1)
        throw ParseError("MalformedRow", line_no, "columns must be one scalar each");
      if (!is_hanja_ideograph(key[0]) || !is_hanja_ideograph(val[0]))
        throw ParseError("MalformedRow", line_no, "non-Hanja scalar");
      if (!table.map_.emplace(key[0], val[0]).second)
        throw ParseError("DuplicateKey", line_no, std::string(cols[0]));
    }
    return table;
  }

  std::size_t size() const { return map_.size(); }

  char32_t convert(char32_t c) const {
    auto it = map_.find(c);
    return it == map_.end() ? c : it->second;
  }

  const std::unordered_map<char32_t, char32_t>& mapping() const { return map_; }

 private:
  std::unordered_map<char32_t, char32_t> map_;
};

/// Replaces every scalar present in the table; everything else passes
/// through, so the output always has the same scalar count as the input.
inline std::u32string to_simplified(const TradSimpTable& table,
                                    const std::u32string& text) {
  std::u32string out;
  out.reserve(text.size());
  for (char32_t c : text) out.push_back(table.convert(c));
  return out;
}

inline std::string to_simplified(const TradSimpTable& table, std::string_view text) {
  return encode_utf8(to_simplified(table, decode_utf8(text)));
}

}  // namespace hanpivot

#endif  // HANPIVOT_LEXICON_HPP_
