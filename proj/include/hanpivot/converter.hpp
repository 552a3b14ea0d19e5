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

#ifndef HANPIVOT_CONVERTER_HPP_
#define HANPIVOT_CONVERTER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hanpivot/lexicon.hpp"
#include "hanpivot/unicode.hpp"

namespace hanpivot {

/// Scalars that may legitimately follow a converted word inside a Hangul
/// run: particle starts (은/는/이/가...) and verbalizer/ending starts
/// (하/했/되...). Shipped as a data file, one scalar per line.
class BoundarySet {
 public:
  BoundarySet() = default;

  static BoundarySet parse(std::string_view content) {
    BoundarySet set;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
      std::size_t nl = content.find('\n', start);
      if (nl == std::string_view::npos) nl = content.size();
      std::string_view line = content.substr(start, nl - start);
      start = nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty() || line.front() == '#') continue;
      const std::u32string scalars = decode_utf8(line);
      if (scalars.size() != 1 || !is_hangul_syllable(scalars[0]))
        throw ParseError("MalformedRow", line_no,
                         "expected one Hangul syllable per line");
      set.scalars_.insert(scalars[0]);
    }
    return set;
  }

  bool contains(char32_t c) const { return scalars_.count(c) != 0; }
  std::size_t size() const { return scalars_.size(); }

 private:
  std::unordered_set<char32_t> scalars_;
};

/// One tile of the tokenized sentence. Candidates empty = plain text.
/// Spans are scalar indices into the normalized sentence; tokens are
/// non-empty, non-overlapping and tile the sentence in order.
struct Token {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<const SenseEntry*> candidates;

  bool sino() const { return !candidates.empty(); }
};

/// Alignment record for one converted word: w_i of the overlap metric.
struct ConvertedWord {
  std::size_t src_begin = 0;
  std::size_t src_end = 0;
  std::string hangul_surface;
  std::string sense_id;
  std::size_t out_begin = 0;
  std::size_t out_end = 0;
  std::string hanja_simplified;
};

/// Result of converting one sentence. Splicing converted words and
/// unconverted spans back together reproduces output_text exactly.
struct Conversion {
  std::string source_text;  // normalized input
  std::string output_text;  // converted, Simplified
  std::vector<ConvertedWord> converted_words;
  std::vector<std::pair<std::size_t, std::size_t>> unconverted_spans;  // source scalars
};

/// Cue-window scoring configuration. Cue weights live on the lexicon
/// entries; this only adds the window size (scalars on each side).
struct ContextModel {
  std::size_t window = 10;
};

struct ConverterConfig {
  const Lexicon* lexicon = nullptr;
  const TradSimpTable* table = nullptr;
  const BoundarySet* boundary = nullptr;
  ContextModel context;
  bool simplify_whole_output = false;  // also map pre-existing Hanja outside matches
};

/// Greedy left-to-right longest match over Hangul runs. A match is kept
/// only if the scalar after it is not a Hangul syllable, or is a known
/// particle/ending start, or the match reaches the end of its Hangul run.
/// When the longest match fails that test the next shorter one is tried;
/// with no acceptable match the scalar joins the surrounding plain text.
inline std::vector<Token> tokenize(const Lexicon& lexicon,
                                   const BoundarySet& boundary,
                                   const std::u32string& sentence) {
  std::vector<Token> tokens;
  std::size_t plain_start = 0;

  auto flush_plain = [&](std::size_t upto) {
    if (upto > plain_start)
      tokens.push_back(Token{plain_start, upto, {}});
  };

  std::size_t i = 0;
  while (i < sentence.size()) {
    if (!is_hangul_syllable(sentence[i])) {
      ++i;
      continue;
    }
    auto matches = lexicon.prefix_matches(sentence, i);
    bool accepted = false;
    for (auto it = matches.rbegin(); it != matches.rend(); ++it) {
      const std::size_t end = i + it->matched_length;
      const bool at_text_end = end >= sentence.size();
      const bool run_ends = at_text_end || !is_hangul_syllable(sentence[end]);
      if (run_ends || boundary.contains(sentence[end])) {
        flush_plain(i);
        Token tok;
        tok.begin = i;
        tok.end = end;
        tok.candidates = it->senses;
        tokens.push_back(std::move(tok));
        plain_start = end;
        i = end;
        accepted = true;
        break;
      }
    }
    if (!accepted) ++i;
  }
  flush_plain(sentence.size());
  return tokens;
}

inline std::vector<Token> tokenize(const Lexicon& lexicon,
                                   const BoundarySet& boundary,
                                   std::string_view normalized_sentence) {
  return tokenize(lexicon, boundary, decode_utf8(normalized_sentence));
}

namespace detail {

// True if `cue` occurs in sentence[from, to) as a contiguous scalar run.
inline bool cue_in_range(const std::u32string& sentence, std::size_t from,
                         std::size_t to, const std::u32string& cue) {
  if (cue.empty() || from >= to || to - from < cue.size()) return false;
  const auto last = to - cue.size();
  for (std::size_t p = from; p <= last; ++p)
    if (sentence.compare(p, cue.size(), cue) == 0) return true;
  return false;
}

}  // namespace detail

/// Context score of one sense at a token position: prior plus the weight
/// of every cue string found within `window` scalars on either side of
/// the span (the span itself is excluded; each cue counts once).
inline double score_sense(const SenseEntry& sense, const Token& token,
                          const std::u32string& sentence, std::size_t window) {
  double score = sense.prior;
  const std::size_t left_from = token.begin > window ? token.begin - window : 0;
  const std::size_t right_to =
      std::min(sentence.size(), token.end + window);
  for (const Cue& cue : sense.cues) {
    const std::u32string cue32 = decode_utf8(cue.word);
    if (detail::cue_in_range(sentence, left_from, token.begin, cue32) ||
        detail::cue_in_range(sentence, token.end, right_to, cue32))
      score += cue.weight;
  }
  return score;
}

/// Picks one sense per Sino candidate. Ties break on higher prior, then
/// lexicographically smallest hanja_traditional, then smallest sense_id,
/// so the result is deterministic regardless of lexicon row order.
inline std::vector<const SenseEntry*> disambiguate(
    const std::vector<Token>& tokens, const ContextModel& model,
    const std::u32string& sentence) {
  std::vector<const SenseEntry*> chosen;
  for (const Token& token : tokens) {
    if (!token.sino()) continue;
    const SenseEntry* best = nullptr;
    double best_score = 0.0;
    for (const SenseEntry* sense : token.candidates) {
      const double score = score_sense(*sense, token, sentence, model.window);
      if (best == nullptr) {
        best = sense;
        best_score = score;
        continue;
      }
      if (score > best_score) {
        best = sense;
        best_score = score;
      } else if (score == best_score) {
        if (sense->prior > best->prior ||
            (sense->prior == best->prior &&
             (sense->hanja32 < best->hanja32 ||
              (sense->hanja32 == best->hanja32 &&
               sense->sense_id < best->sense_id)))) {
          best = sense;
        }
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

inline std::vector<const SenseEntry*> disambiguate(
    const std::vector<Token>& tokens, const ContextModel& model,
    std::string_view normalized_sentence) {
  return disambiguate(tokens, model, decode_utf8(normalized_sentence));
}

/// Full pipeline for one sentence: normalize, tokenize, disambiguate,
/// substitute the traditional Hanja, then map the substituted spans to
/// Simplified. Plain-text spans pass through verbatim unless
/// simplify_whole_output is set.
inline Conversion convert_sentence(const ConverterConfig& cfg, std::string_view raw) {
  Conversion conv;
  conv.source_text = normalize(raw);
  const std::u32string source = decode_utf8(conv.source_text);

  const std::vector<Token> tokens = tokenize(*cfg.lexicon, *cfg.boundary, source);
  const std::vector<const SenseEntry*> senses =
      disambiguate(tokens, cfg.context, source);

  std::u32string output;
  output.reserve(source.size());
  std::size_t sense_idx = 0;
  for (const Token& token : tokens) {
    if (token.sino()) {
      const SenseEntry* sense = senses[sense_idx++];
      const std::u32string simplified = to_simplified(*cfg.table, sense->hanja32);
      ConvertedWord word;
      word.src_begin = token.begin;
      word.src_end = token.end;
      word.hangul_surface = encode_utf8(
          std::u32string_view(source).substr(token.begin, token.end - token.begin));
      word.sense_id = sense->sense_id;
      word.out_begin = output.size();
      word.out_end = output.size() + simplified.size();
      word.hanja_simplified = encode_utf8(simplified);
      conv.converted_words.push_back(std::move(word));
      output += simplified;
    } else {
      std::u32string span(source, token.begin, token.end - token.begin);
      if (cfg.simplify_whole_output) span = to_simplified(*cfg.table, span);
      conv.unconverted_spans.emplace_back(token.begin, token.end);
      output += span;
    }
  }
  conv.output_text = encode_utf8(output);
  return conv;
}

/// Element-wise convert_sentence; output order matches input order.
inline std::vector<Conversion> convert_corpus(const ConverterConfig& cfg,
                                              const std::vector<std::string>& sentences) {
  std::vector<Conversion> out;
  out.reserve(sentences.size());
  for (const std::string& s : sentences) out.push_back(convert_sentence(cfg, s));
  return out;
}

}  // namespace hanpivot

#endif  // HANPIVOT_CONVERTER_HPP_
