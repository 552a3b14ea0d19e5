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

#ifndef HANPIVOT_METRICS_HPP_
#define HANPIVOT_METRICS_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hanpivot/converter.hpp"
#include "hanpivot/errors.hpp"
#include "hanpivot/unicode.hpp"

namespace hanpivot {

// ---------------------------------------------------------------------------
// ROIC: ratio of converted Chinese words (or characters) that also occur in
// the reference sentence.  ratio = matched / total, kept as exact integers.
// ---------------------------------------------------------------------------

enum class RoicGranularity { word, character };

struct RoicItem {
  std::string item;
  bool matched = false;
};

struct RoicReport {
  RoicGranularity granularity = RoicGranularity::word;
  std::uint64_t matched = 0;
  std::uint64_t total = 0;
  std::vector<RoicItem> per_item;
  // Set only for macro-averaged corpus reports; matched/total stay the
  // pooled counts either way.
  std::optional<double> sentence_mean;

  double ratio() const {
    if (sentence_mean) return *sentence_mean;
    return total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
  }

  /// "5/6 (83.33%)" — the rendering used by every report surface.
  std::string to_text() const {
    char buf[80];
    if (sentence_mean) {
      std::snprintf(buf, sizeof(buf), "%.2f%% (sentence mean; pooled %llu/%llu)",
                    *sentence_mean * 100.0, static_cast<unsigned long long>(matched),
                    static_cast<unsigned long long>(total));
    } else {
      std::snprintf(buf, sizeof(buf), "%llu/%llu (%.2f%%)",
                    static_cast<unsigned long long>(matched),
                    static_cast<unsigned long long>(total), ratio() * 100.0);
    }
    return buf;
  }
};

namespace detail {

inline void roic_accumulate_word(const Conversion& conv,
                                 const std::u32string& reference,
                                 RoicReport& report) {
  for (const ConvertedWord& w : conv.converted_words) {
    const std::u32string word = decode_utf8(w.hanja_simplified);
    const bool hit = !word.empty() && reference.find(word) != std::u32string::npos;
    report.per_item.push_back({w.hanja_simplified, hit});
    report.total += 1;
    if (hit) report.matched += 1;
  }
}

inline void roic_accumulate_char(const Conversion& conv,
                                 const std::u32string& reference,
                                 RoicReport& report) {
  const std::set<char32_t> chars(reference.begin(), reference.end());
  for (const ConvertedWord& w : conv.converted_words) {
    for (char32_t c : decode_utf8(w.hanja_simplified)) {
      const bool hit = chars.count(c) != 0;
      report.per_item.push_back({encode_utf8(c), hit});
      report.total += 1;
      if (hit) report.matched += 1;
    }
  }
}

}  // namespace detail

/// Word-level overlap: one item per converted word (with multiplicity),
/// matched iff it occurs as a contiguous substring of the normalized
/// reference. Undefined for conversions with no converted words.
inline RoicReport roic_word(const Conversion& conv, std::string_view reference) {
  if (conv.converted_words.empty())
    throw MetricError("EmptyConversion: ROIC is undefined when no words were converted");
  RoicReport report;
  report.granularity = RoicGranularity::word;
  detail::roic_accumulate_word(conv, decode_utf8(normalize(reference)), report);
  return report;
}

/// Character-level overlap: one item per scalar of each converted word.
inline RoicReport roic_char(const Conversion& conv, std::string_view reference) {
  if (conv.converted_words.empty())
    throw MetricError("EmptyConversion: ROIC is undefined when no words were converted");
  RoicReport report;
  report.granularity = RoicGranularity::character;
  detail::roic_accumulate_char(conv, decode_utf8(normalize(reference)), report);
  return report;
}

enum class RoicAveraging { pooled, sentence_mean };

/// Corpus ROIC. Pooled (the default) sums matches and totals over all
/// pairs; sentence_mean averages per-sentence ratios instead, skipping
/// pairs with no converted words in both modes.
inline RoicReport roic_corpus(std::span<const Conversion> conversions,
                              std::span<const std::string> references,
                              RoicGranularity granularity,
                              RoicAveraging averaging = RoicAveraging::pooled) {
  if (conversions.size() != references.size())
    throw MetricError("LengthMismatch: " + std::to_string(conversions.size()) +
                      " conversions vs " + std::to_string(references.size()) +
                      " references");
  RoicReport report;
  report.granularity = granularity;
  double ratio_sum = 0.0;
  std::uint64_t rated = 0;
  for (std::size_t i = 0; i < conversions.size(); ++i) {
    if (conversions[i].converted_words.empty()) continue;
    RoicReport one;
    one.granularity = granularity;
    const std::u32string ref = decode_utf8(normalize(references[i]));
    if (granularity == RoicGranularity::word)
      detail::roic_accumulate_word(conversions[i], ref, one);
    else
      detail::roic_accumulate_char(conversions[i], ref, one);
    report.matched += one.matched;
    report.total += one.total;
    for (auto& item : one.per_item) report.per_item.push_back(std::move(item));
    ratio_sum += one.ratio();
    rated += 1;
  }
  if (report.total == 0)
    throw MetricError("EmptyConversion: no converted words in the whole corpus");
  if (averaging == RoicAveraging::sentence_mean)
    report.sentence_mean = ratio_sum / static_cast<double>(rated);
  return report;
}

// ---------------------------------------------------------------------------
// Corpus BLEU with clipped n-gram precision pooled per order and the usual
// brevity penalty. Token sequences come from segment_characters or callers.
// ---------------------------------------------------------------------------

using TokenSeq = std::vector<std::string>;

struct BleuReport {
  double score = 0.0;  // 0..100
  std::vector<std::pair<std::uint64_t, std::uint64_t>> precisions;  // {clipped, total} per order
  double brevity_penalty = 1.0;
  std::uint64_t hypothesis_length = 0;
  std::uint64_t reference_length = 0;
  int max_order = 4;
  bool smoothed = false;

  std::string to_text() const {
    std::string out = "BLEU = ";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f ", score);
    out += buf;
    for (std::size_t n = 0; n < precisions.size(); ++n) {
      const auto [num, den] = precisions[n];
      const double p = den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
      std::snprintf(buf, sizeof(buf), "%s%.1f", n == 0 ? "" : "/", p);
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), " (BP = %.4f, hyp_len = %llu, ref_len = %llu)",
                  brevity_penalty, static_cast<unsigned long long>(hypothesis_length),
                  static_cast<unsigned long long>(reference_length));
    out += buf;
    return out;
  }
};

namespace detail {

// Collision-free n-gram key: each token is length-prefixed.
inline std::string ngram_key(const TokenSeq& tokens, std::size_t at, int order) {
  std::string key;
  for (int k = 0; k < order; ++k) {
    const std::string& t = tokens[at + k];
    key += std::to_string(t.size());
    key += ':';
    key += t;
  }
  return key;
}

inline void count_ngrams(const TokenSeq& tokens, int order,
                         std::unordered_map<std::string, std::uint64_t>& counts) {
  if (tokens.size() < static_cast<std::size_t>(order)) return;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i)
    counts[ngram_key(tokens, i, order)] += 1;
}

}  // namespace detail

/// Multi-reference corpus BLEU. Clip counts against the per-n-gram max
/// over the references of a pair; the reference length contribution is
/// the closest length to the hypothesis (ties to the shorter).
inline BleuReport bleu_corpus(const std::vector<TokenSeq>& hypotheses,
                              const std::vector<std::vector<TokenSeq>>& references,
                              int max_order = 4, bool add_one_smoothing = false) {
  if (hypotheses.size() != references.size())
    throw MetricError("LengthMismatch: " + std::to_string(hypotheses.size()) +
                      " hypotheses vs " + std::to_string(references.size()) +
                      " reference sets");
  if (hypotheses.empty()) throw MetricError("EmptyCorpus: no sentence pairs");
  if (max_order < 1) throw MetricError("max_order must be >= 1");

  BleuReport report;
  report.max_order = max_order;
  report.smoothed = add_one_smoothing;
  std::vector<std::uint64_t> clipped(static_cast<std::size_t>(max_order), 0);
  std::vector<std::uint64_t> totals(static_cast<std::size_t>(max_order), 0);

  for (std::size_t p = 0; p < hypotheses.size(); ++p) {
    const TokenSeq& hyp = hypotheses[p];
    const std::vector<TokenSeq>& refs = references[p];
    if (refs.empty()) throw MetricError("EmptyCorpus: pair " + std::to_string(p) + " has no reference");

    report.hypothesis_length += hyp.size();
    std::uint64_t best_ref_len = refs[0].size();
    for (const TokenSeq& r : refs) {
      const auto len = static_cast<std::uint64_t>(r.size());
      const auto hlen = static_cast<std::uint64_t>(hyp.size());
      const auto diff = [&](std::uint64_t l) { return l > hlen ? l - hlen : hlen - l; };
      if (diff(len) < diff(best_ref_len) ||
          (diff(len) == diff(best_ref_len) && len < best_ref_len))
        best_ref_len = len;
    }
    report.reference_length += best_ref_len;

    for (int order = 1; order <= max_order; ++order) {
      std::unordered_map<std::string, std::uint64_t> hyp_counts;
      detail::count_ngrams(hyp, order, hyp_counts);
      if (hyp_counts.empty()) continue;
      std::unordered_map<std::string, std::uint64_t> ref_max;
      for (const TokenSeq& ref : refs) {
        std::unordered_map<std::string, std::uint64_t> rc;
        detail::count_ngrams(ref, order, rc);
        for (const auto& [key, count] : rc) {
          auto& slot = ref_max[key];
          if (count > slot) slot = count;
        }
      }
      for (const auto& [key, count] : hyp_counts) {
        totals[order - 1] += count;
        const auto it = ref_max.find(key);
        if (it != ref_max.end())
          clipped[order - 1] += std::min(count, it->second);
      }
    }
  }

  for (int order = 0; order < max_order; ++order)
    report.precisions.emplace_back(clipped[order], totals[order]);

  report.brevity_penalty = 1.0;
  if (report.hypothesis_length == 0) {
    report.brevity_penalty = 0.0;
  } else if (report.hypothesis_length < report.reference_length) {
    report.brevity_penalty =
        std::exp(1.0 - static_cast<double>(report.reference_length) /
                           static_cast<double>(report.hypothesis_length));
  }

  double log_sum = 0.0;
  bool zero = false;
  for (int order = 0; order < max_order; ++order) {
    std::uint64_t num = clipped[order];
    std::uint64_t den = totals[order];
    if (add_one_smoothing) {
      num += 1;
      den += 1;
    }
    if (num == 0 || den == 0) {
      zero = true;
      break;
    }
    log_sum += std::log(static_cast<double>(num) / static_cast<double>(den));
  }
  report.score = zero ? 0.0
                      : 100.0 * report.brevity_penalty *
                            std::exp(log_sum / static_cast<double>(max_order));
  return report;
}

/// Single-reference convenience form (the common case here).
inline BleuReport bleu_corpus(const std::vector<TokenSeq>& hypotheses,
                              const std::vector<TokenSeq>& references,
                              int max_order = 4, bool add_one_smoothing = false) {
  std::vector<std::vector<TokenSeq>> sets;
  sets.reserve(references.size());
  for (const TokenSeq& r : references) sets.push_back({r});
  return bleu_corpus(hypotheses, sets, max_order, add_one_smoothing);
}

// ---------------------------------------------------------------------------
// Length bucketing for the per-length BLEU breakdown.
// ---------------------------------------------------------------------------

/// Partitions indices by length: bucket 0 holds L <= edges[0], bucket i
/// holds edges[i-1] < L <= edges[i], and a final open bucket holds
/// L > edges.back(). Returns edges.size() + 1 buckets.
inline std::vector<std::vector<std::size_t>> bucket_by_length(
    std::span<const std::size_t> lengths, std::span<const std::uint64_t> edges) {
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] <= edges[i - 1])
      throw MetricError("NonAscendingEdges: bucket edges must be strictly ascending");
  std::vector<std::vector<std::size_t>> buckets(edges.size() + 1);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    std::size_t b = edges.size();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (lengths[i] <= edges[e]) {
        b = e;
        break;
      }
    }
    buckets[b].push_back(i);
  }
  return buckets;
}

}  // namespace hanpivot

#endif  // HANPIVOT_METRICS_HPP_
