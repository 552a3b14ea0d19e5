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

#ifndef HANPIVOT_CORPUS_HPP_
#define HANPIVOT_CORPUS_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanpivot/errors.hpp"
#include "hanpivot/metrics.hpp"
#include "hanpivot/unicode.hpp"

namespace hanpivot {

struct ParallelPair {
  std::uint64_t id = 0;  // 1-based input line number
  std::string source;    // Korean, normalized
  std::string target;    // Chinese, normalized
  std::string domain_tag;
};

/// Zips source and target lines into pairs; both sides are normalized.
inline std::vector<ParallelPair> load_parallel(std::span<const std::string> source_lines,
                                               std::span<const std::string> target_lines,
                                               std::string_view domain_tag = {}) {
  if (source_lines.size() != target_lines.size())
    throw CorpusError("LineCountMismatch: " + std::to_string(source_lines.size()) +
                      " source lines vs " + std::to_string(target_lines.size()) +
                      " target lines");
  std::vector<ParallelPair> pairs;
  pairs.reserve(source_lines.size());
  for (std::size_t i = 0; i < source_lines.size(); ++i) {
    ParallelPair pair;
    pair.id = i + 1;
    pair.source = normalize(source_lines[i]);
    pair.target = normalize(target_lines[i]);
    pair.domain_tag = std::string(domain_tag);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

struct CleanRules {
  double min_ratio = 0.2;  // source/target character-length ratio bounds
  double max_ratio = 5.0;
};

struct Rejection {
  ParallelPair pair;
  std::string rule;  // EmptySide | NoHangulSource | NoHanjaTarget | RatioOutOfRange
};

struct CleanResult {
  std::vector<ParallelPair> kept;
  std::vector<Rejection> rejected;
};

/// Mechanized stand-in for manual corpus cleaning: every drop carries the
/// name of the rule that fired. Idempotent over its own kept set.
inline CleanResult clean(std::vector<ParallelPair> pairs, const CleanRules& rules = {}) {
  CleanResult result;
  for (ParallelPair& pair : pairs) {
    const std::size_t src_len = character_length(pair.source);
    const std::size_t tgt_len = character_length(pair.target);
    std::string rule;
    if (src_len == 0 || tgt_len == 0) {
      rule = "EmptySide";
    } else {
      bool has_hangul = false;
      for (char32_t c : decode_utf8(pair.source))
        if (is_hangul_syllable(c)) { has_hangul = true; break; }
      bool has_hanja = false;
      for (char32_t c : decode_utf8(pair.target))
        if (is_hanja_ideograph(c)) { has_hanja = true; break; }
      if (!has_hangul) {
        rule = "NoHangulSource";
      } else if (!has_hanja) {
        rule = "NoHanjaTarget";
      } else {
        const double ratio = static_cast<double>(src_len) / static_cast<double>(tgt_len);
        if (ratio < rules.min_ratio || ratio > rules.max_ratio)
          rule = "RatioOutOfRange";
      }
    }
    if (rule.empty())
      result.kept.push_back(std::move(pair));
    else
      result.rejected.push_back({std::move(pair), std::move(rule)});
  }
  return result;
}

/// Keeps pairs whose sides both have at most max_len character tokens.
inline std::vector<ParallelPair> filter_by_length(std::vector<ParallelPair> pairs,
                                                  std::size_t max_len) {
  std::vector<ParallelPair> out;
  out.reserve(pairs.size());
  for (ParallelPair& pair : pairs)
    if (character_length(pair.source) <= max_len &&
        character_length(pair.target) <= max_len)
      out.push_back(std::move(pair));
  return out;
}

// SplitMix64: the fully specified generator behind the split shuffle, so
// splits reproduce bit-exactly across platforms and implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates with j = next() mod (i + 1), documented in the README.
template <typename T>
inline void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next() % i);
    std::swap(items[i - 1], items[j]);
  }
}

struct CorpusSplit {
  std::vector<ParallelPair> train, validation, test;
  std::uint64_t seed = 0;
};

/// Seeded shuffle, then the first n_valid pairs become validation, the
/// next n_test become test, and the remainder train. Same seed, same split.
inline CorpusSplit split(std::vector<ParallelPair> pairs, std::size_t n_valid,
                         std::size_t n_test, std::uint64_t seed) {
  if (n_valid + n_test > pairs.size())
    throw CorpusError("InsufficientPairs: need " + std::to_string(n_valid + n_test) +
                      " pairs for validation+test but corpus has " +
                      std::to_string(pairs.size()));
  seeded_shuffle(pairs, seed);
  CorpusSplit out;
  out.seed = seed;
  out.validation.assign(pairs.begin(), pairs.begin() + n_valid);
  out.test.assign(pairs.begin() + n_valid, pairs.begin() + n_valid + n_test);
  out.train.assign(pairs.begin() + n_valid + n_test, pairs.end());
  return out;
}

struct SideStats {
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  double mean_len = 0.0;
  std::vector<std::uint64_t> histogram;  // per bucket, edges + final open bucket
};

struct CorpusStats {
  std::size_t pair_count = 0;
  std::vector<std::uint64_t> edges;
  SideStats source, target;
};

inline CorpusStats stats(std::span<const ParallelPair> pairs,
                         std::vector<std::uint64_t> edges = {50, 100, 150, 200}) {
  CorpusStats out;
  out.pair_count = pairs.size();
  out.edges = edges;
  auto side = [&](auto&& get) {
    SideStats s;
    std::vector<std::size_t> lengths;
    lengths.reserve(pairs.size());
    for (const ParallelPair& pair : pairs)
      lengths.push_back(character_length(get(pair)));
    if (!lengths.empty()) {
      s.min_len = *std::min_element(lengths.begin(), lengths.end());
      s.max_len = *std::max_element(lengths.begin(), lengths.end());
      std::uint64_t sum = 0;
      for (std::size_t l : lengths) sum += l;
      s.mean_len = static_cast<double>(sum) / static_cast<double>(lengths.size());
    }
    const auto buckets = bucket_by_length(lengths, edges);
    for (const auto& b : buckets) s.histogram.push_back(b.size());
    return s;
  };
  out.source = side([](const ParallelPair& p) -> const std::string& { return p.source; });
  out.target = side([](const ParallelPair& p) -> const std::string& { return p.target; });
  return out;
}

}  // namespace hanpivot

#endif  // HANPIVOT_CORPUS_HPP_
