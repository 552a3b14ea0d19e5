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

#ifndef HANPIVOT_EVALUATE_HPP_
#define HANPIVOT_EVALUATE_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "hanpivot/converter.hpp"
#include "hanpivot/metrics.hpp"
#include "hanpivot/subprocess.hpp"

namespace hanpivot {

struct BucketReport {
  std::uint64_t lower = 0;                    // exclusive, 0 for the first bucket
  std::optional<std::uint64_t> upper;         // inclusive; empty = open-ended
  std::size_t pair_count = 0;
  std::optional<BleuReport> bleu;             // empty bucket -> no score
};

/// One arm of the with/without-conversion comparison.
struct EvalRunReport {
  std::string label;
  bool with_conversion = false;
  BleuReport bleu;
  std::optional<RoicReport> roic_word;   // conversion runs only
  std::optional<RoicReport> roic_char;   // conversion runs only
  std::vector<BucketReport> buckets;
  double timing_ms = 0.0;
  // Raw adapter output, kept for inspection and --hyp-out; not serialized.
  std::vector<std::string> hypotheses;
};

struct EvalConfig {
  std::vector<std::string> source_lines;
  std::vector<std::string> reference_lines;
  AdapterSpec adapter;
  bool convert = false;
  const ConverterConfig* converter = nullptr;  // required when convert is set
  std::vector<std::uint64_t> bucket_edges = {50, 100, 150, 200};
  std::string label = "system";
  int max_order = 4;
  bool smooth_bleu = false;
};

/// Runs one evaluation arm: optionally convert the source, pipe it through
/// the adapter, then score character-level BLEU (corpus and per length
/// bucket) and, for conversion runs, corpus ROIC against the references.
/// Buckets are keyed by the raw source length so both arms are comparable.
inline EvalRunReport run_evaluation(const EvalConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.source_lines.size() != cfg.reference_lines.size())
    throw MetricError("LengthMismatch: " + std::to_string(cfg.source_lines.size()) +
                      " source lines vs " + std::to_string(cfg.reference_lines.size()) +
                      " reference lines");
  if (cfg.source_lines.empty()) throw MetricError("EmptyCorpus: no sentence pairs");

  EvalRunReport report;
  report.label = cfg.label;
  report.with_conversion = cfg.convert;

  std::vector<Conversion> conversions;
  std::vector<std::string> adapter_input;
  if (cfg.convert) {
    conversions = convert_corpus(*cfg.converter, cfg.source_lines);
    adapter_input.reserve(conversions.size());
    for (const Conversion& c : conversions) adapter_input.push_back(c.output_text);
  } else {
    adapter_input = cfg.source_lines;  // raw, untouched by the converter
  }

  report.hypotheses = run_line_adapter(cfg.adapter, adapter_input);

  std::vector<TokenSeq> hyp_tokens, ref_tokens;
  hyp_tokens.reserve(report.hypotheses.size());
  ref_tokens.reserve(cfg.reference_lines.size());
  for (const std::string& h : report.hypotheses)
    hyp_tokens.push_back(segment_characters(normalize(h)));
  for (const std::string& r : cfg.reference_lines)
    ref_tokens.push_back(segment_characters(normalize(r)));

  report.bleu = bleu_corpus(hyp_tokens, ref_tokens, cfg.max_order, cfg.smooth_bleu);

  std::vector<std::size_t> source_lengths;
  source_lengths.reserve(cfg.source_lines.size());
  for (const std::string& s : cfg.source_lines)
    source_lengths.push_back(character_length(normalize(s)));
  const auto buckets = bucket_by_length(source_lengths, cfg.bucket_edges);
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    BucketReport br;
    br.lower = b == 0 ? 0 : cfg.bucket_edges[b - 1];
    if (b < cfg.bucket_edges.size()) br.upper = cfg.bucket_edges[b];
    br.pair_count = buckets[b].size();
    if (!buckets[b].empty()) {
      std::vector<TokenSeq> h, r;
      for (std::size_t idx : buckets[b]) {
        h.push_back(hyp_tokens[idx]);
        r.push_back(ref_tokens[idx]);
      }
      br.bleu = bleu_corpus(h, r, cfg.max_order, cfg.smooth_bleu);
    }
    report.buckets.push_back(std::move(br));
  }

  if (cfg.convert) {
    report.roic_word = roic_corpus(conversions, cfg.reference_lines, RoicGranularity::word);
    report.roic_char = roic_corpus(conversions, cfg.reference_lines, RoicGranularity::character);
  }

  report.timing_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return report;
}

}  // namespace hanpivot

#endif  // HANPIVOT_EVALUATE_HPP_
