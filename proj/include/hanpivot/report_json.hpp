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

#ifndef HANPIVOT_REPORT_JSON_HPP_
#define HANPIVOT_REPORT_JSON_HPP_

#include <string>

#include <json.hpp>

#include "hanpivot/evaluate.hpp"
#include "hanpivot/metrics.hpp"

// Machine-readable report records: one JSON object per line (JSONL).
// Keys are emitted in sorted order, so identical inputs give identical
// bytes; timing_ms is the only field allowed to differ between runs.

namespace hanpivot {

inline nlohmann::json to_json(const RoicReport& r) {
  nlohmann::json j;
  j["type"] = "roic";
  j["granularity"] = r.granularity == RoicGranularity::word ? "word" : "char";
  j["matched"] = r.matched;
  j["total"] = r.total;
  j["ratio"] = r.ratio();
  if (r.sentence_mean) j["sentence_mean"] = *r.sentence_mean;
  return j;
}

inline nlohmann::json to_json(const BleuReport& r) {
  nlohmann::json j;
  j["type"] = "bleu";
  j["score"] = r.score;
  nlohmann::json precisions = nlohmann::json::array();
  for (const auto& [num, den] : r.precisions)
    precisions.push_back({{"clipped", num}, {"total", den}});
  j["precisions"] = precisions;
  j["brevity_penalty"] = r.brevity_penalty;
  j["hyp_len"] = r.hypothesis_length;
  j["ref_len"] = r.reference_length;
  j["max_order"] = r.max_order;
  j["smoothed"] = r.smoothed;
  return j;
}

inline nlohmann::json to_json(const EvalRunReport& r) {
  nlohmann::json j;
  j["type"] = "evaluation";
  j["label"] = r.label;
  j["with_conversion"] = r.with_conversion;
  j["bleu"] = to_json(r.bleu);
  if (r.roic_word) j["roic_word"] = to_json(*r.roic_word);
  if (r.roic_char) j["roic_char"] = to_json(*r.roic_char);
  nlohmann::json buckets = nlohmann::json::array();
  for (const BucketReport& b : r.buckets) {
    nlohmann::json jb;
    jb["lower"] = b.lower;
    if (b.upper) jb["upper"] = *b.upper;
    jb["pairs"] = b.pair_count;
    if (b.bleu) jb["bleu"] = to_json(*b.bleu);
    buckets.push_back(jb);
  }
  j["buckets"] = buckets;
  j["timing_ms"] = r.timing_ms;
  return j;
}

inline std::string render_bucket_table(const nlohmann::json& report) {
  std::string out;
  char buf[160];
  out += "length bucket      pairs   BLEU\n";
  for (const auto& b : report.at("buckets")) {
    std::string range;
    const auto lower = b.at("lower").get<std::uint64_t>();
    if (b.contains("upper")) {
      const auto upper = b.at("upper").get<std::uint64_t>();
      range = lower == 0 ? "<= " + std::to_string(upper)
                         : std::to_string(lower + 1) + " .. " + std::to_string(upper);
    } else {
      range = "> " + std::to_string(lower);
    }
    const auto pairs = b.at("pairs").get<std::uint64_t>();
    if (b.contains("bleu")) {
      std::snprintf(buf, sizeof(buf), "%-18s %5llu   %6.2f\n", range.c_str(),
                    static_cast<unsigned long long>(pairs),
                    b.at("bleu").at("score").get<double>());
    } else {
      std::snprintf(buf, sizeof(buf), "%-18s %5llu   %6s\n", range.c_str(),
                    static_cast<unsigned long long>(pairs), "-");
    }
    out += buf;
  }
  return out;
}

/// Text rendering of an evaluation record (the `report` subcommand).
inline std::string render_report_text(const nlohmann::json& report) {
  std::string out;
  char buf[256];
  const std::string type = report.value("type", "");
  if (type == "evaluation") {
    std::snprintf(buf, sizeof(buf), "== %s (%s) ==\n",
                  report.value("label", "system").c_str(),
                  report.value("with_conversion", false) ? "w/ conversion"
                                                         : "w/o conversion");
    out += buf;
    std::snprintf(buf, sizeof(buf), "BLEU = %.2f (BP = %.4f, hyp_len = %llu, ref_len = %llu)\n",
                  report.at("bleu").at("score").get<double>(),
                  report.at("bleu").at("brevity_penalty").get<double>(),
                  static_cast<unsigned long long>(report.at("bleu").at("hyp_len").get<std::uint64_t>()),
                  static_cast<unsigned long long>(report.at("bleu").at("ref_len").get<std::uint64_t>()));
    out += buf;
    auto roic_line = [&](const char* key, const char* name) {
      if (!report.contains(key)) return;
      const auto& r = report.at(key);
      std::snprintf(buf, sizeof(buf), "ROIC (%s): %llu/%llu (%.2f%%)\n", name,
                    static_cast<unsigned long long>(r.at("matched").get<std::uint64_t>()),
                    static_cast<unsigned long long>(r.at("total").get<std::uint64_t>()),
                    r.at("ratio").get<double>() * 100.0);
      out += buf;
    };
    roic_line("roic_word", "word");
    roic_line("roic_char", "char");
    out += render_bucket_table(report);
  } else if (type == "roic") {
    std::snprintf(buf, sizeof(buf), "ROIC (%s): %llu/%llu (%.2f%%)\n",
                  report.value("granularity", "word").c_str(),
                  static_cast<unsigned long long>(report.at("matched").get<std::uint64_t>()),
                  static_cast<unsigned long long>(report.at("total").get<std::uint64_t>()),
                  report.at("ratio").get<double>() * 100.0);
    out += buf;
  } else if (type == "bleu") {
    std::snprintf(buf, sizeof(buf), "BLEU = %.2f (BP = %.4f, hyp_len = %llu, ref_len = %llu)\n",
                  report.at("score").get<double>(),
                  report.at("brevity_penalty").get<double>(),
                  static_cast<unsigned long long>(report.at("hyp_len").get<std::uint64_t>()),
                  static_cast<unsigned long long>(report.at("ref_len").get<std::uint64_t>()));
    out += buf;
  } else {
    out += report.dump();
    out += '\n';
  }
  return out;
}

}  // namespace hanpivot

#endif  // HANPIVOT_REPORT_JSON_HPP_
