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

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hanpivot/converter.hpp"
#include "hanpivot/corpus.hpp"
#include "hanpivot/errors.hpp"
#include "hanpivot/evaluate.hpp"
#include "hanpivot/io.hpp"
#include "hanpivot/lexicon.hpp"
#include "hanpivot/metrics.hpp"
#include "hanpivot/report_json.hpp"

namespace {

using nlohmann::json;

// Owns the loaded resources the ConverterConfig points into.
struct LoadedConverter {
  hanpivot::Lexicon lexicon;
  hanpivot::TradSimpTable table;
  hanpivot::BoundarySet boundary;
  hanpivot::ConverterConfig config;
};

struct ConverterPaths {
  std::string lexicon;
  std::string table;
  std::string particles;
  std::size_t window = 10;
  bool simplify_all = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--lexicon", lexicon, "Sino-Korean lexicon TSV")->required();
    cmd->add_option("--t2s", table, "Traditional->Simplified table TSV")->required();
    cmd->add_option("--particles", particles, "particle/ending-start scalars, one per line")
        ->required();
    cmd->add_option("--window", window, "cue window in scalars per side (default 10)");
    cmd->add_flag("--simplify-all", simplify_all,
                  "also map pre-existing Hanja outside converted spans");
  }

  // Heap-allocated so config's pointers into the sibling members stay
  // valid wherever the result is moved.
  std::unique_ptr<LoadedConverter> load() const {
    auto loaded = std::make_unique<LoadedConverter>();
    loaded->lexicon = hanpivot::Lexicon::parse(hanpivot::read_file(lexicon));
    loaded->table = hanpivot::TradSimpTable::parse(hanpivot::read_file(table));
    loaded->boundary = hanpivot::BoundarySet::parse(hanpivot::read_file(particles));
    loaded->config.lexicon = &loaded->lexicon;
    loaded->config.table = &loaded->table;
    loaded->config.boundary = &loaded->boundary;
    loaded->config.context.window = window;
    loaded->config.simplify_whole_output = simplify_all;
    return loaded;
  }
};

json word_to_json(const hanpivot::ConvertedWord& w) {
  json j;
  j["surface"] = w.hangul_surface;
  j["sense_id"] = w.sense_id;
  j["hanja"] = w.hanja_simplified;
  j["src"] = {w.src_begin, w.src_end};
  j["out"] = {w.out_begin, w.out_end};
  return j;
}

int cmd_convert(const ConverterPaths& paths, const std::string& in_path,
                const std::string& out_path, const std::string& alignment_path) {
  const auto loaded = paths.load();
  const std::vector<std::string> lines = hanpivot::read_lines(in_path);
  const std::vector<hanpivot::Conversion> conversions =
      hanpivot::convert_corpus(loaded->config, lines);

  std::vector<std::string> out_lines, align_lines;
  out_lines.reserve(conversions.size());
  for (std::size_t i = 0; i < conversions.size(); ++i) {
    out_lines.push_back(conversions[i].output_text);
    if (!alignment_path.empty()) {
      json j;
      j["line"] = i + 1;
      j["source"] = conversions[i].source_text;
      j["output"] = conversions[i].output_text;
      json words = json::array();
      for (const auto& w : conversions[i].converted_words) words.push_back(word_to_json(w));
      j["words"] = words;
      align_lines.push_back(j.dump());
    }
  }
  hanpivot::write_lines_atomic(out_path, out_lines);
  if (!alignment_path.empty()) hanpivot::write_lines_atomic(alignment_path, align_lines);
  std::fprintf(stderr, "converted %zu sentences (%zu words total)\n", conversions.size(),
               [&] {
                 std::size_t n = 0;
                 for (const auto& c : conversions) n += c.converted_words.size();
                 return n;
               }());
  return 0;
}

int cmd_prepare(const std::string& source_path, const std::string& target_path,
                const std::string& out_dir, std::uint64_t seed, std::size_t n_valid,
                std::size_t n_test, std::size_t max_len, double min_ratio,
                double max_ratio, const std::string& domain) {
  namespace hp = hanpivot;
  const auto src_lines = hp::read_lines(source_path);
  const auto tgt_lines = hp::read_lines(target_path);
  auto pairs = hp::load_parallel(src_lines, tgt_lines, domain);
  const std::size_t input_count = pairs.size();

  hp::CleanRules rules;
  rules.min_ratio = min_ratio;
  rules.max_ratio = max_ratio;
  auto cleaned = hp::clean(std::move(pairs), rules);
  auto filtered = hp::filter_by_length(std::move(cleaned.kept), max_len);
  const std::size_t filtered_count = filtered.size();
  const auto corpus_stats = hp::stats(filtered);
  const auto split = hp::split(std::move(filtered), n_valid, n_test, seed);

  auto write_side = [&](const std::string& name, const std::vector<hp::ParallelPair>& ps) {
    std::vector<std::string> ko, zh;
    ko.reserve(ps.size());
    zh.reserve(ps.size());
    for (const auto& p : ps) {
      ko.push_back(p.source);
      zh.push_back(p.target);
    }
    hp::write_lines_atomic(out_dir + "/" + name + ".ko", ko);
    hp::write_lines_atomic(out_dir + "/" + name + ".zh", zh);
  };
  write_side("train", split.train);
  write_side("valid", split.validation);
  write_side("test", split.test);

  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& r : cleaned.rejected) {
    if (r.rule == "EmptySide") ++counts[0];
    else if (r.rule == "NoHangulSource") ++counts[1];
    else if (r.rule == "NoHanjaTarget") ++counts[2];
    else ++counts[3];
  }

  auto ids_of = [](const std::vector<hp::ParallelPair>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(ps[i].id);
    }
    return s;
  };

  std::vector<std::string> manifest;
  manifest.push_back("seed\t" + std::to_string(seed));
  manifest.push_back("input_pairs\t" + std::to_string(input_count));
  manifest.push_back("rejected_EmptySide\t" + std::to_string(counts[0]));
  manifest.push_back("rejected_NoHangulSource\t" + std::to_string(counts[1]));
  manifest.push_back("rejected_NoHanjaTarget\t" + std::to_string(counts[2]));
  manifest.push_back("rejected_RatioOutOfRange\t" + std::to_string(counts[3]));
  manifest.push_back("max_len\t" + std::to_string(max_len));
  manifest.push_back("kept_pairs\t" + std::to_string(filtered_count));
  manifest.push_back("train\t" + std::to_string(split.train.size()));
  manifest.push_back("validation\t" + std::to_string(split.validation.size()));
  manifest.push_back("test\t" + std::to_string(split.test.size()));
  manifest.push_back("train_ids\t" + ids_of(split.train));
  manifest.push_back("validation_ids\t" + ids_of(split.validation));
  manifest.push_back("test_ids\t" + ids_of(split.test));
  hp::write_lines_atomic(out_dir + "/split_manifest.txt", manifest);

  std::printf("pairs: %zu in, %zu kept (train %zu / valid %zu / test %zu)\n", input_count,
              filtered_count, split.train.size(), split.validation.size(),
              split.test.size());
  std::printf("source len min/mean/max: %zu/%.1f/%zu  target: %zu/%.1f/%zu\n",
              corpus_stats.source.min_len, corpus_stats.source.mean_len,
              corpus_stats.source.max_len, corpus_stats.target.min_len,
              corpus_stats.target.mean_len, corpus_stats.target.max_len);
  return 0;
}

int cmd_roic(const ConverterPaths& paths, const std::string& source_path,
             const std::string& reference_path, bool macro, bool per_line,
             const std::string& json_path) {
  namespace hp = hanpivot;
  const auto loaded = paths.load();
  const auto sources = hp::read_lines(source_path);
  const auto references = hp::read_lines(reference_path);
  if (sources.size() != references.size())
    throw hp::MetricError("LengthMismatch: " + std::to_string(sources.size()) +
                          " source lines vs " + std::to_string(references.size()) +
                          " reference lines");
  const auto conversions = hp::convert_corpus(loaded->config, sources);

  if (per_line) {
    for (std::size_t i = 0; i < conversions.size(); ++i) {
      if (conversions[i].converted_words.empty()) {
        std::printf("line %zu: no converted words\n", i + 1);
        continue;
      }
      const auto w = hp::roic_word(conversions[i], references[i]);
      const auto c = hp::roic_char(conversions[i], references[i]);
      std::printf("line %zu: word %s  char %s\n", i + 1, w.to_text().c_str(),
                  c.to_text().c_str());
    }
  }

  const auto averaging = macro ? hp::RoicAveraging::sentence_mean : hp::RoicAveraging::pooled;
  const auto word = hp::roic_corpus(conversions, references, hp::RoicGranularity::word, averaging);
  const auto chr = hp::roic_corpus(conversions, references, hp::RoicGranularity::character, averaging);
  std::printf("ROIC (word): %s\n", word.to_text().c_str());
  std::printf("ROIC (char): %s\n", chr.to_text().c_str());
  if (!json_path.empty()) {
    hanpivot::write_file_atomic(json_path, hanpivot::to_json(word).dump() + "\n" +
                                               hanpivot::to_json(chr).dump() + "\n");
  }
  return 0;
}

int cmd_bleu(const std::string& hyp_path, const std::string& ref_path, int max_order,
             bool smooth, const std::string& json_path) {
  namespace hp = hanpivot;
  const auto hyp_lines = hp::read_lines(hyp_path);
  const auto ref_lines = hp::read_lines(ref_path);
  if (hyp_lines.size() != ref_lines.size())
    throw hp::MetricError("LengthMismatch: " + std::to_string(hyp_lines.size()) +
                          " hypothesis lines vs " + std::to_string(ref_lines.size()) +
                          " reference lines");
  std::vector<hp::TokenSeq> hyp, ref;
  for (const auto& l : hyp_lines) hyp.push_back(hp::segment_characters(hp::normalize(l)));
  for (const auto& l : ref_lines) ref.push_back(hp::segment_characters(hp::normalize(l)));
  const auto report = hp::bleu_corpus(hyp, ref, max_order, smooth);
  std::printf("%s\n", report.to_text().c_str());
  if (!json_path.empty())
    hp::write_file_atomic(json_path, hp::to_json(report).dump() + "\n");
  return 0;
}

int cmd_evaluate(const ConverterPaths& paths, bool have_converter,
                 const std::string& source_path, const std::string& reference_path,
                 const std::string& adapter_command, double timeout, bool convert,
                 const std::vector<std::uint64_t>& buckets, const std::string& label,
                 int max_order, bool smooth, const std::string& json_path,
                 const std::string& hyp_out) {
  namespace hp = hanpivot;
  std::unique_ptr<LoadedConverter> loaded;
  if (convert) {
    if (!have_converter)
      throw hp::Error(hp::ErrorKind::usage,
                      "--convert requires --lexicon, --t2s and --particles");
    loaded = paths.load();
  }

  hp::EvalConfig cfg;
  cfg.source_lines = hp::read_lines(source_path);
  cfg.reference_lines = hp::read_lines(reference_path);
  cfg.adapter.command = adapter_command;
  cfg.adapter.timeout_seconds = timeout;
  cfg.convert = convert;
  cfg.converter = loaded ? &loaded->config : nullptr;
  if (!buckets.empty()) cfg.bucket_edges = buckets;
  cfg.label = label;
  cfg.max_order = max_order;
  cfg.smooth_bleu = smooth;

  const hp::EvalRunReport report = hp::run_evaluation(cfg);
  const json j = hp::to_json(report);
  std::fputs(hp::render_report_text(j).c_str(), stdout);
  if (!json_path.empty()) hp::write_file_atomic(json_path, j.dump() + "\n");
  if (!hyp_out.empty()) hp::write_lines_atomic(hyp_out, report.hypotheses);
  return 0;
}

int cmd_report(const std::string& in_path) {
  const auto lines = hanpivot::read_lines(in_path);
  for (const auto& line : lines) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw hanpivot::IoError("not a JSON record: " + line.substr(0, 60));
    std::fputs(hanpivot::render_report_text(j).c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hangul-Hanja conversion toolkit for Korean-Chinese translation pivoting"};
  app.require_subcommand(1);

  // convert
  auto* convert = app.add_subcommand("convert", "convert Sino-Korean words to Simplified Chinese");
  ConverterPaths convert_paths;
  std::string convert_in, convert_out, convert_alignment;
  convert->add_option("--in", convert_in, "input file, one sentence per line")->required();
  convert->add_option("--out", convert_out, "output file")->required();
  convert->add_option("--alignment", convert_alignment, "alignment sidecar (JSONL)");
  convert_paths.add_options(convert);

  // prepare
  auto* prepare = app.add_subcommand("prepare", "clean, length-filter and split a parallel corpus");
  std::string prep_source, prep_target, prep_out_dir, prep_domain;
  std::uint64_t prep_seed = 0;
  std::size_t prep_n_valid = 2000, prep_n_test = 2000, prep_max_len = 200;
  double prep_min_ratio = 0.2, prep_max_ratio = 5.0;
  prepare->add_option("--source", prep_source, "Korean side, one sentence per line")->required();
  prepare->add_option("--target", prep_target, "Chinese side")->required();
  prepare->add_option("--out-dir", prep_out_dir, "output directory")->required();
  prepare->add_option("--seed", prep_seed, "shuffle seed")->required();
  prepare->add_option("--n-valid", prep_n_valid, "validation pairs (default 2000)");
  prepare->add_option("--n-test", prep_n_test, "test pairs (default 2000)");
  prepare->add_option("--max-len", prep_max_len, "max character tokens per side (default 200)");
  prepare->add_option("--min-ratio", prep_min_ratio, "min source/target length ratio");
  prepare->add_option("--max-ratio", prep_max_ratio, "max source/target length ratio");
  prepare->add_option("--domain", prep_domain, "domain tag recorded on every pair");

  // roic
  auto* roic = app.add_subcommand("roic", "convert and report vocabulary overlap vs references");
  ConverterPaths roic_paths;
  std::string roic_source, roic_reference, roic_json;
  bool roic_macro = false, roic_per_line = false;
  roic->add_option("--source", roic_source, "Korean input")->required();
  roic->add_option("--reference", roic_reference, "Chinese references")->required();
  roic->add_flag("--macro", roic_macro, "sentence-mean instead of pooled counts");
  roic->add_flag("--per-line", roic_per_line, "print per-sentence overlap");
  roic->add_option("--json", roic_json, "write JSONL records here");
  roic_paths.add_options(roic);

  // bleu
  auto* bleu = app.add_subcommand("bleu", "character-level corpus BLEU");
  std::string bleu_hyp, bleu_ref, bleu_json;
  int bleu_order = 4;
  bool bleu_smooth = false;
  bleu->add_option("--hyp", bleu_hyp, "hypothesis file")->required();
  bleu->add_option("--ref", bleu_ref, "reference file")->required();
  bleu->add_option("--max-order", bleu_order, "highest n-gram order (default 4)");
  bleu->add_flag("--smooth", bleu_smooth, "add-one smoothing for tiny fixtures");
  bleu->add_option("--json", bleu_json, "write a JSONL record here");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "run a translator over a test set and score it");
  ConverterPaths eval_paths;
  std::string eval_source, eval_reference, eval_adapter, eval_label = "system";
  std::string eval_json, eval_hyp_out;
  std::vector<std::uint64_t> eval_buckets;
  double eval_timeout = 30.0;
  int eval_order = 4;
  bool eval_convert = false, eval_smooth = false;
  evaluate->add_option("--source", eval_source, "Korean test set")->required();
  evaluate->add_option("--reference", eval_reference, "Chinese references")->required();
  evaluate->add_option("--adapter", eval_adapter,
                       "translator command (line in/line out, run by /bin/sh -c)")
      ->required();
  evaluate->add_flag("--convert", eval_convert, "apply Hangul-Hanja conversion first");
  evaluate->add_option("--buckets", eval_buckets,
                       "bucket edges for per-length BLEU (default 50 100 150 200)");
  evaluate->add_option("--timeout", eval_timeout, "adapter timeout seconds (default 30)");
  evaluate->add_option("--label", eval_label, "system label in the report");
  evaluate->add_option("--max-order", eval_order, "BLEU order (default 4)");
  evaluate->add_flag("--smooth", eval_smooth, "add-one BLEU smoothing");
  evaluate->add_option("--json", eval_json, "write the report as a JSONL record");
  evaluate->add_option("--hyp-out", eval_hyp_out, "write raw adapter output here");
  eval_paths.lexicon.clear();
  evaluate->add_option("--lexicon", eval_paths.lexicon, "lexicon TSV (with --convert)");
  evaluate->add_option("--t2s", eval_paths.table, "trad->simp TSV (with --convert)");
  evaluate->add_option("--particles", eval_paths.particles, "particle set (with --convert)");
  evaluate->add_option("--window", eval_paths.window, "cue window (default 10)");
  evaluate->add_flag("--simplify-all", eval_paths.simplify_all,
                     "simplify pre-existing Hanja too");

  // report
  auto* report = app.add_subcommand("report", "render JSONL reports as text");
  std::string report_in;
  report->add_option("--in", report_in, "JSONL report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (convert->parsed())
      return cmd_convert(convert_paths, convert_in, convert_out, convert_alignment);
    if (prepare->parsed())
      return cmd_prepare(prep_source, prep_target, prep_out_dir, prep_seed, prep_n_valid,
                         prep_n_test, prep_max_len, prep_min_ratio, prep_max_ratio,
                         prep_domain);
    if (roic->parsed())
      return cmd_roic(roic_paths, roic_source, roic_reference, roic_macro, roic_per_line,
                      roic_json);
    if (bleu->parsed())
      return cmd_bleu(bleu_hyp, bleu_ref, bleu_order, bleu_smooth, bleu_json);
    if (evaluate->parsed()) {
      const bool have_converter = !eval_paths.lexicon.empty() &&
                                  !eval_paths.table.empty() &&
                                  !eval_paths.particles.empty();
      return cmd_evaluate(eval_paths, have_converter, eval_source, eval_reference,
                          eval_adapter, eval_timeout, eval_convert, eval_buckets,
                          eval_label, eval_order, eval_smooth, eval_json, eval_hyp_out);
    }
    if (report->parsed()) return cmd_report(report_in);
  } catch (const hanpivot::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
