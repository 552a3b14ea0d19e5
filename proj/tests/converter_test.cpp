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

#include "hanpivot/converter.hpp"

#include <gtest/gtest.h>

#include <random>

#include "hanpivot/io.hpp"

using namespace hanpivot;

namespace {
const std::string kDataDir = HANPIVOT_DATA_DIR;

struct Bundle {
  Lexicon lexicon;
  TradSimpTable table;
  BoundarySet boundary;
  ConverterConfig config;
};

const Bundle& bundled() {
  static Bundle* b = [] {
    auto* bundle = new Bundle;
    bundle->lexicon = Lexicon::parse(read_file(kDataDir + "/lexicon.tsv"));
    bundle->table = TradSimpTable::parse(read_file(kDataDir + "/trad2simp.tsv"));
    bundle->boundary = BoundarySet::parse(read_file(kDataDir + "/particles.tsv"));
    bundle->config.lexicon = &bundle->lexicon;
    bundle->config.table = &bundle->table;
    bundle->config.boundary = &bundle->boundary;
    return bundle;
  }();
  return *b;
}

std::vector<std::string> converted_words_of(const Conversion& c) {
  std::vector<std::string> out;
  for (const auto& w : c.converted_words) out.push_back(w.hanja_simplified);
  return out;
}
}  // namespace

TEST(Tokenize, Table1Sentence) {
  const Lexicon lex = Lexicon::parse(
      "m\t명령\t命令\tNoun\t\t\n"
      "b\t반포\t頒布\tNoun\t\t\n");
  const BoundarySet boundary = BoundarySet::parse("은\n되\n");
  const auto tokens = tokenize(lex, boundary, std::string_view("명령은 아래와 같이 반포되었다."));
  std::vector<std::pair<std::size_t, std::size_t>> sino;
  for (const auto& t : tokens)
    if (t.sino()) sino.emplace_back(t.begin, t.end);
  ASSERT_EQ(sino.size(), 2u);
  EXPECT_EQ(sino[0], (std::pair<std::size_t, std::size_t>{0, 2}));    // 명령
  EXPECT_EQ(sino[1], (std::pair<std::size_t, std::size_t>{11, 13}));  // 반포
  // tokens tile the sentence
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    EXPECT_EQ(t.begin, cursor);
    EXPECT_LT(t.begin, t.end);
    cursor = t.end;
  }
  EXPECT_EQ(cursor, decode_utf8("명령은 아래와 같이 반포되었다.").size());
}

TEST(Tokenize, NoMatchesIsAllPlainText) {
  const Lexicon lex = Lexicon::parse("m\t명령\t命令\tNoun\t\t\n");
  const BoundarySet boundary = BoundarySet::parse("은\n");
  const auto tokens = tokenize(lex, boundary, std::string_view("하늘이 맑다."));
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_FALSE(tokens[0].sino());
}

TEST(Tokenize, VerbStemKeepsSuffix) {
  const Lexicon lex = Lexicon::parse(
      "y1\t유지\t有志\tNoun\t\t\n"
      "y2\t유지\t維持\tVerbStem\t\t\n");
  const BoundarySet boundary = BoundarySet::parse("하\n");
  const auto tokens = tokenize(lex, boundary, std::string_view("유지하고"));
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_TRUE(tokens[0].sino());
  EXPECT_EQ(tokens[0].end, 2u);
  EXPECT_EQ(tokens[0].candidates.size(), 2u);
  EXPECT_FALSE(tokens[1].sino());  // 하고 stays plain
}

TEST(Tokenize, BoundaryRejectsMidWordMatch) {
  // 천연 may not convert inside 천연자원을: the next scalar 자 is a plain
  // Hangul syllable, not a particle start. 자원+을 is accepted.
  const auto& b = bundled();
  const auto tokens =
      tokenize(b.lexicon, b.boundary, std::string_view("그는 천연자원을 탐사하는 임무에 자원했다."));
  std::vector<std::string> surfaces;
  const std::u32string src = decode_utf8("그는 천연자원을 탐사하는 임무에 자원했다.");
  for (const auto& t : tokens)
    if (t.sino()) surfaces.push_back(encode_utf8(src.substr(t.begin, t.end - t.begin)));
  EXPECT_EQ(surfaces, (std::vector<std::string>{"자원", "탐사", "임무", "자원"}));
}

TEST(Tokenize, FallsBackToShorterMatchOnBoundaryFailure) {
  // 의사소 is a (made-up) entry whose next scalar blocks it; the shorter
  // 의사 entry then matches at the same offset.
  const Lexicon lex = Lexicon::parse(
      "long\t의사소\t議事所\tNoun\t\t\n"
      "short\t의사\t醫師\tNoun\t\t\n");
  const BoundarySet boundary = BoundarySet::parse("가\n");
  const auto tokens = tokenize(lex, boundary, std::string_view("의사소가가다"));
  // 의사소+가 accepted (boundary 가), longest wins here
  ASSERT_TRUE(tokens[0].sino());
  EXPECT_EQ(tokens[0].end, 3u);

  const auto tokens2 = tokenize(lex, boundary, std::string_view("의사가온다"));
  ASSERT_TRUE(tokens2[0].sino());
  EXPECT_EQ(tokens2[0].end, 2u);  // 의사 + 가
  EXPECT_EQ(tokens2[0].candidates[0]->hanja_traditional, "醫師");
}

TEST(Disambiguate, Table6UisaPair) {
  const auto& b = bundled();
  const std::string s1 = "의사의 꿈은 포기했지만, 가족들은 그의 의사를 존중해주었다.";
  const Conversion c = convert_sentence(b.config, s1);
  std::vector<std::string> uisa;
  for (const auto& w : c.converted_words)
    if (w.hangul_surface == "의사") uisa.push_back(w.hanja_simplified);
  ASSERT_EQ(uisa.size(), 2u);
  EXPECT_EQ(uisa[0], "医师");
  EXPECT_EQ(uisa[1], "意思");
}

TEST(Disambiguate, SingleSenseNeedsNoCues) {
  const Lexicon lex = Lexicon::parse("m\t명령\t命令\tNoun\t\t\n");
  const BoundarySet boundary = BoundarySet::parse("은\n");
  const std::u32string s = decode_utf8("명령은");
  const auto tokens = tokenize(lex, boundary, s);
  const auto chosen = disambiguate(tokens, ContextModel{}, s);
  ASSERT_EQ(chosen.size(), 1u);
  EXPECT_EQ(chosen[0]->sense_id, "m");
}

TEST(Disambiguate, TieBreaking) {
  // equal scores -> higher prior; then smaller hanja_traditional; then id
  const BoundarySet boundary = BoundarySet::parse("은\n");
  {
    const Lexicon lex = Lexicon::parse(
        "a\t의사\t醫師\tNoun\t2.0\t\n"
        "b\t의사\t意思\tNoun\t1.0\t\n");
    const std::u32string s = decode_utf8("의사");
    const auto chosen = disambiguate(tokenize(lex, boundary, s), ContextModel{}, s);
    ASSERT_EQ(chosen.size(), 1u);
    EXPECT_EQ(chosen[0]->sense_id, "a");  // prior wins
  }
  {
    const Lexicon lex = Lexicon::parse(
        "a\t의사\t醫師\tNoun\t1.0\t\n"
        "b\t의사\t意思\tNoun\t1.0\t\n");
    const std::u32string s = decode_utf8("의사");
    const auto chosen = disambiguate(tokenize(lex, boundary, s), ContextModel{}, s);
    EXPECT_EQ(chosen[0]->sense_id, "b");  // 意 (U+610F) < 醫 (U+91AB)
  }
  {
    const Lexicon lex = Lexicon::parse(
        "b\t의사\t醫師\tNoun\t1.0\t\n"
        "a\t의사\t醫師\tNoun\t1.0\t\n");
    const std::u32string s = decode_utf8("의사");
    const auto chosen = disambiguate(tokenize(lex, boundary, s), ContextModel{}, s);
    EXPECT_EQ(chosen[0]->sense_id, "a");  // same hanja -> smaller sense_id
  }
}

TEST(Disambiguate, CueCountedOncePerWindow) {
  // The cue appears twice inside the window but adds its weight once.
  const Lexicon lex = Lexicon::parse("a\t의사\t醫師\tNoun\t1.0\t꿈:1.0\n");
  const BoundarySet boundary = BoundarySet::parse("의\n");
  const std::u32string s = decode_utf8("의사의 꿈 꿈");
  const auto tokens = tokenize(lex, boundary, s);
  ASSERT_TRUE(tokens[0].sino());
  EXPECT_DOUBLE_EQ(score_sense(*tokens[0].candidates[0], tokens[0], s, 10), 2.0);
}

TEST(Disambiguate, WindowLimitsCueReach) {
  const Lexicon lex = Lexicon::parse(
      "a\t의사\t醫師\tNoun\t1.0\t꿈:1.0\n"
      "b\t의사\t意思\tNoun\t1.5\t\n");
  const BoundarySet boundary = BoundarySet::parse("의\n");
  // cue 꿈 sits 12 scalars after the token end; outside window 10
  const std::u32string far = decode_utf8("의사의 aaaaaaaaa 꿈");
  auto chosen = disambiguate(tokenize(lex, boundary, far), ContextModel{10}, far);
  EXPECT_EQ(chosen[0]->sense_id, "b");
  chosen = disambiguate(tokenize(lex, boundary, far), ContextModel{20}, far);
  EXPECT_EQ(chosen[0]->sense_id, "a");
}

TEST(ConvertSentence, Table1Golden) {
  const auto& b = bundled();
  const Conversion c1 = convert_sentence(b.config, "명령은 아래와 같이 반포되었다.");
  EXPECT_EQ(c1.output_text, "命令은 아래와 같이 颁布되었다.");
  EXPECT_EQ(converted_words_of(c1), (std::vector<std::string>{"命令", "颁布"}));

  const Conversion c2 = convert_sentence(b.config, "양국은 광범한 영역에서의 공동 이익을 확인했다.");
  EXPECT_EQ(c2.output_text, "两国은 广范한 领域에서의 共同 利益을 确认했다.");
  EXPECT_EQ(converted_words_of(c2),
            (std::vector<std::string>{"两国", "广范", "领域", "共同", "利益", "确认"}));
}

TEST(ConvertSentence, Empty) {
  const auto& b = bundled();
  const Conversion c = convert_sentence(b.config, "");
  EXPECT_EQ(c.output_text, "");
  EXPECT_TRUE(c.converted_words.empty());
  EXPECT_TRUE(c.unconverted_spans.empty());
}

TEST(ConvertSentence, ReconstructionInvariant) {
  const auto& b = bundled();
  std::mt19937 rng(23);
  std::vector<std::string> pieces = {"의사",  "유지", "이성",  "자원", "천연", "하고",
                                     "가",    "은",   " ",     "꿈",   "존중", "탐사",
                                     "임무",  "。",   "abc",   "漢字", "간",   "의",
                                     "관리",  "지역", "마을"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string raw;
    for (std::size_t i = 0, n = rng() % 12; i < n; ++i) raw += pieces[rng() % pieces.size()];
    const Conversion c = convert_sentence(b.config, raw);

    // splice converted words and unconverted spans back together
    const std::u32string src = decode_utf8(c.source_text);
    std::u32string rebuilt;
    std::size_t wi = 0, ui = 0, cursor = 0;
    while (cursor < src.size()) {
      if (wi < c.converted_words.size() && c.converted_words[wi].src_begin == cursor) {
        rebuilt += decode_utf8(c.converted_words[wi].hanja_simplified);
        cursor = c.converted_words[wi].src_end;
        ++wi;
      } else {
        ASSERT_LT(ui, c.unconverted_spans.size());
        ASSERT_EQ(c.unconverted_spans[ui].first, cursor);
        rebuilt += src.substr(cursor, c.unconverted_spans[ui].second - cursor);
        cursor = c.unconverted_spans[ui].second;
        ++ui;
      }
    }
    EXPECT_EQ(encode_utf8(rebuilt), c.output_text) << "raw: " << raw;
    EXPECT_EQ(wi, c.converted_words.size());
    EXPECT_EQ(ui, c.unconverted_spans.size());

    // monotonic non-overlapping alignment, both sides
    std::size_t prev_src = 0, prev_out = 0;
    for (const auto& w : c.converted_words) {
      EXPECT_GE(w.src_begin, prev_src);
      EXPECT_LT(w.src_begin, w.src_end);
      EXPECT_GE(w.out_begin, prev_out);
      EXPECT_LT(w.out_begin, w.out_end);
      prev_src = w.src_end;
      prev_out = w.out_end;
      // output span slice equals the recorded word
      const std::u32string out = decode_utf8(c.output_text);
      EXPECT_EQ(encode_utf8(out.substr(w.out_begin, w.out_end - w.out_begin)),
                w.hanja_simplified);
      // no Hangul survives in converted words
      for (char32_t ch : decode_utf8(w.hanja_simplified))
        EXPECT_TRUE(is_hanja_ideograph(ch));
    }
  }
}

TEST(ConvertSentence, DeterministicPureFunction) {
  const auto& b = bundled();
  const std::string raw = "의사의 꿈은 포기했지만, 가족들은 그의 의사를 존중해주었다.";
  const Conversion c1 = convert_sentence(b.config, raw);
  const Conversion c2 = convert_sentence(b.config, raw);
  EXPECT_EQ(c1.output_text, c2.output_text);
  ASSERT_EQ(c1.converted_words.size(), c2.converted_words.size());
  for (std::size_t i = 0; i < c1.converted_words.size(); ++i)
    EXPECT_EQ(c1.converted_words[i].sense_id, c2.converted_words[i].sense_id);
}

TEST(ConvertSentence, PreexistingHanjaLeftAloneByDefault) {
  const auto& b = bundled();
  // Headline-style input that already carries Traditional Hanja outside
  // any lexicon match: untouched unless simplify_whole_output is set.
  const Conversion keep = convert_sentence(b.config, "國會 소식: 의사 일정을 진행했다.");
  EXPECT_NE(keep.output_text.find("國會"), std::string::npos);

  ConverterConfig cfg = b.config;
  cfg.simplify_whole_output = true;
  const Conversion simp = convert_sentence(cfg, "國會 소식: 의사 일정을 진행했다.");
  EXPECT_EQ(simp.output_text.find("國會"), std::string::npos);
  EXPECT_NE(simp.output_text.find("国会"), std::string::npos);
}

TEST(ConvertCorpus, OrderAndPurity) {
  const auto& b = bundled();
  EXPECT_TRUE(convert_corpus(b.config, {}).empty());
  const std::vector<std::string> sentences(50, "명령은 아래와 같이 반포되었다.");
  const auto conversions = convert_corpus(b.config, sentences);
  ASSERT_EQ(conversions.size(), 50u);
  for (const auto& c : conversions)
    EXPECT_EQ(c.output_text, conversions[0].output_text);
}
