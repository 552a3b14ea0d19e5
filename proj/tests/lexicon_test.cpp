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

#include "hanpivot/lexicon.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hanpivot/io.hpp"

using namespace hanpivot;

namespace {
const std::string kDataDir = HANPIVOT_DATA_DIR;

Lexicon small_lexicon() {
  return Lexicon::parse(
      "u1\t의사\t醫師\tNoun\t1.2\t꿈:1.0\n"
      "u2\t의사\t意思\tNoun\t1.0\t존중:1.0\n"
      "e1\t의\t義\tNoun\t0.5\t\n"
      "y1\t양국\t兩國\tNoun\t\t\n");
}
}  // namespace

TEST(LexiconParse, SingleRow) {
  const Lexicon lex = Lexicon::parse("s1\t명령\t命令\tNoun\t1.0\t\n");
  EXPECT_EQ(lex.entry_count(), 1u);
  EXPECT_EQ(lex.surface_count(), 1u);
  EXPECT_EQ(lex.max_surface_length(), 2u);
  const auto m = lex.lookup_longest(std::string_view("명령은"), 0);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->matched_length, 2u);
  ASSERT_EQ(m->senses.size(), 1u);
  EXPECT_EQ(m->senses[0]->hanja_traditional, "命令");
}

TEST(LexiconParse, EmptyFile) {
  EXPECT_EQ(Lexicon::parse("").entry_count(), 0u);
  EXPECT_EQ(Lexicon::parse("# only a comment\n").entry_count(), 0u);
}

TEST(LexiconParse, DefaultsAndComments) {
  const Lexicon lex = Lexicon::parse("# c\n\ns1\t명령\t命令\tNoun\n");
  ASSERT_EQ(lex.entry_count(), 1u);
  EXPECT_DOUBLE_EQ(lex.entries()[0].prior, 1.0);
  EXPECT_TRUE(lex.entries()[0].cues.empty());
}

TEST(LexiconParse, Errors) {
  // LengthMismatch: 2 syllables vs 3 characters
  try {
    Lexicon::parse("s1\t의사\t医師意\tNoun\t\t\n");
    FAIL() << "expected LengthMismatch";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.rule(), "LengthMismatch");
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(Lexicon::parse("s1\t의사\n"), ParseError);            // column count
  EXPECT_THROW(Lexicon::parse("s1\ta사\t médic\tNoun\t\t\n"), ParseError);
  try {
    Lexicon::parse("s1\t의x사\t醫師\tNoun\t\t\n");
    FAIL() << "expected InvalidSurface";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.rule(), "InvalidSurface");
  }
  try {
    Lexicon::parse("s1\t명령\t命令\tNoun\t\t\ns1\t양국\t兩國\tNoun\t\t\n");
    FAIL() << "expected DuplicateSenseId";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.rule(), "DuplicateSenseId");
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(Lexicon::parse("s1\t명령\t命令\tAdverb\t\t\n"), ParseError);   // pos
  EXPECT_THROW(Lexicon::parse("s1\t명령\t命令\tNoun\t-1\t\n"), ParseError);   // prior
  EXPECT_THROW(Lexicon::parse("s1\t명령\t命令\tNoun\t1\t꿈:0\n"), ParseError);  // weight
  EXPECT_THROW(Lexicon::parse("s1\t명령\t命令\tNoun\t1\t:1.0\n"), ParseError);  // cue word
  EXPECT_THROW(Lexicon::parse("a\tb\tc\td\te\tf\tg\n"), ParseError);           // 7 columns
}

TEST(LexiconParse, RowOrderInsensitive) {
  const std::vector<std::string> rows = {
      "u1\t의사\t醫師\tNoun\t1.2\t꿈:1.0",
      "u2\t의사\t意思\tNoun\t1.0\t존중:1.0",
      "e1\t의\t義\tNoun\t0.5\t",
      "y1\t양국\t兩國\tNoun\t\t",
  };
  std::vector<std::string> shuffled = rows;
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::string a, b;
    for (const auto& r : rows) a += r + "\n";
    for (const auto& r : shuffled) b += r + "\n";
    const Lexicon la = Lexicon::parse(a), lb = Lexicon::parse(b);
    for (const char* probe : {"의사의", "의지", "양국은"}) {
      const auto ma = la.lookup_longest(std::string_view(probe), 0);
      const auto mb = lb.lookup_longest(std::string_view(probe), 0);
      ASSERT_EQ(ma.has_value(), mb.has_value());
      if (!ma) continue;
      EXPECT_EQ(ma->matched_length, mb->matched_length);
      ASSERT_EQ(ma->senses.size(), mb->senses.size());
      for (std::size_t i = 0; i < ma->senses.size(); ++i)
        EXPECT_EQ(ma->senses[i]->sense_id, mb->senses[i]->sense_id);
    }
  }
}

TEST(LookupLongest, Examples) {
  const Lexicon lex = small_lexicon();
  const auto m = lex.lookup_longest(std::string_view("의사의"), 0);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->matched_length, 2u);
  EXPECT_EQ(m->senses.size(), 2u);  // the two 의사 senses, not 의

  const auto at2 = lex.lookup_longest(std::string_view("의사의"), 2);
  ASSERT_TRUE(at2.has_value());
  EXPECT_EQ(at2->matched_length, 1u);  // trailing 의

  EXPECT_FALSE(Lexicon::parse("").lookup_longest(std::string_view("의사"), 0).has_value());

  const auto yang = lex.lookup_longest(std::string_view("양국은"), 0);
  ASSERT_TRUE(yang.has_value());
  EXPECT_EQ(yang->matched_length, 2u);
  EXPECT_EQ(yang->senses[0]->hanja_traditional, "兩國");

  EXPECT_FALSE(lex.lookup_longest(std::string_view("하늘"), 0).has_value());
}

TEST(LookupLongest, NeverExceedsMaxSurfaceLength) {
  const Lexicon lex = Lexicon::parse(read_file(kDataDir + "/lexicon.tsv"));
  std::mt19937 rng(11);
  const std::u32string pool = U"의사대통령간유지이성자원학교국회";
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string s;
    for (std::size_t i = 0, n = rng() % 12; i < n; ++i) s.push_back(pool[rng() % pool.size()]);
    for (std::size_t off = 0; off < s.size(); ++off) {
      const auto m = lex.lookup_longest(s, off);
      if (m) EXPECT_LE(m->matched_length, lex.max_surface_length());
    }
  }
}

TEST(TradSimp, Examples) {
  const TradSimpTable table = TradSimpTable::parse("頒\t颁\n");
  EXPECT_EQ(to_simplified(table, "頒布"), "颁布");
  EXPECT_EQ(to_simplified(table, "하늘"), "하늘");
  const TradSimpTable empty = TradSimpTable::parse("");
  EXPECT_EQ(to_simplified(empty, "命令"), "命令");
}

TEST(TradSimp, Errors) {
  EXPECT_THROW(TradSimpTable::parse("頒\n"), ParseError);        // column count
  EXPECT_THROW(TradSimpTable::parse("頒布\t颁\n"), ParseError);  // two scalars
  EXPECT_THROW(TradSimpTable::parse("a\tb\n"), ParseError);      // non-Hanja
  try {
    TradSimpTable::parse("頒\t颁\n頒\t布\n");  // one-to-many rejected
    FAIL() << "expected DuplicateKey";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.rule(), "DuplicateKey");
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(TradSimp, LengthPreservedProperty) {
  const TradSimpTable table = TradSimpTable::parse(read_file(kDataDir + "/trad2simp.tsv"));
  std::mt19937 rng(5);
  const std::u32string pool = U"頒布兩國廣範領域確認가나다 abc漢字。";
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string s;
    for (std::size_t i = 0, n = rng() % 20; i < n; ++i) s.push_back(pool[rng() % pool.size()]);
    EXPECT_EQ(to_simplified(table, s).size(), s.size());
  }
}

TEST(TradSimp, BundledTableIdempotent) {
  // Idempotence holds when no mapped-to character is itself a key; the
  // bundled table is built that way, so assert both.
  const TradSimpTable table = TradSimpTable::parse(read_file(kDataDir + "/trad2simp.tsv"));
  for (const auto& [key, value] : table.mapping()) {
    EXPECT_EQ(table.convert(value), value)
        << "value of " << encode_utf8(key) << " is also a key";
  }
  std::mt19937 rng(9);
  std::vector<char32_t> keys;
  for (const auto& [key, value] : table.mapping()) keys.push_back(key);
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string s;
    for (std::size_t i = 0, n = rng() % 15; i < n; ++i) s.push_back(keys[rng() % keys.size()]);
    const std::u32string once = to_simplified(table, s);
    EXPECT_EQ(to_simplified(table, once), once);
  }
}

TEST(BundledLexicon, LoadsAndCoversPaperWords) {
  const Lexicon lex = Lexicon::parse(read_file(kDataDir + "/lexicon.tsv"));
  EXPECT_GE(lex.entry_count(), 250u);
  for (const char* surface : {"명령", "반포", "양국", "광범", "영역", "공동", "이익",
                              "확인", "유지", "이성", "자원", "의사"}) {
    EXPECT_TRUE(lex.lookup_longest(std::string_view(surface), 0).has_value()) << surface;
  }
  // 의사 carries the four senses of the homophone example
  const auto uisa = lex.lookup_longest(std::string_view("의사"), 0);
  ASSERT_TRUE(uisa.has_value());
  EXPECT_EQ(uisa->senses.size(), 4u);
}
