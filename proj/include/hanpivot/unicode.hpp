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

#ifndef HANPIVOT_UNICODE_HPP_
#define HANPIVOT_UNICODE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

namespace hanpivot {

/// Total classification of Unicode scalar values. Every scalar maps to
/// exactly one class; anything not covered by the ranges below is `other`.
enum class CharClass {
  hangul_syllable,  // U+AC00..U+D7A3 (precomposed syllables)
  hanja_ideograph,  // CJK Unified, Extension A, Compatibility Ideographs
  digit,
  latin,
  punctuation,
  whitespace,
  other,
};

constexpr bool is_hangul_syllable(char32_t c) {
  return c >= 0xAC00 && c <= 0xD7A3;
}

constexpr bool is_hanja_ideograph(char32_t c) {
  return (c >= 0x4E00 && c <= 0x9FFF) ||  // CJK Unified Ideographs
         (c >= 0x3400 && c <= 0x4DBF) ||  // Extension A
         (c >= 0xF900 && c <= 0xFAFF);    // Compatibility Ideographs
}

constexpr bool is_whitespace(char32_t c) {
  return c == U' ' || (c >= 0x09 && c <= 0x0D) || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

constexpr CharClass classify_char(char32_t c) {
  if (is_hangul_syllable(c)) return CharClass::hangul_syllable;
  if (is_hanja_ideograph(c)) return CharClass::hanja_ideograph;
  if (is_whitespace(c)) return CharClass::whitespace;
  if ((c >= U'0' && c <= U'9') || (c >= 0xFF10 && c <= 0xFF19))
    return CharClass::digit;
  if ((c >= U'A' && c <= U'Z') || (c >= U'a' && c <= U'z') ||
      (c >= 0xC0 && c <= 0xD6) || (c >= 0xD8 && c <= 0xF6) ||
      (c >= 0xF8 && c <= 0xFF) || (c >= 0xFF21 && c <= 0xFF3A) ||
      (c >= 0xFF41 && c <= 0xFF5A))
    return CharClass::latin;
  if ((c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
      (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E) ||
      (c >= 0x2010 && c <= 0x2027) || (c >= 0x3001 && c <= 0x303F) ||
      (c >= 0xFE30 && c <= 0xFE4F) || (c >= 0xFF01 && c <= 0xFF0F) ||
      (c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40) ||
      (c >= 0xFF5B && c <= 0xFF65))
    return CharClass::punctuation;
  return CharClass::other;
}

/// Decodes UTF-8 to a scalar sequence. Ill-formed byte sequences become
/// U+FFFD, one replacement per bogus byte, so the function is total.
inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t c = 0;
    if (b0 < 0x80) {
      len = 1;
      c = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      c = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      c = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      c = b0 & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      c = (c << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range values.
    if (ok) {
      if ((len == 2 && c < 0x80) || (len == 3 && c < 0x800) ||
          (len == 4 && c < 0x10000) || c > 0x10FFFF ||
          (c >= 0xD800 && c <= 0xDFFF))
        ok = false;
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(c);
    i += len;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

inline std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size() * 3);
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

inline std::string encode_utf8(char32_t c) {
  std::string out;
  append_utf8(out, c);
  return out;
}

namespace detail {
inline std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(text);  // cannot happen with a sane ICU
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString composed = norm->normalize(in, status);
  if (U_FAILURE(status)) return std::string(text);
  std::string out;
  composed.toUTF8String(out);
  return out;
}
}  // namespace detail

/// Canonical sentence form: NFC, outer whitespace stripped, inner
/// whitespace runs collapsed to a single ASCII space. Idempotent.
inline std::string normalize(std::string_view text) {
  const std::u32string scalars = decode_utf8(detail::nfc(text));
  std::u32string out;
  out.reserve(scalars.size());
  bool pending_space = false;
  for (char32_t c : scalars) {
    if (classify_char(c) == CharClass::whitespace) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return encode_utf8(out);
}

/// Character-level segmentation: one token per non-whitespace scalar,
/// in order. Joining the tokens reproduces the input minus whitespace.
inline std::vector<std::string> segment_characters(std::string_view text) {
  std::vector<std::string> tokens;
  for (char32_t c : decode_utf8(text)) {
    if (classify_char(c) == CharClass::whitespace) continue;
    tokens.push_back(encode_utf8(c));
  }
  return tokens;
}

/// Token count shortcut used for length filtering and bucketing.
inline std::size_t character_length(std::string_view text) {
  std::size_t n = 0;
  for (char32_t c : decode_utf8(text))
    if (classify_char(c) != CharClass::whitespace) ++n;
  return n;
}

}  // namespace hanpivot

#endif  // HANPIVOT_UNICODE_HPP_
