// Copyright 2026 The Fairlens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRLENS_TEXT_H_
#define FAIRLENS_TEXT_H_

// UTF-8 helpers, simple case folding and the word tokenizer shared by every
// matching routine. Nothing here consults the C locale.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairlens::text {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at `pos`. Returns nullopt on malformed
// input (overlong forms, surrogates, truncated sequences).
inline std::optional<char32_t> DecodeUtf8(std::string_view s, size_t& pos) {
  const auto byte = [&](size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return std::nullopt;
  }
  if (pos + len > s.size()) return std::nullopt;
  for (int i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return std::nullopt;
  }
  pos += len;
  return cp;
}

inline void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool IsValidUtf8(std::string_view s) {
  size_t pos = 0;
  while (pos < s.size()) {
    if (!DecodeUtf8(s, pos)) return false;
  }
  return true;
}

// Simple (1:1) case folding for Basic Latin, Latin-1, Latin Extended-A,
// Latin Extended Additional, Greek, Cyrillic and fullwidth Latin. Code points
// outside these blocks fold to themselves.
inline char32_t FoldCodepoint(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 0x20 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0xB5) return 0x3BC;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130 || c == 0x131 || c == 0x138 || c == 0x149) return c;
    if (c == 0x178) return 0xFF;
    if (c == 0x17F) return 's';
    const bool odd_upper = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    if (odd_upper) return (c % 2 == 1) ? c + 1 : c;
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 0x20;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 37;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 63;
  if (c == 0x3C2) return 0x3C3;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if ((c >= 0x460 && c <= 0x481) || (c >= 0x48A && c <= 0x4BF)) {
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c == 0x1E9E) return 0xDF;
  if ((c >= 0x1E00 && c <= 0x1E95) || (c >= 0x1EA0 && c <= 0x1EFF)) {
    return (c % 2 == 0) ? c + 1 : c;
  }
  if (c >= 0xFF21 && c <= 0xFF3A) return c + 0x20;
  return c;
}

// Inverse of FoldCodepoint over the same blocks; used for capitalization.
inline char32_t UpperCodepoint(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') ? c - 0x20 : c;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 0x20;
  if (c == 0xFF) return 0x178;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130 || c == 0x131 || c == 0x138 || c == 0x149 || c == 0x17F) {
      return c;
    }
    const bool odd_upper = (c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E);
    if (odd_upper) return (c % 2 == 0) ? c - 1 : c;
    return (c % 2 == 1) ? c - 1 : c;
  }
  if (c >= 0x3B1 && c <= 0x3CB && c != 0x3C2) return c - 0x20;
  if (c == 0x3AC) return 0x386;
  if (c >= 0x3AD && c <= 0x3AF) return c - 0x25;
  if (c == 0x3CC) return 0x38C;
  if (c == 0x3CD || c == 0x3CE) return c - 0x3F;
  if (c >= 0x430 && c <= 0x44F) return c - 0x20;
  if (c >= 0x450 && c <= 0x45F) return c - 0x50;
  if ((c >= 0x460 && c <= 0x481) || (c >= 0x48A && c <= 0x4BF)) {
    return (c % 2 == 1) ? c - 1 : c;
  }
  if ((c >= 0x1E00 && c <= 0x1E95) || (c >= 0x1EA0 && c <= 0x1EFF)) {
    return (c % 2 == 1) ? c - 1 : c;
  }
  if (c >= 0xFF41 && c <= 0xFF5A) return c - 0x20;
  return c;
}

inline bool IsUpper(char32_t c) { return FoldCodepoint(c) != c; }

// Word characters are letters, digits and combining marks. Outside ASCII we
// treat everything as a letter except known punctuation, symbol, space and
// emoji blocks.
inline bool IsWordCodepoint(char32_t c) {
  if (c < 0x80) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
  }
  if (c <= 0xBF) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFE30 && c <= 0xFE4F) return false;
  if ((c >= 0xFF00 && c <= 0xFF0F) || (c >= 0xFF1A && c <= 0xFF20) ||
      (c >= 0xFF3B && c <= 0xFF40) || (c >= 0xFF5B && c <= 0xFF65)) {
    return false;
  }
  if (c == 0xFEFF || c == kReplacement) return false;
  if (c >= 0x1F000 && c <= 0x1FAFF) return false;
  return true;
}

// Case-folds a UTF-8 string. Malformed bytes are replaced by U+FFFD.
inline std::string CaseFold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t pos = 0;
  while (pos < s.size()) {
    const unsigned char b = static_cast<unsigned char>(s[pos]);
    if (b < 0x80) {
      out.push_back(static_cast<char>(b >= 'A' && b <= 'Z' ? b + 0x20 : b));
      ++pos;
      continue;
    }
    const auto cp = DecodeUtf8(s, pos);
    if (!cp) {
      ++pos;
      AppendUtf8(out, kReplacement);
      continue;
    }
    AppendUtf8(out, FoldCodepoint(*cp));
  }
  return out;
}

// Upper-cases the first code point of `s` and leaves the rest untouched.
inline std::string CapitalizeFirst(std::string_view s) {
  if (s.empty()) return {};
  size_t pos = 0;
  const auto cp = DecodeUtf8(s, pos);
  if (!cp) return std::string(s);
  std::string out;
  AppendUtf8(out, UpperCodepoint(*cp));
  out.append(s.substr(pos));
  return out;
}

// True when the first word character of `s` is an upper-case letter.
inline bool StartsCapitalized(std::string_view s) {
  size_t pos = 0;
  while (pos < s.size()) {
    const auto cp = DecodeUtf8(s, pos);
    if (!cp) return false;
    if (IsWordCodepoint(*cp)) return IsUpper(*cp);
  }
  return false;
}

inline std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const size_t b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

// A folded word and its byte span in the original text.
struct Token {
  std::string folded;
  size_t begin = 0;
  size_t end = 0;
};

// Splits on non-word code points and case-folds each word. Returns nullopt
// if the input is not valid UTF-8.
inline std::optional<std::vector<Token>> Tokenize(std::string_view s) {
  std::vector<Token> tokens;
  size_t pos = 0;
  Token current;
  bool in_word = false;
  while (pos < s.size()) {
    const size_t start = pos;
    const auto cp = DecodeUtf8(s, pos);
    if (!cp) return std::nullopt;
    if (IsWordCodepoint(*cp)) {
      if (!in_word) {
        current = Token{{}, start, start};
        in_word = true;
      }
      AppendUtf8(current.folded, FoldCodepoint(*cp));
      current.end = pos;
    } else if (in_word) {
      tokens.push_back(std::move(current));
      in_word = false;
    }
  }
  if (in_word) tokens.push_back(std::move(current));
  return tokens;
}

// Folded word list without offsets.
inline std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> words;
  if (auto tokens = Tokenize(s)) {
    for (auto& t : *tokens) words.push_back(std::move(t.folded));
  }
  return words;
}

// Allocation-free tokenizer for hot loops: folded words are written into an
// internal buffer and exposed as views that stay valid until the next call.
class WordScanner {
 public:
  // Returns false on malformed UTF-8.
  bool Scan(std::string_view s) {
    buffer_.clear();
    bounds_.clear();
    size_t pos = 0;
    bool in_word = false;
    size_t word_start = 0;
    while (pos < s.size()) {
      const unsigned char b = static_cast<unsigned char>(s[pos]);
      bool is_word;
      if (b < 0x80) {
        ++pos;
        is_word = (b >= 'a' && b <= 'z') || (b >= '0' && b <= '9') ||
                  (b >= 'A' && b <= 'Z');
        if (is_word) {
          if (!in_word) word_start = buffer_.size();
          buffer_.push_back(
              static_cast<char>(b >= 'A' && b <= 'Z' ? b + 0x20 : b));
        }
      } else {
        const auto cp = DecodeUtf8(s, pos);
        if (!cp) return false;
        is_word = IsWordCodepoint(*cp);
        if (is_word) {
          if (!in_word) word_start = buffer_.size();
          AppendUtf8(buffer_, FoldCodepoint(*cp));
        }
      }
      if (is_word) {
        in_word = true;
      } else if (in_word) {
        bounds_.emplace_back(word_start, buffer_.size());
        in_word = false;
      }
    }
    if (in_word) bounds_.emplace_back(word_start, buffer_.size());
    return true;
  }

  size_t size() const { return bounds_.size(); }

  std::string_view operator[](size_t i) const {
    return std::string_view(buffer_).substr(
        bounds_[i].first, bounds_[i].second - bounds_[i].first);
  }

 private:
  std::string buffer_;
  std::vector<std::pair<size_t, size_t>> bounds_;
};

}  // namespace fairlens::text

#endif  // FAIRLENS_TEXT_H_
