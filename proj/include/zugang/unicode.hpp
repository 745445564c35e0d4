#ifndef ZUGANG_UNICODE_HPP
#define ZUGANG_UNICODE_HPP

// UTF-8 helpers shared by every module. Case folding and character classes
// come from ICU; everything else works on bytes, which is safe because all
// delimiters the engine cares about are ASCII.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace zugang {

// Full Unicode case folding ("Straße" -> "strasse", "ÄRZTIN" -> "ärztin").
inline std::string fold_case(std::string_view s) {
  bool ascii = true;
  for (unsigned char c : s) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    std::string out(s);
    for (auto& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  u.foldCase();
  std::string out;
  u.toUTF8String(out);
  return out;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Trims and collapses internal whitespace runs to a single space.
inline std::string normalize_space(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

// Code point ending right before byte offset `pos`, or -1 at the start.
inline UChar32 code_point_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return -1;
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_PREV(reinterpret_cast<const uint8_t*>(s.data()), 0, i, c);
  return c;
}

// Code point starting at byte offset `pos`, or -1 at the end.
inline UChar32 code_point_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return -1;
  auto i = static_cast<int32_t>(pos);
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i,
          static_cast<int32_t>(s.size()), c);
  return c;
}

inline bool is_letter(UChar32 c) { return c >= 0 && u_isalpha(c); }
inline bool is_lower_letter(UChar32 c) { return c >= 0 && u_isalpha(c) && u_islower(c); }

inline void append_utf8(std::string& out, UChar32 c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, c, error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

// Case-insensitive containment where the match must not sit inside a word:
// the characters around it are absent or non-letters. Both arguments are
// expected to be folded already.
inline bool contains_word(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  std::size_t pos = haystack.find(needle);
  while (pos != std::string_view::npos) {
    bool left_ok = !is_letter(code_point_before(haystack, pos));
    bool right_ok = !is_letter(code_point_at(haystack, pos + needle.size()));
    if (left_ok && right_ok) return true;
    pos = haystack.find(needle, pos + 1);
  }
  return false;
}

// 64-bit FNV-1a; used for configuration fingerprints.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace zugang

#endif  // ZUGANG_UNICODE_HPP
