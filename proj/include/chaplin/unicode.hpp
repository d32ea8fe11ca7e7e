#pragma once

// UTF-8 helpers backed by ICU character properties.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace chaplin::unicode {

// One decoded code point; `cp` is negative for an ill-formed sequence.
struct Decoded {
  UChar32 cp;
  std::size_t length;
};

inline Decoded decode_at(std::string_view text, std::size_t offset) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t i = static_cast<int32_t>(offset);
  const auto n = static_cast<int32_t>(text.size());
  UChar32 c = 0;
  U8_NEXT(s, i, n, c);
  return {c, static_cast<std::size_t>(i) - offset};
}

// Byte offset of the first ill-formed sequence, if any.
inline std::optional<std::size_t> first_invalid_byte(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto d = decode_at(text, i);
    if (d.cp < 0) return i;
    i += d.length;
  }
  return std::nullopt;
}

inline void append(std::string& out, UChar32 cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, cp, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

inline bool is_letter(UChar32 cp) { return cp >= 0 && u_isalpha(cp); }

inline bool is_apostrophe(UChar32 cp) { return cp == U'\'' || cp == U'’'; }

inline bool is_upper(UChar32 cp) { return cp >= 0 && (u_isupper(cp) || u_istitle(cp)); }

// Simple (one-to-one) case folding, code point by code point.
inline std::string fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto d = decode_at(text, i);
    if (d.cp < 0) {
      out.append(text.substr(i, d.length));
    } else {
      append(out, u_foldCase(d.cp, U_FOLD_CASE_DEFAULT));
    }
    i += d.length;
  }
  return out;
}

inline std::size_t length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++count) i += decode_at(text, i).length;
  return count;
}

inline bool starts_upper(std::string_view text) {
  return !text.empty() && is_upper(decode_at(text, 0).cp);
}

}  // namespace chaplin::unicode
