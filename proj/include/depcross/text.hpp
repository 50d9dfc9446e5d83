#ifndef DEPCROSS_TEXT_HPP
#define DEPCROSS_TEXT_HPP

// Text utilities shared across the library: strict UTF-8 decoding, a
// Unicode punctuation/symbol classifier, number formatting that is stable
// across platforms (shortest round-trip), and the FNV-1a hash used to
// fingerprint configurations.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace depcross {

// Decodes one code point starting at s[i]; advances i past it.
// Returns false on malformed input (overlong forms, surrogates,
// out-of-range values, truncated sequences) without advancing.
inline bool utf8_next(std::string_view s, std::size_t& i, char32_t& cp) {
  if (i >= s.size()) return false;
  const auto byte = [&](std::size_t k) {
    return static_cast<unsigned char>(s[i + k]);
  };
  const auto is_cont = [&](std::size_t k) {
    return i + k < s.size() && (byte(k) & 0xC0) == 0x80;
  };
  const unsigned char b0 = byte(0);
  if (b0 < 0x80) {
    cp = b0;
    i += 1;
    return true;
  }
  if ((b0 & 0xE0) == 0xC0) {
    if (!is_cont(1)) return false;
    const char32_t v = (char32_t(b0 & 0x1F) << 6) | (byte(1) & 0x3F);
    if (v < 0x80) return false;
    cp = v;
    i += 2;
    return true;
  }
  if ((b0 & 0xF0) == 0xE0) {
    if (!is_cont(1) || !is_cont(2)) return false;
    const char32_t v = (char32_t(b0 & 0x0F) << 12) |
                       (char32_t(byte(1) & 0x3F) << 6) | (byte(2) & 0x3F);
    if (v < 0x800) return false;
    if (v >= 0xD800 && v <= 0xDFFF) return false;
    cp = v;
    i += 3;
    return true;
  }
  if ((b0 & 0xF8) == 0xF0) {
    if (!is_cont(1) || !is_cont(2) || !is_cont(3)) return false;
    const char32_t v = (char32_t(b0 & 0x07) << 18) |
                       (char32_t(byte(1) & 0x3F) << 12) |
                       (char32_t(byte(2) & 0x3F) << 6) | (byte(3) & 0x3F);
    if (v < 0x10000 || v > 0x10FFFF) return false;
    cp = v;
    i += 4;
    return true;
  }
  return false;
}

inline bool utf8_valid(std::string_view s) {
  std::size_t i = 0;
  char32_t cp;
  while (i < s.size()) {
    if (!utf8_next(s, i, cp)) return false;
  }
  return true;
}

// Inclusive code point ranges whose members count as punctuation or symbols
// (general categories P and S of the blocks that occur in treebanks).
// Token classification rules from the config cover anything missing here.
inline bool is_punct_or_symbol(char32_t cp) {
  struct Range {
    char32_t lo, hi;
  };
  static constexpr std::array<Range, 42> ranges{{
      {0x0021, 0x002F}, {0x003A, 0x0040}, {0x005B, 0x0060},
      {0x007B, 0x007E}, {0x00A1, 0x00BF}, {0x00D7, 0x00D7},
      {0x00F7, 0x00F7}, {0x037E, 0x037E}, {0x0387, 0x0387},
      {0x055A, 0x055F}, {0x0589, 0x058A}, {0x05BE, 0x05BE},
      {0x05C0, 0x05C0}, {0x05C3, 0x05C3}, {0x05C6, 0x05C6},
      {0x05F3, 0x05F4}, {0x0606, 0x060F}, {0x061B, 0x061B},
      {0x061E, 0x061F}, {0x066A, 0x066D}, {0x06D4, 0x06D4},
      {0x0700, 0x070D}, {0x0964, 0x0965}, {0x0970, 0x0970},
      {0x0DF4, 0x0DF4}, {0x0E4F, 0x0E4F}, {0x0E5A, 0x0E5B},
      {0x0F04, 0x0F12}, {0x104A, 0x104F}, {0x10FB, 0x10FB},
      {0x1360, 0x1368}, {0x17D4, 0x17D6}, {0x17D8, 0x17DB},
      {0x1800, 0x180A}, {0x2010, 0x2027}, {0x2030, 0x205E},
      {0x207A, 0x207E}, {0x208A, 0x208E}, {0x20A0, 0x20BF},
      {0x2190, 0x2BFF}, {0x2E00, 0x2E7F}, {0x3001, 0x303F},
  }};
  static constexpr std::array<Range, 7> high{{
      {0x30FB, 0x30FB}, {0xFE10, 0xFE19}, {0xFE30, 0xFE52},
      {0xFE54, 0xFE66}, {0xFE68, 0xFE6B}, {0xFF01, 0xFF0F},
      {0xFF1A, 0xFF20},
  }};
  static constexpr std::array<Range, 4> top{{
      {0xFF3B, 0xFF40}, {0xFF5B, 0xFF65}, {0xFFE0, 0xFFE6},
      {0xFFE8, 0xFFEE},
  }};
  const auto in = [cp](const auto& table) {
    auto it = std::upper_bound(
        table.begin(), table.end(), cp,
        [](char32_t v, const Range& r) { return v < r.lo; });
    return it != table.begin() && cp <= std::prev(it)->hi;
  };
  return in(ranges) || in(high) || in(top);
}

// True when the form is nonempty, valid UTF-8 and every code point is
// punctuation or a symbol.
inline bool form_is_punctuation(std::string_view form) {
  if (form.empty()) return false;
  std::size_t i = 0;
  char32_t cp;
  while (i < form.size()) {
    if (!utf8_next(form, i, cp) || !is_punct_or_symbol(cp)) return false;
  }
  return true;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return s.substr(b, e - b);
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
  }
  return out;
}

inline bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = char(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = char(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

// Shortest representation that round-trips the exact double, with -0
// canonicalized to 0. Matches Python's repr for finite values modulo the
// trailing ".0" Python appends to integral doubles.
inline std::string format_double(double v) {
  v += 0.0;  // -0.0 + 0.0 == +0.0
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_int(long long v) {
  std::array<char, 24> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// Parses a nonnegative decimal integer occupying the whole field.
inline bool parse_int_field(std::string_view s, int& out) {
  if (s.empty()) return false;
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return false;
  out = value;
  return value >= 0;
}

}  // namespace depcross

#endif  // DEPCROSS_TEXT_HPP
