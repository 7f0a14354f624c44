#include "zhdecomp/utf8.hpp"

namespace zhdecomp::utf8 {

bool is_scalar_value(char32_t cp) noexcept {
  return cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
}

char32_t decode_next(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  if (pos >= text.size()) throw DecodeError("unexpected end of UTF-8 input", start);

  const unsigned char lead = byte(pos);
  std::size_t len;
  char32_t cp;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    throw DecodeError("invalid UTF-8 lead byte", start);
  }
  if (start + len > text.size()) throw DecodeError("truncated UTF-8 sequence", start);
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(start + i);
    if ((b & 0xC0) != 0x80) throw DecodeError("invalid UTF-8 continuation byte", start + i);
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len]) throw DecodeError("overlong UTF-8 sequence", start);
  if (!is_scalar_value(cp)) throw DecodeError("UTF-8 sequence is not a scalar value", start);
  pos = start + len;
  return cp;
}

std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(decode_next(text, pos));
  return out;
}

void append(std::string& out, char32_t cp) {
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

std::string encode(char32_t cp) {
  std::string s;
  append(s, cp);
  return s;
}

std::string encode(std::u32string_view cps) {
  std::string s;
  s.reserve(cps.size() * 3);
  for (char32_t cp : cps) append(s, cp);
  return s;
}

bool is_han(char32_t cp) noexcept {
  return (cp >= 0x2E80 && cp <= 0x2FDF)      // CJK radicals supplement, Kangxi radicals
         || (cp >= 0x31C0 && cp <= 0x31EF)   // CJK strokes
         || cp == 0x3007                     // 〇
         || (cp >= 0x3400 && cp <= 0x4DBF)   // Ext A
         || (cp >= 0x4E00 && cp <= 0x9FFF)   // URO
         || (cp >= 0xF900 && cp <= 0xFAFF)   // compatibility
         || (cp >= 0x20000 && cp <= 0x323AF)  // Ext B..H
         || (cp >= 0x2F800 && cp <= 0x2FA1F);
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  };
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace zhdecomp::utf8
