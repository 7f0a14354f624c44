#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zhdecomp::utf8 {

class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Decodes one scalar value starting at `pos` and advances `pos` past it.
// Rejects overlong forms, surrogates and values above U+10FFFF.
char32_t decode_next(std::string_view text, std::size_t& pos);

std::u32string decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);
std::string encode(std::u32string_view cps);

bool is_scalar_value(char32_t cp) noexcept;

// CJK unified/compatibility ideographs, radicals, strokes and components.
bool is_han(char32_t cp) noexcept;

// Splits on ASCII whitespace (space, tab, CR, LF, VT, FF); empty fields dropped.
std::vector<std::string> split_ws(std::string_view line);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// ASCII lowercasing; other bytes are copied unchanged.
std::string ascii_lower(std::string_view s);

}  // namespace zhdecomp::utf8
