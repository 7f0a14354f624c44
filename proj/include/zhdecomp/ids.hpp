#pragma once

// In-memory model of IDS (Ideographic Description Sequence) dictionaries:
// expression trees, per-character variants with region tags, and a
// tab-separated file format that parses and renders back byte-exactly.
//
// File grammar (UTF-8, LF):
//   ;; comment            # comment            (blank lines ignored)
//   U+XXXX <TAB> CHAR <TAB> VARIANT (<TAB> VARIANT)*
//   VARIANT := EXPR | EXPR '[' TAGS ']'       TAGS := [A-Z]+

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zhdecomp {

struct CodePoint {
  char32_t value = 0;

  // "U+" followed by at least four uppercase hex digits.
  std::string render() const;
  // Accepts exactly "U+" + 4..6 uppercase hex digits naming a scalar value.
  static std::optional<CodePoint> parse(std::string_view text);

  auto operator<=>(const CodePoint&) const = default;
};

inline constexpr char32_t kFirstIdc = 0x2FF0;
inline constexpr char32_t kLastIdc = 0x2FFB;

// True for the twelve classic description characters U+2FF0..U+2FFB.
constexpr bool is_ids_operator(char32_t cp) noexcept {
  return cp >= kFirstIdc && cp <= kLastIdc;
}

// Later-added description characters (U+2FFC..U+2FFF, U+31EF); rejected.
constexpr bool is_unsupported_operator(char32_t cp) noexcept {
  return (cp >= 0x2FFC && cp <= 0x2FFF) || cp == 0x31EF;
}

// ⿲ and ⿳ take three components; the other ten take two.
constexpr int operator_arity(char32_t op) noexcept {
  return (op == 0x2FF2 || op == 0x2FF3) ? 3 : 2;
}

class StructOperator {
 public:
  static std::optional<StructOperator> from(char32_t cp) noexcept {
    if (!is_ids_operator(cp)) return std::nullopt;
    return StructOperator(cp);
  }
  char32_t symbol() const noexcept { return symbol_; }
  int arity() const noexcept { return operator_arity(symbol_); }
  auto operator<=>(const StructOperator&) const = default;

 private:
  explicit constexpr StructOperator(char32_t cp) : symbol_(cp) {}
  char32_t symbol_;
};

class IdsTree {
 public:
  static IdsTree leaf(char32_t component);
  // Throws std::invalid_argument when the child count does not match the arity.
  static IdsTree node(StructOperator op, std::vector<IdsTree> children);

  bool is_leaf() const noexcept { return children_.empty(); }
  // Leaf component, or the operator symbol for a node.
  char32_t symbol() const noexcept { return symbol_; }
  const std::vector<IdsTree>& children() const noexcept { return children_; }

  // Components in left-to-right order, operators omitted.
  std::u32string leaves() const;
  // Prefix order including operators; encoding this gives render_ids_expression.
  std::u32string prefix() const;
  std::size_t depth() const;

  bool operator==(const IdsTree&) const = default;

 private:
  IdsTree(char32_t symbol, std::vector<IdsTree> children)
      : symbol_(symbol), children_(std::move(children)) {}

  char32_t symbol_;
  std::vector<IdsTree> children_;
};

// Region letter. G, H, T, K, V and J have documented meaning; any other
// uppercase letter is carried through unchanged.
struct RegionTag {
  char code = 'G';

  static std::optional<RegionTag> from(char c) noexcept {
    if (c < 'A' || c > 'Z') return std::nullopt;
    return RegionTag{c};
  }
  bool is_documented() const noexcept;
  // "mainland China", "Hong Kong", ...; empty for undocumented letters.
  std::string_view description() const noexcept;

  auto operator<=>(const RegionTag&) const = default;
};

struct IdsVariant {
  IdsTree tree;
  std::vector<RegionTag> tags;  // file order

  bool has_tag(RegionTag tag) const noexcept;
  bool operator==(const IdsVariant&) const = default;
};

struct IdsEntry {
  CodePoint codepoint;
  char32_t character = 0;
  std::vector<IdsVariant> variants;

  bool operator==(const IdsEntry&) const = default;
};

class IdsError : public std::runtime_error {
 public:
  enum class Kind {
    TruncatedExpression,  // an operator is missing components
    TrailingGarbage,      // text remains after a complete tree
    UnsupportedOperator,  // U+2FFC.. style description characters
    NestingTooDeep,       // more than kMaxIdsDepth nested operators
    InvalidUtf8,
    MalformedLine,        // file-level: fields, codepoint, tags, or any of the above
  };

  IdsError(Kind kind, std::string message, std::size_t offset, std::size_t line = 0);

  Kind kind() const noexcept { return kind_; }
  // Byte offset within the expression (or within the line for MalformedLine).
  std::size_t offset() const noexcept { return offset_; }
  // 1-based file line; 0 when not parsing a file.
  std::size_t line() const noexcept { return line_; }
  // Kind of the expression error that caused a MalformedLine, if any.
  std::optional<Kind> cause() const noexcept { return cause_; }

  IdsError with_line(std::size_t line, std::size_t line_offset) const;

 private:
  Kind kind_;
  std::size_t offset_;
  std::size_t line_;
  std::optional<Kind> cause_;
};

std::string_view to_string(IdsError::Kind kind) noexcept;

inline constexpr std::size_t kMaxIdsDepth = 64;

IdsTree parse_ids_expression(std::string_view text);
std::string render_ids_expression(const IdsTree& tree);

enum class MalformedPolicy { Abort, Skip };

struct SkippedLine {
  std::size_t line;
  std::string reason;
};

class IdsDictionary {
 public:
  IdsDictionary() = default;

  const IdsEntry* find(char32_t ch) const noexcept;
  bool contains(char32_t ch) const noexcept { return find(ch) != nullptr; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Data lines read, including duplicates and skipped malformed lines.
  std::size_t source_count() const noexcept { return source_count_; }
  std::size_t duplicate_count() const noexcept { return duplicate_count_; }
  const std::vector<SkippedLine>& skipped() const noexcept { return skipped_; }

  // Entries ordered by codepoint.
  std::vector<const IdsEntry*> sorted_entries() const;

  // Entry identity only; diagnostics counters are not compared.
  bool operator==(const IdsDictionary& other) const { return entries_ == other.entries_; }

  // Builds a dictionary from entries directly (synthetic dictionaries, tests).
  // Later entries replace earlier ones with the same character.
  static IdsDictionary from_entries(std::vector<IdsEntry> entries);

 private:
  friend IdsDictionary parse_ids_file(std::istream& in, MalformedPolicy policy);

  void insert(IdsEntry entry);

  std::unordered_map<char32_t, IdsEntry> entries_;
  std::size_t source_count_ = 0;
  std::size_t duplicate_count_ = 0;
  std::vector<SkippedLine> skipped_;
};

// Parses a single data line (no comment handling). `line_no` is used for errors.
IdsEntry parse_ids_line(std::string_view line, std::size_t line_no = 0);
std::string render_ids_line(const IdsEntry& entry);

IdsDictionary parse_ids_file(std::istream& in, MalformedPolicy policy = MalformedPolicy::Abort);
IdsDictionary parse_ids_text(std::string_view text, MalformedPolicy policy = MalformedPolicy::Abort);
IdsDictionary load_ids_file(const std::string& path, MalformedPolicy policy = MalformedPolicy::Abort);

// One data line per entry, codepoint order, LF-terminated.
std::string render_ids_file(const IdsDictionary& dict);

}  // namespace zhdecomp
