#include "zhdecomp/ids.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "zhdecomp/utf8.hpp"

namespace zhdecomp {

// ---------------------------------------------------------------------------
// CodePoint

std::string CodePoint::render() const {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string digits;
  char32_t v = value;
  do {
    digits.push_back(kHex[v & 0xF]);
    v >>= 4;
  } while (v != 0);
  while (digits.size() < 4) digits.push_back('0');
  std::reverse(digits.begin(), digits.end());
  return "U+" + digits;
}

std::optional<CodePoint> CodePoint::parse(std::string_view text) {
  if (text.size() < 6 || text.size() > 8 || text[0] != 'U' || text[1] != '+') return std::nullopt;
  char32_t v = 0;
  for (char c : text.substr(2)) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      return std::nullopt;
    }
    v = (v << 4) | static_cast<char32_t>(d);
  }
  if (!utf8::is_scalar_value(v)) return std::nullopt;
  return CodePoint{v};
}

// ---------------------------------------------------------------------------
// IdsTree

IdsTree IdsTree::leaf(char32_t component) {
  if (is_ids_operator(component) || is_unsupported_operator(component)) {
    throw std::invalid_argument("leaf component must not be a structural operator");
  }
  return IdsTree(component, {});
}

IdsTree IdsTree::node(StructOperator op, std::vector<IdsTree> children) {
  if (static_cast<int>(children.size()) != op.arity()) {
    throw std::invalid_argument("child count does not match operator arity");
  }
  return IdsTree(op.symbol(), std::move(children));
}

std::u32string IdsTree::leaves() const {
  if (is_leaf()) return std::u32string(1, symbol_);
  std::u32string out;
  for (const auto& c : children_) out += c.leaves();
  return out;
}

std::u32string IdsTree::prefix() const {
  std::u32string out(1, symbol_);
  for (const auto& c : children_) out += c.prefix();
  return out;
}

std::size_t IdsTree::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return is_leaf() ? 0 : d + 1;
}

// ---------------------------------------------------------------------------
// RegionTag / IdsVariant

bool RegionTag::is_documented() const noexcept { return !description().empty(); }

std::string_view RegionTag::description() const noexcept {
  switch (code) {
    case 'G': return "mainland China";
    case 'H': return "Hong Kong";
    case 'T': return "Taiwan";
    case 'K': return "Korea";
    case 'V': return "Vietnam";
    case 'J': return "Japan";
    default: return {};
  }
}

bool IdsVariant::has_tag(RegionTag tag) const noexcept {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

// ---------------------------------------------------------------------------
// Errors

std::string_view to_string(IdsError::Kind kind) noexcept {
  switch (kind) {
    case IdsError::Kind::TruncatedExpression: return "TruncatedExpression";
    case IdsError::Kind::TrailingGarbage: return "TrailingGarbage";
    case IdsError::Kind::UnsupportedOperator: return "UnsupportedOperator";
    case IdsError::Kind::NestingTooDeep: return "NestingTooDeep";
    case IdsError::Kind::InvalidUtf8: return "InvalidUtf8";
    case IdsError::Kind::MalformedLine: return "MalformedLine";
  }
  return "Unknown";
}

IdsError::IdsError(Kind kind, std::string message, std::size_t offset, std::size_t line)
    : std::runtime_error(std::string(to_string(kind)) + " at byte " + std::to_string(offset) +
                         (line ? " (line " + std::to_string(line) + ")" : std::string()) + ": " +
                         message),
      kind_(kind),
      offset_(offset),
      line_(line) {}

IdsError IdsError::with_line(std::size_t line, std::size_t line_offset) const {
  std::string msg = what();
  IdsError e(Kind::MalformedLine, msg, line_offset + offset_, line);
  e.cause_ = kind_ == Kind::MalformedLine ? cause_ : std::optional<Kind>(kind_);
  return e;
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

struct PendingNode {
  StructOperator op;
  std::vector<IdsTree> children;
};

}  // namespace

IdsTree parse_ids_expression(std::string_view text) {
  using Kind = IdsError::Kind;
  std::vector<PendingNode> stack;
  std::optional<IdsTree> result;
  std::size_t pos = 0;

  while (pos < text.size()) {
    if (result) throw IdsError(Kind::TrailingGarbage, "text after a complete expression", pos);
    const std::size_t start = pos;
    char32_t cp;
    try {
      cp = utf8::decode_next(text, pos);
    } catch (const utf8::DecodeError& e) {
      throw IdsError(Kind::InvalidUtf8, e.what(), e.offset());
    }
    if (is_unsupported_operator(cp)) {
      throw IdsError(Kind::UnsupportedOperator, "description character " + CodePoint{cp}.render(),
                     start);
    }
    if (auto op = StructOperator::from(cp)) {
      if (stack.size() >= kMaxIdsDepth) {
        throw IdsError(Kind::NestingTooDeep, "operator nesting exceeds limit", start);
      }
      stack.push_back({*op, {}});
      continue;
    }
    IdsTree done = IdsTree::leaf(cp);
    while (true) {
      if (stack.empty()) {
        result = std::move(done);
        break;
      }
      auto& top = stack.back();
      top.children.push_back(std::move(done));
      if (static_cast<int>(top.children.size()) < top.op.arity()) break;
      done = IdsTree::node(top.op, std::move(top.children));
      stack.pop_back();
    }
  }
  if (!result) {
    throw IdsError(Kind::TruncatedExpression,
                   text.empty() ? "empty expression" : "operator lacks components", text.size());
  }
  return std::move(*result);
}

std::string render_ids_expression(const IdsTree& tree) { return utf8::encode(tree.prefix()); }

// ---------------------------------------------------------------------------
// Lines and files

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

[[noreturn]] void malformed(std::string message, std::size_t line_no, std::size_t offset) {
  throw IdsError(IdsError::Kind::MalformedLine, std::move(message), offset, line_no);
}

IdsVariant parse_variant(std::string_view field, std::size_t line_no, std::size_t field_offset) {
  std::vector<RegionTag> tags_out;
  std::string_view expr = field;
  if (!field.empty() && field.back() == ']') {
    const auto open = field.rfind('[');
    if (open == std::string_view::npos) malformed("unbalanced ']' in variant", line_no, field_offset);
    const auto tags = field.substr(open + 1, field.size() - open - 2);
    if (tags.empty()) malformed("empty region tag list", line_no, field_offset + open);
    for (std::size_t i = 0; i < tags.size(); ++i) {
      auto tag = RegionTag::from(tags[i]);
      if (!tag) malformed("region tags must be uppercase letters", line_no, field_offset + open + 1 + i);
      tags_out.push_back(*tag);
    }
    expr = field.substr(0, open);
  }
  try {
    return IdsVariant{parse_ids_expression(expr), std::move(tags_out)};
  } catch (const IdsError& e) {
    throw e.with_line(line_no, field_offset);
  }
}

bool is_skippable(std::string_view line) {
  if (line.starts_with(";;") || line.starts_with("#")) return true;
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

IdsEntry parse_ids_line(std::string_view line, std::size_t line_no) {
  const auto fields = split_tabs(line);
  if (fields.size() < 3) {
    malformed("expected codepoint, character and at least one variant", line_no, 0);
  }
  auto cp = CodePoint::parse(fields[0]);
  if (!cp) malformed("bad codepoint '" + std::string(fields[0]) + "'", line_no, 0);

  const std::size_t char_offset = fields[0].size() + 1;
  std::u32string ch;
  try {
    ch = utf8::decode(fields[1]);
  } catch (const utf8::DecodeError& e) {
    malformed(e.what(), line_no, char_offset + e.offset());
  }
  if (ch.size() != 1) malformed("character field must hold exactly one character", line_no, char_offset);
  if (ch[0] != cp->value) malformed("codepoint does not match character", line_no, 0);
  if (is_ids_operator(ch[0]) || is_unsupported_operator(ch[0])) {
    malformed("character field is a structural operator", line_no, char_offset);
  }

  IdsEntry entry{*cp, ch[0], {}};
  std::size_t offset = char_offset + fields[1].size() + 1;
  for (std::size_t i = 2; i < fields.size(); ++i) {
    entry.variants.push_back(parse_variant(fields[i], line_no, offset));
    offset += fields[i].size() + 1;
  }
  return entry;
}

std::string render_ids_line(const IdsEntry& entry) {
  std::string out = entry.codepoint.render();
  out += '\t';
  utf8::append(out, entry.character);
  for (const auto& v : entry.variants) {
    out += '\t';
    out += render_ids_expression(v.tree);
    if (!v.tags.empty()) {
      out += '[';
      for (auto t : v.tags) out += t.code;
      out += ']';
    }
  }
  return out;
}

const IdsEntry* IdsDictionary::find(char32_t ch) const noexcept {
  auto it = entries_.find(ch);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const IdsEntry*> IdsDictionary::sorted_entries() const {
  std::vector<const IdsEntry*> out;
  out.reserve(entries_.size());
  for (const auto& [ch, e] : entries_) out.push_back(&e);
  std::sort(out.begin(), out.end(),
            [](const IdsEntry* a, const IdsEntry* b) { return a->character < b->character; });
  return out;
}

void IdsDictionary::insert(IdsEntry entry) {
  const char32_t ch = entry.character;
  auto [it, inserted] = entries_.insert_or_assign(ch, std::move(entry));
  if (!inserted) ++duplicate_count_;
}

IdsDictionary IdsDictionary::from_entries(std::vector<IdsEntry> entries) {
  IdsDictionary dict;
  for (auto& e : entries) {
    if (e.variants.empty()) throw std::invalid_argument("IDS entry without variants");
    ++dict.source_count_;
    dict.insert(std::move(e));
  }
  return dict;
}

IdsDictionary parse_ids_file(std::istream& in, MalformedPolicy policy) {
  IdsDictionary dict;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;
    ++dict.source_count_;
    try {
      dict.insert(parse_ids_line(line, line_no));
    } catch (const IdsError& e) {
      if (policy == MalformedPolicy::Abort) throw;
      dict.skipped_.push_back({line_no, e.what()});
    }
  }
  return dict;
}

IdsDictionary parse_ids_text(std::string_view text, MalformedPolicy policy) {
  std::istringstream in{std::string(text)};
  return parse_ids_file(in, policy);
}

IdsDictionary load_ids_file(const std::string& path, MalformedPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open IDS file: " + path);
  return parse_ids_file(in, policy);
}

std::string render_ids_file(const IdsDictionary& dict) {
  std::string out;
  for (const IdsEntry* e : dict.sorted_entries()) {
    out += render_ids_line(*e);
    out += '\n';
  }
  return out;
}

}  // namespace zhdecomp
