#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zhdecomp/decomposer.hpp"

namespace zhdecomp {

struct SegmentedSentence {
  std::vector<std::string> words;  // never empty strings
  bool operator==(const SegmentedSentence&) const = default;
};

using TokenStream = std::vector<std::string>;
using RadicalMap = std::unordered_map<char32_t, char32_t>;

// Splits on runs of `delimiter`; an empty delimiter means ASCII whitespace.
SegmentedSentence parse_segmented(std::string_view line, std::string_view delimiter = {});

// Word boundary encoding for the character-level streams.
//   Prefix:    the marker is glued to the first piece of every word after the first
//   Separator: a standalone token between consecutive words
//   None:      no boundary information
enum class BoundaryStyle { None, Prefix, Separator };

struct BoundaryOptions {
  BoundaryStyle style = BoundaryStyle::Prefix;
  std::string prefix_marker = "▁";  // ▁
  std::string separator_token = "<wb>";
};

// Character units of a word: each Han character on its own, while maximal
// runs of anything else (Latin, digits, punctuation) stay intact.
std::vector<std::string> word_units(std::string_view word);

TokenStream to_char_stream(const SegmentedSentence& s, const BoundaryOptions& boundary);

// One radical per character unit: radical_map entry if present, else the first
// piece of the level-1 decomposition under `cfg`'s region preference, else itself.
TokenStream to_radical_stream(const SegmentedSentence& s, const Decomposer& dec,
                              const RadicalMap* radical_map, const DecompConfig& cfg,
                              const BoundaryOptions& boundary);

// Each word's characters replaced by their level-cfg.level pieces.
TokenStream to_rxd_stream(const SegmentedSentence& s, const Decomposer& dec,
                          const DecompConfig& cfg, const BoundaryOptions& boundary);

enum class Factor { Word, Char, Radical };

// Ordered factor subset such as W+C+R. Factor order is always W, C, R.
struct FactorTuple {
  std::vector<Factor> factors;

  // "w+c", "W+R", "c+r", "w+c+r"...; throws std::invalid_argument.
  static FactorTuple parse(std::string_view spec);
};

// One token per word: factors joined by '|', multi-piece factors joined by '+',
// e.g. 橋樑|橋+樑|木+木.
TokenStream to_factored_stream(const SegmentedSentence& s, const Decomposer& dec,
                               const FactorTuple& mode, const RadicalMap* radical_map,
                               const DecompConfig& cfg);

struct GranularityMode {
  enum class Kind { Word, Char, Radical, Rxd, Factored };
  Kind kind = Kind::Word;
  std::size_t level = 0;  // Rxd only
  FactorTuple tuple;      // Factored only

  // "w", "c", "r", "rxd" / "rxd1".."rxdN", or a factor tuple such as "w+c+r".
  static GranularityMode parse(std::string_view spec, std::size_t default_level = 1);
};

struct TokenizeContext {
  const Decomposer* decomposer = nullptr;  // required for r / rxd / tuples with r
  const RadicalMap* radical_map = nullptr;
  DecompConfig decomp;  // level is taken from the mode for rxd
  BoundaryOptions boundary;
};

TokenStream tokenize(const SegmentedSentence& s, const GranularityMode& mode,
                     const TokenizeContext& ctx);

// Number of word spans encoded in a character-level stream.
std::size_t count_word_spans(std::span<const std::string> tokens, const BoundaryOptions& boundary);

struct VocabReport {
  std::size_t vocab_size = 0;
  std::size_t top_n = 0;
  std::size_t total_tokens = 0;
  double coverage = 0.0;

  // vocab_size=N / top_n=N / coverage=0.XXXX, one per line.
  std::string render() const;
};

VocabReport vocab_stats(std::span<const std::string> tokens, std::size_t top_n = 30000);

// Tab-separated CHAR<TAB>RADICAL lines; '#' comments.
RadicalMap load_radical_map(const std::string& path);

// Maps every line through `fn` on up to `jobs` threads, preserving line order.
std::vector<std::string> map_lines(const std::vector<std::string>& lines,
                                   const std::function<std::string(const std::string&)>& fn,
                                   std::size_t jobs = 1);

}  // namespace zhdecomp
