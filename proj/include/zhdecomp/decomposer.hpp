#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zhdecomp/ids.hpp"

namespace zhdecomp {

// Pieces are single characters, so a UTF-32 string is the natural sequence type.
using PieceSequence = std::u32string;

struct DecompConfig {
  std::size_t level = 1;
  std::vector<RegionTag> region_preference{RegionTag{'G'}};
  bool emit_operators = false;

  // Throws std::invalid_argument when region_preference repeats a tag.
  void validate() const;

  // "GT" style preference string; throws std::invalid_argument on bad letters.
  static std::vector<RegionTag> parse_preference(std::string_view letters);
};

// First variant carrying the highest-priority preferred tag that occurs
// anywhere in the entry; the first variant when no preferred tag occurs.
const IdsTree& select_variant(const IdsEntry& entry, std::span<const RegionTag> preference);

// Level-L decomposition over a fixed dictionary.
//
// Level 0 is the identity. Level L rewrites every piece of the level L-1
// sequence that has a (non self-atomic) entry into the pieces of its selected
// variant. Characters without entries are atomic. Results for acyclic
// characters are memoized per (character, level, preference, operators) and
// levels past a character's fixed point reuse the fixed-point result, so very
// large L costs nothing extra. On a dictionary cycle the expansion stops at the
// first revisited character and the warning counter is bumped.
//
// Safe to share between threads; the memo table is guarded internally.
class Decomposer {
 public:
  explicit Decomposer(const IdsDictionary& dict);
  Decomposer(const Decomposer&) = delete;
  Decomposer& operator=(const Decomposer&) = delete;

  const IdsDictionary& dictionary() const noexcept { return dict_; }

  PieceSequence decompose_char(char32_t ch, const DecompConfig& cfg) const;
  PieceSequence decompose_sequence(std::u32string_view chars, const DecompConfig& cfg) const;

  // One rewrite step: pieces of the selected variant, or nullopt when atomic.
  std::optional<PieceSequence> expand_once(char32_t ch, const DecompConfig& cfg) const;

  // Smallest L with decompose(ch, L) == decompose(ch, L + 1), or nullopt when
  // the character reaches a dictionary cycle.
  std::optional<std::size_t> fixed_point_level(char32_t ch, const DecompConfig& cfg) const;

  std::size_t cycle_warnings() const noexcept { return cycle_warnings_.load(); }

 private:
  struct Reach {
    bool cyclic = false;
    std::size_t height = 0;
  };
  struct ConfigState {
    std::unordered_map<char32_t, Reach> reach;
    std::unordered_map<std::uint64_t, PieceSequence> memo;
  };

  ConfigState& state_for(const DecompConfig& cfg) const;
  Reach reach(char32_t ch, const DecompConfig& cfg, ConfigState& st) const;
  PieceSequence expand(char32_t ch, std::size_t level, const DecompConfig& cfg, ConfigState& st,
                       std::vector<char32_t>& ancestors) const;

  const IdsDictionary& dict_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::string, std::unique_ptr<ConfigState>> states_;
  mutable std::atomic<std::size_t> cycle_warnings_{0};
};

PieceSequence decompose_char(const IdsDictionary& dict, char32_t ch, const DecompConfig& cfg);
PieceSequence decompose_sequence(const IdsDictionary& dict, std::u32string_view chars,
                                 const DecompConfig& cfg);

}  // namespace zhdecomp
