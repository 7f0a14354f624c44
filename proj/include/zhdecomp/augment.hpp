#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zhdecomp/corpus.hpp"
#include "zhdecomp/decomposer.hpp"
#include "zhdecomp/mwe.hpp"

namespace zhdecomp {

class LengthMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChineseSide { Source, Target };

struct AugmentPlan {
  std::vector<BiMwePair> pairs;
  std::size_t replication = 1;
  // Applied to the Chinese side of appended pairs. A level of 0 is the same as unset.
  std::optional<DecompConfig> decomp;
  // With decomposition on, also append the plain-character pair before the decomposed one.
  bool keep_plain = true;
  ChineseSide chinese_side = ChineseSide::Source;
  BoundaryOptions boundary;

  bool decomposes() const noexcept { return decomp && decomp->level > 0; }
  // Appended lines per side.
  std::size_t appended_lines() const noexcept {
    return replication * pairs.size() * ((decomposes() && keep_plain) ? 2 : 1);
  }
};

struct ParallelCorpus {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

// Original lines unchanged, then each pair `replication` times. `dec` is
// required only when the plan decomposes.
ParallelCorpus augment_corpus(std::span<const std::string> source,
                              std::span<const std::string> target, const AugmentPlan& plan,
                              const Decomposer* dec = nullptr);

}  // namespace zhdecomp
