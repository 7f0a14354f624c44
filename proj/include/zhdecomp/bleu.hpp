#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zhdecomp {

inline constexpr int kMaxBleuOrder = 4;
inline constexpr std::size_t kMaxReferences = 4;

struct BleuConfig {
  int max_n = kMaxBleuOrder;    // 1..4
  bool case_insensitive = true;  // ASCII lowercasing of every side
};

class BleuError : public std::runtime_error {
 public:
  enum class Kind { EmptyHypothesisSet, ReferenceCountMismatch, BadConfig };
  BleuError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct BleuScore {
  std::vector<double> per_n;       // cumulative BLEU-1..BLEU-max_n
  std::vector<double> precisions;  // clipped precision per order
  double brevity_penalty = 0.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;  // sum of closest reference lengths
  std::vector<std::size_t> matches;  // clipped n-gram matches per order
  std::vector<std::size_t> totals;   // hypothesis n-grams per order

  // "BLEU-1=0.XXXX ... BLEU-4=0.XXXX BP=0.XXXX"
  std::string render() const;
};

// Sufficient statistics; sentences can be added in any order or merged.
class BleuStats {
 public:
  explicit BleuStats(int max_n = kMaxBleuOrder);

  void add(const std::vector<std::string>& hypothesis,
           std::span<const std::vector<std::string>> references);
  void merge(const BleuStats& other);
  BleuScore score() const;

 private:
  int max_n_;
  std::array<std::size_t, kMaxBleuOrder> matches_{};
  std::array<std::size_t, kMaxBleuOrder> totals_{};
  std::size_t hyp_len_ = 0;
  std::size_t ref_len_ = 0;
};

// Corpus BLEU over whitespace-tokenized lines. reference_sets[i] holds the
// 1..4 references of hypotheses[i]. No smoothing: a zero precision at any
// order <= n zeroes BLEU-n. Closest-length ties go to the shorter reference.
BleuScore bleu(std::span<const std::string> hypotheses,
               std::span<const std::vector<std::string>> reference_sets,
               const BleuConfig& cfg = {});

}  // namespace zhdecomp
