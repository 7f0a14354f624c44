#pragma once

// Monolingual MWE extraction from POS-tagged text, bilingual pairing by
// sentence-level Dice co-occurrence, and threshold pruning.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zhdecomp {

class MweError : public std::runtime_error {
 public:
  enum class Kind { MalformedToken, MalformedPattern, MalformedRecord, LengthMismatch };

  MweError(Kind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

struct TaggedToken {
  std::string surface;
  std::string pos;
  std::optional<std::string> lemma;

  const std::string& lemma_or_surface() const { return lemma ? *lemma : surface; }
  bool operator==(const TaggedToken&) const = default;
};

using TaggedSentence = std::vector<TaggedToken>;

// Tokens `surface|POS` or `surface|POS|lemma`, whitespace separated.
// Column numbers in errors are 1-based token indices.
TaggedSentence parse_tagged_line(std::string_view line, std::size_t line_no = 0);
std::vector<TaggedSentence> parse_tagged_corpus(std::istream& in);

// Exact POS tag, or a prefix when written with a trailing '*' (NN* matches NNS).
struct TagMatcher {
  std::string tag;
  bool prefix = false;

  bool matches(std::string_view pos) const noexcept;
  bool operator==(const TagMatcher&) const = default;
};

struct MwePattern {
  std::string name;
  std::vector<TagMatcher> tags;  // at least two

  // "name: TAG+TAG+..." or just "TAG+TAG+..."
  static MwePattern parse(std::string_view line, std::size_t line_no = 0);
  bool matches_at(const TaggedSentence& s, std::size_t start) const noexcept;
};

// One pattern per line; '#' comments and blank lines skipped.
std::vector<MwePattern> parse_patterns(std::istream& in);

enum class TokenField { Surface, Lemma };

struct MweCandidate {
  std::vector<std::string> words;
  std::size_t frequency = 0;
  std::string pattern_name;

  std::string surface() const;  // words joined by single spaces
  bool operator==(const MweCandidate&) const = default;
};

// Collects every window that matches some pattern. A window matching two
// patterns yields two candidates. Sorted by frequency desc, surface asc,
// pattern name asc; candidates below min_freq are dropped.
std::vector<MweCandidate> extract_mwes(std::span<const TaggedSentence> corpus,
                                       std::span<const MwePattern> patterns,
                                       std::size_t min_freq = 1,
                                       TokenField field = TokenField::Surface);

std::vector<std::string> sentence_words(const TaggedSentence& s, TokenField field);

struct BiMwePair {
  MweCandidate source;
  MweCandidate target;
  double score = 0.0;
  // Sentence-pair counts behind the score; zero when read back from TSV.
  std::size_t cooccurrences = 0;
  std::size_t source_occurrences = 0;
  std::size_t target_occurrences = 0;
};

// 2*co / (occ_s + occ_t); 0 when both are zero.
double dice(std::size_t co, std::size_t occ_s, std::size_t occ_t) noexcept;

// Scores every (source, target) candidate pair that co-occurs in at least one
// sentence pair. Occurrence means contiguous presence of the word sequence in a
// sentence, counted once per sentence. Candidates repeating an earlier surface
// are ignored. Output is sorted by score desc, source asc, target asc.
// Throws MweError(LengthMismatch) when the corpus sides differ in length.
std::vector<BiMwePair> pair_and_score(std::span<const MweCandidate> source_candidates,
                                      std::span<const MweCandidate> target_candidates,
                                      std::span<const std::vector<std::string>> source_sentences,
                                      std::span<const std::vector<std::string>> target_sentences,
                                      std::size_t jobs = 1);

inline constexpr double kDefaultPruneThreshold = 0.85;

// Keeps pairs with score >= threshold, order preserved.
std::vector<BiMwePair> prune(std::span<const BiMwePair> pairs,
                             double threshold = kDefaultPruneThreshold);

std::string format_score(double score);  // 4 decimals

// surface<TAB>frequency<TAB>pattern
std::string render_candidates_tsv(std::span<const MweCandidate> candidates);
std::vector<MweCandidate> parse_candidates_tsv(std::istream& in);

// source<TAB>target<TAB>score
std::string render_pairs_tsv(std::span<const BiMwePair> pairs);
// Candidates read back carry frequency 1 and no pattern name.
std::vector<BiMwePair> parse_pairs_tsv(std::istream& in);

}  // namespace zhdecomp
