#include "zhdecomp/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "zhdecomp/utf8.hpp"

namespace zhdecomp {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string BleuScore::render() const {
  std::string out;
  for (std::size_t n = 0; n < per_n.size(); ++n) {
    out += "BLEU-" + std::to_string(n + 1) + "=" + fmt4(per_n[n]) + " ";
  }
  out += "BP=" + fmt4(brevity_penalty);
  return out;
}

BleuStats::BleuStats(int max_n) : max_n_(max_n) {
  if (max_n < 1 || max_n > kMaxBleuOrder) {
    throw BleuError(BleuError::Kind::BadConfig, "max_n must be in [1, 4]");
  }
}

void BleuStats::add(const std::vector<std::string>& hyp,
                    std::span<const std::vector<std::string>> refs) {
  if (refs.empty() || refs.size() > kMaxReferences) {
    throw BleuError(BleuError::Kind::ReferenceCountMismatch,
                    "each hypothesis needs between 1 and 4 references");
  }
  hyp_len_ += hyp.size();

  std::size_t closest = refs.front().size();
  for (const auto& r : refs) {
    const auto d = [&](std::size_t len) { return len > hyp.size() ? len - hyp.size() : hyp.size() - len; };
    if (d(r.size()) < d(closest) || (d(r.size()) == d(closest) && r.size() < closest)) closest = r.size();
  }
  ref_len_ += closest;

  for (int n = 1; n <= max_n_; ++n) {
    const auto hyp_counts = count_ngrams(hyp, n);
    NgramCounts max_ref;
    for (const auto& r : refs) {
      for (const auto& [gram, c] : count_ngrams(r, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, c);
      }
    }
    for (const auto& [gram, c] : hyp_counts) {
      auto it = max_ref.find(gram);
      matches_[n - 1] += std::min(c, it == max_ref.end() ? std::size_t{0} : it->second);
      totals_[n - 1] += c;
    }
  }
}

void BleuStats::merge(const BleuStats& other) {
  if (other.max_n_ != max_n_) throw BleuError(BleuError::Kind::BadConfig, "max_n differs");
  for (int i = 0; i < kMaxBleuOrder; ++i) {
    matches_[i] += other.matches_[i];
    totals_[i] += other.totals_[i];
  }
  hyp_len_ += other.hyp_len_;
  ref_len_ += other.ref_len_;
}

BleuScore BleuStats::score() const {
  BleuScore s;
  s.hypothesis_length = hyp_len_;
  s.reference_length = ref_len_;
  if (hyp_len_ == 0) {
    s.brevity_penalty = 0.0;
  } else if (hyp_len_ >= ref_len_) {
    s.brevity_penalty = 1.0;
  } else {
    s.brevity_penalty = std::exp(1.0 - static_cast<double>(ref_len_) / static_cast<double>(hyp_len_));
  }

  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < max_n_; ++n) {
    s.matches.push_back(matches_[n]);
    s.totals.push_back(totals_[n]);
    const double p = totals_[n] == 0 ? 0.0 : static_cast<double>(matches_[n]) / static_cast<double>(totals_[n]);
    s.precisions.push_back(p);
    if (p == 0.0) zero = true;
    if (!zero) log_sum += std::log(p);
    s.per_n.push_back(zero ? 0.0 : s.brevity_penalty * std::exp(log_sum / (n + 1)));
  }
  return s;
}

BleuScore bleu(std::span<const std::string> hypotheses,
               std::span<const std::vector<std::string>> reference_sets, const BleuConfig& cfg) {
  if (hypotheses.empty()) {
    throw BleuError(BleuError::Kind::EmptyHypothesisSet, "no hypotheses to score");
  }
  if (reference_sets.size() != hypotheses.size()) {
    throw BleuError(BleuError::Kind::ReferenceCountMismatch,
                    std::to_string(hypotheses.size()) + " hypotheses but " +
                        std::to_string(reference_sets.size()) + " reference sets");
  }
  auto tokens = [&](const std::string& line) {
    return utf8::split_ws(cfg.case_insensitive ? utf8::ascii_lower(line) : line);
  };
  BleuStats stats(cfg.max_n);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    std::vector<std::vector<std::string>> refs;
    for (const auto& r : reference_sets[i]) refs.push_back(tokens(r));
    stats.add(tokens(hypotheses[i]), refs);
  }
  return stats.score();
}

}  // namespace zhdecomp
