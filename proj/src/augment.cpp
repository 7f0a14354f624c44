#include "zhdecomp/augment.hpp"

#include "zhdecomp/utf8.hpp"

namespace zhdecomp {

ParallelCorpus augment_corpus(std::span<const std::string> source,
                              std::span<const std::string> target, const AugmentPlan& plan,
                              const Decomposer* dec) {
  if (source.size() != target.size()) {
    throw LengthMismatchError("source has " + std::to_string(source.size()) +
                              " lines but target has " + std::to_string(target.size()));
  }
  if (plan.replication < 1) throw std::invalid_argument("replication must be at least 1");
  if (plan.decomposes() && !plan.pairs.empty() && !dec) throw std::invalid_argument("decomposition requires a dictionary");

  ParallelCorpus out;
  out.source.reserve(source.size() + plan.appended_lines());
  out.target.reserve(target.size() + plan.appended_lines());
  out.source.assign(source.begin(), source.end());
  out.target.assign(target.begin(), target.end());

  const bool zh_is_source = plan.chinese_side == ChineseSide::Source;
  for (const auto& pair : plan.pairs) {
    const MweCandidate& zh = zh_is_source ? pair.source : pair.target;
    const MweCandidate& other = zh_is_source ? pair.target : pair.source;
    const std::string plain_zh = zh.surface();
    const std::string other_line = other.surface();
    std::string decomposed_zh;
    if (plan.decomposes()) {
      decomposed_zh = utf8::join(to_rxd_stream(SegmentedSentence{zh.words}, *dec, *plan.decomp,
                                               plan.boundary),
                                 " ");
    }

    auto emit = [&](const std::string& zh_line) {
      out.source.push_back(zh_is_source ? zh_line : other_line);
      out.target.push_back(zh_is_source ? other_line : zh_line);
    };
    for (std::size_t r = 0; r < plan.replication; ++r) {
      if (!plan.decomposes()) {
        emit(plain_zh);
        continue;
      }
      if (plan.keep_plain) emit(plain_zh);
      emit(decomposed_zh);
    }
  }
  return out;
}

}  // namespace zhdecomp
