#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "zhdecomp/ids.hpp"
#include "zhdecomp/utf8.hpp"

namespace zhdecomp::oracle {

// ---------------------------------------------------------------------------
// Decomposition: rewrite the whole sequence L times.

// Components of a variant, read off its rendered text with operators dropped.
inline std::u32string variant_components(const IdsVariant& v) {
  std::u32string out;
  for (char32_t c : utf8::decode(render_ids_expression(v.tree))) {
    if (!(c >= 0x2FF0 && c <= 0x2FFB)) out.push_back(c);
  }
  return out;
}

inline const IdsVariant& pick_variant(const IdsEntry& e, const std::string& preference) {
  for (char tag : preference) {
    for (const auto& v : e.variants) {
      for (auto t : v.tags) {
        if (t.code == tag) return v;
      }
    }
  }
  return e.variants.front();
}

inline std::u32string naive_decompose(const IdsDictionary& dict, std::u32string seq, std::size_t level,
                                      const std::string& preference = "G") {
  for (std::size_t pass = 0; pass < level; ++pass) {
    std::u32string next;
    for (char32_t c : seq) {
      const IdsEntry* e = dict.find(c);
      if (!e) {
        next.push_back(c);
        continue;
      }
      const auto comps = variant_components(pick_variant(*e, preference));
      if (comps.size() == 1 && comps[0] == c) {
        next.push_back(c);
      } else {
        next += comps;
      }
    }
    seq = std::move(next);
  }
  return seq;
}

// Acyclic random dictionary: character i only decomposes into characters with
// larger index, or into characters outside the pool (atomic).
inline std::vector<IdsEntry> random_acyclic_entries(std::mt19937& rng, std::size_t pool = 24) {
  const char32_t base = 0x4E00 + static_cast<char32_t>(rng() % 2000) * 8;
  std::vector<IdsEntry> entries;
  auto random_tree = [&](auto&& self, std::size_t from, int depth) -> IdsTree {
    const bool make_node = depth < 2 && rng() % 4 == 0;
    if (!make_node) {
      // Mostly pool members deeper in the order, sometimes an outside atom.
      if (from < pool && rng() % 5 != 0) {
        return IdsTree::leaf(base + static_cast<char32_t>(from + rng() % (pool - from)));
      }
      return IdsTree::leaf(0x3400 + static_cast<char32_t>(rng() % 64));
    }
    const char32_t op = 0x2FF0 + static_cast<char32_t>(rng() % 12);
    const int arity = (op == 0x2FF2 || op == 0x2FF3) ? 3 : 2;
    std::vector<IdsTree> kids;
    for (int k = 0; k < arity; ++k) kids.push_back(self(self, from, depth + 1));
    return IdsTree::node(*StructOperator::from(op), std::move(kids));
  };
  for (std::size_t i = 0; i < pool; ++i) {
    if (rng() % 6 == 0) continue;  // leave a hole: atomic pool member
    IdsEntry e;
    e.character = base + static_cast<char32_t>(i);
    e.codepoint = CodePoint{e.character};
    const std::size_t variants = 1 + rng() % 3;
    for (std::size_t v = 0; v < variants; ++v) {
      IdsVariant var{IdsTree::leaf(e.character), {}};
      if (rng() % 7 != 0) {
        const char32_t op = 0x2FF0 + static_cast<char32_t>(rng() % 12);
        const int arity = (op == 0x2FF2 || op == 0x2FF3) ? 3 : 2;
        std::vector<IdsTree> kids;
        for (int k = 0; k < arity; ++k) kids.push_back(random_tree(random_tree, i + 1, 1));
        var.tree = IdsTree::node(*StructOperator::from(op), std::move(kids));
      }
      static constexpr char kTags[] = "GHTKJVX";
      for (char t : kTags) {
        if (t && rng() % 5 == 0) var.tags.push_back(RegionTag{t});
      }
      e.variants.push_back(std::move(var));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Dice by exhaustive enumeration of candidate pairs.

inline bool contains_phrase(const std::vector<std::string>& sentence, const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > sentence.size()) return false;
  return std::search(sentence.begin(), sentence.end(), phrase.begin(), phrase.end()) != sentence.end();
}

struct DiceRow {
  std::string source, target;
  double score;
};

inline std::string join_words(const std::vector<std::string>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i];
  return s;
}

inline std::string brute_force_dice_tsv(const std::vector<std::vector<std::string>>& src_phrases,
                                        const std::vector<std::vector<std::string>>& tgt_phrases,
                                        const std::vector<std::vector<std::string>>& src_sents,
                                        const std::vector<std::vector<std::string>>& tgt_sents) {
  std::vector<DiceRow> rows;
  for (const auto& s : src_phrases) {
    for (const auto& t : tgt_phrases) {
      int co = 0, a = 0, b = 0;
      for (std::size_t i = 0; i < src_sents.size(); ++i) {
        const bool hs = contains_phrase(src_sents[i], s);
        const bool ht = contains_phrase(tgt_sents[i], t);
        a += hs;
        b += ht;
        co += hs && ht;
      }
      if (co > 0) rows.push_back({join_words(s), join_words(t), 2.0 * co / (a + b)});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const DiceRow& x, const DiceRow& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.source != y.source) return x.source < y.source;
    return x.target < y.target;
  });
  std::string out;
  for (const auto& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r.score);
    out += r.source + "\t" + r.target + "\t" + buf + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// BLEU by naive n-gram list counting.

struct NaiveBleu {
  std::vector<double> per_n;
  double bp;
  std::vector<long> clipped;
  std::vector<long> total;
};

inline std::vector<std::vector<std::string>> ngrams_of(const std::vector<std::string>& t, std::size_t n) {
  std::vector<std::vector<std::string>> g;
  for (std::size_t i = 0; i + n <= t.size(); ++i) g.emplace_back(t.begin() + i, t.begin() + i + n);
  return g;
}

inline NaiveBleu naive_bleu(const std::vector<std::vector<std::string>>& hyps,
                            const std::vector<std::vector<std::vector<std::string>>>& refs, int max_n) {
  NaiveBleu r;
  r.clipped.assign(max_n, 0);
  r.total.assign(max_n, 0);
  long c = 0, ref_len = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto& h = hyps[i];
    c += static_cast<long>(h.size());
    long best = -1;
    for (const auto& ref : refs[i]) {
      const long len = static_cast<long>(ref.size());
      const long hl = static_cast<long>(h.size());
      if (best < 0 || std::labs(len - hl) < std::labs(best - hl) ||
          (std::labs(len - hl) == std::labs(best - hl) && len < best)) {
        best = len;
      }
    }
    ref_len += best;
    for (int n = 1; n <= max_n; ++n) {
      const auto hg = ngrams_of(h, n);
      std::vector<std::vector<std::string>> seen;
      for (const auto& g : hg) {
        if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
        seen.push_back(g);
        const long count = std::count(hg.begin(), hg.end(), g);
        long max_ref = 0;
        for (const auto& ref : refs[i]) {
          const auto rg = ngrams_of(ref, n);
          max_ref = std::max<long>(max_ref, std::count(rg.begin(), rg.end(), g));
        }
        r.clipped[n - 1] += std::min(count, max_ref);
      }
      r.total[n - 1] += static_cast<long>(hg.size());
    }
  }
  r.bp = c == 0 ? 0.0 : (c >= ref_len ? 1.0 : std::exp(1.0 - static_cast<double>(ref_len) / c));
  for (int n = 1; n <= max_n; ++n) {
    double log_sum = 0;
    bool zero = false;
    for (int k = 0; k < n; ++k) {
      if (r.total[k] == 0 || r.clipped[k] == 0) {
        zero = true;
        break;
      }
      log_sum += std::log(static_cast<double>(r.clipped[k]) / r.total[k]);
    }
    r.per_n.push_back(zero ? 0.0 : r.bp * std::exp(log_sum / n));
  }
  return r;
}

}  // namespace zhdecomp::oracle
