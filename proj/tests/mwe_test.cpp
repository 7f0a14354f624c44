#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "zhdecomp/mwe.hpp"

using namespace zhdecomp;

namespace {

std::vector<TaggedSentence> corpus_of(const std::string& text) {
  std::istringstream in(text);
  return parse_tagged_corpus(in);
}

std::vector<MwePattern> patterns_of(const std::string& text) {
  std::istringstream in(text);
  return parse_patterns(in);
}

std::vector<std::vector<std::string>> words_of(const std::vector<TaggedSentence>& c,
                                               TokenField f = TokenField::Surface) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : c) out.push_back(sentence_words(s, f));
  return out;
}

std::vector<std::vector<std::string>> phrases_of(const std::vector<MweCandidate>& c) {
  std::vector<std::vector<std::string>> out;
  for (const auto& m : c) {
    if (std::find(out.begin(), out.end(), m.words) == out.end()) out.push_back(m.words);
  }
  return out;
}

// A parallel corpus in which "x y" and "p q" co-occur in `co` sentence pairs,
// appear alone in `a` and `b` pairs, and neither appears in `none` pairs.
struct Constructed {
  std::vector<std::vector<std::string>> src, tgt;
};

Constructed construct(int co, int a, int b, int none) {
  Constructed c;
  auto add = [&](bool s, bool t) {
    c.src.push_back(s ? std::vector<std::string>{"x", "y", "z"} : std::vector<std::string>{"x", "z", "y"});
    c.tgt.push_back(t ? std::vector<std::string>{"p", "q"} : std::vector<std::string>{"q", "p"});
  };
  for (int i = 0; i < co; ++i) add(true, true);
  for (int i = 0; i < a; ++i) add(true, false);
  for (int i = 0; i < b; ++i) add(false, true);
  for (int i = 0; i < none; ++i) add(false, false);
  return c;
}

MweCandidate cand(std::vector<std::string> w) { return MweCandidate{std::move(w), 1, "p"}; }

}  // namespace

TEST(ParseTagged, TokensWithAndWithoutLemma) {
  const auto s = parse_tagged_line("golf|NN club|NN problems|NNS|problem");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], (TaggedToken{"golf", "NN", std::nullopt}));
  EXPECT_EQ(s[2], (TaggedToken{"problems", "NNS", "problem"}));
  EXPECT_EQ(s[2].lemma_or_surface(), "problem");
  EXPECT_EQ(s[0].lemma_or_surface(), "golf");
  EXPECT_TRUE(parse_tagged_line("").empty());
}

TEST(ParseTagged, MalformedTokensReportPosition) {
  for (const std::string bad : {"a|NN b", "a|NN |NN", "a|", "a|NN|x|y", "a|NN|"}) {
    try {
      parse_tagged_line(bad, 7);
      ADD_FAILURE() << bad;
    } catch (const MweError& e) {
      EXPECT_EQ(e.kind(), MweError::Kind::MalformedToken) << bad;
      EXPECT_EQ(e.line(), 7u);
      EXPECT_GE(e.column(), 1u);
    }
  }
  try {
    corpus_of("a|NN\nb|NN c\n");
    FAIL();
  } catch (const MweError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(MwePattern, ParseAndMatch) {
  const auto p = MwePattern::parse("noun_noun: NN+NN*");
  EXPECT_EQ(p.name, "noun_noun");
  ASSERT_EQ(p.tags.size(), 2u);
  EXPECT_EQ(p.tags[1], (TagMatcher{"NN", true}));
  const auto s = parse_tagged_line("the|DT golf|NN clubs|NNS");
  EXPECT_FALSE(p.matches_at(s, 0));
  EXPECT_TRUE(p.matches_at(s, 1));
  EXPECT_FALSE(p.matches_at(s, 2));
  EXPECT_FALSE(p.matches_at(s, 10));
  EXPECT_FALSE(TagMatcher({"NN", false}).matches("NNS"));

  for (const std::string bad : {"NN", "NN NN", "x: NN", "x: NN+", "x: +NN", ": NN+NN", "x: N N+NN"}) {
    EXPECT_THROW(MwePattern::parse(bad), MweError) << bad;
  }
}

TEST(MwePattern, UnnamedPatternNamedAfterTags) {
  const auto ps = patterns_of("# zh\nNN+NN\n\nJJ+NN\n");
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].name, "NN+NN");
}

TEST(ExtractMwes, ToyCorpus) {
  const auto corpus = corpus_of("golf|NN club|NN\ngolf|NN club|NN\ngolf|NN club|NN\nthe|DT club|NN\n");
  const auto pats = patterns_of("NN+NN\n");
  const auto c = extract_mwes(corpus, pats, 2);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].surface(), "golf club");
  EXPECT_EQ(c[0].frequency, 3u);
}

TEST(ExtractMwes, OverlappingWindowsAndOrdering) {
  const auto corpus = corpus_of("a|NN b|NN c|NN\nb|NN c|NN\nbig|JJ red|JJ car|NN\n");
  const auto pats = patterns_of("nn: NN+NN\nadj: JJ+NN\nadj2: JJ+JJ+NN\n");
  const auto c = extract_mwes(corpus, pats, 1);
  std::vector<std::pair<std::string, std::size_t>> got;
  for (const auto& m : c) got.emplace_back(m.surface(), m.frequency);
  EXPECT_EQ(got, (std::vector<std::pair<std::string, std::size_t>>{
                     {"b c", 2}, {"a b", 1}, {"big red car", 1}, {"red car", 1}}));
}

TEST(ExtractMwes, LemmaField) {
  const auto corpus = corpus_of("golf|NN clubs|NNS|club\ngolf|NN club|NN|club\n");
  const auto pats = patterns_of("NN+NN*\n");
  EXPECT_EQ(extract_mwes(corpus, pats, 2, TokenField::Surface).size(), 0u);
  const auto c = extract_mwes(corpus, pats, 2, TokenField::Lemma);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].surface(), "golf club");
}

TEST(ExtractMwes, MinFreqIsMonotone) {
  std::ifstream in(std::string(ZHDECOMP_TEST_DATA) + "/sample/en.tag");
  auto corpus = parse_tagged_corpus(in);
  corpus.resize(2000);
  std::ifstream pin(std::string(ZHDECOMP_TEST_DATA) + "/patterns.en.txt");
  const auto pats = parse_patterns(pin);
  std::size_t prev = SIZE_MAX;
  for (std::size_t f = 1; f <= 64; f *= 2) {
    const auto c = extract_mwes(corpus, pats, f);
    EXPECT_LE(c.size(), prev);
    for (const auto& m : c) EXPECT_GE(m.frequency, f);
    prev = c.size();
  }
}

TEST(Dice, Examples) {
  EXPECT_DOUBLE_EQ(dice(10, 10, 10), 1.0);
  EXPECT_DOUBLE_EQ(dice(5, 10, 10), 0.5);
  EXPECT_DOUBLE_EQ(dice(0, 0, 0), 0.0);
}

TEST(PairAndScore, ConstructedScores) {
  const auto c = construct(49, 1, 1, 3);
  const std::vector<MweCandidate> s{cand({"x", "y"})}, t{cand({"p", "q"})};
  const auto pairs = pair_and_score(s, t, c.src, c.tgt);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_NEAR(pairs[0].score, 0.98, 1e-12);
  EXPECT_EQ(pairs[0].cooccurrences, 49u);
  EXPECT_EQ(pairs[0].source_occurrences, 50u);
  EXPECT_EQ(pairs[0].target_occurrences, 50u);

  const auto d = construct(42, 8, 8, 0);
  EXPECT_NEAR(pair_and_score(s, t, d.src, d.tgt)[0].score, 0.84, 1e-12);
}

TEST(PairAndScore, MatchesBruteForceOnToyCorpus) {
  const auto src = corpus_of(
      "golf|NN club|NN opens|VV\n"
      "the|DT golf|NN club|NN\n"
      "city|NN hospital|NN\n"
      "city|NN park|NN\n"
      "golf|NN course|NN\n"
      "new|JJ bridge|NN\n"
      "city|NN hospital|NN closes|VV\n"
      "new|JJ bridge|NN golf|NN club|NN\n"
      "old|JJ bridge|NN\n"
      "city|NN\n");
  const auto tgt = corpus_of(
      "高尔夫球|NN 俱乐部|NN 开|VV\n"
      "高尔夫球|NN 俱乐部|NN\n"
      "城市|NN 医院|NN\n"
      "城市|NN 公园|NN\n"
      "高尔夫球|NN 场|NN\n"
      "新|JJ 桥梁|NN\n"
      "医院|NN 关|VV\n"
      "新|JJ 桥梁|NN 高尔夫球|NN 俱乐部|NN\n"
      "旧|JJ 桥梁|NN\n"
      "城市|NN\n");
  const auto pats = patterns_of("NN+NN\nJJ+NN\n");
  const auto sc = extract_mwes(src, pats, 1);
  const auto tc = extract_mwes(tgt, pats, 1);
  const auto sw = words_of(src), tw = words_of(tgt);
  const auto pairs = pair_and_score(sc, tc, sw, tw);
  EXPECT_EQ(render_pairs_tsv(pairs), oracle::brute_force_dice_tsv(phrases_of(sc), phrases_of(tc), sw, tw));
  EXPECT_FALSE(pairs.empty());
  EXPECT_EQ(pairs[0].score, 1.0);
}

TEST(PairAndScore, RandomCorporaMatchBruteForce) {
  std::mt19937 rng(77);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::string>> src, tgt;
    const int n = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> s, t;
      for (int k = static_cast<int>(rng() % 6); k > 0; --k) s.push_back(vocab[rng() % vocab.size()]);
      for (int k = static_cast<int>(rng() % 6); k > 0; --k) t.push_back(vocab[rng() % vocab.size()]);
      src.push_back(s);
      tgt.push_back(t);
    }
    std::vector<MweCandidate> sc, tc;
    for (int k = 0; k < 6; ++k) {
      sc.push_back(cand({vocab[rng() % 5], vocab[rng() % 5]}));
      tc.push_back(cand({vocab[rng() % 5], vocab[rng() % 5], vocab[rng() % 5]}));
      if (k % 2) tc.back().words.pop_back();
    }
    const auto pairs = pair_and_score(sc, tc, src, tgt, 1 + trial % 3);
    ASSERT_EQ(render_pairs_tsv(pairs), oracle::brute_force_dice_tsv(phrases_of(sc), phrases_of(tc), src, tgt));
  }
}

TEST(PairAndScore, SymmetricUnderSideSwap) {
  const auto c = construct(7, 3, 5, 2);
  const std::vector<MweCandidate> s{cand({"x", "y"})}, t{cand({"p", "q"})};
  EXPECT_DOUBLE_EQ(pair_and_score(s, t, c.src, c.tgt)[0].score, pair_and_score(t, s, c.tgt, c.src)[0].score);
}

TEST(PairAndScore, LengthMismatchRejected) {
  const std::vector<std::vector<std::string>> a(3), b(2);
  const std::vector<MweCandidate> s{cand({"x", "y"})};
  try {
    pair_and_score(s, s, a, b);
    FAIL();
  } catch (const MweError& e) {
    EXPECT_EQ(e.kind(), MweError::Kind::LengthMismatch);
  }
}

TEST(Prune, ThresholdBehaviour) {
  std::vector<BiMwePair> pairs;
  for (double s : {0.98, 0.85, 0.84, 0.2}) pairs.push_back(BiMwePair{cand({"a"}), cand({"b"}), s});
  const auto kept = prune(pairs);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].score, 0.98);
  EXPECT_EQ(kept[1].score, 0.85);
  EXPECT_EQ(prune(pairs, 0.0).size(), pairs.size());
  EXPECT_EQ(prune(kept).size(), kept.size());
  EXPECT_THROW(prune(pairs, 1.5), std::invalid_argument);
  EXPECT_THROW(prune(pairs, -0.1), std::invalid_argument);
}

TEST(Prune, ConstructedPairs) {
  const std::vector<MweCandidate> s{cand({"x", "y"})}, t{cand({"p", "q"})};
  const auto hi = construct(49, 1, 1, 0), lo = construct(42, 8, 8, 0);
  EXPECT_EQ(prune(pair_and_score(s, t, hi.src, hi.tgt)).size(), 1u);
  EXPECT_EQ(prune(pair_and_score(s, t, lo.src, lo.tgt)).size(), 0u);
}

TEST(Tsv, CandidatesRoundTrip) {
  const std::vector<MweCandidate> c{{{"golf", "club"}, 3, "noun_noun"}, {{"big", "lake"}, 1, "adj_noun"}};
  const auto text = render_candidates_tsv(c);
  EXPECT_EQ(text, "golf club\t3\tnoun_noun\nbig lake\t1\tadj_noun\n");
  std::istringstream in(text);
  EXPECT_EQ(parse_candidates_tsv(in), c);
}

TEST(Tsv, PairsRoundTripAndErrors) {
  const std::vector<BiMwePair> p{{cand({"golf", "club"}), cand({"高尔夫球", "俱乐部"}), 0.98}};
  const auto text = render_pairs_tsv(p);
  EXPECT_EQ(text, "golf club\t高尔夫球 俱乐部\t0.9800\n");
  std::istringstream in(text);
  const auto back = parse_pairs_tsv(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].source.words, p[0].source.words);
  EXPECT_DOUBLE_EQ(back[0].score, 0.98);

  for (const std::string bad : {"a\tb\n", "a\tb\tx\n", "a\tb\t1.5\n", "\tb\t0.5\n"}) {
    std::istringstream bin(bad);
    EXPECT_THROW(parse_pairs_tsv(bin), MweError) << bad;
  }
}
