#include "zhdecomp/mwe.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "zhdecomp/utf8.hpp"

namespace zhdecomp {

MweError::MweError(Kind kind, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(
          (line ? "line " + std::to_string(line) + (column ? ", token " + std::to_string(column) : "") +
                      ": "
                : std::string()) +
          message),
      kind_(kind),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Tagged corpus

TaggedSentence parse_tagged_line(std::string_view line, std::size_t line_no) {
  TaggedSentence s;
  const auto tokens = utf8::split_ws(line);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const auto bar1 = tok.find('|');
    if (bar1 == std::string::npos || bar1 == 0 || bar1 + 1 == tok.size()) {
      throw MweError(MweError::Kind::MalformedToken, "expected surface|POS in '" + tok + "'",
                     line_no, i + 1);
    }
    const auto bar2 = tok.find('|', bar1 + 1);
    TaggedToken t;
    t.surface = tok.substr(0, bar1);
    if (bar2 == std::string::npos) {
      t.pos = tok.substr(bar1 + 1);
    } else {
      t.pos = tok.substr(bar1 + 1, bar2 - bar1 - 1);
      t.lemma = tok.substr(bar2 + 1);
      if (t.lemma->empty() || t.lemma->find('|') != std::string::npos) {
        throw MweError(MweError::Kind::MalformedToken, "expected surface|POS|lemma in '" + tok + "'",
                       line_no, i + 1);
      }
    }
    if (t.pos.empty()) {
      throw MweError(MweError::Kind::MalformedToken, "empty POS in '" + tok + "'", line_no, i + 1);
    }
    s.push_back(std::move(t));
  }
  return s;
}

std::vector<TaggedSentence> parse_tagged_corpus(std::istream& in) {
  std::vector<TaggedSentence> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) corpus.push_back(parse_tagged_line(line, ++line_no));
  return corpus;
}

std::vector<std::string> sentence_words(const TaggedSentence& s, TokenField field) {
  std::vector<std::string> words;
  words.reserve(s.size());
  for (const auto& t : s) words.push_back(field == TokenField::Lemma ? t.lemma_or_surface() : t.surface);
  return words;
}

// ---------------------------------------------------------------------------
// Patterns

bool TagMatcher::matches(std::string_view pos) const noexcept {
  return prefix ? pos.starts_with(tag) : pos == tag;
}

MwePattern MwePattern::parse(std::string_view line, std::size_t line_no) {
  using Kind = MweError::Kind;
  // Without a "name:" prefix the pattern is named after its body.
  const auto colon = line.find(':');
  MwePattern p;
  const auto body = utf8::split_ws(colon == std::string_view::npos ? line : line.substr(colon + 1));
  if (colon != std::string_view::npos) {
    const auto name = utf8::split_ws(line.substr(0, colon));
    if (name.size() != 1) throw MweError(Kind::MalformedPattern, "pattern name must be one word", line_no);
    p.name = name.front();
  } else if (body.size() == 1) {
    p.name = body.front();
  }

  if (body.size() != 1) throw MweError(Kind::MalformedPattern, "pattern body must be TAG+TAG+...", line_no);
  std::string_view rest = body.front();
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto plus = rest.find('+', start);
    std::string_view part = rest.substr(start, plus == std::string_view::npos ? plus : plus - start);
    TagMatcher m;
    if (part.ends_with('*')) {
      m.prefix = true;
      part.remove_suffix(1);
    }
    if (part.empty()) throw MweError(Kind::MalformedPattern, "empty tag in pattern", line_no);
    m.tag = std::string(part);
    p.tags.push_back(std::move(m));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  if (p.tags.size() < 2) {
    throw MweError(Kind::MalformedPattern, "a pattern needs at least two tags", line_no);
  }
  return p;
}

bool MwePattern::matches_at(const TaggedSentence& s, std::size_t start) const noexcept {
  if (start + tags.size() > s.size()) return false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!tags[i].matches(s[start + i].pos)) return false;
  }
  return true;
}

std::vector<MwePattern> parse_patterns(std::istream& in) {
  std::vector<MwePattern> patterns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    patterns.push_back(MwePattern::parse(line, line_no));
  }
  return patterns;
}

// ---------------------------------------------------------------------------
// Extraction

std::string MweCandidate::surface() const { return utf8::join(words, " "); }

std::vector<MweCandidate> extract_mwes(std::span<const TaggedSentence> corpus,
                                       std::span<const MwePattern> patterns, std::size_t min_freq,
                                       TokenField field) {
  if (patterns.empty()) throw std::invalid_argument("extract_mwes needs at least one pattern");
  min_freq = std::max<std::size_t>(min_freq, 1);

  // (words, pattern index) -> count
  std::map<std::pair<std::vector<std::string>, std::size_t>, std::size_t> counts;
  for (const auto& sentence : corpus) {
    for (std::size_t start = 0; start < sentence.size(); ++start) {
      for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
        const auto& pat = patterns[pi];
        if (!pat.matches_at(sentence, start)) continue;
        std::vector<std::string> words;
        for (std::size_t k = 0; k < pat.tags.size(); ++k) {
          const auto& tok = sentence[start + k];
          words.push_back(field == TokenField::Lemma ? tok.lemma_or_surface() : tok.surface);
        }
        ++counts[{std::move(words), pi}];
      }
    }
  }

  std::vector<MweCandidate> out;
  for (auto& [key, n] : counts) {
    if (n < min_freq) continue;
    out.push_back({key.first, n, patterns[key.second].name});
  }
  std::sort(out.begin(), out.end(), [](const MweCandidate& a, const MweCandidate& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    const auto sa = a.surface(), sb = b.surface();
    if (sa != sb) return sa < sb;
    return a.pattern_name < b.pattern_name;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Pairing

double dice(std::size_t co, std::size_t occ_s, std::size_t occ_t) noexcept {
  if (occ_s + occ_t == 0) return 0.0;
  return 2.0 * static_cast<double>(co) / static_cast<double>(occ_s + occ_t);
}

namespace {

// Index from surface string to the first candidate with that surface.
struct PhraseIndex {
  std::vector<const MweCandidate*> unique;
  std::unordered_map<std::string, std::size_t> by_surface;
  std::set<std::size_t> lengths;

  explicit PhraseIndex(std::span<const MweCandidate> cands) {
    for (const auto& c : cands) {
      if (c.words.empty()) continue;
      if (by_surface.emplace(c.surface(), unique.size()).second) {
        unique.push_back(&c);
        lengths.insert(c.words.size());
      }
    }
  }

  // Distinct candidate indices present in the sentence, ascending.
  std::vector<std::size_t> present_in(const std::vector<std::string>& sentence) const {
    std::vector<std::size_t> hits;
    for (std::size_t n : lengths) {
      if (n > sentence.size()) break;
      for (std::size_t start = 0; start + n <= sentence.size(); ++start) {
        std::string key = sentence[start];
        for (std::size_t k = 1; k < n; ++k) key += ' ' + sentence[start + k];
        if (auto it = by_surface.find(key); it != by_surface.end()) hits.push_back(it->second);
      }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    return hits;
  }
};

}  // namespace

std::vector<BiMwePair> pair_and_score(std::span<const MweCandidate> source_candidates,
                                      std::span<const MweCandidate> target_candidates,
                                      std::span<const std::vector<std::string>> source_sentences,
                                      std::span<const std::vector<std::string>> target_sentences,
                                      std::size_t jobs) {
  if (source_sentences.size() != target_sentences.size()) {
    throw MweError(MweError::Kind::LengthMismatch,
                   "parallel corpus sides differ: " + std::to_string(source_sentences.size()) +
                       " vs " + std::to_string(target_sentences.size()) + " lines");
  }
  const PhraseIndex src(source_candidates);
  const PhraseIndex tgt(target_candidates);
  const std::size_t n = source_sentences.size();

  std::vector<std::vector<std::size_t>> src_hits(n), tgt_hits(n);
  auto scan = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      src_hits[i] = src.present_in(source_sentences[i]);
      if (!src_hits[i].empty()) tgt_hits[i] = tgt.present_in(target_sentences[i]);
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    scan(0, n);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back(scan, std::min(n, w * chunk), std::min(n, (w + 1) * chunk));
    }
    for (auto& t : workers) t.join();
  }

  std::vector<std::size_t> occ_s(src.unique.size(), 0), occ_t(tgt.unique.size(), 0);
  std::unordered_map<std::uint64_t, std::size_t> co;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto s : src_hits[i]) ++occ_s[s];
    if (src_hits[i].empty()) {
      for (auto t : tgt.present_in(target_sentences[i])) ++occ_t[t];
      continue;
    }
    for (auto t : tgt_hits[i]) ++occ_t[t];
    for (auto s : src_hits[i]) {
      for (auto t : tgt_hits[i]) ++co[(static_cast<std::uint64_t>(s) << 32) | t];
    }
  }

  std::vector<BiMwePair> pairs;
  pairs.reserve(co.size());
  for (const auto& [key, c] : co) {
    const std::size_t s = key >> 32, t = key & 0xFFFFFFFFu;
    pairs.push_back({*src.unique[s], *tgt.unique[t], dice(c, occ_s[s], occ_t[t]), c, occ_s[s], occ_t[t]});
  }
  std::sort(pairs.begin(), pairs.end(), [](const BiMwePair& a, const BiMwePair& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto as = a.source.surface(), bs = b.source.surface();
    if (as != bs) return as < bs;
    return a.target.surface() < b.target.surface();
  });
  return pairs;
}

std::vector<BiMwePair> prune(std::span<const BiMwePair> pairs, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("prune threshold must lie in [0, 1]");
  }
  std::vector<BiMwePair> kept;
  for (const auto& p : pairs) {
    if (p.score >= threshold) kept.push_back(p);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// TSV

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", score);
  return buf;
}

namespace {

std::vector<std::string> split_tab_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string render_candidates_tsv(std::span<const MweCandidate> candidates) {
  std::string out;
  for (const auto& c : candidates) {
    out += c.surface() + '\t' + std::to_string(c.frequency) + '\t' + c.pattern_name + '\n';
  }
  return out;
}

std::vector<MweCandidate> parse_candidates_tsv(std::istream& in) {
  std::vector<MweCandidate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_tab_fields(line);
    MweCandidate c;
    if (f.size() >= 1) c.words = utf8::split_ws(f[0]);
    std::size_t freq = 0;
    bool ok = f.size() == 3 && !c.words.empty() && !f[1].empty() &&
              f[1].find_first_not_of("0123456789") == std::string::npos;
    if (ok) {
      freq = std::stoull(f[1]);
      ok = freq >= 1;
    }
    if (!ok) {
      throw MweError(MweError::Kind::MalformedRecord, "expected surface<TAB>frequency<TAB>pattern",
                     line_no);
    }
    c.frequency = freq;
    c.pattern_name = f[2];
    out.push_back(std::move(c));
  }
  return out;
}

std::string render_pairs_tsv(std::span<const BiMwePair> pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += p.source.surface() + '\t' + p.target.surface() + '\t' + format_score(p.score) + '\n';
  }
  return out;
}

std::vector<BiMwePair> parse_pairs_tsv(std::istream& in) {
  std::vector<BiMwePair> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_tab_fields(line);
    BiMwePair p;
    bool ok = f.size() == 3;
    if (ok) {
      p.source.words = utf8::split_ws(f[0]);
      p.target.words = utf8::split_ws(f[1]);
      char* end = nullptr;
      p.score = std::strtod(f[2].c_str(), &end);
      ok = !p.source.words.empty() && !p.target.words.empty() && !f[2].empty() &&
           end == f[2].c_str() + f[2].size() && p.score >= 0.0 && p.score <= 1.0;
    }
    if (!ok) {
      throw MweError(MweError::Kind::MalformedRecord, "expected source<TAB>target<TAB>score", line_no);
    }
    p.source.frequency = p.target.frequency = 1;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace zhdecomp
