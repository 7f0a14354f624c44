#include "zhdecomp/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

#include "zhdecomp/utf8.hpp"

namespace zhdecomp {

SegmentedSentence parse_segmented(std::string_view line, std::string_view delimiter) {
  if (delimiter.empty()) return {utf8::split_ws(line)};
  SegmentedSentence s;
  std::size_t start = 0;
  while (start <= line.size()) {
    const auto hit = line.find(delimiter, start);
    const auto end = hit == std::string_view::npos ? line.size() : hit;
    if (end > start) s.words.emplace_back(line.substr(start, end - start));
    if (hit == std::string_view::npos) break;
    start = hit + delimiter.size();
  }
  return s;
}

std::vector<std::string> word_units(std::string_view word) {
  std::vector<std::string> units;
  std::string run;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::decode_next(word, pos);
    if (utf8::is_han(cp)) {
      if (!run.empty()) units.push_back(std::move(run)), run.clear();
      units.emplace_back(word.substr(start, pos - start));
    } else {
      run.append(word.substr(start, pos - start));
    }
  }
  if (!run.empty()) units.push_back(std::move(run));
  return units;
}

namespace {

// Appends one word's pieces to `out`, applying the boundary encoding.
void emit_word(TokenStream& out, std::vector<std::string> pieces, bool first_word,
               const BoundaryOptions& boundary) {
  if (pieces.empty()) return;
  if (!first_word) {
    if (boundary.style == BoundaryStyle::Prefix) {
      pieces.front() = boundary.prefix_marker + pieces.front();
    } else if (boundary.style == BoundaryStyle::Separator) {
      out.push_back(boundary.separator_token);
    }
  }
  for (auto& p : pieces) out.push_back(std::move(p));
}

std::optional<char32_t> single_han(const std::string& unit) {
  std::size_t pos = 0;
  const char32_t cp = utf8::decode_next(unit, pos);
  if (pos != unit.size() || !utf8::is_han(cp)) return std::nullopt;
  return cp;
}

std::string radical_of(const std::string& unit, const Decomposer& dec, const RadicalMap* radical_map,
                       const DecompConfig& cfg) {
  const auto cp = single_han(unit);
  if (!cp) return unit;
  if (radical_map) {
    if (auto it = radical_map->find(*cp); it != radical_map->end()) return utf8::encode(it->second);
  }
  DecompConfig level1 = cfg;
  level1.level = 1;
  level1.emit_operators = false;
  const PieceSequence pieces = dec.decompose_char(*cp, level1);
  return utf8::encode(pieces.front());
}

std::vector<std::string> rxd_pieces(const std::string& word, const Decomposer& dec,
                                    const DecompConfig& cfg) {
  std::vector<std::string> out;
  for (auto& unit : word_units(word)) {
    const auto cp = single_han(unit);
    if (!cp) {
      out.push_back(std::move(unit));
      continue;
    }
    for (char32_t p : dec.decompose_char(*cp, cfg)) out.push_back(utf8::encode(p));
  }
  return out;
}

}  // namespace

TokenStream to_char_stream(const SegmentedSentence& s, const BoundaryOptions& boundary) {
  TokenStream out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    emit_word(out, word_units(s.words[i]), i == 0, boundary);
  }
  return out;
}

TokenStream to_radical_stream(const SegmentedSentence& s, const Decomposer& dec,
                              const RadicalMap* radical_map, const DecompConfig& cfg,
                              const BoundaryOptions& boundary) {
  TokenStream out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    std::vector<std::string> radicals;
    for (const auto& unit : word_units(s.words[i])) {
      radicals.push_back(radical_of(unit, dec, radical_map, cfg));
    }
    emit_word(out, std::move(radicals), i == 0, boundary);
  }
  return out;
}

TokenStream to_rxd_stream(const SegmentedSentence& s, const Decomposer& dec,
                          const DecompConfig& cfg, const BoundaryOptions& boundary) {
  TokenStream out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    emit_word(out, rxd_pieces(s.words[i], dec, cfg), i == 0, boundary);
  }
  return out;
}

FactorTuple FactorTuple::parse(std::string_view spec) {
  FactorTuple t;
  bool seen[3] = {false, false, false};
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto plus = spec.find('+', start);
    const auto part = spec.substr(start, plus == std::string_view::npos ? plus : plus - start);
    Factor f;
    if (part == "w" || part == "W") {
      f = Factor::Word;
    } else if (part == "c" || part == "C") {
      f = Factor::Char;
    } else if (part == "r" || part == "R") {
      f = Factor::Radical;
    } else {
      throw std::invalid_argument("unknown factor '" + std::string(part) + "'");
    }
    if (seen[static_cast<int>(f)]) throw std::invalid_argument("repeated factor in tuple");
    seen[static_cast<int>(f)] = true;
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  for (int i = 0; i < 3; ++i) {
    if (seen[i]) t.factors.push_back(static_cast<Factor>(i));
  }
  return t;
}

TokenStream to_factored_stream(const SegmentedSentence& s, const Decomposer& dec,
                               const FactorTuple& mode, const RadicalMap* radical_map,
                               const DecompConfig& cfg) {
  TokenStream out;
  out.reserve(s.words.size());
  for (const auto& word : s.words) {
    const auto units = word_units(word);
    std::string token;
    for (std::size_t i = 0; i < mode.factors.size(); ++i) {
      if (i) token += '|';
      switch (mode.factors[i]) {
        case Factor::Word:
          token += word;
          break;
        case Factor::Char:
          token += utf8::join(units, "+");
          break;
        case Factor::Radical: {
          std::vector<std::string> radicals;
          for (const auto& u : units) radicals.push_back(radical_of(u, dec, radical_map, cfg));
          token += utf8::join(radicals, "+");
          break;
        }
      }
    }
    out.push_back(std::move(token));
  }
  return out;
}

GranularityMode GranularityMode::parse(std::string_view spec, std::size_t default_level) {
  GranularityMode m;
  if (spec == "w" || spec == "W") {
    m.kind = Kind::Word;
  } else if (spec == "c" || spec == "C") {
    m.kind = Kind::Char;
  } else if (spec == "r" || spec == "R") {
    m.kind = Kind::Radical;
  } else if (spec.starts_with("rxd") || spec.starts_with("RXD")) {
    m.kind = Kind::Rxd;
    m.level = default_level;
    const auto digits = spec.substr(3);
    if (!digits.empty()) {
      std::size_t level = 0;
      for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad rxd level in '" + std::string(spec) + "'");
        level = level * 10 + static_cast<std::size_t>(c - '0');
      }
      m.level = level;
    }
  } else if (spec.find('+') != std::string_view::npos) {
    m.kind = Kind::Factored;
    m.tuple = FactorTuple::parse(spec);
  } else {
    throw std::invalid_argument("unknown granularity mode '" + std::string(spec) + "'");
  }
  return m;
}

TokenStream tokenize(const SegmentedSentence& s, const GranularityMode& mode,
                     const TokenizeContext& ctx) {
  auto need_decomposer = [&]() -> const Decomposer& {
    if (!ctx.decomposer) throw std::invalid_argument("mode requires an IDS dictionary");
    return *ctx.decomposer;
  };
  switch (mode.kind) {
    case GranularityMode::Kind::Word:
      return s.words;
    case GranularityMode::Kind::Char:
      return to_char_stream(s, ctx.boundary);
    case GranularityMode::Kind::Radical:
      return to_radical_stream(s, need_decomposer(), ctx.radical_map, ctx.decomp, ctx.boundary);
    case GranularityMode::Kind::Rxd: {
      DecompConfig cfg = ctx.decomp;
      cfg.level = mode.level;
      return to_rxd_stream(s, need_decomposer(), cfg, ctx.boundary);
    }
    case GranularityMode::Kind::Factored: {
      const bool uses_radicals = std::find(mode.tuple.factors.begin(), mode.tuple.factors.end(),
                                           Factor::Radical) != mode.tuple.factors.end();
      static const IdsDictionary kEmpty;
      static const Decomposer kNoDict(kEmpty);
      const Decomposer& dec = uses_radicals ? need_decomposer()
                                            : (ctx.decomposer ? *ctx.decomposer : kNoDict);
      return to_factored_stream(s, dec, mode.tuple, ctx.radical_map, ctx.decomp);
    }
  }
  return {};
}

std::size_t count_word_spans(std::span<const std::string> tokens, const BoundaryOptions& boundary) {
  if (tokens.empty()) return 0;
  std::size_t spans = 1;
  for (const auto& t : tokens) {
    if (boundary.style == BoundaryStyle::Prefix && t.starts_with(boundary.prefix_marker)) ++spans;
    if (boundary.style == BoundaryStyle::Separator && t == boundary.separator_token) ++spans;
  }
  return spans;
}

std::string VocabReport::render() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", coverage);
  return "vocab_size=" + std::to_string(vocab_size) + "\ntop_n=" + std::to_string(top_n) +
         "\ncoverage=" + buf + "\n";
}

VocabReport vocab_stats(std::span<const std::string> tokens, std::size_t top_n) {
  std::unordered_map<std::string_view, std::size_t> freq;
  for (const auto& t : tokens) ++freq[t];
  std::vector<std::pair<std::string_view, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  VocabReport r;
  r.vocab_size = ranked.size();
  r.top_n = top_n;
  r.total_tokens = tokens.size();
  std::size_t covered = 0;
  for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i) covered += ranked[i].second;
  r.coverage = tokens.empty() ? 0.0 : static_cast<double>(covered) / static_cast<double>(tokens.size());
  return r;
}

RadicalMap load_radical_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open radical map: " + path);
  RadicalMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = utf8::split_ws(line);
    std::u32string ch, rad;
    if (fields.size() == 2) {
      ch = utf8::decode(fields[0]);
      rad = utf8::decode(fields[1]);
    }
    if (ch.size() != 1 || rad.size() != 1) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected CHAR<TAB>RADICAL");
    }
    map[ch[0]] = rad[0];
  }
  return map;
}

std::vector<std::string> map_lines(const std::vector<std::string>& lines,
                                   const std::function<std::string(const std::string&)>& fn,
                                   std::size_t jobs) {
  std::vector<std::string> out(lines.size());
  jobs = std::max<std::size_t>(1, std::min(jobs, lines.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < lines.size(); ++i) out[i] = fn(lines[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  const std::size_t chunk = (lines.size() + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(lines.size(), (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) out[i] = fn(lines[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace zhdecomp
