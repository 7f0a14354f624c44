#include "zhdecomp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "zhdecomp/augment.hpp"
#include "zhdecomp/bleu.hpp"
#include "zhdecomp/corpus.hpp"
#include "zhdecomp/decomposer.hpp"
#include "zhdecomp/ids.hpp"
#include "zhdecomp/mwe.hpp"
#include "zhdecomp/utf8.hpp"

namespace zhdecomp {

namespace {

// Bad flag values detected after parsing; mapped to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t to_size(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("config key '" + key + "' needs a non-negative integer");
  }
  return std::stoull(v);
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  PipelineConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string value = trim(t.substr(eq + 1));
    if (key == "ids" || key == "ids_path") {
      cfg.ids_path = value;
    } else if (key == "region" || key == "region_preference") {
      cfg.region_preference = value;
    } else if (key == "level") {
      cfg.level = to_size(key, value);
    } else if (key == "boundary") {
      cfg.boundary = value;
    } else if (key == "top_n_word") {
      cfg.top_n_word = to_size(key, value);
    } else if (key == "top_n_char") {
      cfg.top_n_char = to_size(key, value);
    } else if (key == "top_n_radical") {
      cfg.top_n_radical = to_size(key, value);
    } else if (key == "threshold" || key == "mwe_threshold") {
      std::size_t used = 0;
      cfg.mwe_threshold = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("bad threshold '" + value + "'");
    } else if (key == "min_freq") {
      cfg.min_freq = to_size(key, value);
    } else {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

namespace {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::vector<std::string> read_lines_from(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(std::move(line));
  return lines;
}

std::vector<std::string> read_lines(const std::string& path, std::istream& fallback) {
  if (path.empty() || path == "-") return read_lines_from(fallback);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_lines_from(in);
}

std::unique_ptr<std::istream> open_input(const std::string& path) {
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw std::runtime_error("cannot open " + path);
  return in;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& l : lines) out << l << '\n';
}

BoundaryOptions parse_boundary(const std::string& name, const std::string& marker) {
  BoundaryOptions b;
  if (name == "prefix") {
    b.style = BoundaryStyle::Prefix;
  } else if (name == "sep") {
    b.style = BoundaryStyle::Separator;
  } else if (name == "none") {
    b.style = BoundaryStyle::None;
  } else {
    throw UsageError("--boundary must be prefix, sep or none");
  }
  if (!marker.empty()) {
    if (b.style == BoundaryStyle::Separator) {
      b.separator_token = marker;
    } else {
      b.prefix_marker = marker;
    }
  }
  return b;
}

DecompConfig make_decomp(std::size_t level, const std::string& region, bool emit_operators) {
  DecompConfig cfg;
  cfg.level = level;
  cfg.emit_operators = emit_operators;
  try {
    cfg.region_preference = DecompConfig::parse_preference(region);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

IdsDictionary load_dict(const std::string& path, bool skip_malformed, std::ostream& err) {
  if (path.empty()) throw UsageError("an IDS dictionary is required (--ids or ids= in --config)");
  auto dict = load_ids_file(path, skip_malformed ? MalformedPolicy::Skip : MalformedPolicy::Abort);
  if (!dict.skipped().empty()) {
    err << "warning: skipped " << dict.skipped().size() << " malformed IDS line(s)\n";
  }
  if (dict.duplicate_count()) {
    err << "warning: " << dict.duplicate_count() << " duplicate IDS character line(s), last kept\n";
  }
  return dict;
}

std::string join_pieces(const PieceSequence& pieces) {
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += ' ';
    utf8::append(out, pieces[i]);
  }
  return out;
}

std::string config_path_from(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return {};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  PipelineConfig pc;
  try {
    if (auto path = config_path_from(args); !path.empty()) pc = PipelineConfig::load(path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Chinese character decomposition, MWE extraction and BLEU toolkit", "zhdecomp"};
  app.require_subcommand(1);
  std::string config_file;
  app.add_option("--config", config_file, "key=value defaults file")->check(CLI::ExistingFile);

  // Shared settings, copied per subcommand so every one of them lists its flags.
  std::string ids_path = pc.ids_path;
  std::string region = pc.region_preference;
  std::size_t level = pc.level;
  std::string boundary = pc.boundary;
  std::string marker;
  bool skip_malformed = false;
  bool emit_operators = false;
  std::string input;
  std::size_t jobs = 1;

  auto add_dict_opts = [&](CLI::App* sub) {
    sub->add_option("--ids", ids_path, "IDS dictionary file");
    sub->add_option("--region", region, "region preference, e.g. G or GHT")->capture_default_str();
    sub->add_flag("--skip-malformed", skip_malformed, "skip and count malformed IDS lines");
  };

  // decompose
  auto* decompose = app.add_subcommand("decompose", "decompose characters read line by line");
  add_dict_opts(decompose);
  decompose->add_option("--level", level, "decomposition level")->capture_default_str();
  decompose->add_flag("--emit-operators", emit_operators, "keep structure operators in the output");
  decompose->add_option("input", input, "input file (default stdin)");

  // tokenize
  std::string mode = "c";
  std::string delimiter;
  std::string radical_map_path;
  auto* tok = app.add_subcommand("tokenize", "word / character / radical / decomposed token streams");
  add_dict_opts(tok);
  tok->add_option("--mode", mode, "w, c, r, rxd, rxdN, or a tuple such as w+c+r")->capture_default_str();
  tok->add_option("--level", level, "decomposition level for rxd")->capture_default_str();
  tok->add_option("--boundary", boundary, "prefix, sep or none")->capture_default_str();
  tok->add_option("--marker", marker, "boundary marker (prefix) or token (sep)");
  tok->add_option("--delimiter", delimiter, "word delimiter (default whitespace)");
  tok->add_option("--radical-map", radical_map_path, "CHAR<TAB>RADICAL overrides");
  tok->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  tok->add_option("input", input, "segmented corpus (default stdin)");

  // extract-mwe
  std::string patterns_path;
  std::size_t min_freq = pc.min_freq;
  bool use_lemma = false;
  auto* extract = app.add_subcommand("extract-mwe", "pattern-based MWE candidates from a tagged corpus");
  extract->add_option("--patterns", patterns_path, "pattern file")->required();
  extract->add_option("--min-freq", min_freq, "minimum frequency")->capture_default_str();
  extract->add_flag("--lemma", use_lemma, "use lemmas instead of surface forms");
  extract->add_option("input", input, "tagged corpus (default stdin)");

  // pair-mwe
  std::string src_cands, tgt_cands, src_path, tgt_path;
  bool tagged = false;
  auto* pair = app.add_subcommand("pair-mwe", "Dice-scored bilingual MWE pairs");
  pair->add_option("--src-cands", src_cands, "source candidates TSV")->required();
  pair->add_option("--tgt-cands", tgt_cands, "target candidates TSV")->required();
  pair->add_option("--src", src_path, "source side of the parallel corpus")->required();
  pair->add_option("--tgt", tgt_path, "target side of the parallel corpus")->required();
  pair->add_flag("--tagged", tagged, "corpus tokens are surface|POS[|lemma]");
  pair->add_flag("--lemma", use_lemma, "match on lemmas (implies --tagged)");
  pair->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  // prune-mwe
  double threshold = pc.mwe_threshold;
  auto* prune_cmd = app.add_subcommand("prune-mwe", "drop BiMWE pairs scored below a threshold");
  prune_cmd->add_option("--threshold", threshold, "minimum score")->capture_default_str()->check(
      CLI::Range(0.0, 1.0));
  prune_cmd->add_option("input", input, "BiMWE TSV (default stdin)");

  // augment
  std::string pairs_path, out_src, out_tgt, zh_side = "src";
  std::size_t replication = 1;
  std::size_t decomp_level = 0;
  bool keep_plain = true;
  auto* aug = app.add_subcommand("augment", "append BiMWE pairs to a parallel corpus");
  add_dict_opts(aug);
  aug->add_option("--src", src_path, "source corpus")->required();
  aug->add_option("--tgt", tgt_path, "target corpus")->required();
  aug->add_option("--pairs", pairs_path, "BiMWE TSV")->required();
  aug->add_option("--out-src", out_src, "augmented source output")->required();
  aug->add_option("--out-tgt", out_tgt, "augmented target output")->required();
  aug->add_option("--replication", replication, "copies of each pair")->capture_default_str()->check(
      CLI::PositiveNumber);
  aug->add_option("--decomp-level", decomp_level, "decompose the Chinese side (0 = off)")
      ->capture_default_str();
  aug->add_flag("--keep-plain,!--no-keep-plain", keep_plain,
                "also append the plain pair next to the decomposed one");
  aug->add_option("--zh-side", zh_side, "src or tgt")->capture_default_str();
  aug->add_option("--boundary", boundary, "prefix, sep or none")->capture_default_str();
  aug->add_option("--marker", marker, "boundary marker (prefix) or token (sep)");

  // stats
  std::string kind = "word";
  std::size_t top_n = 0;
  auto* stats = app.add_subcommand("stats", "vocabulary size and top-N coverage of a token stream");
  stats->add_option("--kind", kind, "word, char or radical (selects the default top-N)")
      ->capture_default_str();
  stats->add_option("--top-n", top_n, "number of most frequent types");
  stats->add_option("input", input, "token stream (default stdin)");

  // bleu
  std::string hyp_path;
  std::vector<std::string> ref_paths;
  int max_n = kMaxBleuOrder;
  bool lc = false, cased = false;
  auto* bleu_cmd = app.add_subcommand("bleu", "cumulative multi-reference corpus BLEU");
  bleu_cmd->add_option("hypothesis", hyp_path, "hypothesis file")->required();
  bleu_cmd->add_option("--refs", ref_paths, "1 to 4 reference files")->required()->expected(1, 4);
  bleu_cmd->add_option("--max-n", max_n, "highest n-gram order")->capture_default_str()->check(
      CLI::Range(1, kMaxBleuOrder));
  bleu_cmd->add_flag("--lc", lc, "case-insensitive (default)");
  bleu_cmd->add_flag("--cased", cased, "case-sensitive");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (decompose->parsed()) {
      const auto dict = load_dict(ids_path, skip_malformed, err);
      const Decomposer dec(dict);
      const auto cfg = make_decomp(level, region, emit_operators);
      for (const auto& line : read_lines(input, in)) {
        std::u32string chars;
        for (char32_t c : utf8::decode(line)) {
          if (c != U' ' && c != U'\t' && c != U'\r') chars.push_back(c);
        }
        out << join_pieces(dec.decompose_sequence(chars, cfg)) << '\n';
      }
      if (dec.cycle_warnings()) {
        err << "warning: " << dec.cycle_warnings() << " dictionary cycle(s) cut during expansion\n";
      }
    } else if (tok->parsed()) {
      GranularityMode gm;
      try {
        gm = GranularityMode::parse(mode, level);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      TokenizeContext ctx;
      ctx.decomp = make_decomp(level, region, false);
      ctx.boundary = parse_boundary(boundary, marker);
      std::optional<IdsDictionary> dict;
      std::optional<Decomposer> dec;
      if (!ids_path.empty()) {
        dict.emplace(load_dict(ids_path, skip_malformed, err));
        dec.emplace(*dict);
        ctx.decomposer = &*dec;
      }
      RadicalMap radicals;
      if (!radical_map_path.empty()) {
        radicals = load_radical_map(radical_map_path);
        ctx.radical_map = &radicals;
      }
      const bool needs_dict =
          gm.kind == GranularityMode::Kind::Radical || gm.kind == GranularityMode::Kind::Rxd ||
          (gm.kind == GranularityMode::Kind::Factored &&
           std::find(gm.tuple.factors.begin(), gm.tuple.factors.end(), Factor::Radical) !=
               gm.tuple.factors.end());
      if (needs_dict && !ctx.decomposer) {
        throw UsageError("mode '" + mode + "' needs an IDS dictionary (--ids)");
      }
      const auto lines = read_lines(input, in);
      const auto result = map_lines(
          lines,
          [&](const std::string& line) {
            return utf8::join(tokenize(parse_segmented(line, delimiter), gm, ctx), " ");
          },
          jobs);
      for (const auto& l : result) out << l << '\n';
    } else if (extract->parsed()) {
      auto pin = open_input(patterns_path);
      const auto patterns = parse_patterns(*pin);
      if (patterns.empty()) throw UsageError("pattern file contains no patterns");
      std::vector<TaggedSentence> corpus;
      if (input.empty() || input == "-") {
        corpus = parse_tagged_corpus(in);
      } else {
        corpus = parse_tagged_corpus(*open_input(input));
      }
      const auto cands = extract_mwes(corpus, patterns, min_freq,
                                      use_lemma ? TokenField::Lemma : TokenField::Surface);
      out << render_candidates_tsv(cands);
    } else if (pair->parsed()) {
      const auto sc = parse_candidates_tsv(*open_input(src_cands));
      const auto tc = parse_candidates_tsv(*open_input(tgt_cands));
      auto load_side = [&](const std::string& path) {
        std::vector<std::vector<std::string>> sents;
        std::size_t line_no = 0;
        for (const auto& line : read_lines(path, in)) {
          ++line_no;
          if (tagged || use_lemma) {
            sents.push_back(sentence_words(parse_tagged_line(line, line_no),
                                           use_lemma ? TokenField::Lemma : TokenField::Surface));
          } else {
            sents.push_back(utf8::split_ws(line));
          }
        }
        return sents;
      };
      const auto ss = load_side(src_path);
      const auto ts = load_side(tgt_path);
      out << render_pairs_tsv(pair_and_score(sc, tc, ss, ts, jobs));
    } else if (prune_cmd->parsed()) {
      std::vector<BiMwePair> pairs;
      if (input.empty() || input == "-") {
        pairs = parse_pairs_tsv(in);
      } else {
        pairs = parse_pairs_tsv(*open_input(input));
      }
      out << render_pairs_tsv(prune(pairs, threshold));
    } else if (aug->parsed()) {
      const auto src = read_lines(src_path, in);
      const auto tgt = read_lines(tgt_path, in);
      AugmentPlan plan;
      plan.pairs = parse_pairs_tsv(*open_input(pairs_path));
      plan.replication = replication;
      plan.keep_plain = keep_plain;
      plan.boundary = parse_boundary(boundary, marker);
      if (zh_side == "src") {
        plan.chinese_side = ChineseSide::Source;
      } else if (zh_side == "tgt") {
        plan.chinese_side = ChineseSide::Target;
      } else {
        throw UsageError("--zh-side must be src or tgt");
      }
      std::optional<IdsDictionary> dict;
      std::optional<Decomposer> dec;
      if (decomp_level > 0) {
        plan.decomp = make_decomp(decomp_level, region, false);
        dict.emplace(load_dict(ids_path, skip_malformed, err));
        dec.emplace(*dict);
      }
      const auto result = augment_corpus(src, tgt, plan, dec ? &*dec : nullptr);
      write_lines(out_src, result.source);
      write_lines(out_tgt, result.target);
      out << "lines=" << result.source.size() << " appended=" << result.source.size() - src.size()
          << '\n';
    } else if (stats->parsed()) {
      std::size_t n = top_n;
      if (!stats->count("--top-n")) {
        if (kind == "word") {
          n = pc.top_n_word;
        } else if (kind == "char") {
          n = pc.top_n_char;
        } else if (kind == "radical") {
          n = pc.top_n_radical;
        } else {
          throw UsageError("--kind must be word, char or radical");
        }
      }
      std::vector<std::string> tokens;
      for (const auto& line : read_lines(input, in)) {
        for (auto& t : utf8::split_ws(line)) tokens.push_back(std::move(t));
      }
      out << vocab_stats(tokens, n).render();
    } else if (bleu_cmd->parsed()) {
      if (lc && cased) throw UsageError("--lc and --cased are mutually exclusive");
      const auto hyps = read_lines(hyp_path, in);
      std::vector<std::vector<std::string>> per_file;
      for (const auto& p : ref_paths) per_file.push_back(read_lines(p, in));
      for (const auto& r : per_file) {
        if (r.size() != hyps.size()) {
          throw BleuError(BleuError::Kind::ReferenceCountMismatch,
                          "reference file line count differs from hypothesis file");
        }
      }
      std::vector<std::vector<std::string>> refs(hyps.size());
      for (std::size_t i = 0; i < hyps.size(); ++i) {
        for (const auto& r : per_file) refs[i].push_back(r[i]);
      }
      BleuConfig cfg;
      cfg.max_n = max_n;
      cfg.case_insensitive = !cased;
      out << bleu(hyps, refs, cfg).render() << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace zhdecomp
