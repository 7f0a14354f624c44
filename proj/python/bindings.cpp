#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "zhdecomp/augment.hpp"
#include "zhdecomp/bleu.hpp"
#include "zhdecomp/corpus.hpp"
#include "zhdecomp/decomposer.hpp"
#include "zhdecomp/ids.hpp"
#include "zhdecomp/mwe.hpp"
#include "zhdecomp/utf8.hpp"

namespace py = pybind11;
using namespace zhdecomp;

namespace {

#define STRINGIFY_(x) #x
#define STRINGIFY(x) STRINGIFY_(x)

// A dictionary together with its memoizing decomposer.
struct PyDictionary {
  std::shared_ptr<IdsDictionary> dict;
  std::shared_ptr<Decomposer> dec;

  explicit PyDictionary(IdsDictionary d)
      : dict(std::make_shared<IdsDictionary>(std::move(d))), dec(std::make_shared<Decomposer>(*dict)) {}
};

char32_t single_char(const std::string& s) {
  const auto cps = utf8::decode(s);
  if (cps.size() != 1) throw py::value_error("expected a single character");
  return cps[0];
}

std::vector<std::string> pieces(const PieceSequence& seq) {
  std::vector<std::string> out;
  for (char32_t c : seq) out.push_back(utf8::encode(std::u32string(1, c)));
  return out;
}

DecompConfig make_config(std::size_t level, const std::string& region, bool emit_operators) {
  DecompConfig cfg;
  cfg.level = level;
  cfg.region_preference = DecompConfig::parse_preference(region);
  cfg.emit_operators = emit_operators;
  cfg.validate();
  return cfg;
}

BoundaryOptions make_boundary(const std::string& style, const std::optional<std::string>& marker) {
  BoundaryOptions b;
  if (style == "prefix") {
    b.style = BoundaryStyle::Prefix;
    if (marker) b.prefix_marker = *marker;
  } else if (style == "sep") {
    b.style = BoundaryStyle::Separator;
    if (marker) b.separator_token = *marker;
  } else if (style == "none") {
    b.style = BoundaryStyle::None;
  } else {
    throw py::value_error("boundary must be prefix, sep or none");
  }
  return b;
}

MweCandidate candidate(const std::string& surface) { return MweCandidate{utf8::split_ws(surface), 1, ""}; }

using PairTuple = std::tuple<std::string, std::string, double>;

std::vector<PairTuple> to_tuples(const std::vector<BiMwePair>& pairs) {
  std::vector<PairTuple> out;
  for (const auto& p : pairs) out.emplace_back(p.source.surface(), p.target.surface(), p.score);
  return out;
}

std::vector<BiMwePair> from_tuples(const std::vector<PairTuple>& tuples) {
  std::vector<BiMwePair> out;
  for (const auto& [s, t, score] : tuples) out.push_back(BiMwePair{candidate(s), candidate(t), score});
  return out;
}

std::vector<std::vector<std::string>> split_all(const std::vector<std::string>& lines) {
  std::vector<std::vector<std::string>> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(utf8::split_ws(l));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chinese character decomposition, MWE extraction and BLEU";
#ifdef VERSION_INFO
  m.attr("__version__") = STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif

  py::register_exception<IdsError>(m, "IdsError", PyExc_ValueError);
  py::register_exception<MweError>(m, "MweError", PyExc_ValueError);
  py::register_exception<BleuError>(m, "BleuError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const utf8::DecodeError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const LengthMismatchError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  // IDS expressions
  py::class_<IdsTree>(m, "IdsTree")
      .def_property_readonly("symbol", [](const IdsTree& t) { return utf8::encode(std::u32string(1, t.symbol())); })
      .def_property_readonly("children", &IdsTree::children)
      .def_property_readonly("is_leaf", &IdsTree::is_leaf)
      .def("leaves", [](const IdsTree& t) { return pieces(t.leaves()); })
      .def("depth", &IdsTree::depth)
      .def("__str__", &render_ids_expression)
      .def("__repr__", [](const IdsTree& t) { return "IdsTree('" + render_ids_expression(t) + "')"; })
      .def("__eq__", [](const IdsTree& a, const IdsTree& b) { return a == b; });

  m.def("parse_ids", &parse_ids_expression, py::arg("text"), "Parse one prefix-notation IDS expression.");
  m.def("render_ids", &render_ids_expression, py::arg("tree"));

  // Dictionary and decomposition
  py::class_<PyDictionary>(m, "Dictionary")
      .def_static(
          "load",
          [](const std::string& path, bool skip_malformed) {
            return PyDictionary(
                load_ids_file(path, skip_malformed ? MalformedPolicy::Skip : MalformedPolicy::Abort));
          },
          py::arg("path"), py::arg("skip_malformed") = false)
      .def_static(
          "from_text",
          [](const std::string& text, bool skip_malformed) {
            return PyDictionary(
                parse_ids_text(text, skip_malformed ? MalformedPolicy::Skip : MalformedPolicy::Abort));
          },
          py::arg("text"), py::arg("skip_malformed") = false)
      .def("__len__", [](const PyDictionary& d) { return d.dict->size(); })
      .def("__contains__", [](const PyDictionary& d, const std::string& c) { return d.dict->contains(single_char(c)); })
      .def_property_readonly("source_count", [](const PyDictionary& d) { return d.dict->source_count(); })
      .def_property_readonly("duplicate_count", [](const PyDictionary& d) { return d.dict->duplicate_count(); })
      .def_property_readonly("skipped_lines",
                             [](const PyDictionary& d) {
                               std::vector<std::size_t> lines;
                               for (const auto& s : d.dict->skipped()) lines.push_back(s.line);
                               return lines;
                             })
      .def(
          "variants",
          [](const PyDictionary& d, const std::string& c) {
            std::vector<std::pair<std::string, std::string>> out;
            if (const IdsEntry* e = d.dict->find(single_char(c))) {
              for (const auto& v : e->variants) {
                std::string tags;
                for (auto t : v.tags) tags += t.code;
                out.emplace_back(render_ids_expression(v.tree), tags);
              }
            }
            return out;
          },
          py::arg("char"), "(expression, region tags) for every variant of a character.")
      .def("render", [](const PyDictionary& d) { return render_ids_file(*d.dict); })
      .def(
          "decompose",
          [](const PyDictionary& d, const std::string& text, std::size_t level, const std::string& region,
             bool emit_operators) {
            std::u32string chars;
            for (char32_t c : utf8::decode(text)) {
              if (c != U' ' && c != U'\t' && c != U'\r' && c != U'\n') chars.push_back(c);
            }
            const auto cfg = make_config(level, region, emit_operators);
            py::gil_scoped_release release;
            return pieces(d.dec->decompose_sequence(chars, cfg));
          },
          py::arg("text"), py::arg("level") = 1, py::arg("region") = "G", py::arg("emit_operators") = false,
          "Level-L pieces of every character in text, whitespace ignored.")
      .def(
          "fixed_point_level",
          [](const PyDictionary& d, const std::string& c, const std::string& region) {
            return d.dec->fixed_point_level(single_char(c), make_config(1, region, false));
          },
          py::arg("char"), py::arg("region") = "G")
      .def_property_readonly("cycle_warnings", [](const PyDictionary& d) { return d.dec->cycle_warnings(); });

  // Corpus streams
  m.def(
      "tokenize",
      [](const std::string& line, const std::string& mode, const PyDictionary* dictionary, std::size_t level,
         const std::string& boundary, const std::optional<std::string>& marker, const std::string& region,
         const std::string& delimiter) {
        TokenizeContext ctx;
        ctx.decomposer = dictionary ? dictionary->dec.get() : nullptr;
        ctx.decomp = make_config(level, region, false);
        ctx.boundary = make_boundary(boundary, marker);
        return tokenize(parse_segmented(line, delimiter), GranularityMode::parse(mode, level), ctx);
      },
      py::arg("line"), py::arg("mode") = "c", py::arg("dictionary") = nullptr, py::arg("level") = 1,
      py::arg("boundary") = "prefix", py::arg("marker") = std::nullopt, py::arg("region") = "G",
      py::arg("delimiter") = "",
      "Tokens of one segmented line under a granularity mode (w, c, r, rxdN or a factor tuple).");

  m.def(
      "vocab_stats",
      [](const std::vector<std::string>& tokens, std::size_t top_n) {
        const auto r = vocab_stats(tokens, top_n);
        py::dict d;
        d["vocab_size"] = r.vocab_size;
        d["top_n"] = r.top_n;
        d["total_tokens"] = r.total_tokens;
        d["coverage"] = r.coverage;
        return d;
      },
      py::arg("tokens"), py::arg("top_n") = 30000);

  // MWEs
  m.def(
      "extract_mwes",
      [](const std::vector<std::string>& tagged_lines, const std::vector<std::string>& patterns,
         std::size_t min_freq, bool lemma) {
        std::vector<TaggedSentence> corpus;
        for (std::size_t i = 0; i < tagged_lines.size(); ++i) {
          corpus.push_back(parse_tagged_line(tagged_lines[i], i + 1));
        }
        std::vector<MwePattern> pats;
        for (std::size_t i = 0; i < patterns.size(); ++i) pats.push_back(MwePattern::parse(patterns[i], i + 1));
        std::vector<std::tuple<std::string, std::size_t, std::string>> out;
        for (const auto& c : extract_mwes(corpus, pats, min_freq, lemma ? TokenField::Lemma : TokenField::Surface)) {
          out.emplace_back(c.surface(), c.frequency, c.pattern_name);
        }
        return out;
      },
      py::arg("tagged_lines"), py::arg("patterns"), py::arg("min_freq") = 1, py::arg("lemma") = false,
      "(surface, frequency, pattern) candidates from word|POS[|lemma] lines.");

  m.def(
      "pair_and_score",
      [](const std::vector<std::string>& source_candidates, const std::vector<std::string>& target_candidates,
         const std::vector<std::string>& source_lines, const std::vector<std::string>& target_lines,
         std::size_t jobs) {
        std::vector<MweCandidate> sc, tc;
        for (const auto& s : source_candidates) sc.push_back(candidate(s));
        for (const auto& t : target_candidates) tc.push_back(candidate(t));
        const auto ss = split_all(source_lines), ts = split_all(target_lines);
        py::gil_scoped_release release;
        return to_tuples(pair_and_score(sc, tc, ss, ts, jobs));
      },
      py::arg("source_candidates"), py::arg("target_candidates"), py::arg("source_lines"),
      py::arg("target_lines"), py::arg("jobs") = 1, "Dice-scored (source, target, score) pairs.");

  m.def(
      "prune", [](const std::vector<PairTuple>& pairs, double threshold) {
        return to_tuples(prune(from_tuples(pairs), threshold));
      },
      py::arg("pairs"), py::arg("threshold") = kDefaultPruneThreshold);

  m.def("dice", &dice, py::arg("co"), py::arg("source_occurrences"), py::arg("target_occurrences"));

  // Augmentation
  m.def(
      "augment",
      [](const std::vector<std::string>& source, const std::vector<std::string>& target,
         const std::vector<PairTuple>& pairs, std::size_t replication, std::size_t decomp_level,
         const PyDictionary* dictionary, bool keep_plain, const std::string& zh_side, const std::string& boundary,
         const std::string& region) {
        AugmentPlan plan;
        plan.pairs = from_tuples(pairs);
        plan.replication = replication;
        plan.keep_plain = keep_plain;
        plan.boundary = make_boundary(boundary, std::nullopt);
        if (zh_side == "src") {
          plan.chinese_side = ChineseSide::Source;
        } else if (zh_side == "tgt") {
          plan.chinese_side = ChineseSide::Target;
        } else {
          throw py::value_error("zh_side must be src or tgt");
        }
        if (decomp_level > 0) plan.decomp = make_config(decomp_level, region, false);
        const auto out = augment_corpus(source, target, plan, dictionary ? dictionary->dec.get() : nullptr);
        return std::make_pair(out.source, out.target);
      },
      py::arg("source"), py::arg("target"), py::arg("pairs"), py::arg("replication") = 1,
      py::arg("decomp_level") = 0, py::arg("dictionary") = nullptr, py::arg("keep_plain") = true,
      py::arg("zh_side") = "src", py::arg("boundary") = "prefix", py::arg("region") = "G",
      "Corpus lines with BiMWE pairs appended; returns (source, target).");

  // BLEU
  m.def(
      "bleu",
      [](const std::vector<std::string>& hypotheses, const std::vector<std::vector<std::string>>& references,
         int max_n, bool case_insensitive) {
        const auto s = bleu(hypotheses, references, BleuConfig{max_n, case_insensitive});
        py::dict d;
        d["bleu"] = s.per_n;
        d["precisions"] = s.precisions;
        d["brevity_penalty"] = s.brevity_penalty;
        d["hypothesis_length"] = s.hypothesis_length;
        d["reference_length"] = s.reference_length;
        d["text"] = s.render();
        return d;
      },
      py::arg("hypotheses"), py::arg("references"), py::arg("max_n") = kMaxBleuOrder,
      py::arg("case_insensitive") = true,
      "Corpus BLEU; references[i] lists the 1 to 4 references of hypotheses[i].");
}
