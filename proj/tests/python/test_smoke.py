import math
import os
import pathlib
import sys

import pytest

if os.environ.get("ZHDECOMP_PYTHON_DIR"):
    sys.path.insert(0, os.environ["ZHDECOMP_PYTHON_DIR"])

import zhdecomp  # noqa: E402

DATA = pathlib.Path(os.environ.get("ZHDECOMP_TEST_DATA", pathlib.Path(__file__).resolve().parents[1] / "data"))


@pytest.fixture(scope="module")
def fixture_dict():
    return zhdecomp.Dictionary.load(str(DATA / "ids_fixture.txt"))


def test_parse_render_round_trip():
    tree = zhdecomp.parse_ids("⿲氵木口")
    assert tree.symbol == "⿲"
    assert len(tree.children) == 3
    assert tree.leaves() == ["氵", "木", "口"]
    assert zhdecomp.render_ids(tree) == "⿲氵木口"
    assert str(zhdecomp.parse_ids("⿱双双")) == "⿱双双"


def test_parse_errors_raise_ids_error():
    with pytest.raises(zhdecomp.IdsError):
        zhdecomp.parse_ids("⿱双")
    with pytest.raises(ValueError):
        zhdecomp.parse_ids("木木")


def test_decompose(fixture_dict):
    assert "橋" in fixture_dict
    assert fixture_dict.decompose("橋") == ["木", "喬"]
    assert fixture_dict.decompose("叕", level=2) == ["又", "又", "又", "又"]
    assert fixture_dict.decompose("橋", emit_operators=True) == ["⿰", "木", "喬"]
    assert fixture_dict.decompose("房", level=2, region="T") == ["一", "尸", "方"]
    assert fixture_dict.variants("叕") == [("⿱双双", ""), ("⿰㕛㕛", "")]
    assert fixture_dict.fixed_point_level("木") == 0


def test_dictionary_from_text_skip_policy():
    d = zhdecomp.Dictionary.from_text("U+6728\t木\t木\nU+6A4B\t橋\t⿰木\n", skip_malformed=True)
    assert len(d) == 1
    assert d.skipped_lines == [2]
    with pytest.raises(zhdecomp.IdsError):
        zhdecomp.Dictionary.from_text("U+6A4B\t橋\t⿰木\n")


def test_tokenize_and_stats(fixture_dict):
    assert zhdecomp.tokenize("新 桥梁", "c") == ["新", "▁桥", "梁"]
    assert zhdecomp.tokenize("新 桥梁", "rxd1", fixture_dict, boundary="sep") == ["亲", "斤", "<wb>", "木", "乔", "氵", "刅", "木"]
    assert zhdecomp.tokenize("橋樑", "w+c+r", fixture_dict) == ["橋樑|橋+樑|木+木"]
    stats = zhdecomp.vocab_stats(list("abcdefghij"), top_n=5)
    assert stats["vocab_size"] == 10
    assert stats["coverage"] == pytest.approx(0.5)


def test_mwe_pipeline():
    src = ["golf|NN club|NN", "the|DT golf|NN club|NN", "city|NN park|NN"]
    tgt = ["高尔夫球|NN 俱乐部|NN", "高尔夫球|NN 俱乐部|NN", "城市|NN 公园|NN"]
    sc = zhdecomp.extract_mwes(src, ["NN+NN"])
    assert sc[0] == ("golf club", 2, "NN+NN")
    tc = zhdecomp.extract_mwes(tgt, ["NN+NN"])
    strip = lambda lines: [" ".join(t.split("|")[0] for t in l.split()) for l in lines]
    pairs = zhdecomp.pair_and_score([c[0] for c in sc], [c[0] for c in tc], strip(src), strip(tgt))
    assert ("golf club", "高尔夫球 俱乐部", 1.0) in pairs
    assert zhdecomp.prune([("a", "b", 0.98), ("c", "d", 0.84)]) == [("a", "b", 0.98)]
    assert zhdecomp.dice(5, 10, 10) == 0.5


def test_augment(fixture_dict):
    src, tgt = zhdecomp.augment(["x"] * 3, ["y"] * 3, [("橋", "bridge", 0.9)], replication=2)
    assert len(src) == len(tgt) == 5
    src, tgt = zhdecomp.augment([], [], [("橋", "bridge", 0.9)], decomp_level=1, dictionary=fixture_dict)
    assert src == ["橋", "木 喬"]
    assert tgt == ["bridge", "bridge"]


def test_bleu():
    out = zhdecomp.bleu(["a b c d"], [["a b c d e"]])
    assert out["bleu"][3] == pytest.approx(math.exp(1 - 5 / 4), abs=1e-4)
    same = zhdecomp.bleu(["the golf club opens today"], [["the golf club opens today"]])
    assert same["bleu"] == pytest.approx([1.0] * 4, abs=1e-9)
    with pytest.raises(zhdecomp.BleuError):
        zhdecomp.bleu([], [])
