#!/usr/bin/env python3
"""Generate the bundled synthetic zh-en parallel sample used by the tests.

Writes four line-aligned files into the output directory:
  zh.tag  Chinese, word|POS tokens
  en.tag  English, word|POS|lemma tokens
  zh.seg  Chinese, space-segmented words
  en.txt  English, plain tokens

The output is fully determined by --seed and --lines.
"""

import argparse
import pathlib
import random

# (zh words with POS, en words with POS and lemma)
MWES = [
    ([("高尔夫球", "NN"), ("俱乐部", "NN")], [("golf", "NN", "golf"), ("club", "NN", "club")]),
    ([("国家", "NN"), ("公园", "NN")], [("national", "JJ", "national"), ("park", "NN", "park")]),
    ([("城市", "NN"), ("医院", "NN")], [("city", "NN", "city"), ("hospital", "NN", "hospital")]),
    ([("新", "JJ"), ("桥梁", "NN")], [("new", "JJ", "new"), ("bridge", "NN", "bridge")]),
    ([("森林", "NN"), ("道路", "NN")], [("forest", "NN", "forest"), ("road", "NN", "road")]),
    ([("大", "JJ"), ("湖", "NN")], [("big", "JJ", "big"), ("lake", "NN", "lake")]),
    ([("高", "JJ"), ("树", "NN")], [("tall", "JJ", "tall"), ("tree", "NN", "tree")]),
    ([("花园", "NN"), ("房子", "NN")], [("garden", "NN", "garden"), ("house", "NN", "house")]),
    ([("学生", "NN"), ("问题", "NN")], [("student", "NN", "student"), ("problems", "NNS", "problem")]),
    ([("东方", "NN"), ("大桥", "NN")], [("east", "JJ", "east"), ("bridge", "NN", "bridge")]),
]

# Occasional looser English renderings, so scores are not all 1.0.
VARIANTS = {
    0: [("golf", "NN", "golf"), ("course", "NN", "course")],
    2: [("hospital", "NN", "hospital")],
    5: [("large", "JJ", "large"), ("lake", "NN", "lake")],
}

NOUNS = [
    (("老师", "NN"), ("teacher", "NN", "teacher")),
    (("病人", "NN"), ("patient", "NN", "patient")),
    (("河", "NN"), ("river", "NN", "river")),
    (("海", "NN"), ("sea", "NN", "sea")),
    (("中国", "NR"), ("China", "NNP", "China")),
    (("家", "NN"), ("home", "NN", "home")),
    (("京城", "NN"), ("capital", "NN", "capital")),
    (("亭子", "NN"), ("pavilion", "NN", "pavilion")),
    (("画", "NN"), ("painting", "NN", "painting")),
    (("区", "NN"), ("district", "NN", "district")),
    (("江", "NN"), ("stream", "NN", "stream")),
    (("工人", "NN"), ("worker", "NN", "worker")),
    (("空气", "NN"), ("air", "NN", "air")),
    (("哥哥", "NN"), ("brother", "NN", "brother")),
    (("荷花", "NN"), ("lotus", "NN", "lotus")),
    (("晴天", "NN"), ("sunshine", "NN", "sunshine")),
    (("精神", "NN"), ("spirit", "NN", "spirit")),
    (("眼睛", "NN"), ("eye", "NN", "eye")),
    (("面包", "NN"), ("bread", "NN", "bread")),
    (("饺子", "NN"), ("dumpling", "NN", "dumpling")),
    (("炮", "NN"), ("cannon", "NN", "cannon")),
    (("妈妈", "NN"), ("mother", "NN", "mother")),
    (("号码", "NN"), ("number", "NN", "number")),
    (("房间", "NN"), ("room", "NN", "room")),
    (("星星", "NN"), ("star", "NN", "star")),
    (("姓名", "NN"), ("name", "NN", "name")),
    (("柱子", "NN"), ("pillar", "NN", "pillar")),
    (("学校", "NN"), ("school", "NN", "school")),
    (("郊区", "NN"), ("suburb", "NN", "suburb")),
    (("水池", "NN"), ("pool", "NN", "pool")),
    (("地方", "NN"), ("place", "NN", "place")),
    (("爸爸", "NN"), ("father", "NN", "father")),
    (("新闻", "NN"), ("report", "NN", "report")),
    (("时间", "NN"), ("moment", "NN", "moment")),
    (("面粉", "NN"), ("flour", "NN", "flour")),
    (("盆", "NN"), ("basin", "NN", "basin")),
    (("故事", "NN"), ("story", "NN", "story")),
    (("姑姑", "NN"), ("aunt", "NN", "aunt")),
    (("海洋", "NN"), ("ocean", "NN", "ocean")),
    (("伯伯", "NN"), ("uncle", "NN", "uncle")),
    (("柏树", "NN"), ("cypress", "NN", "cypress")),
    (("钟", "NN"), ("clock", "NN", "clock")),
    (("种子", "NN"), ("seed", "NN", "seed")),
    (("铃", "NN"), ("bell", "NN", "bell")),
    (("领导", "NN"), ("leader", "NN", "leader")),
    (("地", "NN"), ("field", "NN", "field")),
    (("红旗", "NN"), ("flag", "NN", "flag")),
    (("功夫", "NN"), ("skill", "NN", "skill")),
    (("纺车", "NN"), ("wheel", "NN", "wheel")),
]

VERBS = [
    (("建设", "VV"), ("builds", "VBZ", "build")),
    (("进入", "VV"), ("enters", "VBZ", "enter")),
    (("访问", "VV"), ("visits", "VBZ", "visit")),
    (("看", "VV"), ("sees", "VBZ", "see")),
    (("喜欢", "VV"), ("likes", "VBZ", "like")),
    (("抱", "VV"), ("hugs", "VBZ", "hug")),
    (("拍", "VV"), ("photographs", "VBZ", "photograph")),
    (("放", "VV"), ("releases", "VBZ", "release")),
    (("防", "VV"), ("guards", "VBZ", "guard")),
    (("爬", "VV"), ("climbs", "VBZ", "climb")),
    (("闻", "VV"), ("smells", "VBZ", "smell")),
    (("请", "VV"), ("invites", "VBZ", "invite")),
    (("骂", "VV"), ("scolds", "VBZ", "scold")),
    (("注意", "VV"), ("notices", "VBZ", "notice")),
    (("怕", "VV"), ("fears", "VBZ", "fear")),
    (("冲", "VV"), ("rushes", "VBZ", "rush")),
    (("仿", "VV"), ("imitates", "VBZ", "imitate")),
    (("驻", "VV"), ("garrisons", "VBZ", "garrison")),
]

ADVERBS = [
    (("很快", "AD"), ("quickly", "RB", "quickly")),
    (("再", "AD"), ("again", "RB", "again")),
    (("详细", "AD"), ("carefully", "RB", "carefully")),
    (("忠", "AD"), ("loyally", "RB", "loyally")),
]


def noun_phrase(rng):
    """Returns (zh tokens, en tokens) for a subject or object slot."""
    if rng.random() < 0.45:
        i = rng.randrange(len(MWES))
        zh, en = MWES[i]
        if i in VARIANTS and rng.random() < 0.08:
            en = VARIANTS[i]
        return list(zh), [("the", "DT", "the")] + list(en)
    if rng.random() < 0.15:
        n = rng.randint(2, 9)
        (zw, zp), (ew, ep, el) = rng.choice(NOUNS)
        return ([(str(n), "CD"), ("个", "M"), (zw, zp)],
                [(str(n), "CD", str(n)), (ew + "s", ep + "S", el)])
    (zw, zp), en = rng.choice(NOUNS)
    return [(zw, zp)], [("the", "DT", "the"), en]


def sentence(rng):
    zs, es = noun_phrase(rng)
    zo, eo = noun_phrase(rng)
    zv, ev = rng.choice(VERBS)
    zh = list(zs)
    en = list(es)
    if rng.random() < 0.3:
        za, ea = rng.choice(ADVERBS)
        zh.append(za)
        zh.append(zv)
        en.append(ev)
        en.extend(eo)
        en.append(ea)
    else:
        zh.append(zv)
        en.append(ev)
        en.extend(eo)
    zh.extend(zo)
    zh.append(("。", "PU"))
    en.append((".", ".", "."))
    return zh, en


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="tests/data/sample")
    ap.add_argument("--lines", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=20210914)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    zh_tag, en_tag, zh_seg, en_txt = [], [], [], []
    for _ in range(args.lines):
        zh, en = sentence(rng)
        zh_tag.append(" ".join(f"{w}|{p}" for w, p in zh))
        en_tag.append(" ".join(f"{w}|{p}|{l}" for w, p, l in en))
        zh_seg.append(" ".join(w for w, _ in zh))
        en_txt.append(" ".join(w for w, _, _ in en))
    for name, rows in (("zh.tag", zh_tag), ("en.tag", en_tag), ("zh.seg", zh_seg), ("en.txt", en_txt)):
        (out / name).write_text("\n".join(rows) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
