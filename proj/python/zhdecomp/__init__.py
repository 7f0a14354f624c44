"""Chinese character decomposition, MWE extraction and BLEU."""

from ._core import (
    BleuError,
    Dictionary,
    IdsError,
    IdsTree,
    MweError,
    __version__,
    augment,
    bleu,
    dice,
    extract_mwes,
    pair_and_score,
    parse_ids,
    prune,
    render_ids,
    tokenize,
    vocab_stats,
)

__all__ = [
    "BleuError",
    "Dictionary",
    "IdsError",
    "IdsTree",
    "MweError",
    "__version__",
    "augment",
    "bleu",
    "dice",
    "extract_mwes",
    "pair_and_score",
    "parse_ids",
    "prune",
    "render_ids",
    "tokenize",
    "vocab_stats",
]
