"""Pair cleaning, the length/ratio filter, length statistics and threshold sweeps."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus_io import SentencePair, side_text

QUOTES = "\"\u201c\u201d\u201e\u201f\u00ab\u00bb\u2039\u203a"
SOFT_HYPHEN = "\u00ad"
QUANTILES = (0.25, 0.5, 0.75, 0.99, 0.999)


@dataclass(frozen=True)
class FilterConfig:
    max_words: int = 32  # exclusive
    max_word_diff: int = 7  # exclusive
    max_word_ratio: float = 1.6  # exclusive

    def __post_init__(self):
        if self.max_words <= 0 or self.max_word_diff <= 0 or self.max_word_ratio <= 0:
            raise ValueError("filter thresholds must be positive")


def clean_text(text: str) -> str:
    text = text.strip()
    while text and (text[0] in QUOTES or text[-1] in QUOTES):
        text = text.strip(QUOTES).strip()
    return text.replace(SOFT_HYPHEN, "-")


def clean_pair(pair: SentencePair) -> SentencePair | None:
    """Strip wrapping quotes and map soft hyphens; ``None`` means drop."""
    if not isinstance(pair.src, str) or not isinstance(pair.tgt, str):
        raise TypeError("clean_pair works on raw text pairs")
    src, tgt = clean_text(pair.src), clean_text(pair.tgt)
    if not src or not tgt:
        return None
    return SentencePair(src, tgt, doc_id=pair.doc_id, subcorpus=pair.subcorpus, pair_id=pair.pair_id)


def word_count(text: str) -> int:
    return len(text.split())


def length_verdict(ws: int, wt: int, config: FilterConfig = FilterConfig()) -> str | None:
    """Reason for rejection, or ``None`` if the pair is kept."""
    if not (0 < ws < config.max_words and 0 < wt < config.max_words):
        return "word-count"
    if abs(ws - wt) < config.max_word_diff:
        return None
    if max(ws, wt) / min(ws, wt) < config.max_word_ratio:
        return None
    return "diff-and-ratio"


def length_filter(pair: SentencePair, config: FilterConfig = FilterConfig()) -> bool:
    return length_verdict(word_count(side_text(pair.src)), word_count(side_text(pair.tgt)), config) is None


# -- statistics ----------------------------------------------------------------

def nearest_rank(sorted_values: Sequence[float], q: float) -> float:
    """Smallest value with at least ``q`` of the data at or below it."""
    n = len(sorted_values)
    rank = max(1, math.ceil(q * n))
    return sorted_values[rank - 1]


@dataclass
class Summary:
    count: int
    max: float
    min: float
    mean: float
    stdev: float  # population
    quantiles: dict[float, float]

    @classmethod
    def of(cls, values: Iterable[float]) -> Summary:
        vals = sorted(values)
        if not vals:
            raise ValueError("cannot summarize an empty sample")
        return cls(
            count=len(vals),
            max=vals[-1],
            min=vals[0],
            mean=statistics.fmean(vals),
            stdev=statistics.pstdev(vals),
            quantiles={q: nearest_rank(vals, q) for q in QUANTILES},
        )


@dataclass
class CorpusStats:
    lengths: dict[tuple[str, str], Summary]  # (side, unit) -> summary
    diff: dict[str, Summary]  # unit -> |src - tgt|
    ratio: dict[str, Summary]  # unit -> max/min, pairs with an empty side skipped

    def to_tsv(self) -> str:
        header = ["metric", "side", "unit", "count", "max", "min", "mean", "stdev"]
        header += [f"q{q:g}" for q in QUANTILES]
        lines = ["\t".join(header)]

        def row(metric, side, unit, s: Summary):
            vals = [s.count, s.max, s.min, f"{s.mean:.4f}", f"{s.stdev:.4f}"]
            vals += [s.quantiles[q] for q in QUANTILES]
            lines.append("\t".join([metric, side, unit] + [_fmt(v) for v in vals]))

        for (side, unit), s in self.lengths.items():
            row("length", side, unit, s)
        for unit, s in self.diff.items():
            row("diff", "pair", unit, s)
        for unit, s in self.ratio.items():
            row("ratio", "pair", unit, s)
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float) and not v.is_integer():
        return f"{v:.4f}"
    if isinstance(v, float):
        return str(int(v))
    return str(v)


def _lengths(text: str) -> dict[str, int]:
    return {"word": word_count(text), "char": len(text)}


def compute_stats(pairs: Iterable[SentencePair]) -> CorpusStats:
    cols: dict[tuple[str, str], list[int]] = {(s, u): [] for s in ("src", "tgt") for u in ("word", "char")}
    diffs: dict[str, list[int]] = {"word": [], "char": []}
    ratios: dict[str, list[float]] = {"word": [], "char": []}
    n = 0
    for pair in pairs:
        n += 1
        ls = _lengths(side_text(pair.src))
        lt = _lengths(side_text(pair.tgt))
        for unit in ("word", "char"):
            cols[("src", unit)].append(ls[unit])
            cols[("tgt", unit)].append(lt[unit])
            diffs[unit].append(abs(ls[unit] - lt[unit]))
            lo, hi = min(ls[unit], lt[unit]), max(ls[unit], lt[unit])
            if lo > 0:
                ratios[unit].append(hi / lo)
    if n == 0:
        raise ValueError("cannot compute statistics of an empty corpus")
    return CorpusStats(
        lengths={k: Summary.of(v) for k, v in cols.items()},
        diff={u: Summary.of(v) for u, v in diffs.items()},
        ratio={u: Summary.of(v) for u, v in ratios.items() if v},
    )


# -- threshold sweeps ------------------------------------------------------------

SWEEP_AXES = ("max_words", "ratio-with-fixed-count", "ratio-with-fixed-diff")


def _survives(axis: str, t: float, ws: int, wt: int, config: FilterConfig) -> bool:
    if axis == "max_words":
        return 0 < ws < t and 0 < wt < t
    if ws <= 0 or wt <= 0:
        return False
    ratio = max(ws, wt) / min(ws, wt)
    if axis == "ratio-with-fixed-count":
        return ws < config.max_words and wt < config.max_words and ratio < t
    if axis == "ratio-with-fixed-diff":
        return abs(ws - wt) < config.max_word_diff or ratio < t
    raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")


def threshold_sweep(pairs: Iterable[SentencePair], axis: str, grid: Sequence[float],
                    config: FilterConfig = FilterConfig()) -> list[tuple[float, float]]:
    """Fraction of pairs surviving each threshold on ``grid``.

    ``max_words`` sweeps the exclusive word-count bound. The two ratio axes
    sweep the ratio bound while holding either the word-count bound or the
    word-difference escape clause at its configured value.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    if not grid:
        raise ValueError("sweep grid must be non-empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("sweep grid must be ascending")
    counts = [(word_count(side_text(p.src)), word_count(side_text(p.tgt))) for p in pairs]
    if not counts:
        return [(t, 0.0) for t in grid]
    return [(t, sum(_survives(axis, t, ws, wt, config) for ws, wt in counts) / len(counts)) for t in grid]


def format_sweep(rows: Sequence[tuple[float, float]]) -> str:
    return "threshold\tremaining_fraction\n" + "".join(f"{t:g}\t{f:.6f}\n" for t, f in rows)
