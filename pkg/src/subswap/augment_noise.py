"""Depth-weighted source-side noising: blanking, dropout and frequency-matched replacement.

Words near the root are treated as carrying the meaning, so the chance of
picking a word grows with its depth: q = 1 - 2**-(depth - 1), then a softmax
over q gives the selection distribution. Only the source side is touched.
"""

from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .corpus_io import Sentence
from .deptree import DepTree, depths

BLANK = "BLANK"
NOISE_METHODS = ("blank", "dropout", "replace")


@dataclass
class SelectionModel:
    d: np.ndarray  # depth per token, root = 1
    q: np.ndarray
    p: np.ndarray

    def __len__(self):
        return len(self.d)


def raw_chance(depth: int) -> float:
    return 1.0 - 2.0 ** -(depth - 1)


def selection_probs(tree: DepTree) -> SelectionModel:
    d = np.asarray(depths(tree), dtype=np.int64)
    q = 1.0 - np.power(2.0, -(d - 1).astype(float))
    z = np.exp(q - q.max())
    return SelectionModel(d=d, q=q, p=z / z.sum())


def default_count(n: int, ratio: float = 0.15) -> int:
    return max(1, math.floor(ratio * n + 0.5))


def select_words(model: SelectionModel, count: int | None, rng: np.random.Generator,
                 mode: str = "softmax", ratio: float = 0.15) -> set[int]:
    """Pick token ordinals (1-based) to noise.

    ``softmax`` draws ``count`` distinct tokens without replacement from p;
    ``bernoulli`` keeps each token independently with chance q and ignores
    ``count``.
    """
    n = len(model)
    if mode == "bernoulli":
        keep = rng.random(n) < model.q
        return {i + 1 for i in np.flatnonzero(keep)}
    if mode != "softmax":
        raise ValueError(f"unknown selection mode {mode!r}")
    if count is None:
        count = default_count(n, ratio)
    if not 0 <= count <= n:
        raise ValueError(f"cannot select {count} of {n} tokens")
    picked = rng.choice(n, size=count, replace=False, p=model.p)
    return {int(i) + 1 for i in picked}


def _forms(sentence) -> list[str]:
    if isinstance(sentence, Sentence):
        return sentence.forms
    if isinstance(sentence, str):
        return sentence.split()
    return list(sentence)


def apply_blank(sentence, selected: Iterable[int]) -> str:
    selected = set(selected)
    return " ".join(BLANK if i in selected else w for i, w in enumerate(_forms(sentence), 1))


def apply_dropout(sentence, selected: Iterable[int]) -> str:
    """Delete the selected tokens; an empty result means the sample is degenerate."""
    selected = set(selected)
    return " ".join(w for i, w in enumerate(_forms(sentence), 1) if i not in selected)


class FreqTable:
    """Unigram counts with nearest-count lookup."""

    def __init__(self, counts: Mapping[str, int]):
        for word, c in counts.items():
            if c <= 0:
                raise ValueError(f"count for {word!r} must be positive, got {c}")
        self.counts = dict(counts)
        self._sorted = sorted((c, w) for w, c in self.counts.items())
        self._keys = [c for c, _ in self._sorted]

    @classmethod
    def from_sentences(cls, sentences: Iterable) -> FreqTable:
        counter = Counter()
        for s in sentences:
            counter.update(_forms(s))
        return cls(counter)

    def __len__(self):
        return len(self.counts)

    def nearest(self, word: str) -> str:
        """Different word with the closest count; ties go to the lexicographically smallest.

        Unseen words are treated as count 0.
        """
        target = self.counts.get(word, 0)
        lo = bisect.bisect_left(self._keys, target)
        best = None
        # walk outward from the insertion point until distance can only grow
        left, right = lo - 1, lo
        while left >= 0 or right < len(self._sorted):
            dl = target - self._keys[left] if left >= 0 else math.inf
            dr = self._keys[right] - target if right < len(self._sorted) else math.inf
            dist = min(dl, dr)
            if best is not None and dist > best[0]:
                break
            if dl <= dr:
                c, w = self._sorted[left]
                left -= 1
            else:
                c, w = self._sorted[right]
                right += 1
            if w != word and (best is None or (dist, w) < best):
                best = (dist, w)
        if best is None:
            raise ValueError(f"frequency table has no alternative to {word!r}")
        return best[1]

    def to_tsv(self) -> str:
        rows = sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return "".join(f"{w}\t{c}\n" for w, c in rows)

    @classmethod
    def from_tsv(cls, text: str) -> FreqTable:
        counts = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line:
                continue
            word, _, count = line.rpartition("\t")
            if not word:
                raise ValueError(f"line {lineno}: expected word<TAB>count")
            counts[word] = int(count)
        return cls(counts)


def apply_replace(sentence, selected: Iterable[int], freq: FreqTable) -> str:
    if not len(freq):
        raise ValueError("frequency table is empty")
    selected = set(selected)
    return " ".join(freq.nearest(w) if i in selected else w for i, w in enumerate(_forms(sentence), 1))


def noise_sentence(method: str, sentence: Sentence, tree: DepTree, rng: np.random.Generator,
                   freq: FreqTable | None = None, count: int | None = None,
                   mode: str = "softmax", ratio: float = 0.15) -> str:
    model = selection_probs(tree)
    selected = select_words(model, count, rng, mode=mode, ratio=ratio)
    if method == "blank":
        return apply_blank(sentence, selected)
    if method == "dropout":
        return apply_dropout(sentence, selected)
    if method == "replace":
        if freq is None:
            raise ValueError("replacement needs a frequency table")
        return apply_replace(sentence, selected, freq)
    raise ValueError(f"unknown noising method {method!r}; expected one of {NOISE_METHODS}")
