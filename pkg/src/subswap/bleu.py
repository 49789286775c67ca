"""Corpus-level BLEU with a single reference per hypothesis, no smoothing."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

MAX_ORDER = 4
_TRAILING_PUNCT = re.compile(r"^(.*?[^.,!?;:])([.,!?;:]+)$")


def tokenize_for_bleu(text: str) -> list[str]:
    """Whitespace split, peeling trailing . , ! ? ; : off each word."""
    out = []
    for word in text.split():
        m = _TRAILING_PUNCT.match(word)
        if m:
            out.append(m.group(1))
            out.extend(m.group(2))
        else:
            out.append(word)
    return out


@dataclass
class BleuReport:
    bleu: float
    precisions: list[float]
    brevity_penalty: float
    hyp_length: int
    ref_length: int

    def to_tsv(self) -> str:
        rows = [("bleu", f"{self.bleu:.6f}"), ("bleu_x100", f"{100 * self.bleu:.1f}")]
        rows += [(f"p{i}", f"{p:.6f}") for i, p in enumerate(self.precisions, 1)]
        rows += [("brevity_penalty", f"{self.brevity_penalty:.6f}"),
                 ("hyp_length", str(self.hyp_length)), ("ref_length", str(self.ref_length))]
        return "metric\tvalue\n" + "".join(f"{k}\t{v}\n" for k, v in rows)


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def sentence_stats(hyp: Sequence[str], ref: Sequence[str], max_order: int = MAX_ORDER) -> list[int]:
    """[matches_1..N, totals_1..N, hyp_len, ref_len]; summing these merges corpora."""
    matches, totals = [], []
    for n in range(1, max_order + 1):
        h, r = ngram_counts(hyp, n), ngram_counts(ref, n)
        matches.append(sum(min(c, r[g]) for g, c in h.items()))
        totals.append(max(0, len(hyp) - n + 1))
    return matches + totals + [len(hyp), len(ref)]


def corpus_bleu(hypotheses: Sequence[Sequence[str]], references: Sequence[Sequence[str]],
                max_order: int = MAX_ORDER) -> BleuReport:
    if len(hypotheses) != len(references):
        raise ValueError(f"{len(hypotheses)} hypotheses vs {len(references)} references")
    if not hypotheses:
        raise ValueError("cannot score an empty corpus")
    agg = [0] * (2 * max_order + 2)
    for hyp, ref in zip(hypotheses, references):
        for i, v in enumerate(sentence_stats(hyp, ref, max_order)):
            agg[i] += v
    matches, totals = agg[:max_order], agg[max_order:2 * max_order]
    hyp_len, ref_len = agg[-2], agg[-1]
    precisions = [m / t if t else 0.0 for m, t in zip(matches, totals)]
    if hyp_len == 0:
        bp = 0.0
    elif hyp_len < ref_len:
        bp = math.exp(1 - ref_len / hyp_len)
    else:
        bp = 1.0
    if min(precisions) == 0.0:
        bleu = 0.0
    else:
        bleu = bp * math.exp(sum(math.log(p) for p in precisions) / max_order)
    return BleuReport(bleu, precisions, bp, hyp_len, ref_len)
