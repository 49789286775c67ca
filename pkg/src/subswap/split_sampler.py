"""Document-stratified splits, swap planning and same-lemma donor sampling."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .eligibility import EligiblePair

Size = Union[int, float]


@dataclass(frozen=True)
class SplitSpec:
    val_size: Size = 0.1
    test_size: Size = 0.1
    seed: int = 0


def _absolute(size: Size, n: int, name: str) -> int:
    if isinstance(size, float):
        if not 0.0 <= size <= 1.0:
            raise ValueError(f"{name} fraction must lie in [0, 1], got {size}")
        return math.floor(size * n + 0.5)
    if size < 0:
        raise ValueError(f"{name} must be non-negative, got {size}")
    return int(size)


def largest_remainder(total: int, weights: Sequence[int], caps: Sequence[int],
                      tiebreak: Sequence[float]) -> list[int]:
    """Distribute ``total`` proportionally to ``weights`` without exceeding ``caps``.

    Floors first, then one extra unit per bucket in order of decreasing
    fractional remainder (``tiebreak`` orders equal remainders).
    """
    wsum = sum(weights)
    if total > sum(caps):
        raise ValueError(f"cannot place {total} items in capacity {sum(caps)}")
    quotas = [total * w / wsum if wsum else 0.0 for w in weights]
    alloc = [min(math.floor(q), c) for q, c in zip(quotas, caps)]
    rest = total - sum(alloc)
    order = sorted(range(len(weights)), key=lambda i: (-(quotas[i] - math.floor(quotas[i])), tiebreak[i]))
    while rest > 0:
        progressed = False
        for i in order:
            if rest == 0:
                break
            if alloc[i] < caps[i]:
                alloc[i] += 1
                rest -= 1
                progressed = True
        if not progressed:
            raise AssertionError("largest remainder failed to place all items")
    return alloc


def stratified_split(pairs: Sequence, spec: SplitSpec = SplitSpec()):
    """Split into (train, val, test), sampling val/test within every document.

    Each document contributes to val and test in proportion to its share of
    the corpus; rounding follows largest remainder. Output lists keep the
    input order.
    """
    n = len(pairs)
    if n == 0:
        raise ValueError("cannot split an empty corpus")
    n_val = _absolute(spec.val_size, n, "val_size")
    n_test = _absolute(spec.test_size, n, "test_size")
    if n_val + n_test > n:
        raise ValueError(f"val ({n_val}) + test ({n_test}) exceed corpus size {n}")
    rng = np.random.default_rng(spec.seed)
    by_doc: dict[str, list[int]] = defaultdict(list)
    for i, p in enumerate(pairs):
        by_doc[p.doc_id].append(i)
    docs = sorted(by_doc)
    sizes = [len(by_doc[d]) for d in docs]
    tiebreak = rng.random(len(docs))
    val_alloc = largest_remainder(n_val, sizes, sizes, tiebreak)
    test_caps = [s - v for s, v in zip(sizes, val_alloc)]
    test_alloc = largest_remainder(n_test, sizes, test_caps, tiebreak)
    val_idx, test_idx = [], []
    for doc, nv, nt in zip(docs, val_alloc, test_alloc):
        members = rng.permutation(by_doc[doc])
        val_idx.extend(members[:nv].tolist())
        test_idx.extend(members[nv:nv + nt].tolist())
    val_set, test_set = set(val_idx), set(test_idx)
    train = [p for i, p in enumerate(pairs) if i not in val_set and i not in test_set]
    val = [pairs[i] for i in sorted(val_set)]
    test = [pairs[i] for i in sorted(test_set)]
    return train, val, test


@dataclass
class SwapPlan:
    donors: list[tuple[EligiblePair, EligiblePair]]
    target: int  # synthetic sentence pairs wanted
    requested: int  # donor pairs wanted
    shortfall: int = 0  # donor pairs that could not be drawn

    @property
    def outputs(self) -> int:
        return min(self.target, 2 * len(self.donors))


def target_count(base_size: int, ratio: float) -> int:
    if ratio <= 0:
        raise ValueError(f"augmentation ratio must be positive, got {ratio}")
    return math.ceil(ratio * base_size - 1e-9)


def plan_swaps(eligible: Sequence[EligiblePair], base_size: int, ratio: float, seed) -> SwapPlan:
    """Draw disjoint donor pairs uniformly without replacement.

    Each eligible pair donates at most once per plan; every donor pair yields
    two outputs, so ceil(target / 2) pairs are requested.
    """
    if len(eligible) < 2:
        raise ValueError(f"need at least 2 eligible pairs, got {len(eligible)}")
    target = target_count(base_size, ratio)
    requested = math.ceil(target / 2)
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(eligible))
    available = len(order) // 2
    k = min(requested, available)
    donors = [(eligible[order[2 * i]], eligible[order[2 * i + 1]]) for i in range(k)]
    return SwapPlan(donors, target, requested, requested - k)


@dataclass
class LemmaGroupIndex:
    groups: dict[tuple[str, ...], list[EligiblePair]] = field(default_factory=dict)
    key_side: str = "both"

    def sizes(self) -> dict[tuple[str, ...], int]:
        return {k: len(v) for k, v in self.groups.items()}


def lemma_key(ep: EligiblePair, key_side: str = "both") -> tuple[str, ...]:
    src, tgt = ep.predicate_lemmas()
    if key_side == "both":
        return (src, tgt)
    if key_side == "src":
        return (src,)
    if key_side == "tgt":
        return (tgt,)
    raise ValueError(f"key_side must be both, src or tgt, got {key_side!r}")


def build_lemma_index(eligible: Sequence[EligiblePair], key_side: str = "both") -> LemmaGroupIndex:
    groups: dict[tuple[str, ...], list[EligiblePair]] = defaultdict(list)
    for ep in eligible:
        groups[lemma_key(ep, key_side)].append(ep)
    return LemmaGroupIndex(dict(groups), key_side)


def _span_forms(ep: EligiblePair, which: str) -> tuple:
    out = []
    for sent, trip in ((ep.src, ep.src_triplet), (ep.tgt, ep.tgt_triplet)):
        span = trip.object_span if which == "obj" else trip.subject_span
        if span is None:
            out.append(None)
        else:
            out.append(tuple(t.form for t in sent.tokens[span.start - 1:span.end]))
    return tuple(out)


def sample_lemma_pairs(index: LemmaGroupIndex, demand: int, seed, which: str | None = None,
                       skip_identical: bool = True) -> tuple[list[tuple[EligiblePair, EligiblePair]], int]:
    """Round-robin over lemma groups, one disjoint donor pair per visit.

    Groups are visited in sorted key order starting from a seeded offset, so
    every group is equally likely to be reached when demand is small. With
    ``which`` set to "obj" or "subj" and ``skip_identical``, a candidate whose
    span is word-for-word the same as its partner's is passed over. Returns
    the donor pairs and the unmet demand.
    """
    usable = {k: v for k, v in index.groups.items() if len(v) >= 2}
    if not usable:
        raise ValueError("no lemma group has two or more pairs")
    rng = np.random.default_rng(seed)
    keys = sorted(usable)
    start = int(rng.integers(len(keys)))
    keys = keys[start:] + keys[:start]
    pools = {k: [usable[k][i] for i in rng.permutation(len(usable[k]))] for k in keys}
    out = []
    active = list(keys)
    while len(out) < demand and active:
        still = []
        for k in active:
            if len(out) >= demand:
                still.append(k)
                continue
            pool = pools[k]
            pair = None
            while len(pool) >= 2 and pair is None:
                a = pool.pop(0)
                for j, b in enumerate(pool):
                    if not (skip_identical and which and _span_forms(a, which) == _span_forms(b, which)):
                        pair = (a, pool.pop(j))
                        break
            if pair is not None:
                out.append(pair)
            if len(pool) >= 2:
                still.append(k)
        active = still
    return out, demand - len(out)


def format_plan(method: str, donors: Sequence[tuple[EligiblePair, EligiblePair]]) -> str:
    return "method\tdonor_a\tdonor_b\n" + "".join(
        f"{method}\t{a.pair_id}\t{b.pair_id}\n" for a, b in donors)
