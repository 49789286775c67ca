"""Stage implementations shared by the CLI and the experiment scripts."""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, TypeVar

import numpy as np

from .augment_noise import NOISE_METHODS, FreqTable, noise_sentence
from .augment_swap import AugmentedPair, swap
from .corpus_io import SentencePair, side_text
from .deptree import build_tree
from .eligibility import EligiblePair, LabelConfig, check_pair
from .split_sampler import build_lemma_index, plan_swaps, sample_lemma_pairs, target_count

SWAP_METHODS = ("obj", "subj", "obj-lemma", "subj-lemma", "pred")
ALL_METHODS = SWAP_METHODS + NOISE_METHODS

T = TypeVar("T")
R = TypeVar("R")


def derive_seed(seed: int, stage: str) -> int:
    digest = hashlib.sha256(f"{seed}:{stage}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def sharded_map(fn: Callable[[Sequence[T]], list[R]], items: Sequence[T], shards: int = 1) -> list[R]:
    """Apply ``fn`` to contiguous chunks and concatenate in input order."""
    if shards <= 1 or len(items) < 2:
        return fn(items)
    size = math.ceil(len(items) / shards)
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=shards) as pool:
        parts = list(pool.map(fn, chunks))
    return [x for part in parts for x in part]


def eligible_sharded(pairs: Sequence[SentencePair], labels: LabelConfig, shards: int = 1):
    results = sharded_map(lambda chunk: [check_pair(p, labels) for p in chunk], pairs, shards)
    eligible = [r for r in results if isinstance(r, EligiblePair)]
    tally: Counter = Counter()
    for r in results:
        if not isinstance(r, EligiblePair):
            tally[r.key] += 1
    return eligible, tally


@dataclass
class Synthetic:
    pair_id: str
    src: str
    tgt: str
    method: str
    donor_a: str
    donor_b: str


@dataclass
class AugmentResult:
    synthetic: list[Synthetic]
    target: int
    donors: list[tuple[str, str]] = field(default_factory=list)
    shortfall: int = 0
    degenerate: int = 0
    eligible: int = 0
    tally: dict = field(default_factory=dict)


def _method_key(method: str) -> str:
    return method.replace("-", "_")


def augment_swaps(pairs: Sequence[SentencePair], method: str, base_size: int, ratio: float, seed: int,
                  labels: LabelConfig = LabelConfig(), shards: int = 1) -> AugmentResult:
    eligible, tally = eligible_sharded(pairs, labels, shards)
    target = target_count(base_size, ratio)
    plan_seed = derive_seed(seed, f"plan:{method}")
    if method in ("obj-lemma", "subj-lemma"):
        index = build_lemma_index(eligible)
        donors, unmet = sample_lemma_pairs(index, math.ceil(target / 2), plan_seed,
                                           which=method.split("-")[0])
    else:
        plan = plan_swaps(eligible, base_size, ratio, plan_seed)
        donors, unmet = plan.donors, plan.shortfall
    key = _method_key(method)

    def run(chunk: Sequence[tuple[EligiblePair, EligiblePair]]) -> list[AugmentedPair]:
        out = []
        for a, b in chunk:
            out.extend(swap(key, a, b))
        return out

    produced = sharded_map(run, donors, shards)[:target]
    synthetic = [Synthetic(f"aug:{i}", ap.src_text, ap.tgt_text, key, ap.donor_a, ap.donor_b)
                 for i, ap in enumerate(produced)]
    return AugmentResult(synthetic, target, [(a.pair_id, b.pair_id) for a, b in donors], unmet,
                         eligible=len(eligible), tally=dict(tally))


def augment_noise(pairs: Sequence[SentencePair], method: str, base_size: int, ratio: float, seed: int,
                  shards: int = 1, mode: str = "softmax", word_ratio: float = 0.15) -> AugmentResult:
    """Noise the source side of sampled pairs; targets are copied untouched."""
    target = target_count(base_size, ratio)
    sub = derive_seed(seed, f"noise:{method}")
    order = np.random.default_rng(sub).permutation(len(pairs))[:target]
    freq = FreqTable.from_sentences(p.src for p in pairs) if method == "replace" else None

    def run(chunk):
        out = []
        for idx in chunk:
            pair = pairs[int(idx)]
            rng = np.random.default_rng([sub, int(idx)])
            text = noise_sentence(method, pair.src, build_tree(pair.src), rng, freq=freq,
                                  mode=mode, ratio=word_ratio)
            out.append((pair, text))
        return out

    synthetic = []
    degenerate = 0
    for pair, text in sharded_map(run, list(order), shards):
        if not text.strip():
            degenerate += 1
            continue
        synthetic.append(Synthetic(f"aug:{len(synthetic)}", text, side_text(pair.tgt), method, pair.pair_id, ""))
    return AugmentResult(synthetic, target, shortfall=max(0, target - len(order)), degenerate=degenerate)


def augment(pairs: Sequence[SentencePair], method: str, base_size: int, ratio: float, seed: int,
            labels: LabelConfig = LabelConfig(), shards: int = 1, **noise_kw) -> AugmentResult:
    if method in SWAP_METHODS:
        return augment_swaps(pairs, method, base_size, ratio, seed, labels, shards)
    if method in NOISE_METHODS:
        return augment_noise(pairs, method, base_size, ratio, seed, shards, **noise_kw)
    raise ValueError(f"unknown method {method!r}; expected one of {', '.join(ALL_METHODS)}")


def shuffle_into(train: Sequence[tuple[str, str]], synthetic: Sequence[Synthetic], seed: int):
    rows = list(train) + [(s.src, s.tgt) for s in synthetic]
    perm = np.random.default_rng(derive_seed(seed, "shuffle")).permutation(len(rows))
    return [rows[i] for i in perm]


def format_provenance(synthetic: Sequence[Synthetic]) -> str:
    return "pair_id\tmethod\tdonor_a\tdonor_b\n" + "".join(
        f"{s.pair_id}\t{s.method}\t{s.donor_a}\t{s.donor_b}\n" for s in synthetic)
