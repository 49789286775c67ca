"""Subject, object and predicate swapping between two eligible sentence pairs.

Every swap edits the source and the target side of a pair in the same call,
so an output pair never mixes an augmented source with an original target.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .corpus_io import Sentence, SentencePair, Token
from .deptree import Span, linearize
from .eligibility import EligiblePair

METHODS = ("obj", "subj", "obj_lemma", "subj_lemma", "pred")


@dataclass
class AugmentedPair:
    src: Sentence
    tgt: Sentence
    method: str
    donor_a: str  # host pair; its frame is kept
    donor_b: str  # pair that supplied the swapped material

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown swap method {self.method!r}")
        if self.donor_a == self.donor_b:
            raise ValueError(f"donor pairs must differ, both are {self.donor_a!r}")

    @property
    def src_text(self) -> str:
        return linearize(self.src.tokens)

    @property
    def tgt_text(self) -> str:
        return linearize(self.tgt.tokens)

    def to_pair(self, pair_id: str = "") -> SentencePair:
        pair_id = pair_id or f"{self.method}:{self.donor_a}+{self.donor_b}"
        return SentencePair(self.src, self.tgt, doc_id="aug", pair_id=pair_id)


def _upper_first(s: str) -> str:
    return s[:1].upper() + s[1:]


def _lower_first(s: str) -> str:
    return s[:1].lower() + s[1:]


def adjust_case(tokens: Sequence[Token], start: int, donor_initial: bool) -> list[Token]:
    """Fix first-letter casing of a span that moved into or out of sentence-initial position.

    ``start`` is the 1-based position of the span's first token in ``tokens``.
    Proper nouns, "I" and all-caps words keep their casing when moved inward.
    """
    tokens = list(tokens)
    first = tokens[start - 1]
    form = first.form
    if start == 1 and not donor_initial and form[:1].islower():
        tokens[start - 1] = replace(first, form=_upper_first(form))
    elif start > 1 and donor_initial and first.upos != "PROPN" and form[:1].isupper():
        if form != "I" and not (len(form) > 1 and form.isupper()):
            tokens[start - 1] = replace(first, form=_lower_first(form))
    return tokens


def splice(tokens: Sequence[Token], span: Span, replacement: Sequence[Token],
           case: bool = True, donor_initial: bool | None = None) -> list[Token]:
    """Replace ``tokens[span]`` by ``replacement`` and renumber the result.

    Replacement tokens keep their internal arcs; those pointing outside the
    replacement attach where the removed subtree attached, with its label.
    The last replacement token inherits the spacing of the removed span's
    last token. ``donor_initial`` defaults to whether the replacement
    started its own sentence (first id == 1).
    """
    n = len(tokens)
    s, e = span.start, span.end
    if e > n:
        raise ValueError(f"span ({s}, {e}) out of range for {n} tokens")
    if not replacement:
        raise ValueError("replacement must be non-empty")
    removed_ids = set(range(s, e + 1))
    removed = tokens[s - 1:e]
    external = [t for t in removed if t.head not in removed_ids]
    attach_head, attach_rel = external[0].head, external[0].deprel
    k = len(replacement)
    shift = k - (e - s + 1)

    repl_map = {t.id: s + j for j, t in enumerate(replacement)}
    repl_root = next(repl_map[t.id] for t in replacement if t.head not in repl_map)

    def host_new(i: int) -> int:
        if i == 0:
            return 0
        if i < s:
            return i
        if i > e:
            return i + shift
        return repl_root

    out = [replace(t, head=host_new(t.head)) for t in tokens[:s - 1]]
    for j, t in enumerate(replacement):
        if t.head in repl_map:
            new = replace(t, id=s + j, head=repl_map[t.head])
        else:
            new = replace(t, id=s + j, head=host_new(attach_head), deprel=attach_rel)
        out.append(new)
    out[-1] = replace(out[-1], space_after=removed[-1].space_after)
    out.extend(replace(t, id=t.id + shift, head=host_new(t.head)) for t in tokens[e:])
    if case:
        if donor_initial is None:
            donor_initial = replacement[0].id == 1
        out = adjust_case(out, s, donor_initial)
    return out


def _span_tokens(sent: Sentence, span: Span) -> list[Token]:
    return sent.tokens[span.start - 1:span.end]


def _swap_spans(a: EligiblePair, b: EligiblePair, which: str, method: str, case: bool):
    def span_of(ep: EligiblePair, side: str) -> Span:
        trip = ep.src_triplet if side == "src" else ep.tgt_triplet
        span = trip.object_span if which == "object" else trip.subject_span
        if span is None:
            raise ValueError(f"pair {ep.pair_id} has no overt {which} on the {side} side")
        return span

    def make(host: EligiblePair, donor: EligiblePair) -> AugmentedPair:
        sides = {}
        for side in ("src", "tgt"):
            host_sent, donor_sent = getattr(host, side), getattr(donor, side)
            toks = splice(host_sent.tokens, span_of(host, side),
                          _span_tokens(donor_sent, span_of(donor, side)), case=case)
            sides[side] = Sentence(toks)
        return AugmentedPair(sides["src"], sides["tgt"], method, host.pair_id, donor.pair_id)

    return make(a, b), make(b, a)


def swap_objects(a: EligiblePair, b: EligiblePair, method: str = "obj", case: bool = True):
    """Exchange the object subtrees of ``a`` and ``b`` on both sides."""
    return _swap_spans(a, b, "object", method, case)


def swap_subjects(a: EligiblePair, b: EligiblePair, method: str = "subj", case: bool = True):
    """Exchange the subject subtrees of ``a`` and ``b`` on both sides."""
    return _swap_spans(a, b, "subject", method, case)


def swap_predicates(a: EligiblePair, b: EligiblePair, swap_lemma: bool = True, case: bool = True):
    """Exchange only the predicate word; dependents and word order stay put.

    No agreement repair is attempted, so outputs such as "Someone is gets
    something." are expected.
    """
    def make(host: EligiblePair, donor: EligiblePair) -> AugmentedPair:
        sides = {}
        for side in ("src", "tgt"):
            host_sent, donor_sent = getattr(host, side), getattr(donor, side)
            hp = (host.src_triplet if side == "src" else host.tgt_triplet).predicate
            dp = (donor.src_triplet if side == "src" else donor.tgt_triplet).predicate
            donor_tok = donor_sent.tokens[dp - 1]
            toks = list(host_sent.tokens)
            changes = {"form": donor_tok.form}
            if swap_lemma:
                changes["lemma"] = donor_tok.lemma
            toks[hp - 1] = replace(toks[hp - 1], **changes)
            if case:
                toks = adjust_case(toks, hp, dp == 1)
            sides[side] = Sentence(toks)
        return AugmentedPair(sides["src"], sides["tgt"], "pred", host.pair_id, donor.pair_id)

    return make(a, b), make(b, a)


SWAPPERS = {
    "obj": swap_objects,
    "subj": swap_subjects,
    "obj_lemma": lambda a, b, **kw: swap_objects(a, b, method="obj_lemma", **kw),
    "subj_lemma": lambda a, b, **kw: swap_subjects(a, b, method="subj_lemma", **kw),
    "pred": swap_predicates,
}


def swap(method: str, a: EligiblePair, b: EligiblePair, **kwargs):
    try:
        fn = SWAPPERS[method]
    except KeyError:
        raise ValueError(f"unknown swap method {method!r}; expected one of {METHODS}") from None
    return fn(a, b, **kwargs)
