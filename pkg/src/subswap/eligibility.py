"""Locating the subject/object/predicate triplet and filtering swap-eligible pairs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

from .corpus_io import Sentence, SentencePair
from .deptree import DepTree, Span, build_tree, contiguous_span, subtree_ids

MISSING_SUBJECT = "missing-subject"
MISSING_OBJECT = "missing-object"
MULTIPLE_SUBJECTS = "multiple-subjects"
MULTIPLE_OBJECTS = "multiple-objects"
DIFFERENT_HEADS = "different-heads"
NON_CONTIGUOUS_SUBJECT = "non-contiguous-subject"
NON_CONTIGUOUS_OBJECT = "non-contiguous-object"
OVERLAPPING_SPANS = "overlapping-spans"
PREDICATE_IN_SPAN = "predicate-in-span"
PREDICATE_NOT_ROOT = "predicate-not-root"
NOT_PARSED = "not-parsed"
INVALID_TREE = "invalid-tree"


@dataclass(frozen=True)
class LabelConfig:
    subject_labels: frozenset = frozenset({"nsubj"})
    object_labels: frozenset = frozenset({"obj", "dobj"})
    require_root_predicate: bool = False
    # pro-drop languages: accept a clause whose subject is not overt
    allow_missing_subject: bool = False

    def __post_init__(self):
        object.__setattr__(self, "subject_labels", frozenset(self.subject_labels))
        object.__setattr__(self, "object_labels", frozenset(self.object_labels))
        if not self.subject_labels or not self.object_labels:
            raise ValueError("label sets must be non-empty")
        if self.subject_labels & self.object_labels:
            raise ValueError(f"label sets overlap: {sorted(self.subject_labels & self.object_labels)}")


@dataclass(frozen=True)
class Triplet:
    subject_head: int | None
    subject_span: Span | None
    object_head: int
    object_span: Span
    predicate: int

    def __post_init__(self):
        if self.predicate in self.object_span:
            raise ValueError("object span contains the predicate")
        if self.subject_span is not None:
            if self.predicate in self.subject_span:
                raise ValueError("subject span contains the predicate")
            if self.subject_span.overlaps(self.object_span):
                raise ValueError("subject and object spans overlap")


@dataclass(frozen=True)
class Rejection:
    reason: str
    side: str | None = None

    @property
    def key(self) -> str:
        return f"{self.side}:{self.reason}" if self.side else self.reason


@dataclass
class EligiblePair:
    pair: SentencePair
    src_triplet: Triplet
    tgt_triplet: Triplet
    src_tree: DepTree = field(repr=False, default=None)
    tgt_tree: DepTree = field(repr=False, default=None)

    @property
    def pair_id(self) -> str:
        return self.pair.pair_id

    @property
    def src(self) -> Sentence:
        return self.pair.src

    @property
    def tgt(self) -> Sentence:
        return self.pair.tgt

    def predicate_lemmas(self) -> tuple[str, str]:
        return (self.src.tokens[self.src_triplet.predicate - 1].lemma,
                self.tgt.tokens[self.tgt_triplet.predicate - 1].lemma)


def _dependent_span(tree: DepTree, node: int) -> Span | None:
    return contiguous_span(subtree_ids(tree, node))


def find_triplet(tree: DepTree, labels: LabelConfig = LabelConfig()) -> Union[Triplet, Rejection]:
    """Locate the unique subject and object edges hanging off one predicate.

    Returns a ``Rejection`` naming the first failed condition otherwise.
    """
    subjects = [t for t in tree.tokens if t.deprel in labels.subject_labels]
    objects = [t for t in tree.tokens if t.deprel in labels.object_labels]
    if len(subjects) > 1:
        return Rejection(MULTIPLE_SUBJECTS)
    if not subjects and not labels.allow_missing_subject:
        return Rejection(MISSING_SUBJECT)
    if not objects:
        return Rejection(MISSING_OBJECT)
    if len(objects) > 1:
        return Rejection(MULTIPLE_OBJECTS)
    obj = objects[0]
    subj = subjects[0] if subjects else None
    predicate = obj.head
    if subj is not None and subj.head != predicate:
        return Rejection(DIFFERENT_HEADS)
    if predicate == 0:
        # an object edge cannot hang from the artificial root
        return Rejection(DIFFERENT_HEADS)
    if labels.require_root_predicate and predicate != tree.root:
        return Rejection(PREDICATE_NOT_ROOT)
    subj_span = None
    if subj is not None:
        subj_span = _dependent_span(tree, subj.id)
        if subj_span is None:
            return Rejection(NON_CONTIGUOUS_SUBJECT)
    obj_span = _dependent_span(tree, obj.id)
    if obj_span is None:
        return Rejection(NON_CONTIGUOUS_OBJECT)
    # subtrees of two siblings never overlap; kept as a guard for odd label sets
    if subj_span is not None and subj_span.overlaps(obj_span):
        return Rejection(OVERLAPPING_SPANS)
    if predicate in obj_span or (subj_span is not None and predicate in subj_span):
        return Rejection(PREDICATE_IN_SPAN)
    return Triplet(subj.id if subj else None, subj_span, obj.id, obj_span, predicate)


def check_pair(pair: SentencePair, labels: LabelConfig = LabelConfig()) -> Union[EligiblePair, Rejection]:
    trees = {}
    triplets = {}
    for side, sent in (("source", pair.src), ("target", pair.tgt)):
        if not isinstance(sent, Sentence):
            return Rejection(NOT_PARSED, side)
        try:
            tree = build_tree(sent)
        except ValueError:
            return Rejection(INVALID_TREE, side)
        found = find_triplet(tree, labels)
        if isinstance(found, Rejection):
            return Rejection(found.reason, side)
        trees[side], triplets[side] = tree, found
    return EligiblePair(pair, triplets["source"], triplets["target"], trees["source"], trees["target"])


def filter_corpus(pairs: Iterable[SentencePair], labels: LabelConfig = LabelConfig()
                  ) -> tuple[list[EligiblePair], Counter]:
    """Order-preserving selection of eligible pairs plus a tally of rejections."""
    eligible = []
    tally: Counter = Counter()
    for pair in pairs:
        result = check_pair(pair, labels)
        if isinstance(result, Rejection):
            tally[result.key] += 1
        else:
            eligible.append(result)
    return eligible, tally


def format_tally(tally: Counter) -> str:
    lines = ["reason\tcount"]
    for reason, count in sorted(tally.items(), key=lambda kv: (-kv[1], kv[0])):
        lines.append(f"{reason}\t{count}")
    return "\n".join(lines) + "\n"
