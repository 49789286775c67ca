"""Dependency trees over parsed sentences: subtrees, spans, depth, linearization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .corpus_io import Sentence, StructuralError, Token


@dataclass(frozen=True)
class Span:
    start: int
    end: int  # inclusive

    def __post_init__(self):
        if not 1 <= self.start <= self.end:
            raise ValueError(f"invalid span ({self.start}, {self.end})")

    def __contains__(self, i: int) -> bool:
        return self.start <= i <= self.end

    def __len__(self):
        return self.end - self.start + 1

    def overlaps(self, other: Span) -> bool:
        return self.start <= other.end and other.start <= self.end


class DepTree:
    """Validated rooted tree over a sentence; node ids are token ordinals."""

    def __init__(self, sentence: Sentence, root: int, children: dict[int, list[int]]):
        self.sentence = sentence
        self.root = root
        self.children = children

    @property
    def tokens(self) -> list[Token]:
        return self.sentence.tokens

    def __len__(self):
        return len(self.sentence.tokens)

    def token(self, node: int) -> Token:
        self._check(node)
        return self.sentence.tokens[node - 1]

    def head(self, node: int) -> int:
        return self.token(node).head

    def _check(self, node: int) -> None:
        if not 1 <= node <= len(self.sentence.tokens):
            raise IndexError(f"node {node} not in tree of size {len(self.sentence.tokens)}")


def build_tree(sentence: Sentence | Sequence[Token]) -> DepTree:
    if not isinstance(sentence, Sentence):
        sentence = Sentence(list(sentence))
    tokens = sentence.tokens
    n = len(tokens)
    if n == 0:
        raise StructuralError("cannot build a tree over zero tokens")
    children: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
    roots = []
    for tok in tokens:
        if not 0 <= tok.head <= n:
            raise StructuralError(f"token {tok.id}: head {tok.head} out of range 0..{n}")
        if tok.head == 0:
            roots.append(tok.id)
        else:
            children[tok.head].append(tok.id)
    if len(roots) != 1:
        raise StructuralError(f"expected exactly one root, found {len(roots)}")
    # every head chain must reach the root; memoize nodes known to be grounded
    grounded = {roots[0]}
    for tok in tokens:
        path = []
        node = tok.id
        while node not in grounded:
            if node in path:
                raise StructuralError(f"cycle through tokens {sorted(path)}")
            path.append(node)
            node = tokens[node - 1].head
        grounded.update(path)
    return DepTree(sentence, roots[0], children)


def subtree_ids(tree: DepTree, node: int) -> list[int]:
    tree._check(node)
    out = []
    stack = [node]
    while stack:
        cur = stack.pop()
        out.append(cur)
        stack.extend(tree.children[cur])
    return sorted(out)


def contiguous_span(ids: Sequence[int]) -> Span | None:
    if not ids:
        raise ValueError("contiguous_span needs at least one id")
    lo, hi = ids[0], ids[-1]
    if hi - lo + 1 == len(ids):
        return Span(lo, hi)
    return None


def depth(tree: DepTree, node: int) -> int:
    """Root has depth 1; each edge adds one."""
    d = 1
    while (node := tree.head(node)) != 0:
        d += 1
    return d


def depths(tree: DepTree) -> list[int]:
    out = [0] * len(tree)

    def fill(node: int, d: int):
        stack = [(node, d)]
        while stack:
            cur, cd = stack.pop()
            out[cur - 1] = cd
            stack.extend((c, cd + 1) for c in tree.children[cur])

    fill(tree.root, 1)
    return out


NO_SPACE_BEFORE = frozenset(".,!?;:)]}")
NO_SPACE_AFTER = frozenset("([{")


def linearize(tokens: Sequence[Token]) -> str:
    """Rebuild surface text from tokens.

    SpaceAfter flags are honoured when any non-final token carries
    ``space_after=False``; otherwise they are taken as absent and simple
    punctuation rules decide the spacing.
    """
    if not tokens:
        return ""
    forms = [t.form for t in tokens]
    if any(not t.space_after for t in tokens[:-1]):
        parts = []
        for t in tokens[:-1]:
            parts.append(t.form)
            if t.space_after:
                parts.append(" ")
        parts.append(forms[-1])
        return "".join(parts)
    parts = [forms[0]]
    for prev, cur in zip(forms, forms[1:]):
        if cur not in NO_SPACE_BEFORE and prev not in NO_SPACE_AFTER:
            parts.append(" ")
        parts.append(cur)
    return "".join(parts)
