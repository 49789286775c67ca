"""Reading and writing CoNLL-U parses, the TSV parse cache and parallel text."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, Union


class ParseError(ValueError):
    """Malformed input line; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class StructuralError(ValueError):
    """Token graph that is not a single rooted tree over ids 1..n."""


class AlignmentError(ValueError):
    def __init__(self, src_count: int, tgt_count: int):
        self.src_count = src_count
        self.tgt_count = tgt_count
        super().__init__(
            f"parallel files are not aligned: {src_count} source lines vs {tgt_count} target lines"
        )


@dataclass(frozen=True)
class Token:
    id: int
    form: str
    lemma: str = "_"
    upos: str = "_"
    head: int = 0
    deprel: str = "_"
    space_after: bool = True

    def __post_init__(self):
        if self.id < 1:
            raise StructuralError(f"token id must be >= 1, got {self.id}")
        if self.head < 0:
            raise StructuralError(f"token {self.id}: negative head {self.head}")
        if self.head == self.id:
            raise StructuralError(f"token {self.id} is its own head")
        if not self.form:
            raise StructuralError(f"token {self.id}: empty form")


@dataclass
class Sentence:
    tokens: list[Token]
    text: str | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        validate_sentence(self.tokens)

    def __len__(self):
        return len(self.tokens)

    @property
    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]


def validate_sentence(tokens: Sequence[Token]) -> None:
    """Check gap-free ids, a single root and in-range heads."""
    n = len(tokens)
    for i, tok in enumerate(tokens, 1):
        if tok.id != i:
            raise StructuralError(f"token ids must be 1..{n} without gaps; position {i} has id {tok.id}")
        if tok.head > n:
            raise StructuralError(f"token {tok.id} points to nonexistent head {tok.head}")
    roots = [t.id for t in tokens if t.head == 0]
    if n and len(roots) != 1:
        raise StructuralError(f"expected exactly one root, found {len(roots)}: {roots}")


Side = Union[Sentence, str]


@dataclass
class SentencePair:
    src: Side
    tgt: Side
    doc_id: str = "doc"
    subcorpus: str = ""
    pair_id: str = ""

    def __post_init__(self):
        if self.src is None or self.tgt is None:
            raise ValueError("both sides of a sentence pair must be present")


def make_pair_id(doc_id: str, index: int) -> str:
    return f"{doc_id}:{index}"


# -- CoNLL-U -----------------------------------------------------------------

def _misc_space_after(misc: str) -> bool:
    if misc == "_":
        return True
    return "SpaceAfter=No" not in misc.split("|")


def parse_conllu(text: str) -> list[Sentence]:
    """Parse CoNLL-U text into sentences.

    Multiword-token ranges (``3-4``) and empty nodes (``3.1``) are skipped,
    as are FEATS, XPOS and DEPS. Comments of the form ``# key = value`` end
    up in ``Sentence.meta``; ``# text`` also fills ``Sentence.text``.
    """
    sentences = []
    tokens: list[Token] = []
    meta: dict[str, str] = {}
    start = 1

    def flush():
        nonlocal tokens, meta
        if tokens:
            try:
                sentences.append(Sentence(tokens, text=meta.get("text"), meta=meta))
            except StructuralError as exc:
                raise StructuralError(f"sentence starting at line {start}: {exc}") from None
        elif meta:
            raise ParseError("comment block without tokens", start)
        tokens, meta = [], {}

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
            start = lineno + 1
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                meta[key.strip()] = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cols)}", lineno)
        if "-" in cols[0] or "." in cols[0]:
            continue
        try:
            tid = int(cols[0])
            head = int(cols[6])
        except ValueError:
            raise ParseError(f"non-numeric ID or HEAD: {cols[0]!r}, {cols[6]!r}", lineno) from None
        try:
            tokens.append(Token(
                id=tid,
                form=cols[1],
                lemma=cols[2],
                upos=cols[3],
                head=head,
                deprel=cols[7].lower(),
                space_after=_misc_space_after(cols[9]),
            ))
        except StructuralError as exc:
            raise ParseError(str(exc), lineno) from None
    flush()
    return sentences


def read_conllu(path) -> list[Sentence]:
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f.read())


def format_conllu(sentences: Iterable[Sentence]) -> str:
    out = []
    for sent in sentences:
        for key, value in sent.meta.items():
            out.append(f"# {key} = {value}")
        if sent.text is not None and "text" not in sent.meta:
            out.append(f"# text = {sent.text}")
        for t in sent.tokens:
            misc = "_" if t.space_after else "SpaceAfter=No"
            out.append("\t".join([str(t.id), t.form, t.lemma, t.upos, "_", "_",
                                  str(t.head), t.deprel, "_", misc]))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


# -- TSV cache ---------------------------------------------------------------

CACHE_COLUMNS = ("pair_id", "side", "id", "form", "lemma", "upos", "head", "deprel", "space_after")


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


_ESCAPED = re.compile(r"\\(.)", re.DOTALL)
_UNESCAPE = {"t": "\t", "n": "\n", "\\": "\\"}


def _unescape(s: str) -> str:
    if "\\" not in s:
        return s
    return _ESCAPED.sub(lambda m: _UNESCAPE.get(m.group(1), m.group(0)), s)


def format_tsv_cache(sentences: Iterable[Sentence]) -> str:
    blocks = []
    for sent in sentences:
        pair_id = _escape(sent.meta.get("pair_id", ""))
        side = _escape(sent.meta.get("side", ""))
        rows = []
        for t in sent.tokens:
            rows.append("\t".join([pair_id, side, str(t.id), _escape(t.form), _escape(t.lemma),
                                   _escape(t.upos), str(t.head), _escape(t.deprel),
                                   "1" if t.space_after else "0"]))
        blocks.append("\n".join(rows) + "\n")
    return "\n".join(blocks)


def write_tsv_cache(sentences: Iterable[Sentence], destination) -> None:
    """One row per token, sentences separated by a single blank line.

    ``pair_id`` and ``side`` come from ``Sentence.meta``.
    """
    with open(destination, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_tsv_cache(sentences))


def parse_tsv_cache(text: str) -> list[Sentence]:
    sentences = []
    tokens: list[Token] = []
    key = None
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line:
            if tokens:
                sentences.append(Sentence(tokens, meta={"pair_id": key[0], "side": key[1]}))
            tokens, key = [], None
            continue
        cols = line.split("\t")
        if len(cols) != len(CACHE_COLUMNS):
            raise ParseError(f"expected {len(CACHE_COLUMNS)} columns, got {len(cols)}", lineno)
        pair_id, side, tid, form, lemma, upos, head, deprel, space = cols
        if space not in ("0", "1"):
            raise ParseError(f"space_after must be 0 or 1, got {space!r}", lineno)
        row_key = (_unescape(pair_id), _unescape(side))
        if key is None:
            key = row_key
        elif row_key != key:
            raise ParseError(f"row belongs to {row_key}, block started as {key}", lineno)
        try:
            tokens.append(Token(int(tid), _unescape(form), _unescape(lemma), _unescape(upos),
                                int(head), _unescape(deprel), space == "1"))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if tokens:
        sentences.append(Sentence(tokens, meta={"pair_id": key[0], "side": key[1]}))
    return sentences


def read_tsv_cache(source) -> list[Sentence]:
    with open(source, encoding="utf-8") as f:
        return parse_tsv_cache(f.read())


def pairs_to_cache_sentences(pairs: Iterable[SentencePair]) -> list[Sentence]:
    out = []
    for p in pairs:
        for side, sent in (("src", p.src), ("tgt", p.tgt)):
            if not isinstance(sent, Sentence):
                raise TypeError(f"pair {p.pair_id}: {side} side is not parsed")
            meta = dict(sent.meta, pair_id=p.pair_id, side=side)
            out.append(replace(sent, meta=meta))
    return out


def pairs_from_cache_sentences(sentences: Sequence[Sentence]) -> list[SentencePair]:
    """Regroup cache sentences (src row block followed by tgt) into pairs."""
    pairs = []
    pending: dict[str, Sentence] = {}
    for sent in sentences:
        pair_id, side = sent.meta.get("pair_id", ""), sent.meta.get("side", "")
        if side == "src":
            pending[pair_id] = sent
        elif side == "tgt":
            if pair_id not in pending:
                raise ParseError(f"target sentence for {pair_id!r} has no preceding source")
            doc_id = pair_id.rsplit(":", 1)[0]
            pairs.append(SentencePair(pending.pop(pair_id), sent, doc_id=doc_id, pair_id=pair_id))
        else:
            raise ParseError(f"unknown side {side!r} for pair {pair_id!r}")
    if pending:
        raise ParseError(f"source sentences without targets: {sorted(pending)[:5]}")
    return pairs


# -- parallel text -------------------------------------------------------------

def _read_lines(path) -> list[str]:
    with open(path, encoding="utf-8", newline="") as f:
        data = f.read()
    if not data:
        return []
    lines = data.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def read_parallel_text(src_path, tgt_path, doc_id: str | None = None) -> list[SentencePair]:
    src = _read_lines(src_path)
    tgt = _read_lines(tgt_path)
    if len(src) != len(tgt):
        raise AlignmentError(len(src), len(tgt))
    if doc_id is None:
        doc_id = os.path.splitext(os.path.basename(str(src_path)))[0]
    return [SentencePair(s, t, doc_id=doc_id, pair_id=make_pair_id(doc_id, i))
            for i, (s, t) in enumerate(zip(src, tgt))]


def side_text(side: Side) -> str:
    if isinstance(side, Sentence):
        if side.text is not None:
            return side.text
        from .deptree import linearize
        return linearize(side.tokens)
    return side


def write_parallel_text(pairs: Iterable[SentencePair], src_path, tgt_path) -> int:
    n = 0
    with open(src_path, "w", encoding="utf-8", newline="\n") as fs, \
            open(tgt_path, "w", encoding="utf-8", newline="\n") as ft:
        for p in pairs:
            s, t = side_text(p.src), side_text(p.tgt)
            if "\n" in s or "\n" in t:
                raise ValueError(f"pair {p.pair_id}: sentence contains a newline")
            fs.write(s + "\n")
            ft.write(t + "\n")
            n += 1
    return n
