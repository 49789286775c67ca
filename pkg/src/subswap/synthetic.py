"""Template-generated parsed bilingual corpora for tests and benchmarks.

The source side is SVO English-like text, the target side an SOV
Hungarian-like mirror. A configurable share of pairs is made ineligible
(no object, a second subject, or an extraposed subject dependent).
"""

from __future__ import annotations

import numpy as np

from .corpus_io import Sentence, SentencePair, Token, make_pair_id

SRC_VOCAB = {
    "det": ["the", "a", "this", "that", "every"],
    "adj": ["black", "red", "small", "old", "quiet", "bright", "heavy", "strange"],
    "noun": ["dog", "cat", "soup", "chef", "ship", "bike", "fire", "letter", "garden", "river",
             "teacher", "window", "song", "horse", "story"],
    "verb": [("chasing", "chase"), ("cooking", "cook"), ("seeing", "see"), ("hiding", "hide"),
             ("writing", "write"), ("painting", "paint")],
    "prep": ["in", "near", "behind", "after"],
}
TGT_VOCAB = {
    "det": ["a", "egy", "ez a", "az a", "minden"],
    "adj": ["fekete", "piros", "kicsi", "öreg", "csendes", "fényes", "nehéz", "furcsa"],
    "noun": ["kutya", "macska", "leves", "séf", "hajó", "bicikli", "tűz", "levél", "kert", "folyó",
             "tanár", "ablak", "dal", "ló", "történet"],
    "verb": [("kergeti", "kerget"), ("főzi", "főz"), ("látja", "lát"), ("rejti", "rejt"),
             ("írja", "ír"), ("festi", "fest")],
    "post": ["mellett", "mögött", "után", "alatt"],
}


class _Builder:
    def __init__(self):
        self.rows = []  # [form, lemma, upos, head_ref, deprel]

    def add(self, form, lemma, upos, deprel, head=None):
        self.rows.append([form, lemma, upos, head, deprel])
        return len(self.rows)

    def sentence(self) -> Sentence:
        toks = []
        for i, (form, lemma, upos, head, deprel) in enumerate(self.rows, 1):
            toks.append(Token(i, form, lemma, upos, head, deprel, True))
        toks[-2] = Token(toks[-2].id, toks[-2].form, toks[-2].lemma, toks[-2].upos,
                         toks[-2].head, toks[-2].deprel, False)
        return Sentence(toks)


def _np_phrase(b: _Builder, vocab, noun_idx, adj_idxs, det_idx, first: bool, lang: str):
    """Add det (adj)* noun; returns (first id, noun id, ids needing the noun as head)."""
    det = vocab["det"][det_idx]
    pending = []
    start = len(b.rows) + 1
    for k, part in enumerate(det.split()):
        form = part.capitalize() if first and k == 0 else part
        pending.append(b.add(form, part, "DET", "det"))
    for a in adj_idxs:
        pending.append(b.add(vocab["adj"][a], vocab["adj"][a], "ADJ", "amod"))
    noun = vocab["noun"][noun_idx]
    noun_form = noun + ("t" if lang == "tgt" and not first else "")
    nid = b.add(noun_form, noun, "NOUN", "_")
    for p in pending:
        b.rows[p - 1][3] = nid
    return start, nid


def synthetic_pair(rng: np.random.Generator, index: int, doc_id: str = "syn",
                   ineligible_share: float = 0.1) -> SentencePair:
    subj = (int(rng.integers(15)), [int(x) for x in rng.choice(8, size=int(rng.integers(3)), replace=False)],
            int(rng.integers(5)))
    obj = (int(rng.integers(15)), [int(x) for x in rng.choice(8, size=int(rng.integers(3)), replace=False)],
           int(rng.integers(5)))
    verb = int(rng.integers(len(SRC_VOCAB["verb"])))
    obl = (int(rng.integers(4)), int(rng.integers(15))) if rng.random() < 0.5 else None
    flaw = None
    if rng.random() < ineligible_share:
        flaw = ("no-object", "two-subjects", "extraposed")[int(rng.integers(3))]

    # source: [det adj* noun] is V-ing [det adj* noun] [prep the noun] .
    b = _Builder()
    _, s_noun = _np_phrase(b, SRC_VOCAB, *subj, first=True, lang="src")
    aux = b.add("is", "be", "AUX", "aux")
    vform, vlemma = SRC_VOCAB["verb"][verb]
    pred = b.add(vform, vlemma, "VERB", "root")
    b.rows[pred - 1][3] = 0
    b.rows[s_noun - 1][3:] = [pred, "nsubj"]
    b.rows[aux - 1][3] = pred
    if flaw != "no-object":
        _, o_noun = _np_phrase(b, SRC_VOCAB, *obj, first=False, lang="src")
        b.rows[o_noun - 1][3:] = [pred, "obj"]
    if obl is not None:
        case = b.add(SRC_VOCAB["prep"][obl[0]], SRC_VOCAB["prep"][obl[0]], "ADP", "case")
        det = b.add("the", "the", "DET", "det")
        noun = b.add(SRC_VOCAB["noun"][obl[1]], SRC_VOCAB["noun"][obl[1]], "NOUN", "obl", pred)
        b.rows[case - 1][3] = noun
        b.rows[det - 1][3] = noun
    if flaw == "two-subjects":
        b.add("he", "he", "PRON", "nsubj", pred)
    if flaw == "extraposed":
        b.add("again", "again", "ADV", "advmod", s_noun)
    b.add(".", ".", "PUNCT", "punct", pred)
    src = b.sentence()

    # target: [det adj* noun] [det adj* noun-t] [noun post] V .
    b = _Builder()
    _, s_noun = _np_phrase(b, TGT_VOCAB, *subj, first=True, lang="src")
    o_noun = None
    if flaw != "no-object":
        _, o_noun = _np_phrase(b, TGT_VOCAB, *obj, first=False, lang="tgt")
    if obl is not None:
        noun = b.add(TGT_VOCAB["noun"][obl[1]], TGT_VOCAB["noun"][obl[1]], "NOUN", "obl")
        b.add(TGT_VOCAB["post"][obl[0]], TGT_VOCAB["post"][obl[0]], "ADP", "case", noun)
    else:
        noun = None
    vform, vlemma = TGT_VOCAB["verb"][verb]
    pred = b.add(vform, vlemma, "VERB", "root", 0)
    b.rows[s_noun - 1][3:] = [pred, "nsubj"]
    if o_noun is not None:
        b.rows[o_noun - 1][3:] = [pred, "obj"]
    if noun is not None:
        b.rows[noun - 1][3] = pred
    b.add(".", ".", "PUNCT", "punct", pred)
    tgt = b.sentence()
    return SentencePair(src, tgt, doc_id=doc_id, pair_id=make_pair_id(doc_id, index))


def synthetic_corpus(n: int, seed: int = 0, n_docs: int = 5, ineligible_share: float = 0.1) -> list[SentencePair]:
    rng = np.random.default_rng(seed)
    pairs = []
    counters = [0] * n_docs
    for _ in range(n):
        d = int(rng.integers(n_docs))
        pairs.append(synthetic_pair(rng, counters[d], f"doc{d}", ineligible_share))
        counters[d] += 1
    return pairs
