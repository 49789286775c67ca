from collections import Counter

import pytest
from hypothesis import given, settings

from strategies import eligible_pairs
from subswap.augment_swap import (AugmentedPair, adjust_case, splice, swap, swap_objects, swap_predicates,
                                  swap_subjects)
from subswap.corpus_io import Sentence, SentencePair, Token
from subswap.deptree import Span, build_tree, linearize
from subswap.eligibility import EligiblePair, check_pair


def tok(i, form, head, rel, upos="NOUN", space=True):
    return Token(i, form, form.lower(), upos, head, rel, space)


def simple(forms_heads_rels):
    toks = [tok(i, f, h, r, "PUNCT" if f == "." else "NOUN", True) for i, (f, h, r) in enumerate(forms_heads_rels, 1)]
    toks[-2] = Token(toks[-2].id, toks[-2].form, toks[-2].lemma, toks[-2].upos, toks[-2].head, toks[-2].deprel, False)
    return Sentence(toks)


# 4-token pairs: EN SVO, HU SOV
DOGS = SentencePair(simple([("Dogs", 2, "nsubj"), ("eat", 0, "root"), ("bones", 2, "obj"), (".", 2, "punct")]),
                    simple([("Kutyák", 3, "nsubj"), ("csontot", 3, "obj"), ("esznek", 0, "root"), (".", 3, "punct")]),
                    pair_id="h:dogs")
BIRDS = SentencePair(simple([("Birds", 2, "nsubj"), ("like", 0, "root"), ("seeds", 2, "obj"), (".", 2, "punct")]),
                     simple([("Madarak", 3, "nsubj"), ("magot", 3, "obj"), ("szeretnek", 0, "root"),
                             (".", 3, "punct")]), pair_id="h:birds")


def texts(aug):
    return aug.src_text, aug.tgt_text


def test_hand_spliced_objects():
    a, b = swap_objects(check_pair(DOGS), check_pair(BIRDS))
    assert texts(a) == ("Dogs eat seeds.", "Kutyák magot esznek.")
    assert texts(b) == ("Birds like bones.", "Madarak csontot szeretnek.")
    assert (a.donor_a, a.donor_b) == ("h:dogs", "h:birds")


def test_hand_spliced_subjects_and_predicates():
    a, b = swap_subjects(check_pair(DOGS), check_pair(BIRDS))
    assert texts(a) == ("Birds eat bones.", "Madarak csontot esznek.")
    a, b = swap_predicates(check_pair(DOGS), check_pair(BIRDS))
    assert texts(a) == ("Dogs like bones.", "Kutyák csontot szeretnek.")
    assert a.src.tokens[1].lemma == "like"
    a, _ = swap_predicates(check_pair(DOGS), check_pair(BIRDS), swap_lemma=False)
    assert a.src.tokens[1].lemma == "eat"


def test_splice_heads_remapped():
    a, _ = swap_objects(check_pair(DOGS), check_pair(BIRDS))
    assert [(t.id, t.head, t.deprel) for t in a.tgt.tokens] == [(1, 3, "nsubj"), (2, 3, "obj"), (3, 0, "root"),
                                                               (4, 3, "punct")]


def test_splice_longer_replacement():
    host = DOGS.src.tokens
    repl = [tok(1, "the", 3, "det"), tok(2, "old", 3, "amod"), tok(3, "bones", 0, "root")]
    out = splice(host, Span(3, 3), repl)
    assert linearize(out) == "Dogs eat the old bones."
    assert [t.head for t in out] == [2, 0, 5, 5, 2, 2]
    assert out[4].deprel == "obj"
    build_tree(Sentence(out))


def test_splice_identity():
    host = DOGS.src.tokens
    assert splice(host, Span(3, 3), host[2:3]) == list(host)
    assert splice(host, Span(1, 1), host[0:1]) == list(host)


def test_splice_errors():
    with pytest.raises(ValueError):
        splice(DOGS.src.tokens, Span(3, 9), DOGS.src.tokens[:1])
    with pytest.raises(ValueError):
        splice(DOGS.src.tokens, Span(3, 3), [])


def test_splice_inherits_final_spacing():
    # "bones" is glued to the full stop; the replacement must be too
    out = splice(DOGS.src.tokens, Span(3, 3), [tok(5, "rocks", 0, "root")])
    assert out[2].space_after is False


@pytest.mark.parametrize("form,upos,initial,start,expected", [
    ("the", "DET", False, 1, "The"),
    ("The", "DET", True, 3, "the"),
    ("Gordon", "PROPN", True, 3, "Gordon"),
    ("I", "PRON", True, 3, "I"),
    ("NATO", "PROPN", True, 3, "NATO"),
    ("UN", "NOUN", True, 3, "UN"),
    ("the", "DET", False, 3, "the"),
    ("Those", "DET", True, 1, "Those"),
])
def test_adjust_case(form, upos, initial, start, expected):
    toks = [tok(i, "x", 0 if i == 1 else 1, "root" if i == 1 else "dep") for i in range(1, 5)]
    toks[start - 1] = Token(start, form, form.lower(), upos, toks[start - 1].head, toks[start - 1].deprel)
    assert adjust_case(toks, start, initial)[start - 1].form == expected


def test_case_disabled(example_eligible):
    a, _ = swap_subjects(example_eligible[("3.3", 1)], example_eligible[("3.3", 2)], case=False)
    assert a.src_text.startswith("A hooded")
    _, b = swap_objects(example_eligible[("3.2", 1)], example_eligible[("3.2", 2)], case=False)
    assert b.src_text == "Gordon Ramsay is cooking the red cat."


def test_subject_swap_on_same_lemma_fixtures(example_eligible):
    a, b = swap_subjects(example_eligible[("3.5", 1)], example_eligible[("3.5", 2)])
    assert texts(a) == ("Those two specimen should be worth that.", "Az a két példány nem ér ennyit.")
    assert texts(b) == ("Nothing are worth millions to the bio-weapons division.",
                        "Semmi milliókat ér a biológiai fegyver részlegnek.")


def test_pro_drop_subject_swap_refused(example_eligible):
    with pytest.raises(ValueError, match="no overt subject"):
        swap_subjects(example_eligible[("3.4", 1)], example_eligible[("3.4", 2)])


def test_self_swap_rejected():
    ep = check_pair(DOGS)
    with pytest.raises(ValueError, match="differ"):
        swap_objects(ep, ep)


def test_copy_with_new_id_is_identity():
    ep = check_pair(DOGS)
    twin = check_pair(SentencePair(DOGS.src, DOGS.tgt, pair_id="h:twin"))
    a, b = swap_objects(ep, twin)
    assert a.src.tokens == DOGS.src.tokens and b.tgt.tokens == DOGS.tgt.tokens


def test_dispatch():
    a, _ = swap("obj_lemma", check_pair(DOGS), check_pair(BIRDS))
    assert a.method == "obj_lemma"
    with pytest.raises(ValueError):
        swap("verb", check_pair(DOGS), check_pair(BIRDS))
    with pytest.raises(ValueError):
        AugmentedPair(DOGS.src, DOGS.tgt, "nope", "a", "b")


def test_to_pair():
    a, _ = swap_objects(check_pair(DOGS), check_pair(BIRDS))
    assert a.to_pair().pair_id == "obj:h:dogs+h:birds"


def _forms(*sents):
    return Counter(t.form for s in sents for t in s.tokens)


@settings(max_examples=300, deadline=None)
@given(eligible_pairs(pair_id="a"), eligible_pairs(pair_id="b"))
def test_swaps_conserve_tokens(pa, pb):
    a, b = check_pair(pa), check_pair(pb)
    for fn in (swap_objects, swap_subjects, swap_predicates):
        x, y = fn(a, b, case=False)
        assert _forms(x.src, y.src) == _forms(pa.src, pb.src)
        assert _forms(x.tgt, y.tgt) == _forms(pa.tgt, pb.tgt)
        for s in (x.src, x.tgt, y.src, y.tgt):
            build_tree(s)
