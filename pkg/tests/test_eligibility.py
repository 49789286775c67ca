from collections import Counter

import pytest
from hypothesis import given, settings

from strategies import trees
from subswap.corpus_io import SentencePair, parse_conllu
from subswap.deptree import Span, build_tree, contiguous_span, subtree_ids
from subswap.eligibility import (LabelConfig, Rejection, Triplet, check_pair, filter_corpus, find_triplet,
                                 format_tally)

EXTRAPOSED = """\
1\tA\ta\tDET\t_\t_\t2\tdet\t_\t_
2\tman\tman\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\tate\teat\tVERB\t_\t_\t0\troot\t_\t_
4\tthe\tthe\tDET\t_\t_\t5\tdet\t_\t_
5\tapple\tapple\tNOUN\t_\t_\t3\tobj\t_\t_
6\tfrom\tfrom\tADP\t_\t_\t7\tcase\t_\t_
7\tParis\tParis\tPROPN\t_\t_\t2\tnmod\t_\tSpaceAfter=No
8\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_
"""

TWO_SUBJECTS = """\
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\tdog\tdog\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\tsaid\tsay\tVERB\t_\t_\t0\troot\t_\t_
4\tthe\tthe\tDET\t_\t_\t5\tdet\t_\t_
5\tcat\tcat\tNOUN\t_\t_\t6\tnsubj\t_\t_
6\tate\teat\tVERB\t_\t_\t3\tccomp\t_\t_
7\tfish\tfish\tNOUN\t_\t_\t6\tobj\t_\tSpaceAfter=No
8\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_
"""


def tree_of(text):
    return build_tree(parse_conllu(text)[0])


def test_chase_triplet(example_pairs):
    trip = find_triplet(build_tree(example_pairs[0].src))
    assert trip == Triplet(subject_head=3, subject_span=Span(1, 3), object_head=8, object_span=Span(6, 8),
                           predicate=5)


def test_missing_object(misc_sentences):
    assert find_triplet(build_tree(misc_sentences["birds"])) == Rejection("missing-object")


def test_multiple_subjects():
    assert find_triplet(tree_of(TWO_SUBJECTS)) == Rejection("multiple-subjects")


def test_extraposed_subject_is_non_contiguous():
    # man's subtree is {1, 2, 6, 7}
    assert subtree_ids(tree_of(EXTRAPOSED), 2) == [1, 2, 6, 7]
    assert find_triplet(tree_of(EXTRAPOSED)) == Rejection("non-contiguous-subject")


def test_different_heads():
    text = TWO_SUBJECTS.replace("2\tdog\tdog\tNOUN\t_\t_\t3\tnsubj", "2\tdog\tdog\tNOUN\t_\t_\t3\tobl")
    # one subject (cat -> ate) and one object (fish -> ate): same head, eligible
    assert isinstance(find_triplet(tree_of(text)), Triplet)
    text = text.replace("7\tfish\tfish\tNOUN\t_\t_\t6\tobj", "7\tfish\tfish\tNOUN\t_\t_\t3\tobj")
    assert find_triplet(tree_of(text)) == Rejection("different-heads")


def test_root_predicate_flag():
    text = TWO_SUBJECTS.replace("2\tdog\tdog\tNOUN\t_\t_\t3\tnsubj", "2\tdog\tdog\tNOUN\t_\t_\t3\tobl")
    labels = LabelConfig(require_root_predicate=True)
    assert find_triplet(tree_of(text), labels) == Rejection("predicate-not-root")


def test_label_config_validation():
    with pytest.raises(ValueError):
        LabelConfig(subject_labels=set())
    with pytest.raises(ValueError):
        LabelConfig(subject_labels={"nsubj", "obj"})


def test_check_pair_on_first_example(example_pairs):
    result = check_pair(example_pairs[0])
    assert result.src_triplet.object_span == Span(6, 8)
    assert result.tgt_triplet.object_span == Span(5, 7)
    assert result.tgt_triplet.predicate == 4


def test_target_missing_object(example_pairs, misc_sentences):
    pair = SentencePair(example_pairs[0].src, misc_sentences["birds"], pair_id="x:0")
    assert check_pair(pair) == Rejection("missing-object", "target")


def test_source_non_contiguous_subject(example_pairs):
    pair = SentencePair(parse_conllu(EXTRAPOSED)[0], example_pairs[0].tgt, pair_id="x:0")
    assert check_pair(pair) == Rejection("non-contiguous-subject", "source")


def test_pro_drop_target(example_pairs):
    # "Látom a tüzet a szemében." has no overt subject
    assert check_pair(example_pairs[5]) == Rejection("missing-subject", "target")
    ep = check_pair(example_pairs[5], LabelConfig(allow_missing_subject=True))
    assert ep.tgt_triplet.subject_span is None and ep.tgt_triplet.object_span == Span(2, 3)


def test_filter_example_corpus(example_pairs):
    eligible, tally = filter_corpus(example_pairs)
    assert len(eligible) == 9
    assert tally == Counter({"target:missing-subject": 1})
    eligible, tally = filter_corpus(example_pairs, LabelConfig(allow_missing_subject=True))
    assert len(eligible) == 10 and not tally


def test_filter_empty():
    assert filter_corpus([]) == ([], Counter())


def test_filter_one_bad(example_pairs, misc_sentences):
    bad = SentencePair(misc_sentences["birds"], misc_sentences["birds"], pair_id="b:0")
    eligible, tally = filter_corpus([example_pairs[0], bad, example_pairs[1]])
    assert [e.pair_id for e in eligible] == ["ex:0", "ex:1"]
    assert sum(tally.values()) == 1


def test_tally_tsv():
    assert format_tally(Counter({"a": 1, "b": 3})) == "reason\tcount\nb\t3\na\t1\n"


@settings(max_examples=300, deadline=None)
@given(trees(deprels=["nsubj", "obj", "det", "amod", "obl", "punct"]))
def test_triplet_consistent_with_tree(sent):
    tree = build_tree(sent)
    trip = find_triplet(tree)
    if isinstance(trip, Triplet):
        assert contiguous_span(subtree_ids(tree, trip.subject_head)) == trip.subject_span
        assert contiguous_span(subtree_ids(tree, trip.object_head)) == trip.object_span
        assert tree.head(trip.subject_head) == tree.head(trip.object_head) == trip.predicate
