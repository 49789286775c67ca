import conllu
import pytest
from hypothesis import given, settings

from strategies import conllu_block, trees
from subswap.corpus_io import (AlignmentError, ParseError, Sentence, SentencePair, StructuralError, Token,
                               format_conllu, format_tsv_cache, pairs_from_cache_sentences,
                               pairs_to_cache_sentences, parse_conllu, parse_tsv_cache, read_parallel_text,
                               read_tsv_cache, write_parallel_text, write_tsv_cache)

BIRDS = (
    "# sent_id = b1\n"
    "# text = Birds fly.\n"
    "1\tBirds\tbird\tNOUN\t_\tNumber=Plur\t2\tnsubj\t_\t_\n"
    "2\tfly\tfly\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No\n"
    "3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
)


def test_empty_input():
    assert parse_conllu("") == []


def test_two_word_block_field_by_field():
    (sent,) = parse_conllu(BIRDS)
    assert sent.text == "Birds fly."
    assert sent.meta["sent_id"] == "b1"
    assert sent.tokens == [
        Token(1, "Birds", "bird", "NOUN", 2, "nsubj", True),
        Token(2, "fly", "fly", "VERB", 0, "root", False),
        Token(3, ".", ".", "PUNCT", 2, "punct", True),
    ]


def test_multiword_range_lines_skipped():
    text = (
        "1\tI\tI\tPRON\t_\t_\t4\tnsubj\t_\t_\n"
        "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "2\tdo\tdo\tAUX\t_\t_\t4\taux\t_\t_\n"
        "3\tn't\tnot\tPART\t_\t_\t4\tadvmod\t_\t_\n"
        "3.1\tgone\tgo\tVERB\t_\t_\t_\t_\t0:root\t_\n"
        "4\tknow\tknow\tVERB\t_\t_\t0\troot\t_\t_\n"
    )
    (sent,) = parse_conllu(text)
    assert [t.id for t in sent.tokens] == [1, 2, 3, 4]
    assert [t.form for t in sent.tokens] == ["I", "do", "n't", "know"]


def test_wrong_column_count_reports_line():
    bad = BIRDS.replace("2\tfly\tfly\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No", "2\tfly\tfly\tVERB\t0\troot")
    with pytest.raises(ParseError) as err:
        parse_conllu(bad)
    assert err.value.lineno == 4


def test_non_numeric_head():
    with pytest.raises(ParseError) as err:
        parse_conllu(BIRDS.replace("\t2\tpunct", "\tx\tpunct"))
    assert err.value.lineno == 5


def test_head_to_missing_token():
    with pytest.raises(StructuralError):
        parse_conllu(BIRDS.replace("\t2\tpunct", "\t9\tpunct"))


def test_two_roots_rejected():
    with pytest.raises(StructuralError):
        parse_conllu(BIRDS.replace("\t2\tpunct", "\t0\tpunct"))


def test_deprel_lowercased_and_extra_misc_kept_apart():
    text = "1\tHi\thi\tINTJ\t_\t_\t0\tROOT\t_\tSpaceAfter=No|Foo=Bar\n"
    (sent,) = parse_conllu(text)
    assert sent.tokens[0].deprel == "root"
    assert sent.tokens[0].space_after is False


@settings(max_examples=200, deadline=None)
@given(trees())
def test_agrees_with_conllu_library(sent):
    text = conllu_block(sent)
    ours = parse_conllu(text)[0]
    theirs = conllu.parse(text)[0]
    assert [t.form for t in ours.tokens] == [t["form"] for t in theirs]
    assert [t.head for t in ours.tokens] == [t["head"] for t in theirs]
    assert [t.deprel for t in ours.tokens] == [t["deprel"] for t in theirs]


@settings(max_examples=200, deadline=None)
@given(trees())
def test_format_parse_roundtrip(sent):
    assert parse_conllu(format_conllu([sent]))[0].tokens == sent.tokens


# -- TSV cache -----------------------------------------------------------------

def _with_ids(sent, pair_id, side):
    return Sentence(sent.tokens, meta={"pair_id": pair_id, "side": side})


@settings(max_examples=200, deadline=None)
@given(trees(), trees())
def test_cache_roundtrip(a, b):
    sents = [_with_ids(a, "d:0", "src"), _with_ids(b, "d:0", "tgt")]
    back = parse_tsv_cache(format_tsv_cache(sents))
    assert [s.tokens for s in back] == [s.tokens for s in sents]
    assert [s.meta for s in back] == [s.meta for s in sents]


def test_cache_escapes_tabs(tmp_path):
    tok = Token(1, "a\tb", "x\\y", "X", 0, "root")
    path = tmp_path / "c.tsv"
    write_tsv_cache([Sentence([tok], meta={"pair_id": "d:0", "side": "src"})], path)
    raw = path.read_text(encoding="utf-8")
    assert "a\\tb" in raw and raw.count("\t") == 8
    assert read_tsv_cache(path)[0].tokens == [tok]


def test_cache_single_blank_separator(misc_sentences):
    sents = [_with_ids(misc_sentences["birds"], "m:0", "src"), _with_ids(misc_sentences["beaches"], "m:0", "tgt")]
    lines = format_tsv_cache(sents).split("\n")
    assert lines[:3] == [
        "m:0\tsrc\t1\tBirds\tbird\tNOUN\t2\tnsubj\t1",
        "m:0\tsrc\t2\tfly\tfly\tVERB\t0\troot\t0",
        "m:0\tsrc\t3\t.\t.\tPUNCT\t2\tpunct\t1",
    ]
    assert lines[3] == "" and lines[4].startswith("m:0\ttgt\t1\tWe")
    assert lines.count("") == 2  # separator plus the final newline


def test_cache_malformed_row():
    with pytest.raises(ParseError) as err:
        parse_tsv_cache("d:0\tsrc\t1\tx\tx\tX\t0\troot\t1\nd:0\tsrc\t2\tbroken\n")
    assert err.value.lineno == 2


def test_cache_pair_grouping(example_pairs):
    back = pairs_from_cache_sentences(parse_tsv_cache(format_tsv_cache(pairs_to_cache_sentences(example_pairs))))
    assert [p.pair_id for p in back] == [p.pair_id for p in example_pairs]
    assert all(b.src.tokens == p.src.tokens and b.tgt.tokens == p.tgt.tokens for b, p in zip(back, example_pairs))


# -- parallel text ---------------------------------------------------------------

def test_parallel_read(tmp_path):
    (tmp_path / "a.en").write_text("one\ntwo\nthree\n", encoding="utf-8")
    (tmp_path / "a.hu").write_text("egy\nkettő\nhárom\n", encoding="utf-8")
    pairs = read_parallel_text(tmp_path / "a.en", tmp_path / "a.hu")
    assert [(p.src, p.tgt) for p in pairs] == [("one", "egy"), ("two", "kettő"), ("three", "három")]
    assert [p.pair_id for p in pairs] == ["a:0", "a:1", "a:2"]


def test_parallel_misaligned(tmp_path):
    (tmp_path / "s").write_text("1\n2\n3\n", encoding="utf-8")
    (tmp_path / "t").write_text("1\n2\n", encoding="utf-8")
    with pytest.raises(AlignmentError) as err:
        read_parallel_text(tmp_path / "s", tmp_path / "t")
    assert (err.value.src_count, err.value.tgt_count) == (3, 2)


def test_parallel_roundtrip(tmp_path):
    pairs = [SentencePair("x y", "z", doc_id="d", pair_id="d:0"), SentencePair("", "w", doc_id="d", pair_id="d:1")]
    assert write_parallel_text(pairs, tmp_path / "s", tmp_path / "t") == 2
    back = read_parallel_text(tmp_path / "s", tmp_path / "t", doc_id="d")
    assert [(p.src, p.tgt, p.pair_id) for p in back] == [(p.src, p.tgt, p.pair_id) for p in pairs]
