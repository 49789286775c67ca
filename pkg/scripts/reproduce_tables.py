#!/usr/bin/env python3
"""Print the swap outputs for the hand-annotated example pairs in tests/fixtures."""

import argparse
import os

from subswap.augment_swap import swap_objects, swap_predicates, swap_subjects
from subswap.corpus_io import SentencePair, read_conllu
from subswap.eligibility import LabelConfig, Rejection, check_pair

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, os.pardir, "tests", "fixtures")
# table -> swap used for its outputs
OPS = {"3.2": swap_objects, "3.3": swap_subjects, "3.4": swap_objects, "3.5": swap_objects, "3.6": swap_predicates}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--src", default=os.path.join(FIXTURES, "example_pairs.en.conllu"))
    ap.add_argument("--tgt", default=os.path.join(FIXTURES, "example_pairs.hu.conllu"))
    ap.add_argument("--strict", action="store_true", help="do not allow a missing (pro-dropped) subject")
    args = ap.parse_args()

    labels = LabelConfig(allow_missing_subject=not args.strict)
    groups = {}
    for s, t in zip(read_conllu(args.src), read_conllu(args.tgt)):
        pair = SentencePair(s, t, doc_id="fixtures", pair_id=s.meta.get("sent_id", ""))
        groups.setdefault(s.meta.get("table"), []).append(check_pair(pair, labels))
    for table, (a, b) in sorted(groups.items()):
        print(f"== table {table} ({OPS[table].__name__})")
        bad = [x for x in (a, b) if isinstance(x, Rejection)]
        if bad:
            print(f"  ineligible: {', '.join(r.key for r in bad)}")
            continue
        for i, aug in enumerate(OPS[table](a, b), 1):
            print(f"  EN-AUG-{i}\t{aug.src_text}")
            print(f"  HU-AUG-{i}\t{aug.tgt_text}")


if __name__ == "__main__":
    main()
