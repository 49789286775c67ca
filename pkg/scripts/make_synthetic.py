#!/usr/bin/env python3
"""Write a synthetic parsed bilingual corpus as CoNLL-U plus raw text files."""

import argparse
import os

from subswap.corpus_io import format_conllu, side_text
from subswap.synthetic import synthetic_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--docs", type=int, default=5)
    ap.add_argument("--ineligible-share", type=float, default=0.1)
    ap.add_argument("--out-dir", default="synthetic")
    args = ap.parse_args()

    pairs = synthetic_corpus(args.n, args.seed, args.docs, args.ineligible_share)
    os.makedirs(args.out_dir, exist_ok=True)
    files = {
        "src.conllu": format_conllu([p.src for p in pairs]),
        "tgt.conllu": format_conllu([p.tgt for p in pairs]),
        "raw.src": "".join(side_text(p.src) + "\n" for p in pairs),
        "raw.tgt": "".join(side_text(p.tgt) + "\n" for p in pairs),
        "raw.docs": "".join(p.doc_id + "\n" for p in pairs),
    }
    for name, text in files.items():
        with open(os.path.join(args.out_dir, name), "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    print(f"wrote {len(pairs)} pairs to {args.out_dir}/")


if __name__ == "__main__":
    main()
