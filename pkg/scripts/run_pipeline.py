#!/usr/bin/env python3
"""Run every CLI stage on a synthetic corpus and report per-stage wall time.

Stages: generate, clean, stats, split, cache, eligible, augment (one run per
method), bleu. Outputs land under --work.
"""

import argparse
import os
import time

from subswap.cli import main as cli
from subswap.corpus_io import format_conllu, side_text
from subswap.pipeline import ALL_METHODS
from subswap.synthetic import synthetic_corpus


def stage(name, timings, *argv):
    start = time.perf_counter()
    code = cli([str(a) for a in argv])
    timings.append((name, time.perf_counter() - start))
    if code != 0:
        raise SystemExit(f"stage {name} failed with exit code {code}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ratio", type=float, default=0.5)
    ap.add_argument("--shards", type=int, default=1)
    ap.add_argument("--methods", default="obj,subj,obj-lemma,subj-lemma,pred,blank,dropout,replace")
    ap.add_argument("--work", default="work")
    args = ap.parse_args()
    methods = [m for m in args.methods.split(",") if m]
    unknown = set(methods) - set(ALL_METHODS)
    if unknown:
        ap.error(f"unknown methods: {', '.join(sorted(unknown))}")

    w = args.work
    os.makedirs(w, exist_ok=True)
    timings = []
    start = time.perf_counter()
    pairs = synthetic_corpus(args.n, args.seed)
    files = {"src.conllu": format_conllu([p.src for p in pairs]),
             "tgt.conllu": format_conllu([p.tgt for p in pairs]),
             "raw.src": "".join(side_text(p.src) + "\n" for p in pairs),
             "raw.tgt": "".join(side_text(p.tgt) + "\n" for p in pairs),
             "raw.docs": "".join(p.doc_id + "\n" for p in pairs)}
    for name, text in files.items():
        with open(os.path.join(w, name), "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    timings.append(("generate", time.perf_counter() - start))

    common = ["--seed", args.seed]
    stage("clean", timings, "clean", "--src", f"{w}/raw.src", "--tgt", f"{w}/raw.tgt",
          "--out-dir", f"{w}/clean", *common)
    stage("stats", timings, "stats", "--src", f"{w}/raw.src", "--tgt", f"{w}/raw.tgt", "--out-dir", f"{w}/stats")
    stage("split", timings, "split", "--src", f"{w}/raw.src", "--tgt", f"{w}/raw.tgt", "--docs", f"{w}/raw.docs",
          "--out-dir", f"{w}/split", *common)
    stage("cache", timings, "cache", "--src-conllu", f"{w}/src.conllu", "--tgt-conllu", f"{w}/tgt.conllu",
          "--doc-id", "syn", "--out", f"{w}/cache.tsv", "--out-dir", f"{w}/cache")
    stage("eligible", timings, "eligible", "--cache", f"{w}/cache.tsv", "--shards", args.shards,
          "--out-dir", f"{w}/eligible")
    for method in methods:
        stage(f"augment:{method}", timings, "augment", "--cache", f"{w}/cache.tsv", "--method", method,
              "--ratio", args.ratio, "--shards", args.shards, "--out-dir", f"{w}/augment-{method}", *common)
    stage("bleu", timings, "bleu", "--hyp", f"{w}/split/test.src", "--ref", f"{w}/split/test.src",
          "--out-dir", f"{w}/bleu")

    print("stage\tseconds")
    for name, secs in timings:
        print(f"{name}\t{secs:.2f}")
    print(f"total\t{sum(s for _, s in timings):.2f}")


if __name__ == "__main__":
    main()
