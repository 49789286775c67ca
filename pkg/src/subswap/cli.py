"""Command-line pipeline: clean, stats, sweep, split, cache, eligible, augment, bleu, inspect.

Every option can also come from a ``key=value`` config file given with
``--config``; keys use the option name with dashes or underscores, and
explicit flags win. Exit status is 0 on success, 1 on usage errors and 2 on
data errors.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from collections import Counter

from . import __version__
from .bleu import corpus_bleu, tokenize_for_bleu
from .corpus_io import (AlignmentError, ParseError, SentencePair, StructuralError, make_pair_id,
                        pairs_from_cache_sentences, pairs_to_cache_sentences, read_conllu,
                        read_parallel_text, read_tsv_cache, side_text, write_parallel_text,
                        write_tsv_cache)
from .deptree import build_tree, linearize
from .eligibility import LabelConfig, Rejection, check_pair, format_tally
from .pipeline import (ALL_METHODS, augment, derive_seed, eligible_sharded, format_provenance,
                       shuffle_into)
from .preprocess import (SWEEP_AXES, FilterConfig, clean_pair, compute_stats, format_sweep,
                         length_verdict, threshold_sweep, word_count)
from .split_sampler import SplitSpec, lemma_key, stratified_split

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_config(path) -> dict[str, str]:
    config = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            config[key.strip().replace("-", "_")] = value.strip()
    return config


def _size(text: str):
    return float(text) if any(c in text for c in ".eE") else int(text)


def _labels(text: str) -> frozenset:
    return frozenset(x.strip() for x in text.split(",") if x.strip())


def _grid(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _bool(text: str) -> bool:
    if text.lower() in ("1", "true", "yes", "on"):
        return True
    if text.lower() in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"not a boolean: {text!r}")


# -- helpers -------------------------------------------------------------------

def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for block in iter(lambda: f.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(args, stage: str, inputs: dict[str, str], counts: dict[str, int]) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    path = os.path.join(args.out_dir, f"{stage}.manifest")
    lines = [f"stage={stage}", f"version={__version__}"]
    for key, value in sorted(vars(args).items()):
        if key in ("func", "config"):
            continue
        if isinstance(value, (set, frozenset)):
            value = ",".join(sorted(value))
        lines.append(f"config.{key}={value}")
    for name, p in sorted(inputs.items()):
        if p:
            lines.append(f"input.{name}={p}")
            lines.append(f"digest.{name}=sha256:{_digest(p)}")
    for key, value in counts.items():
        lines.append(f"count.{key}={value}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
    return path


def _out(args, name: str) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, name)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _labels_of(args) -> LabelConfig:
    return LabelConfig(args.subject_labels, args.object_labels,
                       require_root_predicate=args.require_root_predicate,
                       allow_missing_subject=args.allow_missing_subject)


def _filter_config(args) -> FilterConfig:
    return FilterConfig(args.max_words, args.max_word_diff, args.max_word_ratio)


def _load_cache(path) -> list[SentencePair]:
    return pairs_from_cache_sentences(read_tsv_cache(path))


# -- subcommands -----------------------------------------------------------------

def cmd_clean(args) -> int:
    pairs = read_parallel_text(args.src, args.tgt, doc_id=args.doc_id)
    config = _filter_config(args)
    kept = []
    log = ["pair_id\tverdict\treason"]
    for pair in pairs:
        cleaned = clean_pair(pair)
        if cleaned is None:
            log.append(f"{pair.pair_id}\tdrop\tempty")
            continue
        reason = length_verdict(word_count(cleaned.src), word_count(cleaned.tgt), config)
        if reason:
            log.append(f"{pair.pair_id}\tdrop\t{reason}")
            continue
        log.append(f"{pair.pair_id}\tkeep\t")
        kept.append(cleaned)
    write_parallel_text(kept, _out(args, "clean.src"), _out(args, "clean.tgt"))
    _write(_out(args, "filter_log.tsv"), "\n".join(log) + "\n")
    write_manifest(args, "clean", {"src": args.src, "tgt": args.tgt},
                   {"input": len(pairs), "kept": len(kept), "dropped": len(pairs) - len(kept)})
    print(f"kept {len(kept)} of {len(pairs)} pairs")
    return 0


def cmd_stats(args) -> int:
    pairs = read_parallel_text(args.src, args.tgt)
    text = compute_stats(pairs).to_tsv()
    _write(_out(args, "stats.tsv"), text)
    write_manifest(args, "stats", {"src": args.src, "tgt": args.tgt}, {"pairs": len(pairs)})
    sys.stdout.write(text)
    return 0


def cmd_sweep(args) -> int:
    pairs = read_parallel_text(args.src, args.tgt)
    rows = threshold_sweep(pairs, args.axis, args.grid, _filter_config(args))
    text = format_sweep(rows)
    _write(_out(args, f"sweep_{args.axis}.tsv"), text)
    write_manifest(args, "sweep", {"src": args.src, "tgt": args.tgt}, {"pairs": len(pairs)})
    sys.stdout.write(text)
    return 0


def cmd_split(args) -> int:
    pairs = read_parallel_text(args.src, args.tgt, doc_id=args.doc_id)
    if args.docs:
        with open(args.docs, encoding="utf-8") as f:
            docs = [line.rstrip("\n") for line in f]
        if len(docs) != len(pairs):
            raise AlignmentError(len(pairs), len(docs))
        for i, (pair, doc) in enumerate(zip(pairs, docs)):
            pair.doc_id = doc
            pair.pair_id = make_pair_id(doc, i)
    spec = SplitSpec(args.val_size, args.test_size, derive_seed(args.seed, "split"))
    parts = dict(zip(("train", "val", "test"), stratified_split(pairs, spec)))
    for name, part in parts.items():
        write_parallel_text(part, _out(args, f"{name}.src"), _out(args, f"{name}.tgt"))
        _write(_out(args, f"{name}.docs"), "".join(p.doc_id + "\n" for p in part))
    write_manifest(args, "split", {"src": args.src, "tgt": args.tgt, "docs": args.docs},
                   {k: len(v) for k, v in parts.items()})
    print(" ".join(f"{k}={len(v)}" for k, v in parts.items()))
    return 0


def cmd_cache(args) -> int:
    src = read_conllu(args.src_conllu)
    tgt = read_conllu(args.tgt_conllu)
    if len(src) != len(tgt):
        raise AlignmentError(len(src), len(tgt))
    pairs = [SentencePair(s, t, doc_id=args.doc_id, pair_id=make_pair_id(args.doc_id, i))
             for i, (s, t) in enumerate(zip(src, tgt))]
    out = args.out or _out(args, "cache.tsv")
    write_tsv_cache(pairs_to_cache_sentences(pairs), out)
    write_manifest(args, "cache", {"src_conllu": args.src_conllu, "tgt_conllu": args.tgt_conllu},
                   {"pairs": len(pairs)})
    print(f"cached {len(pairs)} pairs to {out}")
    return 0


def cmd_eligible(args) -> int:
    pairs = _load_cache(args.cache)
    eligible, tally = eligible_sharded(pairs, _labels_of(args), args.shards)
    rows = ["pair_id\tsrc_lemma\ttgt_lemma"]
    rows += [f"{ep.pair_id}\t" + "\t".join(lemma_key(ep)) for ep in eligible]
    _write(_out(args, "eligible.tsv"), "\n".join(rows) + "\n")
    _write(_out(args, "rejections.tsv"), format_tally(tally))
    write_manifest(args, "eligible", {"cache": args.cache},
                   {"input": len(pairs), "eligible": len(eligible), "rejected": sum(tally.values())})
    print(f"eligible {len(eligible)} of {len(pairs)}")
    for reason, count in sorted(tally.items()):
        print(f"  {reason}\t{count}")
    return 0


def cmd_augment(args) -> int:
    pairs = _load_cache(args.cache)
    if args.train_src or args.train_tgt:
        if not (args.train_src and args.train_tgt):
            raise UsageError("--train-src and --train-tgt go together")
        train = [(side_text(p.src), side_text(p.tgt)) for p in read_parallel_text(args.train_src, args.train_tgt)]
    else:
        train = [(side_text(p.src), side_text(p.tgt)) for p in pairs]
    result = augment(pairs, args.method, len(train), args.ratio, args.seed, _labels_of(args),
                     shards=args.shards, **({"mode": args.selection_mode, "word_ratio": args.word_ratio}
                                            if args.method in ("blank", "dropout", "replace") else {}))
    syn = result.synthetic
    _write(_out(args, "augmented.src"), "".join(s.src + "\n" for s in syn))
    _write(_out(args, "augmented.tgt"), "".join(s.tgt + "\n" for s in syn))
    _write(_out(args, "provenance.tsv"), format_provenance(syn))
    if result.donors:
        _write(_out(args, "plan.tsv"), "method\tdonor_a\tdonor_b\n" + "".join(
            f"{args.method}\t{a}\t{b}\n" for a, b in result.donors))
    if result.tally:
        _write(_out(args, "rejections.tsv"), format_tally(Counter(result.tally)))
    mixed = shuffle_into(train, syn, args.seed)
    _write(_out(args, "train.src"), "".join(s + "\n" for s, _ in mixed))
    _write(_out(args, "train.tgt"), "".join(t + "\n" for _, t in mixed))
    write_manifest(args, "augment", {"cache": args.cache, "train_src": args.train_src,
                                     "train_tgt": args.train_tgt},
                   {"base": len(train), "target": result.target, "synthetic": len(syn),
                    "shortfall_donor_pairs": result.shortfall, "degenerate": result.degenerate,
                    "eligible": result.eligible, "train_out": len(mixed)})
    print(f"{len(syn)} synthetic pairs (target {result.target}); training set {len(mixed)}")
    if result.shortfall:
        print(f"warning: pool exhausted, {result.shortfall} donor pairs short", file=sys.stderr)
    return 0


def cmd_bleu(args) -> int:
    pairs = read_parallel_text(args.hyp, args.ref)
    report = corpus_bleu([tokenize_for_bleu(p.src) for p in pairs], [tokenize_for_bleu(p.tgt) for p in pairs])
    print(f"BLEU = {100 * report.bleu:.1f}")
    sys.stdout.write(report.to_tsv())
    if args.out_dir:
        _write(_out(args, "bleu.tsv"), report.to_tsv())
        write_manifest(args, "bleu", {"hyp": args.hyp, "ref": args.ref}, {"sentences": len(pairs)})
    return 0


def cmd_inspect(args) -> int:
    pairs = {p.pair_id: p for p in _load_cache(args.cache)}
    if args.pair_id not in pairs:
        raise UsageError(f"pair {args.pair_id!r} not in cache")
    pair = pairs[args.pair_id]
    labels = _labels_of(args)
    for side, sent in (("source", pair.src), ("target", pair.tgt)):
        print(f"# {side}: {linearize(sent.tokens)}")
        tree = build_tree(sent)
        for t in sent.tokens:
            print(f"{t.id}\t{t.form}\t{t.lemma}\t{t.upos}\t{t.head}\t{t.deprel}\t{'' if t.space_after else 'SpaceAfter=No'}")
        print(f"# root: {tree.root}")
    verdict = check_pair(pair, labels)
    if isinstance(verdict, Rejection):
        print(f"# ineligible: {verdict.key}")
    else:
        for side, trip in (("source", verdict.src_triplet), ("target", verdict.tgt_triplet)):
            print(f"# {side} triplet: subject={trip.subject_span} object={trip.object_span} predicate={trip.predicate}")
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out-dir", default="out")

    filt = _Parser(add_help=False)
    filt.add_argument("--max-words", type=int, default=32)
    filt.add_argument("--max-word-diff", type=int, default=7)
    filt.add_argument("--max-word-ratio", type=float, default=1.6)

    lab = _Parser(add_help=False)
    lab.add_argument("--subject-labels", type=_labels, default="nsubj")
    lab.add_argument("--object-labels", type=_labels, default="obj,dobj")
    lab.add_argument("--require-root-predicate", type=_bool, default="false")
    lab.add_argument("--allow-missing-subject", type=_bool, default="false")
    lab.add_argument("--shards", type=int, default=1)

    parallel = _Parser(add_help=False)
    parallel.add_argument("--src", required=True)
    parallel.add_argument("--tgt", required=True)

    parser = _Parser(prog="subswap", description="Structure-aware augmentation of parsed parallel corpora.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("clean", parents=[common, filt, parallel], help="clean and length-filter raw pairs")
    p.add_argument("--doc-id")
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("stats", parents=[common, parallel], help="length statistics")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", parents=[common, filt, parallel], help="filter threshold sweep")
    p.add_argument("--axis", choices=SWEEP_AXES, default="max_words")
    p.add_argument("--grid", type=_grid, default="8,16,24,32,48,64")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("split", parents=[common, parallel], help="document-stratified train/val/test split")
    p.add_argument("--docs", help="file with one document id per line")
    p.add_argument("--doc-id")
    p.add_argument("--val-size", type=_size, default="0.1")
    p.add_argument("--test-size", type=_size, default="0.1")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("cache", parents=[common], help="CoNLL-U parses to the TSV cache")
    p.add_argument("--src-conllu", required=True)
    p.add_argument("--tgt-conllu", required=True)
    p.add_argument("--doc-id", default="corpus")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cache)

    p = sub.add_parser("eligible", parents=[common, lab], help="swap eligibility filter")
    p.add_argument("--cache", required=True)
    p.set_defaults(func=cmd_eligible)

    p = sub.add_parser("augment", parents=[common, lab], help="generate synthetic pairs")
    p.add_argument("--cache", required=True)
    p.add_argument("--method", required=True, choices=ALL_METHODS)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--train-src")
    p.add_argument("--train-tgt")
    p.add_argument("--selection-mode", choices=("softmax", "bernoulli"), default="softmax")
    p.add_argument("--word-ratio", type=float, default=0.15)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("bleu", parents=[common], help="corpus BLEU of a hypothesis file")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.set_defaults(func=cmd_bleu, out_dir=None)

    p = sub.add_parser("inspect", parents=[common, lab], help="show a cached pair and its triplets")
    p.add_argument("--cache", required=True)
    p.add_argument("--pair-id", required=True)
    p.set_defaults(func=cmd_inspect)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    config = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for subparser in sub_action.choices.values():
        dests = {a.dest for a in subparser._actions}
        subparser.set_defaults(**{k: v for k, v in config.items() if k in dests})
        for action in subparser._actions:
            if action.dest in config and action.required:
                action.required = False


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, UsageError) as exc:
        print(f"subswap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"subswap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"subswap: error: missing file: {exc.filename}", file=sys.stderr)
        return EXIT_DATA
    except (ParseError, StructuralError, AlignmentError, ValueError) as exc:
        print(f"subswap: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(f"done in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
