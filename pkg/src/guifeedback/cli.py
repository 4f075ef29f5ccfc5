"""Command-line interface.

Typical flow:
    guifeedback synth templates/ --count 200 --seed 1
    guifeedback ingest templates/ --out index.gcix
    guifeedback score design.json --index index.gcix
    guifeedback recommend design.json --index index.gcix -k 8 -r 4 --seed 7
    guifeedback train --index index.gcix --out weights.gcae --epochs 200
    guifeedback embed --index index.gcix --weights weights.gcae
    guifeedback serve --index index.gcix --port 8080

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import autoencoder, corpus as corpus_mod, synth
from .attention import BaselineSaliencyModel, attention_map, render_heatmap_png
from .corpus import RuleSet, ingest, load_index_file, percentile, save_index_file, with_embeddings
from .layout import LayoutError, parse_layout
from .metrics import METRIC_NAMES, evaluate
from .raster import rasterize
from .recommend import recommend

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


def _read_layout(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliIOError(f"cannot read {path}: {exc}") from exc
    return parse_layout(text)


class _CliIOError(Exception):
    pass


def cmd_synth(args) -> int:
    paths = synth.generate_corpus_files(args.out_dir, count=args.count, seed=args.seed)
    print(f"wrote {len(paths)} layouts to {args.out_dir}")
    return EXIT_OK


def cmd_ingest(args) -> int:
    rules = RuleSet(
        excluded_categories=frozenset(args.exclude_category or []),
        min_elements=args.min_elements,
        max_elements=args.max_elements,
    )
    built = ingest(args.directory, rules)
    save_index_file(built, args.out)
    print(f"ingested {len(built)} entries ({len(built.skipped)} skipped) -> {args.out}")
    for record in built.skipped:
        print(f"  skipped {record.source}: {record.reason}", file=sys.stderr)
    return EXIT_OK


def cmd_train(args) -> int:
    built = load_index_file(args.index)
    if not built.entries:
        print("index is empty; nothing to train on", file=sys.stderr)
        return EXIT_VALIDATION
    rasters = [rasterize(e.doc) for e in built.entries.values()]
    config = autoencoder.TrainConfig(
        max_epochs=args.epochs, batch_size=args.batch,
        validation_fraction=1.0 - args.split, seed=args.seed,
    )
    model, _ = autoencoder.train_autoencoder(
        rasters, config, on_epoch=lambda s: print(s.to_json_line(), flush=True))
    autoencoder.save_weights_file(model, args.out)
    print(f"saved weights -> {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_embed(args) -> int:
    built = load_index_file(args.index)
    model = autoencoder.load_weights_file(args.weights)
    ids = list(built.entries)
    vectors = autoencoder.embed_many([rasterize(built.entries[i].doc) for i in ids], model)
    updated = with_embeddings(built, dict(zip(ids, vectors)), mode="trained")
    out = args.out or args.index
    save_index_file(updated, out)
    print(f"re-embedded {len(updated)} entries (trained mode) -> {out}")
    return EXIT_OK


def cmd_score(args) -> int:
    doc = _read_layout(args.layout)
    report = evaluate(doc)
    out = report.to_dict()
    if args.index:
        built = load_index_file(args.index)
        if built.entries:
            out["percentiles"] = {name: round(percentile(built, name, report.score(name)), 4)
                                  for name in METRIC_NAMES}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_recommend(args) -> int:
    doc = _read_layout(args.layout)
    built = load_index_file(args.index)
    weights = autoencoder.load_weights_file(args.weights) if args.weights else None
    results = recommend(doc, built, k_similar=args.k_similar, n_random=args.n_random,
                        seed=args.seed, min_rating=args.min_rating,
                        category=args.category, weights=weights)
    print(json.dumps([r.to_dict() for r in results], indent=2))
    return EXIT_OK


def cmd_attention(args) -> int:
    doc = _read_layout(args.layout)
    amap = attention_map(doc, BaselineSaliencyModel())
    if args.png:
        try:
            Path(args.png).write_bytes(render_heatmap_png(amap))
        except OSError as exc:
            raise _CliIOError(f"cannot write {args.png}: {exc}") from exc
        print(f"wrote heatmap -> {args.png}")
    else:
        print(json.dumps(amap.to_dict()))
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    built = load_index_file(args.index)
    weights = autoencoder.load_weights_file(args.weights) if args.weights else None
    if built.embedding_mode == "trained" and weights is None:
        print("index is in trained mode; --weights is required", file=sys.stderr)
        return EXIT_VALIDATION
    serve(built, weights=weights, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guifeedback",
                                     description="GUI design feedback engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic template corpus")
    p.add_argument("out_dir")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("ingest", help="build an index from a directory of layout JSON")
    p.add_argument("directory")
    p.add_argument("--out", required=True)
    p.add_argument("--exclude-category", action="append", default=[])
    p.add_argument("--min-elements", type=int, default=None)
    p.add_argument("--max-elements", type=int, default=None)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("train", help="train the embedding autoencoder on an index")
    p.add_argument("--index", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--epochs", type=int, required=True)
    p.add_argument("--batch", type=int, default=512)
    p.add_argument("--split", type=float, default=0.9, help="train fraction")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("embed", help="recompute index embeddings with trained weights")
    p.add_argument("--index", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--out", default=None, help="defaults to rewriting the index in place")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("score", help="print the metric report for a layout")
    p.add_argument("layout")
    p.add_argument("--index", default=None)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("recommend", help="print recommendations for a layout")
    p.add_argument("layout")
    p.add_argument("--index", required=True)
    p.add_argument("-k", "--k-similar", type=int, default=8)
    p.add_argument("-r", "--n-random", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-rating", type=float, default=None)
    p.add_argument("--category", default=None)
    p.add_argument("--weights", default=None)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("attention", help="attention heatmap for a layout")
    p.add_argument("layout")
    p.add_argument("--png", default=None)
    p.set_defaults(func=cmd_attention)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--index", required=True)
    p.add_argument("--weights", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LayoutError, ValueError, autoencoder.TrainingError,
            corpus_mod.EmptyCorpusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (_CliIOError, OSError, corpus_mod.CorpusIOError, corpus_mod.IndexFormatError,
            corpus_mod.IndexCorruptError, autoencoder.WeightsFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
