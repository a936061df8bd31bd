"""``latticeforge`` command line.

Exit codes: 0 ok, 1 input error, 2 configuration error, 3 partial eval failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .cex import read_cex, write_cex
from .context import read_csv, to_csv
from .errors import ConfigurationError, InputError, LatticeForgeError
from .ingest import split_sentences, tokenize
from .lattice import build_lattice, export_dot, lattice_stats
from .pipeline import RunConfig, eval_corpus, load_context, load_wordnet, run_pipeline
from .reduce import Order, TechniqueConfig, apply_order, reports_to_csv
from .wordnet import WordNetLexicon

EXIT_OK, EXIT_INPUT, EXIT_CONFIG, EXIT_PARTIAL = 0, 1, 2, 3
ORDER_CHOICES = ("none", "wn", "freq", "wn-freq", "freq-wn")

log = logging.getLogger("latticeforge")


def _common(parser: argparse.ArgumentParser, reduction: bool = False, fmt=None):
    parser.add_argument("--wordnet-dir", type=Path, default=None,
                        help="WordNet dict directory (default: $WNHOME/dict)")
    parser.add_argument("--fold-case", action="store_true", help="lower-case all labels on ingestion")
    parser.add_argument("--out", type=Path, default=None, help="output file or directory")
    if fmt:
        parser.add_argument("--format", choices=fmt, default=fmt[0])
    if reduction:
        parser.add_argument("--depth", type=int, default=4, help="hypernym depth (default 4)")
        parser.add_argument("--threshold", default="2", help="frequency threshold in percent (default 2)")
        parser.add_argument("--order", choices=ORDER_CHOICES, default="none")


def _technique(args) -> TechniqueConfig:
    return TechniqueConfig(args.depth, args.threshold, Order.parse(args.order))


def _emit(args, text: str | bytes):
    if args.out is None:
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)
        return
    if isinstance(text, bytes):
        args.out.write_bytes(text)
    else:
        args.out.write_text(text, encoding="utf-8")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _context_for(args):
    db = load_wordnet(args.wordnet_dir, required=False)
    return load_context(args.input, None, db, args.fold_case)


def _render_context(ctx, fmt: str):
    return write_cex(ctx, extended=True) if fmt == "cex" else to_csv(ctx)


# -- subcommands ---------------------------------------------------------------

def cmd_nlp(args):
    text = _read_text(args.input)
    lines = []
    for sentence in split_sentences(text):
        if args.action == "split":
            lines.append(" ".join(sentence.text.split()))
        else:
            lines.append(" ".join(t.text for t in tokenize(sentence)))
    _emit(args, "".join(line + "\n" for line in lines))
    return EXIT_OK


def cmd_ingest(args):
    _emit(args, _render_context(_context_for(args), args.format))
    return EXIT_OK


def cmd_reduce(args):
    config = _technique(args)
    db = load_wordnet(args.wordnet_dir, required=config.order.uses_wordnet)
    ctx = load_context(args.input, None, db, args.fold_case)
    reduced, reports = apply_order(ctx, config, WordNetLexicon(db) if db else None)
    _emit(args, _render_context(reduced, args.format))
    if args.report:
        args.report.write_text(reports_to_csv(reports), encoding="utf-8")
    else:
        for report in reports:
            sys.stderr.write(report.to_text())
    return EXIT_OK


def cmd_lattice(args):
    lattice = build_lattice(_context_for(args))
    if args.format == "dot":
        _emit(args, export_dot(lattice))
    else:
        stats = lattice_stats(lattice)
        _emit(args, f"{stats.csv_header()}\n{stats.csv_row()}\n")
    return EXIT_OK


def cmd_stats(args):
    stats = lattice_stats(build_lattice(_context_for(args)))
    _emit(args, f"{stats.csv_header()}\n{stats.csv_row()}\n")
    return EXIT_OK


def cmd_run(args):
    config = RunConfig(
        input_path=Path(args.input),
        technique=_technique(args),
        wordnet_dir=args.wordnet_dir,
        out_dir=args.out or Path("out"),
        fold_case=args.fold_case,
        extended_cex=not args.plain_reduced,
        emit_dot=not args.no_dot,
    )
    result = run_pipeline(config)
    for name, path in result.paths.items():
        print(path)
    return EXIT_OK


def cmd_eval(args):
    base = TechniqueConfig(args.depth, args.threshold)
    result = eval_corpus(args.corpus, base, args.wordnet_dir, args.fold_case, fmt=args.format)
    _emit(args, result.csv)
    for corpus, message in result.failures:
        sys.stderr.write(f"failed: {corpus}: {message}\n")
    return EXIT_OK if result.ok else EXIT_PARTIAL


def cmd_cex(args):
    if args.action == "validate":
        doc = read_cex(Path(args.input).read_bytes(), lenient=args.lenient)
        ctx = doc.context
        kind = "extended" if doc.extended else "standard"
        print(f"ok: {kind} CEX, {len(ctx.objects)} objects, {len(ctx.attributes)} attributes, "
              f"{ctx.incidence_count()} incidences")
        return EXIT_OK
    source = Path(args.input)
    if source.suffix.lower() == ".cex":
        doc = read_cex(source.read_bytes(), lenient=args.lenient)
        ctx, extended = doc.context, doc.extended
    else:
        ctx, extended = read_csv(source.read_text(encoding="utf-8"), str(source)), True
    target = args.format or ("csv" if source.suffix.lower() == ".cex" else "cex")
    _emit(args, write_cex(ctx, extended) if target == "cex" else to_csv(ctx))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latticeforge", description="Concept hierarchies from verb-noun pairs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nlp", help="sentence splitting and tokenization")
    p.add_argument("action", choices=("split", "tokenize"))
    p.add_argument("input", help="text file, or - for stdin")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_nlp)

    p = sub.add_parser("ingest", help="dependency or pair file -> formal context")
    p.add_argument("input")
    _common(p, fmt=("cex", "csv"))
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("reduce", help="apply a technique order to a context")
    p.add_argument("input")
    _common(p, reduction=True, fmt=("cex", "csv"))
    p.add_argument("--report", type=Path, default=None, help="write the reduction report CSV here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("lattice", help="concept lattice as DOT (or stats as CSV)")
    p.add_argument("input")
    _common(p, fmt=("dot", "csv"))
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("stats", help="lattice statistics CSV row")
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("run", help="full pipeline, writing all artifacts to --out")
    p.add_argument("input")
    _common(p, reduction=True)
    p.add_argument("--plain-reduced", action="store_true", help="write reduced.cex without frequencies")
    p.add_argument("--no-dot", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="all five technique orders over a corpus directory")
    p.add_argument("corpus", type=Path)
    _common(p, reduction=True, fmt=("csv", "tsv"))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cex", help="validate or convert CEX files")
    p.add_argument("action", choices=("validate", "convert"))
    p.add_argument("input")
    p.add_argument("--lenient", action="store_true", help="recompute mismatching Frequency values")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=("cex", "csv"), default=None)
    p.set_defaults(func=cmd_cex)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        sys.stderr.write(f"latticeforge: configuration error: {exc}\n")
        return EXIT_CONFIG
    except (InputError, OSError, UnicodeDecodeError) as exc:
        sys.stderr.write(f"latticeforge: input error: {exc}\n")
        return EXIT_INPUT
    except LatticeForgeError as exc:
        sys.stderr.write(f"latticeforge: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
