"""End-to-end runs: input file -> context -> reduction -> lattice -> artifacts."""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from pathlib import Path

from . import cex, context as ctxmod, ingest
from .context import FormalContext
from .errors import ConfigurationError, LatticeForgeError
from .evalstats import EvalRow, stats_csv
from .lattice import ConceptLattice, LatticeStats, build_lattice, export_dot, lattice_stats
from .reduce import Order, ReductionReport, TechniqueConfig, apply_order
from .wordnet import WordNetDb, WordNetLexicon, load_db, resolve_wordnet_dir

__all__ = [
    "RunConfig",
    "PipelineResult",
    "EvalResult",
    "input_kind",
    "load_context",
    "load_wordnet",
    "run_pipeline",
    "eval_corpus",
    "CORPUS_SUFFIXES",
]

logger = logging.getLogger(__name__)

CORPUS_SUFFIXES = (".dep", ".deps", ".txt", ".tsv", ".cex", ".csv")
ARTIFACTS = ("context.cex", "reduced.cex", "lattice.dot", "stats.csv", "report.txt")


def input_kind(path: Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".cex":
        return "cex"
    if suffix == ".tsv":
        return "pairs"
    if suffix == ".csv":
        return "csv"
    return "deps"


@functools.lru_cache(maxsize=4)
def _cached_db(path: str) -> WordNetDb:
    return load_db(path)


def load_wordnet(path=None, required: bool = True) -> WordNetDb | None:
    """Load (and memoize) the WordNet at ``path`` or ``$WNHOME``.

    Returns ``None`` instead of raising when ``required`` is false and no
    directory is configured.
    """
    try:
        directory = resolve_wordnet_dir(path)
    except ConfigurationError:
        if required:
            raise
        return None
    return _cached_db(str(Path(directory).resolve()))


def load_context(path, kind: str | None = None, db: WordNetDb | None = None,
                 fold_case: bool = False) -> FormalContext:
    """Read a context from a CEX, debugging CSV, pair TSV or dependency file."""
    path = Path(path)
    kind = kind or input_kind(path)
    source = str(path)
    if kind == "cex":
        ctx = cex.read_cex(path.read_bytes()).context
    elif kind == "csv":
        ctx = ctxmod.read_csv(path.read_text(encoding="utf-8"), source)
    elif kind == "pairs":
        # pair files hold already pruned pairs, so no lemmatization here
        ctx = ingest.context_from_pairs(ingest.read_pairs_tsv(path.read_text(encoding="utf-8"), source, fold_case))
    elif kind == "deps":
        triples = ingest.parse_dependencies(path.read_text(encoding="utf-8"), source)
        ctx = ingest.context_from_pairs(ingest.extract_pairs(ingest.filter_triples(triples), db, fold_case))
    else:
        raise ConfigurationError(f"unknown input kind {kind!r}")
    return ctx


@dataclass
class RunConfig:
    input_path: Path
    technique: TechniqueConfig = field(default_factory=TechniqueConfig)
    wordnet_dir: Path | None = None
    out_dir: Path = Path("out")
    input_kind: str | None = None
    fold_case: bool = False
    extended_cex: bool = True
    emit_dot: bool = True

    def wordnet(self) -> WordNetDb | None:
        """The lexical database; mandatory only for orders that merge."""
        return load_wordnet(self.wordnet_dir, required=self.technique.order.uses_wordnet)


@dataclass
class PipelineResult:
    context: FormalContext
    reduced: FormalContext
    reports: list[ReductionReport]
    lattice: ConceptLattice
    stats: LatticeStats
    paths: dict[str, Path]


def _report_text(config: RunConfig, ctx: FormalContext, reduced: FormalContext, reports) -> str:
    t = config.technique
    lines = [
        f"input: {Path(config.input_path).name}",
        f"order: {t.order.value}",
        f"hypernym_depth: {t.hypernym_depth}",
        f"threshold_percent: {t.threshold_percent}",
        f"context: {ctx.shape[0]} objects x {ctx.shape[1]} attributes, {ctx.incidence_count()} cells",
        f"reduced: {reduced.shape[0]} objects x {reduced.shape[1]} attributes, {reduced.incidence_count()} cells",
        "",
    ]
    return "\n".join(lines) + "".join(r.to_text() for r in reports)


def run_pipeline(config: RunConfig) -> PipelineResult:
    """Build, reduce and analyse one input, writing the five artifacts."""
    db = config.wordnet()
    ctx = load_context(config.input_path, config.input_kind, db, config.fold_case)
    lexicon = WordNetLexicon(db) if db is not None else None
    reduced, reports = apply_order(ctx, config.technique, lexicon)
    lattice = build_lattice(reduced)
    stats = lattice_stats(lattice)

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {name: out / name for name in ARTIFACTS}
    paths["context.cex"].write_bytes(cex.write_cex(ctx, extended=True))
    paths["reduced.cex"].write_bytes(cex.write_cex(reduced, extended=config.extended_cex))
    if config.emit_dot:
        paths["lattice.dot"].write_text(export_dot(lattice), encoding="utf-8")
    else:
        del paths["lattice.dot"]
    paths["stats.csv"].write_text(f"{stats.csv_header()}\n{stats.csv_row()}\n", encoding="utf-8")
    paths["report.txt"].write_text(_report_text(config, ctx, reduced, reports), encoding="utf-8")
    return PipelineResult(ctx, reduced, reports, lattice, stats, paths)


@dataclass
class EvalResult:
    rows: list[EvalRow]
    failures: list[tuple[str, str]]
    csv: str

    @property
    def ok(self) -> bool:
        return not self.failures


def _corpus_files(directory: Path) -> list[Path]:
    return sorted(p for p in Path(directory).iterdir()
                  if p.is_file() and p.suffix.lower() in CORPUS_SUFFIXES)


def eval_corpus(directory, base: TechniqueConfig | None = None, wordnet_dir=None,
                fold_case: bool = False, fmt: str = "csv") -> EvalResult:
    """Run all five technique orders on every corpus file in ``directory``.

    A corpus that fails to load or reduce contributes no rows and is listed
    in ``failures``; the others are unaffected.
    """
    base = base or TechniqueConfig()
    db = load_wordnet(wordnet_dir, required=True)
    lexicon = WordNetLexicon(db)
    rows, failures = [], []
    for path in _corpus_files(Path(directory)):
        corpus_id = path.stem
        try:
            ctx = load_context(path, None, db, fold_case)
            corpus_rows = []
            for order in Order:
                config = TechniqueConfig(base.hypernym_depth, base.threshold_percent, order)
                reduced, _ = apply_order(ctx, config, lexicon)
                corpus_rows.append(EvalRow(corpus_id, order, lattice_stats(build_lattice(reduced))))
        except (LatticeForgeError, OSError, UnicodeDecodeError) as exc:
            logger.error("corpus %s failed: %s", corpus_id, exc)
            failures.append((corpus_id, str(exc)))
            continue
        rows.extend(corpus_rows)
    return EvalResult(rows, failures, stats_csv(rows, fmt=fmt))
