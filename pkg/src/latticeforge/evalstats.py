"""Aggregate lattice statistics over corpora the way the evaluation sheet does."""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyInput
from .lattice import LatticeStats
from .reduce import Order

__all__ = ["EvalRow", "AggregateRow", "aggregate", "aggregate_rows", "stats_csv",
           "STAT_COLUMNS", "AGGREGATE_FUNCTIONS", "format_number"]

STAT_COLUMNS = ("concepts", "edges", "height", "width_lo", "width_hi")
AGGREGATE_FUNCTIONS = ("mean", "median", "sum", "max", "min", "stdv_p", "stdv_s", "stdeva")
CONFIG_ORDER = tuple(Order)


@dataclass(frozen=True)
class EvalRow:
    corpus_id: str
    config: Order
    stats: LatticeStats

    def values(self) -> tuple[int, ...]:
        s = self.stats
        return (s.concept_count, s.edge_count, s.height, s.width_lo, s.width_hi)


@dataclass(frozen=True)
class AggregateRow:
    mean: float
    median: float
    sum: float
    max: float
    min: float
    stdv_p: float
    stdv_s: float | None
    stdeva: float | None

    def get(self, name: str):
        return getattr(self, name)


def aggregate(values: Iterable[float]) -> AggregateRow:
    """Spreadsheet-style summary of a column.

    ``stdv_s`` (and its alias ``stdeva``, identical on numeric data) is
    ``None`` for a single value.
    """
    data = list(values)
    if not data:
        raise EmptyInput("aggregate needs at least one value")
    total = math.fsum(data)
    mean = total / len(data)
    sample = statistics.stdev(data) if len(data) > 1 else None
    return AggregateRow(
        mean=mean,
        median=float(statistics.median(data)),
        sum=total,
        max=float(max(data)),
        min=float(min(data)),
        stdv_p=statistics.pstdev(data),
        stdv_s=sample,
        stdeva=sample,
    )


def _sorted_rows(rows: Iterable[EvalRow]) -> list[EvalRow]:
    return sorted(rows, key=lambda r: (r.corpus_id, CONFIG_ORDER.index(Order.parse(r.config))))


def aggregate_rows(rows: Sequence[EvalRow]) -> dict[Order, dict[str, AggregateRow]]:
    """Per configuration, one :class:`AggregateRow` per statistic column."""
    out = {}
    for config in CONFIG_ORDER:
        selected = [r for r in rows if Order.parse(r.config) is config]
        if not selected:
            continue
        columns = list(zip(*(r.values() for r in selected)))
        out[config] = {name: aggregate(col) for name, col in zip(STAT_COLUMNS, columns)}
    return out


def format_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    if float(value).is_integer():
        return str(int(value))
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def stats_csv(rows: Sequence[EvalRow], aggregates=None, fmt: str = "csv") -> str:
    """Data rows in (corpus, config) order, then eight aggregate rows per config."""
    sep = {"csv": ",", "tsv": "\t"}[fmt]
    rows = _sorted_rows(rows)
    if aggregates is None:
        aggregates = aggregate_rows(rows)
    lines = [sep.join(("corpus", "config") + STAT_COLUMNS)]
    for r in rows:
        lines.append(sep.join([r.corpus_id, Order.parse(r.config).value, *map(str, r.values())]))
    for config in CONFIG_ORDER:
        if config not in aggregates:
            continue
        per_column = aggregates[config]
        for func in AGGREGATE_FUNCTIONS:
            cells = [format_number(per_column[col].get(func)) for col in STAT_COLUMNS]
            lines.append(sep.join([func, config.value, *cells]))
    return "\n".join(lines) + "\n"
