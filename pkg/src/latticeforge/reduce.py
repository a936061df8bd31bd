"""Context reduction: WordNet-based merging and frequency-based elimination."""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .context import FormalContext, _bits
from .errors import ConfigurationError, DuplicateLabel, EmptyAxis, UnknownLabel
from .wordnet import Pos

__all__ = [
    "Axis",
    "Order",
    "TechniqueConfig",
    "ReductionReport",
    "merge",
    "frequencies",
    "frequency_reduce",
    "wordnet_reduce",
    "apply_order",
    "as_fraction",
]


class Axis(str, enum.Enum):
    OBJECTS = "object"
    ATTRIBUTES = "attribute"


class Order(str, enum.Enum):
    """The five technique orderings compared in the evaluation."""

    NONE = "none"
    WORDNET = "wordnet-only"
    FREQUENCY = "frequency-only"
    WORDNET_FREQUENCY = "wordnet-then-frequency"
    FREQUENCY_WORDNET = "frequency-then-wordnet"

    @classmethod
    def parse(cls, value: "str | Order") -> "Order":
        if isinstance(value, Order):
            return value
        key = str(value).strip().lower()
        if key in _ORDER_ALIASES:
            return _ORDER_ALIASES[key]
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(sorted(set(_ORDER_ALIASES) | {o.value for o in cls}))
            raise ConfigurationError(f"unknown order {value!r}; choose from {choices}") from None

    @property
    def steps(self) -> tuple[str, ...]:
        return _ORDER_STEPS[self]

    @property
    def uses_wordnet(self) -> bool:
        return "wordnet" in self.steps

    @property
    def short(self) -> str:
        return {v: k for k, v in _ORDER_ALIASES.items()}[self]


_ORDER_ALIASES = {
    "none": Order.NONE,
    "wn": Order.WORDNET,
    "freq": Order.FREQUENCY,
    "wn-freq": Order.WORDNET_FREQUENCY,
    "freq-wn": Order.FREQUENCY_WORDNET,
}
_ORDER_STEPS = {
    Order.NONE: (),
    Order.WORDNET: ("wordnet",),
    Order.FREQUENCY: ("frequency",),
    Order.WORDNET_FREQUENCY: ("wordnet", "frequency"),
    Order.FREQUENCY_WORDNET: ("frequency", "wordnet"),
}


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float literal."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value).strip().rstrip("%"))


@dataclass(frozen=True)
class TechniqueConfig:
    hypernym_depth: int = 4
    threshold_percent: Fraction = Fraction(2)
    order: Order = Order.NONE

    def __post_init__(self):
        object.__setattr__(self, "threshold_percent", as_fraction(self.threshold_percent))
        object.__setattr__(self, "order", Order.parse(self.order))
        if not 0 <= self.threshold_percent <= 100:
            raise ConfigurationError(f"threshold {self.threshold_percent} outside [0, 100]")
        if int(self.hypernym_depth) != self.hypernym_depth or self.hypernym_depth < 0:
            raise ConfigurationError(f"hypernym depth must be a non-negative integer, got {self.hypernym_depth}")


@dataclass(frozen=True)
class ReductionReport:
    """What one technique did to a context."""

    technique: str
    merged_object_groups: tuple[tuple[str, tuple[str, ...]], ...] = ()
    merged_attribute_groups: tuple[tuple[str, tuple[str, ...]], ...] = ()
    removed_objects: tuple[tuple[str, Fraction], ...] = ()
    removed_attributes: tuple[tuple[str, Fraction], ...] = ()
    parameters: dict = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not (self.merged_object_groups or self.merged_attribute_groups
                    or self.removed_objects or self.removed_attributes)

    def to_text(self) -> str:
        params = ", ".join(f"{k}={_fmt_param(v)}" for k, v in sorted(self.parameters.items()))
        lines = [f"{self.technique} technique ({params})" if params else f"{self.technique} technique"]
        for axis, groups in (("object", self.merged_object_groups), ("attribute", self.merged_attribute_groups)):
            for survivor, members in groups:
                lines.append(f"  merged {axis}s {', '.join(members)} -> {survivor}")
        for axis, removed in (("object", self.removed_objects), ("attribute", self.removed_attributes)):
            for label, freq in removed:
                lines.append(f"  removed {axis} {label} ({_fmt_percent(freq)}%)")
        if self.is_empty:
            lines.append("  no change")
        return "\n".join(lines) + "\n"

    def csv_rows(self) -> list[list[str]]:
        rows = []
        for axis, groups in (("object", self.merged_object_groups), ("attribute", self.merged_attribute_groups)):
            for survivor, members in groups:
                rows.append(["merge", axis, survivor, ";".join(members), ""])
        for axis, removed in (("object", self.removed_objects), ("attribute", self.removed_attributes)):
            for label, freq in removed:
                rows.append(["remove", axis, "", label, _fmt_percent(freq)])
        return rows

    def to_csv(self) -> str:
        return reports_to_csv([self])


def reports_to_csv(reports: Iterable[ReductionReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["action", "axis", "survivor", "members", "frequency"])
    for report in reports:
        writer.writerows(report.csv_rows())
    return buf.getvalue()


def _fmt_percent(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    text = f"{float(value):.6f}".rstrip("0").rstrip(".")
    return text


def _fmt_param(value) -> str:
    return _fmt_percent(value) if isinstance(value, Fraction) else str(value)


# -- merge ---------------------------------------------------------------------

def merge(ctx: FormalContext, axis: Axis | str, group: Sequence[str], new_label: str) -> FormalContext:
    """Replace the rows (or columns) in ``group`` by their componentwise OR.

    The merged line takes the position of ``group[0]`` and is named
    ``new_label``; every other row and column is left as it was.
    """
    axis = Axis(axis)
    group = list(group)
    if len(group) < 2:
        raise ValueError("a merge group needs at least two labels")
    if len(set(group)) != len(group):
        raise DuplicateLabel(f"label repeated in merge group {group}")
    if axis is Axis.OBJECTS:
        merged = _merge_rows(list(ctx.objects), list(ctx.rows), group, new_label, "object")
        labels, rows = merged
        return FormalContext(tuple(labels), ctx.attributes, tuple(rows))
    labels, columns = _merge_rows(list(ctx.attributes), list(ctx.columns), group, new_label, "attribute")
    return _from_columns(ctx.objects, labels, columns)


def _merge_rows(labels, lines, group, new_label, axis_name):
    index = {label: i for i, label in enumerate(labels)}
    for label in group:
        if label not in index:
            raise UnknownLabel(f"unknown {axis_name} {label!r}")
    members = set(group)
    if new_label in index and new_label not in members:
        raise DuplicateLabel(f"{axis_name} {new_label!r} already exists")
    combined = 0
    for label in group:
        combined |= lines[index[label]]
    anchor = index[group[0]]
    out_labels, out_lines = [], []
    for i, (label, line) in enumerate(zip(labels, lines)):
        if i == anchor:
            out_labels.append(new_label)
            out_lines.append(combined)
        elif label not in members:
            out_labels.append(label)
            out_lines.append(line)
    return out_labels, out_lines


def _from_columns(objects, attributes, columns) -> FormalContext:
    rows = [0] * len(objects)
    for j, column in enumerate(columns):
        for i in _bits(column):
            rows[i] |= 1 << j
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows))


def _select(ctx: FormalContext, keep_objects: Sequence[int], keep_attributes: Sequence[int]) -> FormalContext:
    rows = []
    for i in keep_objects:
        row = ctx.rows[i]
        packed = 0
        for new_j, j in enumerate(keep_attributes):
            if row >> j & 1:
                packed |= 1 << new_j
        rows.append(packed)
    return FormalContext(
        tuple(ctx.objects[i] for i in keep_objects),
        tuple(ctx.attributes[j] for j in keep_attributes),
        tuple(rows),
    )


# -- frequency technique -----------------------------------------------------------

def frequencies(ctx: FormalContext) -> tuple[dict[str, Fraction], dict[str, Fraction]]:
    """Exact incidence percentages per object (over attributes) and per attribute (over objects)."""
    n_obj, n_attr = ctx.shape
    if n_obj == 0 or n_attr == 0:
        raise EmptyAxis(f"frequencies need at least one object and one attribute, got {n_obj}x{n_attr}")
    objs = {o: Fraction(100 * r.bit_count(), n_attr) for o, r in zip(ctx.objects, ctx.rows)}
    attrs = {a: Fraction(100 * c.bit_count(), n_obj) for a, c in zip(ctx.attributes, ctx.columns)}
    return objs, attrs


def frequency_reduce(ctx: FormalContext, threshold_percent) -> tuple[FormalContext, ReductionReport]:
    """Drop every object and attribute whose frequency is at or below the threshold.

    Frequencies are taken once from the input; objects and attributes are
    removed together in a single pass, with no recomputation afterwards.
    """
    threshold = as_fraction(threshold_percent)
    if not 0 <= threshold <= 100:
        raise ValueError(f"threshold {threshold} outside [0, 100]")
    obj_freq, attr_freq = frequencies(ctx)
    keep_o = [i for i, o in enumerate(ctx.objects) if obj_freq[o] > threshold]
    keep_a = [j for j, a in enumerate(ctx.attributes) if attr_freq[a] > threshold]
    report = ReductionReport(
        technique="frequency",
        removed_objects=tuple((o, obj_freq[o]) for o in ctx.objects if obj_freq[o] <= threshold),
        removed_attributes=tuple((a, attr_freq[a]) for a in ctx.attributes if attr_freq[a] <= threshold),
        parameters={"threshold_percent": threshold},
    )
    return _select(ctx, keep_o, keep_a), report


# -- WordNet technique ------------------------------------------------------------

def _group_axis(labels: Sequence[str], lexicon, pos: Pos, depth: int) -> list[tuple[str, list[str]]]:
    merged: set[str] = set()
    groups = []
    for i, label in enumerate(labels):
        if label in merged:
            continue
        group = [label]
        for other in labels[i + 1:]:
            if other in merged:
                continue
            if lexicon.most_general_within(label, other, pos, depth) is not None:
                group.append(other)
        if len(group) < 2:
            continue
        merged.update(group)
        survivor = group[0]
        for member in group[1:]:
            winner = lexicon.most_general_within(survivor, member, pos, depth)
            if winner is not None:
                survivor = winner
        groups.append((survivor, group))
    return groups


def wordnet_reduce(ctx: FormalContext, lexicon, depth: int = 4) -> tuple[FormalContext, ReductionReport]:
    """Merge synonymous or depth-bounded hypernym labels, objects first.

    Each unmerged label is compared with all later unmerged labels on its
    axis; everything related to it is merged in one step under the most
    general member's name.  Objects are looked up as nouns, attributes as
    verbs.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    object_groups = _group_axis(ctx.objects, lexicon, Pos.NOUN, depth)
    for survivor, group in object_groups:
        ctx = merge(ctx, Axis.OBJECTS, group, survivor)
    attribute_groups = _group_axis(ctx.attributes, lexicon, Pos.VERB, depth)
    for survivor, group in attribute_groups:
        ctx = merge(ctx, Axis.ATTRIBUTES, group, survivor)
    report = ReductionReport(
        technique="wordnet",
        merged_object_groups=tuple((s, tuple(g)) for s, g in object_groups),
        merged_attribute_groups=tuple((s, tuple(g)) for s, g in attribute_groups),
        parameters={"hypernym_depth": depth},
    )
    return ctx, report


# -- composition -------------------------------------------------------------------

def apply_order(ctx: FormalContext, config: TechniqueConfig, lexicon=None) -> tuple[FormalContext, list[ReductionReport]]:
    reports = []
    for step in config.order.steps:
        if step == "wordnet":
            if lexicon is None:
                raise ConfigurationError(f"order {config.order.value} needs a lexicon")
            ctx, report = wordnet_reduce(ctx, lexicon, config.hypernym_depth)
        else:
            ctx, report = frequency_reduce(ctx, config.threshold_percent)
        reports.append(report)
    return ctx, reports
