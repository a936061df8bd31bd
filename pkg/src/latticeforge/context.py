"""Formal contexts and the two derivation operators.

A :class:`FormalContext` is an immutable triple of object labels, attribute
labels and a boolean incidence relation.  Rows are stored as packed Python
integers (bit ``j`` of row ``i`` is set when object ``i`` has attribute
``j``), so deriving a set of objects or attributes is a chain of bitwise
ANDs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DuplicateLabel, InvalidLabel, ParseError, UnknownLabel

__all__ = [
    "FormalContext",
    "from_incidence",
    "intent_of",
    "extent_of",
    "close_attributes",
    "close_objects",
    "transpose",
    "to_csv",
    "read_csv",
]


def _index(labels: Sequence[str], axis: str) -> dict[str, int]:
    index: dict[str, int] = {}
    for i, label in enumerate(labels):
        if not isinstance(label, str):
            raise InvalidLabel(f"{axis} label {label!r} is not a string")
        if label in index:
            raise DuplicateLabel(f"duplicate {axis} label {label!r}")
        index[label] = i
    return index


@dataclass(frozen=True)
class FormalContext:
    """Objects (rows), attributes (columns) and packed incidence rows.

    Two contexts are equal iff their label tuples and rows are equal
    position by position.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]
    _object_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _attribute_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _columns: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if len(self.rows) != len(self.objects):
            raise ValueError(
                f"{len(self.rows)} incidence rows for {len(self.objects)} objects"
            )
        limit = 1 << len(self.attributes)
        if any(r < 0 or r >= limit for r in self.rows):
            raise ValueError("incidence row has bits beyond the attribute count")
        object.__setattr__(self, "_object_index", _index(self.objects, "object"))
        object.__setattr__(self, "_attribute_index", _index(self.attributes, "attribute"))
        columns = [0] * len(self.attributes)
        for i, row in enumerate(self.rows):
            j = 0
            while row:
                if row & 1:
                    columns[j] |= 1 << i
                row >>= 1
                j += 1
        object.__setattr__(self, "_columns", tuple(columns))

    # -- shape -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return len(self.objects), len(self.attributes)

    @property
    def columns(self) -> tuple[int, ...]:
        """Packed columns: bit ``i`` of column ``j`` is set when object ``i`` has attribute ``j``."""
        return self._columns

    @property
    def all_objects_mask(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def all_attributes_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def __len__(self):
        return len(self.objects)

    def has(self, obj: str, attr: str) -> bool:
        return bool(self.rows[self.object_position(obj)] >> self.attribute_position(attr) & 1)

    def object_position(self, label: str) -> int:
        try:
            return self._object_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown object {label!r}") from None

    def attribute_position(self, label: str) -> int:
        try:
            return self._attribute_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown attribute {label!r}") from None

    def incidence_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def cells(self) -> list[tuple[str, str]]:
        """All incident (object, attribute) pairs in row-major order."""
        out = []
        for i, row in enumerate(self.rows):
            for j, attr in enumerate(self.attributes):
                if row >> j & 1:
                    out.append((self.objects[i], attr))
        return out

    # -- masks <-> labels --------------------------------------------------
    def object_mask(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.object_position(label)
        return mask

    def attribute_mask(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            mask |= 1 << self.attribute_position(label)
        return mask

    def objects_in(self, mask: int) -> frozenset[str]:
        return frozenset(self.objects[i] for i in _bits(mask))

    def attributes_in(self, mask: int) -> frozenset[str]:
        return frozenset(self.attributes[j] for j in _bits(mask))

    # -- derivation on masks -----------------------------------------------
    def intent_mask(self, object_mask: int) -> int:
        result = self.all_attributes_mask
        for i in _bits(object_mask):
            result &= self.rows[i]
            if not result:
                break
        return result

    def extent_mask(self, attribute_mask: int) -> int:
        result = self.all_objects_mask
        for j in _bits(attribute_mask):
            result &= self._columns[j]
            if not result:
                break
        return result

    def to_array(self):
        """Dense ``numpy`` boolean matrix (rows = objects)."""
        import numpy as np

        out = np.zeros(self.shape, dtype=bool)
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                out[i, j] = True
        return out


def _bits(mask: int):
    j = 0
    while mask:
        if mask & 1:
            yield j
        mask >>= 1
        j += 1


def from_incidence(objects: Sequence[str], attributes: Sequence[str], cells: Iterable[tuple[str, str]]) -> FormalContext:
    """Build a context whose incident pairs are exactly ``cells``.

    >>> ctx = from_incidence(["car"], ["drive", "book"], {("car", "drive")})
    >>> ctx.has("car", "drive"), ctx.has("car", "book")
    (True, False)
    """
    objects = tuple(objects)
    attributes = tuple(attributes)
    oi = _index(objects, "object")
    ai = _index(attributes, "attribute")
    rows = [0] * len(objects)
    for obj, attr in cells:
        if obj not in oi:
            raise UnknownLabel(f"cell references unknown object {obj!r}")
        if attr not in ai:
            raise UnknownLabel(f"cell references unknown attribute {attr!r}")
        rows[oi[obj]] |= 1 << ai[attr]
    return FormalContext(objects, attributes, tuple(rows))


def intent_of(ctx: FormalContext, objs: Iterable[str]) -> frozenset[str]:
    """Attributes shared by every object in ``objs`` (all attributes for an empty set)."""
    return ctx.attributes_in(ctx.intent_mask(ctx.object_mask(objs)))


def extent_of(ctx: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    """Objects having every attribute in ``attrs`` (all objects for an empty set)."""
    return ctx.objects_in(ctx.extent_mask(ctx.attribute_mask(attrs)))


def close_attributes(ctx: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    return ctx.attributes_in(ctx.intent_mask(ctx.extent_mask(ctx.attribute_mask(attrs))))


def close_objects(ctx: FormalContext, objs: Iterable[str]) -> frozenset[str]:
    return ctx.objects_in(ctx.extent_mask(ctx.intent_mask(ctx.object_mask(objs))))


def transpose(ctx: FormalContext) -> FormalContext:
    return FormalContext(ctx.attributes, ctx.objects, ctx.columns)


# -- debugging CSV -----------------------------------------------------------

def to_csv(ctx: FormalContext) -> str:
    """Render as comma-separated ``1``/``0`` cells with a label header row.

    Labels are written unquoted, so a label containing a comma or a line
    break is rejected.
    """
    for label in ctx.objects + ctx.attributes:
        if "," in label or "\n" in label or "\r" in label:
            raise InvalidLabel(f"label {label!r} cannot be written to CSV")
    lines = [",".join(("",) + ctx.attributes)]
    for obj, row in zip(ctx.objects, ctx.rows):
        cells = ("1" if row >> j & 1 else "0" for j in range(len(ctx.attributes)))
        lines.append(",".join((obj, *cells)))
    return "\n".join(lines) + "\n"


def read_csv(text: str, source: str = "<string>") -> FormalContext:
    lines = text.splitlines()
    if not lines:
        return FormalContext((), (), ())
    header = lines[0].split(",")
    if header[0] != "":
        raise ParseError("first header cell must be empty", source, 1)
    attributes = header[1:] if header != [""] else []
    objects, rows = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != len(attributes) + 1:
            raise ParseError(
                f"expected {len(attributes) + 1} fields, got {len(fields)}", source, lineno
            )
        row = 0
        for j, cell in enumerate(fields[1:]):
            if cell == "1":
                row |= 1 << j
            elif cell != "0":
                raise ParseError(f"cell {cell!r} is not 0 or 1", source, lineno)
        objects.append(fields[0])
        rows.append(row)
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows))
