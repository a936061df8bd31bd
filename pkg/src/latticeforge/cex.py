"""Concept Explorer (ConExp) ``.cex`` files, plain and frequency-annotated."""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .context import FormalContext, from_incidence
from .errors import DanglingReference, FrequencyMismatch, UnsupportedDocument, XmlError

__all__ = ["CexDocument", "read_cex", "write_cex"]


@dataclass(frozen=True)
class CexDocument:
    context: FormalContext
    extended: bool = False
    object_frequencies: tuple[int, ...] | None = None
    attribute_frequencies: tuple[int, ...] | None = None


def _counts(ctx: FormalContext) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (tuple(r.bit_count() for r in ctx.rows), tuple(c.bit_count() for c in ctx.columns))


def _frequency(elem, what):
    value = elem.get("Frequency")
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise XmlError(f"{what} Frequency {value!r} is not an integer") from None


def read_cex(data: bytes | str, lenient: bool = False) -> CexDocument:
    """Parse the first binary context of a CEX document.

    Attributes are ordered by their ``Identifier``, objects by document
    order.  Any ``Frequency`` attribute marks the document as extended; the
    values must equal the incidence counts unless ``lenient`` is set, in
    which case they are recomputed.  Lattice sections are ignored.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise XmlError(f"not well-formed XML: {exc}") from None
    if root.tag != "ConceptualSystem":
        raise UnsupportedDocument(f"root element is <{root.tag}>, expected <ConceptualSystem>")
    context = None
    for elem in root.iterfind("./Contexts/Context"):
        if elem.get("Type") == "Binary":
            context = elem
            break
    if context is None:
        raise UnsupportedDocument("no binary context in document")

    attributes = []
    attr_freq = []
    for attr in context.iterfind("./Attributes/Attribute"):
        ident = attr.get("Identifier")
        name = attr.find("Name")
        if ident is None or name is None:
            raise XmlError("Attribute without Identifier or Name")
        try:
            key = int(ident)
        except ValueError:
            raise XmlError(f"Attribute Identifier {ident!r} is not an integer") from None
        attributes.append((key, name.text or ""))
        attr_freq.append((key, _frequency(attr, f"attribute {name.text!r}")))
    attributes.sort(key=lambda x: x[0])
    attr_freq.sort(key=lambda x: x[0])
    by_id = {key: label for key, label in attributes}
    if len(by_id) != len(attributes):
        raise XmlError("duplicate Attribute Identifier")

    objects, cells, obj_freq = [], [], []
    for obj in context.iterfind("./Objects/Object"):
        name = obj.find("Name")
        if name is None:
            raise XmlError("Object without Name")
        label = name.text or ""
        objects.append(label)
        obj_freq.append(_frequency(obj, f"object {label!r}"))
        for has in obj.iterfind("./Intent/HasAttribute"):
            ref = has.get("AttributeIdentifier")
            try:
                attr_label = by_id[int(ref)]
            except (TypeError, ValueError, KeyError):
                raise DanglingReference(f"object {label!r} references unknown attribute {ref!r}") from None
            cells.append((label, attr_label))

    ctx = from_incidence(objects, [label for _, label in attributes], cells)
    declared_o = obj_freq
    declared_a = [f for _, f in attr_freq]
    extended = any(f is not None for f in declared_o + declared_a)
    if not extended:
        return CexDocument(ctx, False)
    counts_o, counts_a = _counts(ctx)
    if not lenient:
        for labels, declared, counts, what in (
            (ctx.objects, declared_o, counts_o, "object"),
            (ctx.attributes, declared_a, counts_a, "attribute"),
        ):
            for label, d, c in zip(labels, declared, counts):
                if d != c:
                    raise FrequencyMismatch(f"{what} {label!r}: Frequency={d}, incidence count {c}")
    return CexDocument(ctx, True, counts_o, counts_a)


def write_cex(ctx: FormalContext, extended: bool = False) -> bytes:
    """Serialize ``ctx`` in the ConExp element layout, byte-deterministically."""
    counts_o, counts_a = _counts(ctx)
    out = ['<?xml version="1.0" encoding="UTF-8" standalone="no"?>'
           '<ConceptualSystem><Version MajorNumber="1" MinorNumber="0"/>',
           '<Contexts><Context Identifier="0" Type="Binary">',
           "<Attributes>"]
    for j, label in enumerate(ctx.attributes):
        freq = f' Frequency="{counts_a[j]}"' if extended else ""
        out.append(f'<Attribute{freq} Identifier="{j}"><Name Identifier="{j}">{escape(label)}</Name></Attribute>')
    out.append("</Attributes>")
    out.append("<Objects>")
    for i, label in enumerate(ctx.objects):
        freq = f' Frequency="{counts_o[i]}"' if extended else ""
        row = ctx.rows[i]
        has = "".join(f'<HasAttribute AttributeIdentifier="{j}"/>'
                      for j in range(len(ctx.attributes)) if row >> j & 1)
        intent = f"<Intent>{has}</Intent>" if has else "<Intent/>"
        out.append(f"<Object{freq}><Name>{escape(label)}</Name>{intent}</Object>")
    out.append("</Objects>")
    out.append('</Context></Contexts><RecalculationPolicy Value="Clear"/><Lattices/></ConceptualSystem>')
    return ("\n".join(out) + "\n").encode("utf-8")
