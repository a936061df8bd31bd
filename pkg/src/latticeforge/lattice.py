"""Concept enumeration, the concept lattice and its summary statistics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .context import FormalContext, _bits
from .errors import OracleSizeExceeded

__all__ = [
    "FormalConcept",
    "ConceptLattice",
    "LatticeStats",
    "enumerate_concepts",
    "brute_force_concepts",
    "build_lattice",
    "lattice_stats",
    "export_dot",
    "DILWORTH_LIMIT",
    "ORACLE_LIMIT",
]

ORACLE_LIMIT = 20
DILWORTH_LIMIT = 512


@dataclass(frozen=True)
class FormalConcept:
    extent: frozenset[str]
    intent: frozenset[str]

    def __le__(self, other: "FormalConcept") -> bool:
        return self.extent <= other.extent

    def __lt__(self, other: "FormalConcept") -> bool:
        return self.extent < other.extent


@dataclass(frozen=True)
class ConceptLattice:
    """Concepts in canonical order plus the covering relation.

    ``covers`` holds ``(lower, upper)`` index pairs where ``lower`` is covered
    by ``upper``.  ``extent_masks``/``intent_masks`` mirror ``concepts`` as
    bitmasks over the source context's label positions.
    """

    concepts: tuple[FormalConcept, ...]
    covers: frozenset[tuple[int, int]]
    top_index: int
    bottom_index: int
    extent_masks: tuple[int, ...] = ()
    intent_masks: tuple[int, ...] = ()

    def __len__(self):
        return len(self.concepts)

    @property
    def top(self) -> FormalConcept:
        return self.concepts[self.top_index]

    @property
    def bottom(self) -> FormalConcept:
        return self.concepts[self.bottom_index]

    def upper_covers(self, index: int) -> list[int]:
        return sorted(u for l, u in self.covers if l == index)

    def lower_covers(self, index: int) -> list[int]:
        return sorted(l for l, u in self.covers if u == index)


@dataclass(frozen=True)
class LatticeStats:
    concept_count: int
    edge_count: int
    height: int
    width_lo: int
    width_hi: int
    width_exact: bool = True

    def __post_init__(self):
        if self.width_lo > self.width_hi:
            raise ValueError(f"width bounds out of order: [{self.width_lo}, {self.width_hi}]")
        if self.concept_count and self.height > self.concept_count - 1:
            raise ValueError(f"height {self.height} exceeds concept_count - 1")

    @property
    def width_interval(self) -> tuple[int, int]:
        return self.width_lo, self.width_hi

    def as_tuple(self):
        return (self.concept_count, self.edge_count, self.height, [self.width_lo, self.width_hi])

    def csv_header(self) -> str:
        return "concepts,edges,height,width_lo,width_hi"

    def csv_row(self) -> str:
        return f"{self.concept_count},{self.edge_count},{self.height},{self.width_lo},{self.width_hi}"


# -- enumeration ---------------------------------------------------------------

def _closure(ctx: FormalContext, attr_mask: int) -> tuple[int, int]:
    extent = ctx.extent_mask(attr_mask)
    return extent, ctx.intent_mask(extent)


def _next_closure_masks(ctx: FormalContext) -> list[tuple[int, int]]:
    """All (extent, intent) mask pairs in lectic order of intents."""
    n = len(ctx.attributes)
    full = ctx.all_attributes_mask
    extent, intent = _closure(ctx, 0)
    found = [(extent, intent)]
    while intent != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if intent & bit:
                continue
            lower = intent & (bit - 1)
            ext, cand = _closure(ctx, lower | bit)
            # canonicity: no new attribute below position i
            if cand & (bit - 1) == lower:
                extent, intent = ext, cand
                found.append((extent, intent))
                break
        else:  # pragma: no cover - unreachable while intent != full
            break
    return found


def _canonical(ctx: FormalContext, pairs) -> list[tuple[int, int]]:
    def key(pair):
        extent = pair[0]
        labels = sorted(ctx.objects[i] for i in _bits(extent))
        return (-len(labels), labels)

    return sorted(pairs, key=key)


def _as_concepts(ctx: FormalContext, pairs) -> list[FormalConcept]:
    return [FormalConcept(ctx.objects_in(e), ctx.attributes_in(i)) for e, i in pairs]


def _enumerate_masks(ctx: FormalContext) -> list[tuple[int, int]]:
    return _canonical(ctx, _next_closure_masks(ctx))


def enumerate_concepts(ctx: FormalContext) -> list[FormalConcept]:
    """Every formal concept of ``ctx`` exactly once, in canonical order.

    Intents are generated with Ganter's NextClosure over the attribute order
    of the context; the result is then sorted by descending extent size and
    lexicographic extent labels.
    """
    return _as_concepts(ctx, _enumerate_masks(ctx))


def brute_force_concepts(ctx: FormalContext) -> list[FormalConcept]:
    """Close all ``2**|M|`` attribute subsets; an independent check on enumeration."""
    n = len(ctx.attributes)
    if n > ORACLE_LIMIT:
        raise OracleSizeExceeded(f"{n} attributes exceeds oracle limit {ORACLE_LIMIT}")
    seen = {}
    for subset in range(1 << n):
        extent = ctx.extent_mask(subset)
        if extent not in seen:
            seen[extent] = ctx.intent_mask(extent)
    return _as_concepts(ctx, _canonical(ctx, seen.items()))


# -- lattice -------------------------------------------------------------------

def _upper_neighbours(ctx: FormalContext, extent: int) -> list[int]:
    # Lindig's neighbour search over objects outside the extent.
    candidates = ctx.all_objects_mask & ~extent
    minimal = candidates
    neighbours = []
    for g in _bits(candidates):
        bit = 1 << g
        ext = ctx.extent_mask(ctx.intent_mask(extent | bit))
        if minimal & (ext & ~extent & ~bit) == 0:
            neighbours.append(ext)
        else:
            minimal &= ~bit
    return neighbours


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    pairs = _enumerate_masks(ctx)
    position = {extent: k for k, (extent, _) in enumerate(pairs)}
    covers = set()
    for k, (extent, _) in enumerate(pairs):
        for upper in _upper_neighbours(ctx, extent):
            covers.add((k, position[upper]))
    top = position[ctx.all_objects_mask]
    bottom = next(k for k, (_, intent) in enumerate(pairs) if intent == ctx.all_attributes_mask)
    return ConceptLattice(
        concepts=tuple(_as_concepts(ctx, pairs)),
        covers=frozenset(covers),
        top_index=top,
        bottom_index=bottom,
        extent_masks=tuple(e for e, _ in pairs),
        intent_masks=tuple(i for _, i in pairs),
    )


# -- statistics ----------------------------------------------------------------

def _longest_from(lat: ConceptLattice, start: int, downward: bool) -> list[int]:
    n = len(lat.concepts)
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for lower, upper in lat.covers:
        a, b = (upper, lower) if downward else (lower, upper)
        succ[a].append(b)
        indeg[b] += 1
    dist = [-1] * n
    dist[start] = 0
    queue = [k for k in range(n) if indeg[k] == 0]
    head = 0
    while head < len(queue):
        k = queue[head]
        head += 1
        for nxt in succ[k]:
            if dist[k] >= 0 and dist[k] + 1 > dist[nxt]:
                dist[nxt] = dist[k] + 1
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                queue.append(nxt)
    return dist


def _max_level(dist: Sequence[int]) -> int:
    counts: dict[int, int] = {}
    for d in dist:
        counts[d] = counts.get(d, 0) + 1
    return max(counts.values())


def _strict_order(lat: ConceptLattice) -> list[int]:
    """below[k]: bitmask of concepts strictly below concept k (transitive closure)."""
    masks = lat.extent_masks
    n = len(masks)
    below = [0] * n
    for k in range(n):
        ek = masks[k]
        row = 0
        for l in range(n):
            el = masks[l]
            if l != k and el & ek == el:
                row |= 1 << l
        below[k] = row
    return below


def dilworth_width(lat: ConceptLattice) -> int:
    """Exact maximum antichain size via a minimum chain cover.

    Width equals ``n`` minus a maximum matching in the bipartite graph with
    an edge ``u -> v`` for every strictly comparable ``v < u``.
    """
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import maximum_bipartite_matching

    n = len(lat.concepts)
    below = _strict_order(lat)
    rows, cols = [], []
    for u in range(n):
        for v in _bits(below[u]):
            rows.append(u)
            cols.append(v)
    if not rows:
        return n
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return n - int((match >= 0).sum())


def lattice_stats(lat: ConceptLattice) -> LatticeStats:
    """Concept count, edge count, height and a width interval.

    Height is the number of edges on a longest top-to-bottom chain.  The
    lower width bound is the largest rank level, where concepts are ranked
    by longest distance from the top and, separately, from the bottom; each
    level is an antichain.  The upper bound is the exact Dilworth width for
    lattices of at most ``DILWORTH_LIMIT`` concepts and ``n - height``
    otherwise (``width_exact`` is False in that case).
    """
    n = len(lat.concepts)
    from_top = _longest_from(lat, lat.top_index, downward=True)
    from_bottom = _longest_from(lat, lat.bottom_index, downward=False)
    height = from_top[lat.bottom_index]
    lo = max(_max_level(from_top), _max_level(from_bottom))
    if n <= DILWORTH_LIMIT:
        hi, exact = dilworth_width(lat), True
    else:
        hi, exact = n - height, False
    return LatticeStats(n, len(lat.covers), height, lo, hi, exact)


# -- DOT -----------------------------------------------------------------------

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _label_list(labels) -> str:
    return ", ".join(sorted(labels))


def export_dot(lat: ConceptLattice) -> str:
    lines = ["digraph lattice {", "  node [shape=box];"]
    for k, concept in enumerate(lat.concepts):
        label = f"{_label_list(concept.extent)} | {_label_list(concept.intent)}"
        lines.append(f'  c{k} [label="{_dot_escape(label)}"];')
    for lower, upper in sorted(lat.covers, key=lambda e: (e[1], e[0])):
        lines.append(f"  c{upper} -> c{lower};")
    lines.append("}")
    return "\n".join(lines) + "\n"
