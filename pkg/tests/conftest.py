from __future__ import annotations

import os
import random
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from latticeforge.context import FormalContext
from latticeforge.wordnet import load_db

DATA = Path(__file__).parent / "data"
MINI_WORDNET = DATA / "wordnet-mini"


def _full_wordnet_dir() -> Path | None:
    candidates = []
    if os.environ.get("WNHOME"):
        candidates += [Path(os.environ["WNHOME"]) / "dict", Path(os.environ["WNHOME"])]
    candidates.append(Path("/root/wordnet/dict"))
    for path in candidates:
        if (path / "data.noun").is_file():
            return path
    return None


@pytest.fixture(scope="session")
def mini_db():
    return load_db(MINI_WORDNET)


@pytest.fixture(scope="session")
def full_db():
    path = _full_wordnet_dir()
    if path is None:
        pytest.skip("no full WordNet installation found (set WNHOME)")
    return load_db(path)


def random_context(rng: random.Random, max_objects=8, max_attributes=8, density=None) -> FormalContext:
    n = rng.randint(0, max_objects)
    m = rng.randint(0, max_attributes)
    p = rng.random() if density is None else density
    rows = tuple(sum(1 << j for j in range(m) if rng.random() < p) for _ in range(n))
    return FormalContext(tuple(f"g{i}" for i in range(n)), tuple(f"m{j}" for j in range(m)), rows)


@st.composite
def contexts(draw, max_objects=8, max_attributes=8, min_objects=0, min_attributes=0):
    n = draw(st.integers(min_objects, max_objects))
    m = draw(st.integers(min_attributes, max_attributes))
    rows = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    return FormalContext(tuple(f"g{i}" for i in range(n)), tuple(f"m{j}" for j in range(m)), tuple(rows))


def naive_concepts(ctx: FormalContext) -> set[tuple[frozenset, frozenset]]:
    """All concepts by exhaustive closure with plain set operations."""
    incidence = {(o, a) for o, a in ctx.cells()}

    def common_attributes(objs):
        return frozenset(a for a in ctx.attributes if all((o, a) in incidence for o in objs))

    def common_objects(attrs):
        return frozenset(o for o in ctx.objects if all((o, a) in incidence for a in attrs))

    out = set()
    # close every subset of the smaller axis; both routes reach every concept
    if len(ctx.objects) <= len(ctx.attributes):
        for k in range(len(ctx.objects) + 1):
            for objs in combinations(ctx.objects, k):
                intent = common_attributes(objs)
                out.add((common_objects(intent), intent))
    else:
        for k in range(len(ctx.attributes) + 1):
            for attrs in combinations(ctx.attributes, k):
                extent = common_objects(attrs)
                out.add((extent, common_attributes(extent)))
    return out


def max_antichain(lat) -> int:
    """Largest set of pairwise incomparable concepts, by exhaustive search."""
    masks = lat.extent_masks
    n = len(masks)

    def comparable(a, b):
        return masks[a] & masks[b] in (masks[a], masks[b])

    best = 1 if n else 0
    for size in range(2, n + 1):
        found = any(all(not comparable(a, b) for a, b in combinations(group, 2))
                    for group in combinations(range(n), size))
        if not found:
            break
        best = size
    return best


CORPUS_NOUNS = [
    "museum", "museums", "collection", "building", "art", "history", "culture", "car", "cars",
    "automobile", "bike", "bicycle", "trip", "excursion", "apartment", "hotel", "hotels", "city",
    "dog", "canine", "cat", "animal", "red", "carmine", "colour", "body", "object", "objects",
    "London", "Bell", "product", "products", "vehicle", "people", "boy", "beach",
]
CORPUS_VERBS = [
    "houses", "combine", "book", "booked", "reserve", "rent", "rented", "drive", "drove",
    "driving", "ride", "rides", "join", "walk", "walked", "travel", "makes", "distributes",
    "dedicate", "sponsor", "charge", "visit", "visited", "open", "display",
]
CORPUS_RELATIONS = ["nsubj", "dobj", "nsubjpass", "xcomp", "det", "amod", "prep_in"]


def synthetic_dependencies(rng: random.Random, sentences: int) -> str:
    """A dependency file in the external parser's output format."""
    blocks = []
    for _ in range(sentences):
        lines = []
        for _ in range(rng.randint(2, 5)):
            rel = rng.choice(CORPUS_RELATIONS)
            verb = rng.choice(CORPUS_VERBS)
            noun = rng.choice(CORPUS_NOUNS)
            lines.append(f"{rel}({verb}-{rng.randint(1, 9)}, {noun}-{rng.randint(1, 9)})")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def write_corpora(directory: Path, count: int = 20, seed: int = 2013) -> list[Path]:
    rng = random.Random(seed)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for k in range(1, count + 1):
        path = directory / f"text{k:02d}.dep"
        path.write_text(synthetic_dependencies(rng, rng.randint(12, 25)), encoding="utf-8")
        paths.append(path)
    return paths


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[0][3:])):
            terminalreporter.write_line(line)
