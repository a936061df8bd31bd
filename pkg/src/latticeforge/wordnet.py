"""A small, dependency-free reader for Princeton WordNet (WNDB) files.

Only nouns and verbs are loaded, and only the hypernym pointers (``@`` and
the instance form ``@i``) are kept; that is all the context reduction
needs.  Lemmas are stored the way WNDB stores them: lower case with
collocations joined by underscores.
"""
from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

from .errors import ConfigurationError, MissingDatabaseFile, ParseError

__all__ = [
    "Pos",
    "Synset",
    "WordNetDb",
    "load_db",
    "resolve_wordnet_dir",
    "normalize_lemma",
    "morphy",
    "are_synonyms",
    "most_general_within",
    "RelatednessLexicon",
    "WordNetLexicon",
    "StubLexicon",
    "EmptyLexicon",
]

HYPERNYM_POINTERS = frozenset({"@", "@i"})


class Pos(str, enum.Enum):
    NOUN = "n"
    VERB = "v"

    @property
    def filename(self) -> str:
        return "noun" if self is Pos.NOUN else "verb"


SynsetId = tuple  # (offset, Pos)


@dataclass(frozen=True)
class Synset:
    id: tuple[int, Pos]
    words: tuple[str, ...]
    hypernym_ids: tuple[tuple[int, Pos], ...]
    gloss: str = ""

    @property
    def offset(self) -> int:
        return self.id[0]


@dataclass(frozen=True, eq=False)
class WordNetDb:
    index: dict[tuple[str, Pos], tuple[tuple[int, Pos], ...]]
    synsets: dict[tuple[int, Pos], Synset]
    exceptions: dict[tuple[str, Pos], tuple[str, ...]]
    path: str = ""
    _hits: dict = field(default_factory=dict, repr=False, compare=False)

    def lookup(self, lemma: str, pos: Pos) -> list[Synset]:
        ids = self.index.get((normalize_lemma(lemma), Pos(pos)), ())
        return [self.synsets[i] for i in ids]

    def __contains__(self, key) -> bool:
        lemma, pos = key
        return (normalize_lemma(lemma), Pos(pos)) in self.index


def normalize_lemma(word: str) -> str:
    """WNDB spelling of a label: lower case, spaces and hyphens as ``_``."""
    return word.strip().lower().replace(" ", "_").replace("-", "_")


# -- loading -------------------------------------------------------------------

_REQUIRED = ("index.noun", "data.noun", "noun.exc", "index.verb", "data.verb", "verb.exc")


def resolve_wordnet_dir(path: str | os.PathLike | None = None) -> Path:
    """Directory from an explicit path, else ``$WNHOME/dict``."""
    if path:
        return Path(path)
    home = os.environ.get("WNHOME")
    if home:
        candidate = Path(home) / "dict"
        return candidate if candidate.is_dir() else Path(home)
    raise ConfigurationError("no WordNet directory given and WNHOME is not set")


def _lines(path: Path):
    with open(path, "rb") as fh:
        offset = 0
        for lineno, raw in enumerate(fh, start=1):
            yield lineno, offset, raw.decode("utf-8", errors="replace")
            offset += len(raw)


def _parse_data(path: Path, pos: Pos) -> dict:
    synsets = {}
    for lineno, offset, line in _lines(path):
        if line.startswith("  "):
            continue
        if not line.strip():
            continue
        try:
            body, sep, gloss = line.partition("|")
            if not sep:
                raise ValueError("missing gloss separator")
            f = body.split()
            if int(f[0]) != offset:
                raise ValueError(f"offset field {f[0]} does not match byte offset {offset}")
            w_cnt = int(f[3], 16)
            words = [f[4 + 2 * k].lower() for k in range(w_cnt)]
            # strip adjective syntactic markers such as "(p)" defensively
            words = [w.split("(")[0] for w in words]
            k = 4 + 2 * w_cnt
            p_cnt = int(f[k])
            k += 1
            hypernyms = []
            for _ in range(p_cnt):
                symbol, target, target_pos = f[k], int(f[k + 1]), f[k + 2]
                _ = int(f[k + 3], 16)
                k += 4
                if symbol in HYPERNYM_POINTERS and target_pos == pos.value:
                    hypernyms.append((target, pos))
            if not words:
                raise ValueError("synset without words")
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc) or "malformed data line", str(path), lineno) from None
        sid = (offset, pos)
        synsets[sid] = Synset(sid, tuple(words), tuple(hypernyms), gloss.strip())
    return synsets


def _parse_index(path: Path, pos: Pos, synsets: dict) -> dict:
    index = {}
    for lineno, _, line in _lines(path):
        if line.startswith("  ") or not line.strip():
            continue
        try:
            f = line.split()
            lemma = f[0].lower()
            synset_cnt = int(f[2])
            p_cnt = int(f[3])
            offsets = f[4 + p_cnt + 2:]
            if len(offsets) != synset_cnt:
                raise ValueError(f"expected {synset_cnt} synset offsets, found {len(offsets)}")
            ids = tuple((int(o), pos) for o in offsets)
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc) or "malformed index line", str(path), lineno) from None
        for sid in ids:
            if sid not in synsets:
                raise ParseError(f"offset {sid[0]:08d} not found in data.{pos.filename}", str(path), lineno)
        index[(lemma, pos)] = ids
    return index


def _parse_exceptions(path: Path, pos: Pos) -> dict:
    exceptions = {}
    for lineno, _, line in _lines(path):
        f = line.split()
        if not f:
            continue
        if len(f) < 2:
            raise ParseError("exception line needs an inflected form and a base form", str(path), lineno)
        exceptions[(f[0].lower(), pos)] = tuple(b.lower() for b in f[1:])
    return exceptions


def load_db(directory: str | os.PathLike) -> WordNetDb:
    """Parse the noun and verb files of a WNDB directory."""
    root = Path(directory)
    for name in _REQUIRED:
        if not (root / name).is_file():
            raise MissingDatabaseFile(f"{root / name} not found")
    synsets, index, exceptions = {}, {}, {}
    for pos in (Pos.NOUN, Pos.VERB):
        data = _parse_data(root / f"data.{pos.filename}", pos)
        synsets.update(data)
        index.update(_parse_index(root / f"index.{pos.filename}", pos, data))
        exceptions.update(_parse_exceptions(root / f"{pos.filename}.exc", pos))
    return WordNetDb(index, synsets, exceptions, str(root))


# -- morphology ----------------------------------------------------------------

_DETACHMENT = {
    Pos.NOUN: [("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"), ("ches", "ch"),
               ("shes", "sh"), ("men", "man"), ("ies", "y")],
    Pos.VERB: [("s", ""), ("ies", "y"), ("es", "e"), ("es", ""), ("ed", "e"),
               ("ed", ""), ("ing", "e"), ("ing", "")],
}


def morphy(db: WordNetDb, word: str, pos: Pos) -> list[str]:
    """Base forms of ``word`` that WordNet knows for ``pos``.

    The word itself comes first when it is already indexed.  Then the
    exception list is consulted, and only when it has no entry are the
    suffix detachment rules tried.

    >>> morphy(db, "drove", Pos.VERB)  # doctest: +SKIP
    ['drive']
    """
    pos = Pos(pos)
    form = normalize_lemma(word)
    if not form:
        return []
    out: list[str] = []

    def add(candidate):
        if (candidate, pos) in db.index and candidate not in out:
            out.append(candidate)

    add(form)
    exc = db.exceptions.get((form, pos))
    if exc:
        for base in exc:
            add(base)
        return out
    for suffix, ending in _DETACHMENT[pos]:
        if form.endswith(suffix) and len(form) > len(suffix):
            add(form[: -len(suffix)] + ending)
    return out


# -- relations -----------------------------------------------------------------

def _synset_ids(db: WordNetDb, lemma: str, pos: Pos) -> tuple:
    form = normalize_lemma(lemma)
    ids = db.index.get((form, pos))
    if ids is None:
        bases = morphy(db, form, pos)
        ids = db.index.get((bases[0], pos), ()) if bases else ()
    return ids


def _shared_synset(db: WordNetDb, a: str, b: str, pos: Pos):
    a_ids = _synset_ids(db, a, pos)
    b_ids = set(_synset_ids(db, b, pos))
    shared = [sid for sid in a_ids if sid in b_ids]
    return min(shared) if shared else None


def are_synonyms(db: WordNetDb, a: str, b: str, pos: Pos) -> bool:
    """True when ``a`` and ``b`` share at least one synset (any sense)."""
    pos = Pos(pos)
    if normalize_lemma(a) == normalize_lemma(b):
        return True
    return _shared_synset(db, a, b, pos) is not None


def _ancestor_distances(db: WordNetDb, lemma: str, pos: Pos, depth: int) -> dict:
    """Breadth-first hypernym distances (>= 1) from every sense of ``lemma``."""
    key = (normalize_lemma(lemma), pos, depth)
    cached = db._hits.get(key)
    if cached is not None:
        return cached
    start = _synset_ids(db, lemma, pos)
    dist = {}
    frontier = deque((sid, 0) for sid in start)
    seen = set(start)
    while frontier:
        sid, d = frontier.popleft()
        if d == depth:
            continue
        for parent in db.synsets[sid].hypernym_ids:
            if parent not in seen:
                seen.add(parent)
                dist[parent] = d + 1
                frontier.append((parent, d + 1))
    db._hits[key] = dist
    return dist


def _distance_to(db: WordNetDb, src: str, dst: str, pos: Pos, depth: int):
    targets = set(_synset_ids(db, dst, pos))
    if not targets:
        return None
    dist = _ancestor_distances(db, src, pos, depth)
    hits = [d for sid, d in dist.items() if sid in targets]
    return min(hits) if hits else None


def _synonym_winner(db: WordNetDb, a: str, b: str, pos: Pos) -> str:
    if normalize_lemma(a) == normalize_lemma(b):
        return min(a, b)
    sid = _shared_synset(db, a, b, pos)
    words = db.synsets[sid].words
    na = _member_form(db, a, pos, words)
    nb = _member_form(db, b, pos, words)
    ia, ib = words.index(na), words.index(nb)
    if ia != ib:
        return a if ia < ib else b
    return min(a, b)


def _member_form(db, label, pos, words):
    form = normalize_lemma(label)
    if form in words:
        return form
    for base in morphy(db, form, pos):
        if base in words:
            return base
    return form


def most_general_within(db: WordNetDb, a: str, b: str, pos: Pos, depth: int):
    """The more general of ``a`` and ``b``, or ``None`` when they are unrelated.

    ``b`` wins when some sense of ``a`` reaches a synset containing ``b`` in
    at most ``depth`` hypernym steps, and symmetrically for ``a``.  When both
    directions hit (possible with polysemy) the shorter path decides.
    Synonyms count as distance 0 and so are related at any depth; the lemma
    listed earlier in their first shared synset wins, then the
    lexicographically smaller label.  Checking them first keeps the answer
    stable as ``depth`` grows.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    pos = Pos(pos)
    if are_synonyms(db, a, b, pos):
        return _synonym_winner(db, a, b, pos)
    up_a = _distance_to(db, a, b, pos, depth)
    up_b = _distance_to(db, b, a, pos, depth)
    if up_a is not None and (up_b is None or up_a < up_b):
        return b
    if up_b is not None and (up_a is None or up_b < up_a):
        return a
    if up_a is not None:  # equal distances both ways without a shared synset
        return min(a, b)
    return None


# -- lexicon abstraction ---------------------------------------------------------

class RelatednessLexicon(Protocol):
    def are_synonyms(self, a: str, b: str, pos: Pos) -> bool: ...

    def most_general_within(self, a: str, b: str, pos: Pos, depth: int) -> str | None: ...


class WordNetLexicon:
    """:class:`RelatednessLexicon` backed by a loaded :class:`WordNetDb`."""

    def __init__(self, db: WordNetDb):
        self.db = db

    def are_synonyms(self, a, b, pos):
        return are_synonyms(self.db, a, b, pos)

    def most_general_within(self, a, b, pos, depth):
        return most_general_within(self.db, a, b, pos, depth)

    def __repr__(self):
        return f"WordNetLexicon({self.db.path!r})"


class StubLexicon:
    """Hand-declared relations, for tests and small worked examples.

    ``synonyms`` is an iterable of label groups; ``hypernyms`` maps a
    specific label to its more general labels, each at distance 1 unless
    given as ``(label, distance)``.  Relations apply to both parts of speech.
    """

    def __init__(self, synonyms: Iterable[Iterable[str]] = (), hypernyms=None):
        self._groups = [tuple(g) for g in synonyms]
        self._up: dict[str, dict[str, int]] = {}
        for specific, generals in (hypernyms or {}).items():
            if isinstance(generals, str):
                generals = [generals]
            for g in generals:
                label, d = (g, 1) if isinstance(g, str) else g
                self._up.setdefault(specific, {})[label] = d

    def are_synonyms(self, a, b, pos=None):
        if a == b:
            return True
        return any(a in g and b in g for g in self._groups)

    def _distance(self, src, dst):
        # shortest upward path through the declared edges
        best = {src: 0}
        queue = deque([src])
        while queue:
            cur = queue.popleft()
            for nxt, d in self._up.get(cur, {}).items():
                nd = best[cur] + d
                if nd < best.get(nxt, float("inf")):
                    best[nxt] = nd
                    queue.append(nxt)
        return best.get(dst) if dst != src else None

    def most_general_within(self, a, b, pos=None, depth=0):
        if self.are_synonyms(a, b):
            for g in self._groups:
                if a in g and b in g:
                    return a if g.index(a) < g.index(b) else b
            return min(a, b)
        up_a, up_b = self._distance(a, b), self._distance(b, a)
        up_a = up_a if up_a is not None and up_a <= depth else None
        up_b = up_b if up_b is not None and up_b <= depth else None
        if up_a is not None and (up_b is None or up_a < up_b):
            return b
        if up_b is not None and (up_a is None or up_b < up_a):
            return a
        if up_a is not None:
            return min(a, b)
        return None


class EmptyLexicon(StubLexicon):
    """Relates nothing except a label to itself."""

    def __init__(self):
        super().__init__()
