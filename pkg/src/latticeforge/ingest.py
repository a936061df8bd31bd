"""From text and dependency-parser output to verb-noun pairs and a context.

The statistical parser itself is external.  This module reads its typed
dependency output, one ``rel(governor-i, dependent-j)`` per line, and
provides the rule-based sentence splitter and tokenizer used to pre-chunk
raw text for it.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .context import FormalContext
from .errors import ParseError
from .wordnet import Pos, WordNetDb, morphy, normalize_lemma

__all__ = [
    "Sentence",
    "Token",
    "Word",
    "DependencyTriple",
    "WordPair",
    "RELATION_WHITELIST",
    "split_sentences",
    "tokenize",
    "parse_dependencies",
    "filter_triples",
    "extract_pairs",
    "prune_pairs",
    "context_from_pairs",
    "dedupe_pairs",
    "read_pairs_tsv",
    "write_pairs_tsv",
]

logger = logging.getLogger(__name__)

RELATION_WHITELIST = frozenset({
    "acomp", "agent", "conj", "cop", "csubj", "csubjpass", "dobj", "infmod",
    "nsubj", "nsubjpass", "parataxis", "partmod", "prepc", "purpcl", "rcmod",
    "rel", "tmod", "xcomp", "xsubj",
})


# -- sentences and tokens ------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    kind: str  # "word" | "number" | "punctuation"


@dataclass(frozen=True)
class Sentence:
    text: str
    start: int
    end: int

    @property
    def tokens(self) -> list[Token]:
        return tokenize(self)


_BOUNDARY = re.compile(
    r"""
    \.(?=[ \t]*(?:\r?\n|$))              # period ending a line or the text
    | \.(?=\s+[A-Z])                      # full stop before a capitalised token
    | \n(?=[ \t]*[A-Z])                   # line break before a capitalised token
    """,
    re.VERBOSE,
)


def split_sentences(text: str) -> list[Sentence]:
    """Split on a line- or text-final period, a full stop followed by a
    capitalised token, or a newline followed by a capitalised token.

    Abbreviations are not special-cased: ``"Dr. Smith"`` splits after
    ``Dr.``.  Sentence spans exclude surrounding whitespace, so every input
    character lies either in one sentence or in the whitespace between two.
    """
    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        end = match.end() if match.group() == "." else match.start()
        _emit(text, start, end, sentences)
        start = match.end()
    _emit(text, start, len(text), sentences)
    return sentences


def _emit(text, start, end, out):
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    if start < end:
        out.append(Sentence(text[start:end], start, end))


_TOKEN = re.compile(
    r"(?P<number>\d+(?:[.,]\d+)*)(?![\w-])"
    r"|(?P<word>\w+(?:[-']\w+)*)"
    r"|(?P<punctuation>[^\w\s])"
)


def tokenize(sentence: "Sentence | str") -> list[Token]:
    """Whitespace and punctuation tokenization.

    Numbers keep internal commas and periods (``55,000``) and hyphenated
    words stay whole (``motor-bike``).  Offsets are absolute when a
    :class:`Sentence` is given.
    """
    if isinstance(sentence, Sentence):
        text, base = sentence.text, sentence.start
    else:
        text, base = sentence, 0
    return [
        Token(m.group(), base + m.start(), base + m.end(), m.lastgroup)
        for m in _TOKEN.finditer(text)
    ]


# -- dependencies ---------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    text: str
    index: int

    def __str__(self):
        return f"{self.text}-{self.index}"


@dataclass(frozen=True)
class DependencyTriple:
    relation: str
    governor: Word
    dependent: Word
    subtype: str | None = None
    sentence: int = 0

    @property
    def relation_name(self) -> str:
        return f"{self.relation}_{self.subtype}" if self.subtype else self.relation

    def __str__(self):
        return f"{self.relation_name}({self.governor}, {self.dependent})"


_TRIPLE = re.compile(
    r"^(?P<rel>[A-Za-z]+)(?:[ _:](?P<sub>[A-Za-z]+))?"
    r"\((?P<gov>.+?)-(?P<gi>\d+)'*,\s*(?P<dep>.+)-(?P<di>\d+)'*\)$"
)
_SPLIT = re.compile(r"(?<=\))\s*,\s*(?=[A-Za-z]+(?:[ _:][A-Za-z]+)?\()")


def parse_dependencies(text: str, source: str = "<string>") -> list[DependencyTriple]:
    """Parse typed dependencies such as ``nsubj(distributes-10, Bell-1)``.

    Triples may be one per line or comma-separated on a line.  A blank line
    ends a sentence; ``#`` starts a comment line.  Relation subtypes written
    as ``prep in`` or ``prep_in`` are split into base and subtype.
    """
    triples = []
    sentence = 0
    pending = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if pending:
                sentence += 1
                pending = False
            continue
        if line.startswith("#"):
            continue
        for chunk in _SPLIT.split(line):
            m = _TRIPLE.match(chunk.strip())
            if not m:
                raise ParseError(f"malformed dependency {chunk.strip()!r}", source, lineno)
            triples.append(DependencyTriple(
                relation=m["rel"].lower(),
                subtype=m["sub"].lower() if m["sub"] else None,
                governor=Word(m["gov"], int(m["gi"])),
                dependent=Word(m["dep"], int(m["di"])),
                sentence=sentence,
            ))
            pending = True
    return triples


def filter_triples(triples: Iterable[DependencyTriple]) -> list[DependencyTriple]:
    return [t for t in triples if t.relation in RELATION_WHITELIST]


# -- pairs ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WordPair:
    """A (verb, noun) pair; identity ignores provenance."""

    attribute: str
    object: str
    sources: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    @property
    def key(self) -> tuple[str, str]:
        return self.attribute, self.object


def _lemma(db: WordNetDb | None, word: str, pos: Pos) -> str:
    if db is None:
        return word
    candidates = morphy(db, word, pos)
    if not candidates:
        return word
    lemma = candidates[0]
    # keep the surface spelling (case, hyphens) when no inflection was removed
    if lemma == normalize_lemma(word):
        return word
    return lemma.replace("_", " ") if " " in word else lemma


def prune_pairs(pairs: Iterable[WordPair], db: WordNetDb | None) -> list[WordPair]:
    """Reduce each pair to base forms: verb lemma for the attribute, noun lemma for the object.

    Words WordNet does not know are kept as they are.
    """
    return [
        WordPair(_lemma(db, p.attribute, Pos.VERB), _lemma(db, p.object, Pos.NOUN), p.sources)
        for p in pairs
    ]


def dedupe_pairs(pairs: Iterable[WordPair]) -> list[WordPair]:
    seen: dict[tuple[str, str], WordPair] = {}
    for p in pairs:
        if p.key in seen:
            prev = seen[p.key]
            extra = tuple(s for s in p.sources if s not in prev.sources)
            seen[p.key] = WordPair(prev.attribute, prev.object, prev.sources + extra)
        else:
            seen[p.key] = p
    return list(seen.values())


def extract_pairs(triples: Iterable[DependencyTriple], db: WordNetDb | None = None,
                  fold_case: bool = False) -> list[WordPair]:
    """Turn filtered triples into pruned, de-duplicated verb-noun pairs.

    The governor becomes the attribute and the dependent the object, except
    for ``cop`` where the dependent is the copular verb and the sides swap.
    """
    raw = []
    for t in triples:
        verb, noun = (t.dependent, t.governor) if t.relation == "cop" else (t.governor, t.dependent)
        a, o = verb.text, noun.text
        if fold_case:
            a, o = a.lower(), o.lower()
        raw.append(WordPair(a, o, ((t.relation_name, t.sentence),)))
    return dedupe_pairs(prune_pairs(raw, db))


def context_from_pairs(pairs: Iterable[WordPair]) -> FormalContext:
    """Objects and attributes in first-occurrence order; one cell per distinct pair."""
    objects: dict[str, int] = {}
    attributes: dict[str, int] = {}
    cells = set()
    for p in pairs:
        objects.setdefault(p.object, len(objects))
        attributes.setdefault(p.attribute, len(attributes))
        cells.add((objects[p.object], attributes[p.attribute]))
    if not cells:
        logger.warning("no word pairs; the formal context is empty")
    rows = [0] * len(objects)
    for i, j in cells:
        rows[i] |= 1 << j
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows))


def read_pairs_tsv(text: str, source: str = "<string>", fold_case: bool = False) -> list[WordPair]:
    """Read ``attribute<TAB>object`` lines; ``#`` lines and blank lines are skipped."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0].strip() or not fields[1].strip():
            raise ParseError("expected 'attribute<TAB>object'", source, lineno)
        a, o = fields[0].strip(), fields[1].strip()
        if fold_case:
            a, o = a.lower(), o.lower()
        pairs.append(WordPair(a, o, (("tsv", lineno),)))
    return dedupe_pairs(pairs)


def write_pairs_tsv(pairs: Sequence[WordPair]) -> str:
    return "".join(f"{p.attribute}\t{p.object}\n" for p in pairs)
