"""Concept hierarchies from verb-noun pairs via Formal Concept Analysis."""

__version__ = "0.1.0"

from .context import (FormalContext, close_attributes, close_objects, extent_of,
                      from_incidence, intent_of, transpose)
from .lattice import (ConceptLattice, FormalConcept, LatticeStats, brute_force_concepts,
                      build_lattice, enumerate_concepts, export_dot, lattice_stats)
from .reduce import (Axis, Order, ReductionReport, TechniqueConfig, apply_order,
                     frequencies, frequency_reduce, merge, wordnet_reduce)
from .wordnet import (Pos, StubLexicon, WordNetLexicon, are_synonyms, load_db, morphy,
                      most_general_within)
from .cex import CexDocument, read_cex, write_cex
from .evalstats import AggregateRow, EvalRow, aggregate, stats_csv

__all__ = [
    "FormalContext", "from_incidence", "intent_of", "extent_of", "close_attributes",
    "close_objects", "transpose",
    "FormalConcept", "ConceptLattice", "LatticeStats", "enumerate_concepts",
    "brute_force_concepts", "build_lattice", "lattice_stats", "export_dot",
    "Axis", "Order", "TechniqueConfig", "ReductionReport", "merge", "frequencies",
    "frequency_reduce", "wordnet_reduce", "apply_order",
    "Pos", "load_db", "morphy", "are_synonyms", "most_general_within", "WordNetLexicon",
    "StubLexicon",
    "CexDocument", "read_cex", "write_cex",
    "EvalRow", "AggregateRow", "aggregate", "stats_csv",
]
