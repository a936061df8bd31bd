"""scikit-learn compatible wrappers around the functional core.

Reducers are transformers from :class:`FormalContext` to
:class:`FormalContext`, so they chain in a :class:`sklearn.pipeline.Pipeline`;
:class:`ConceptLattice` estimators accept a context, a labelled
``pandas.DataFrame`` or any 0/1 array-like.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .context import FormalContext
from .lattice import build_lattice, lattice_stats
from .reduce import (Axis, Order, TechniqueConfig, _group_axis, _select, apply_order,
                     as_fraction, frequencies, merge)
from .wordnet import Pos

__all__ = [
    "check_context",
    "check_threshold",
    "FrequencyReducer",
    "WordNetReducer",
    "TechniqueReducer",
    "ConceptLatticeTransformer",
]


def check_context(X, objects=None, attributes=None) -> FormalContext:
    """Coerce ``X`` to a :class:`FormalContext`.

    Accepts a context (returned unchanged), a ``DataFrame`` whose index and
    columns become the labels, or a 2-D array-like of booleans / 0-1 values.
    Unlabelled axes are named ``g0, g1, ...`` and ``m0, m1, ...``.
    """
    if isinstance(X, FormalContext):
        return X
    if hasattr(X, "columns") and hasattr(X, "index") and hasattr(X, "to_numpy"):
        objects = objects if objects is not None else [str(i) for i in X.index]
        attributes = attributes if attributes is not None else [str(c) for c in X.columns]
        X = X.to_numpy()
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D incidence matrix, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("incidence matrix must contain only 0/1 or boolean values")
    n, m = arr.shape
    objects = list(objects) if objects is not None else [f"g{i}" for i in range(n)]
    attributes = list(attributes) if attributes is not None else [f"m{j}" for j in range(m)]
    if len(objects) != n or len(attributes) != m:
        raise ValueError(f"label counts {len(objects)}x{len(attributes)} do not match shape {arr.shape}")
    rows = []
    for i in range(n):
        row = 0
        for j in np.flatnonzero(arr[i]):
            row |= 1 << int(j)
        rows.append(row)
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows))


def check_threshold(threshold) -> Fraction:
    value = as_fraction(threshold)
    if not 0 <= value <= 100:
        raise ValueError(f"threshold must lie in [0, 100], got {threshold}")
    return value


def _check_same_labels(est, ctx: FormalContext):
    if ctx.objects != est.objects_in_ or ctx.attributes != est.attributes_in_:
        raise ValueError(f"{type(est).__name__} was fitted on a context with different labels")


class FrequencyReducer(TransformerMixin, BaseEstimator):
    """Remove objects and attributes whose incidence frequency is <= ``threshold`` percent."""

    def __init__(self, threshold=2):
        self.threshold = threshold

    def fit(self, X, y=None):
        ctx = check_context(X)
        threshold = check_threshold(self.threshold)
        obj_freq, attr_freq = frequencies(ctx)
        self.object_frequencies_ = obj_freq
        self.attribute_frequencies_ = attr_freq
        self.objects_in_ = ctx.objects
        self.attributes_in_ = ctx.attributes
        self.removed_objects_ = [o for o in ctx.objects if obj_freq[o] <= threshold]
        self.removed_attributes_ = [a for a in ctx.attributes if attr_freq[a] <= threshold]
        return self

    def transform(self, X):
        check_is_fitted(self, "objects_in_")
        ctx = check_context(X)
        _check_same_labels(self, ctx)
        drop_o, drop_a = set(self.removed_objects_), set(self.removed_attributes_)
        return _select(ctx,
                       [i for i, o in enumerate(ctx.objects) if o not in drop_o],
                       [j for j, a in enumerate(ctx.attributes) if a not in drop_a])


class WordNetReducer(TransformerMixin, BaseEstimator):
    """Merge related objects (as nouns) and attributes (as verbs) under their most general label."""

    def __init__(self, lexicon=None, depth=4):
        self.lexicon = lexicon
        self.depth = depth

    def fit(self, X, y=None):
        if self.lexicon is None:
            raise ValueError("WordNetReducer needs a lexicon")
        ctx = check_context(X)
        self.objects_in_ = ctx.objects
        self.attributes_in_ = ctx.attributes
        self.object_groups_ = _group_axis(ctx.objects, self.lexicon, Pos.NOUN, self.depth)
        # attribute grouping only depends on attribute labels, so it can be
        # computed up front on the unmerged axis
        self.attribute_groups_ = _group_axis(ctx.attributes, self.lexicon, Pos.VERB, self.depth)
        return self

    def transform(self, X):
        check_is_fitted(self, "objects_in_")
        ctx = check_context(X)
        _check_same_labels(self, ctx)
        for survivor, group in self.object_groups_:
            ctx = merge(ctx, Axis.OBJECTS, group, survivor)
        for survivor, group in self.attribute_groups_:
            ctx = merge(ctx, Axis.ATTRIBUTES, group, survivor)
        return ctx


class TechniqueReducer(TransformerMixin, BaseEstimator):
    """One of the five technique orders, applied as a single transformer."""

    def __init__(self, order="wordnet-then-frequency", depth=4, threshold=2, lexicon=None):
        self.order = order
        self.depth = depth
        self.threshold = threshold
        self.lexicon = lexicon

    def fit(self, X, y=None):
        self.config_ = TechniqueConfig(self.depth, check_threshold(self.threshold), Order.parse(self.order))
        ctx = check_context(X)
        self.objects_in_ = ctx.objects
        self.attributes_in_ = ctx.attributes
        self.reduced_, self.reports_ = apply_order(ctx, self.config_, self.lexicon)
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        ctx = check_context(X)
        _check_same_labels(self, ctx)
        return self.reduced_


class ConceptLatticeTransformer(TransformerMixin, BaseEstimator):
    """Fit a concept lattice; transform rows into concept-membership indicators.

    After ``fit``, ``lattice_`` holds the :class:`ConceptLattice` and
    ``stats_`` its :class:`LatticeStats`.  ``transform`` maps each row
    (an attribute set over the fitted attributes) to a boolean vector with
    one column per concept, true where the concept's intent is contained in
    the row.
    """

    def __init__(self, compute_stats=True):
        self.compute_stats = compute_stats

    def fit(self, X, y=None):
        ctx = check_context(X)
        self.context_ = ctx
        self.lattice_ = build_lattice(ctx)
        self.n_concepts_ = len(self.lattice_)
        self.stats_ = lattice_stats(self.lattice_) if self.compute_stats else None
        return self

    def transform(self, X):
        check_is_fitted(self, "lattice_")
        if isinstance(X, FormalContext):
            if X.attributes != self.context_.attributes:
                raise ValueError("attributes differ from the fitted context")
            rows = X.rows
        else:
            ctx = check_context(X, attributes=self.context_.attributes)
            rows = ctx.rows
        intents = self.lattice_.intent_masks
        out = np.zeros((len(rows), len(intents)), dtype=bool)
        for i, row in enumerate(rows):
            for k, intent in enumerate(intents):
                out[i, k] = intent & row == intent
        return out
