"""A scikit-learn style front end: rows of ``X`` are configurations on one graph.

Nothing is learned; ``fit`` resolves the graph and warms the root cache.
The estimator exists so batches can flow through sklearn tooling
(``get_params``, pipelines, ``score`` against oracle labels).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import Tag, classify
from .coxeter import CoxeterGraph, build_family
from .minuscule import extract_witness
from .roots import DEFAULT_DEPTH_BOUND, positive_roots
from .validation import check_configurations

TAGS = np.array([t.value for t in Tag], dtype=object)


def _resolve(family, graph) -> CoxeterGraph:
    if (family is None) == (graph is None):
        raise ValueError("give exactly one of family= or graph=")
    return graph if graph is not None else build_family(family)


class NumbersGameClassifier(ClassifierMixin, BaseEstimator):
    """Predicts Winning/Losing/Looping/Unknown for each configuration row."""

    def __init__(self, family: str | None = None, graph: CoxeterGraph | None = None, bound: int = DEFAULT_DEPTH_BOUND):
        self.family = family
        self.graph = graph
        self.bound = bound

    def fit(self, X=None, y=None):
        self.graph_ = _resolve(self.family, self.graph)
        if X is not None:
            check_configurations(X, self.graph_.rank)
        positive_roots(self.graph_, self.bound)
        self.classes_ = TAGS
        self.n_features_in_ = self.graph_.rank
        return self

    def _kw(self):
        return {} if self.graph_.kind.value.startswith("SimplyLaced") else {"bound": self.bound}

    def verdicts(self, X) -> list:
        check_is_fitted(self, "graph_")
        rows = check_configurations(X, self.n_features_in_)
        return [classify(v, self.graph_, **self._kw()) for v in rows]

    def predict(self, X) -> np.ndarray:
        return np.array([v.tag.value for v in self.verdicts(X)], dtype=object)


class WitnessLength(TransformerMixin, BaseEstimator):
    """Maps winning configurations to the length of their witness word (-1 otherwise)."""

    def __init__(self, family: str | None = None, graph: CoxeterGraph | None = None):
        self.family = family
        self.graph = graph

    def fit(self, X=None, y=None):
        self.graph_ = _resolve(self.family, self.graph)
        self.n_features_in_ = self.graph_.rank
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "graph_")
        out = []
        for v in check_configurations(X, self.n_features_in_):
            try:
                out.append(len(extract_witness(v, self.graph_)))
            except ValueError:
                out.append(-1)
        return np.array(out, dtype=int).reshape(-1, 1)
