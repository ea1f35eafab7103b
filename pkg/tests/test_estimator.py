from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cutoffgame.estimator import NumbersGameClassifier, WitnessLength
from cutoffgame.oracle import explore
from cutoffgame.validation import FloatRejectedError


def test_predict_and_params():
    clf = NumbersGameClassifier(family="A~2")
    assert clf.get_params() == {"family": "A~2", "graph": None, "bound": 64}
    X = [(1, -1, 0), (-1, 0, 0), (1, 0, 0)]
    clf.fit(X)
    assert list(clf.predict(X)) == ["Looping", "Losing", "Winning"]
    assert clf.n_features_in_ == 3
    assert clone(clf).get_params()["family"] == "A~2"


def test_score_against_oracle_labels(fam):
    g = fam("A3")
    X = [(a, b, c) for a in (-1, 0, 1) for b in (-2, 0) for c in (-1, 1)]
    y = [explore(v, g).tag.value for v in X]
    clf = NumbersGameClassifier(graph=g).fit(X, y)
    assert clf.score(X, y) == 1.0


def test_rational_strings_and_general_graph(asym):
    clf = NumbersGameClassifier(graph=asym).fit()
    assert list(clf.predict([["-1/2", "-1/2"], [F(1, 3), 0]])) == ["Winning", "Winning"]


def test_input_validation():
    clf = NumbersGameClassifier(family="A2")
    with pytest.raises(NotFittedError):
        clf.predict([(0, 0)])
    clf.fit()
    with pytest.raises(FloatRejectedError):
        clf.predict(np.array([[0.5, 0.0]]))
    with pytest.raises(ValueError):
        clf.predict([(0, 0, 0)])
    with pytest.raises(ValueError):
        NumbersGameClassifier().fit()


def test_witness_length_transformer():
    t = WitnessLength(family="A2").fit()
    out = t.transform([(-1, 0), (-1, -1), (1, 1)])
    assert out.shape == (3, 1)
    assert out[:, 0].tolist() == [2, -1, 0]
