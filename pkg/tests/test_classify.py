from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

from cutoffgame.classify import (
    EnumerationIncomplete,
    Tag,
    Verdict,
    classify,
    classify_dynkin,
    classify_extended,
    classify_general,
    classify_integral,
    closed_form_minimal_losing,
    looping_subgraph_test,
    min_moves_formula,
    min_moves_formula_general,
    minimal_losing_catalog,
    orbit_representative,
)
from cutoffgame.coxeter import build_general
from cutoffgame.game import is_dominant
from cutoffgame.oracle import Budgets, OracleTag, explore, min_moves_to_forbidden
from cutoffgame.roots import dot, positive_roots

H = F(1, 2)


def box(n, lo=-2, hi=2):
    return itertools.product(range(lo, hi + 1), repeat=n)


# ---- Dynkin


def test_dynkin_examples(fam):
    g = fam("A2")
    v = classify_dynkin((-1, -1), g)
    assert v.tag is Tag.LOSING and v.root == (1, 1) and v.value == -2
    w = classify_dynkin((-1, 0), g)
    assert w.tag is Tag.WINNING and w.trace.end == (0, 1)


def test_d4_endpoints_and_node(fam):
    v = classify_dynkin((-1, -1, -1, F(3, 2)), fam("D4"))
    assert v.tag is Tag.LOSING
    assert v.value < -1


def test_dynkin_wrong_kind(fam):
    with pytest.raises(ValueError):
        classify_dynkin((0, 0, 0), fam("A~2"))
    with pytest.raises(ValueError):
        classify_extended((0, 0), fam("A2"))


def test_losing_certificate_is_minimal_depth(fam):
    g = fam("A3")
    R = positive_roots(g)
    for v in box(3):
        ver = classify_dynkin(v, g)
        if ver.tag is Tag.LOSING:
            bad = [r for r in R if dot(r, v) < -1]
            assert ver.root == min(bad, key=lambda r: (R.depth(r), r))


# ---- extended


def test_extended_examples(fam):
    g = fam("A~2")
    assert classify_extended((-1, 0, 0), g).tag is Tag.LOSING
    loop = classify_extended((1, -1, 0), g)
    assert loop.tag is Tag.LOOPING
    assert loop.representative in {(1, -1, 0), (0, 1, -1), (-1, 0, 1)}
    assert classify_extended((1, 0, 0), g).tag is Tag.WINNING


def test_extended_zero_is_winning(fam):
    v = classify_extended((0,) * 5, fam("D~4"))
    assert v.tag is Tag.WINNING and len(v.trace) == 0


def test_finite_test_set_matches_deep_scan(fam):
    for label in ("A~2", "D~4"):
        g = fam(label)
        R = positive_roots(g, 64)
        for v in box(g.rank):
            if not any(v):
                continue
            deep_ok = all(dot(r, v) >= -1 for r in R)
            d = dot(g.delta, v)
            want = Tag.LOSING if not deep_ok else (Tag.LOOPING if d == 0 else Tag.WINNING)
            if deep_ok and d < 0:
                want = Tag.LOSING
            assert classify_extended(v, g).tag is want, v


def test_orbit_representative(fam):
    g = fam("A~2")
    rep, trace = orbit_representative((1, -1, 0), g)
    assert rep == (-1, 0, 1)
    assert trace.replays(g)
    assert orbit_representative((2, -2, 0), g) is None


# ---- integral


def test_integral_examples(fam):
    assert classify_integral((-1, -1), fam("A2")).tag is Tag.LOSING
    g = fam("D4")
    assert classify_integral((-1, -1, -1, 0), g).tag is classify_dynkin((-1, -1, -1, 0), g).tag
    with pytest.raises(ValueError):
        classify_integral((H, 0), fam("A2"))
    with pytest.raises(ValueError):
        classify_integral((0, 0), build_general([[2, -2], [-2, 2]]))


@pytest.mark.parametrize("label", ["A2", "A3", "A4", "D4", "A~2", "A~3", "D~4"])
def test_integral_agrees_with_root_scan(fam, label):
    g = fam(label)
    for v in box(g.rank):
        assert classify_integral(v, g).tag is classify(v, g).tag, v


def test_e8_affine_has_no_integral_looping(fam):
    g = fam("E~8")
    rng = random.Random(8)
    d = g.delta
    for _ in range(300):
        v = [rng.randint(-2, 2) for _ in range(9)]
        v[0] -= dot(d, v)  # delta_0 = 1 puts v on the level-zero hyperplane
        if not any(v):
            continue
        assert classify_integral(v, g).tag is not Tag.LOOPING
        assert classify_extended(v, g).tag is not Tag.LOOPING


# ---- catalog


def test_catalog_a2(fam):
    assert minimal_losing_catalog(fam("A2"), -1, 1) == {(-1, -1)}


def test_catalog_affine_a2(fam):
    g = fam("A~2")
    got = minimal_losing_catalog(g, -1, 1)
    assert got == {(-1, 0, 0), (0, -1, 0), (0, 0, -1)}
    assert got == closed_form_minimal_losing(g, -1, 1)


def test_catalog_d4(fam):
    g = fam("D4")
    got = minimal_losing_catalog(g, -1, 1)
    assert got == closed_form_minimal_losing(g, -1, 1)
    assert got == {(-1, -1, -1, 1), (0, 0, 0, -1)}  # frozen


def test_catalog_single_vertex(fam):
    g = fam("A1")
    assert minimal_losing_catalog(g, -4, 1) == closed_form_minimal_losing(g, -4, 1) == {(-4,), (-3,), (-2,)}


def test_catalog_wrong_kind(asym):
    with pytest.raises(ValueError):
        minimal_losing_catalog(asym, -1, 1)


# ---- looping subgraph test


def test_looping_subgraph_examples(fam):
    g = fam("A~2")
    assert looping_subgraph_test((1, -1, 0), g)
    assert not looping_subgraph_test((2, -2, 0), g)
    with pytest.raises(ValueError):
        looping_subgraph_test((0, 0, 0), g)
    with pytest.raises(ValueError):
        looping_subgraph_test((1, 0, 0), g)


def test_looping_subgraph_agrees(fam):
    for label in ("A~2", "A~3", "D~4"):
        g = fam(label)
        for v in box(g.rank):
            if any(v) and dot(g.delta, v) == 0:
                assert looping_subgraph_test(v, g) == (classify_extended(v, g).tag is Tag.LOOPING)


# ---- minimum moves


def test_min_moves_examples(fam):
    assert min_moves_formula((-1, -1), fam("A2")) == 1
    assert min_moves_formula((-2,), fam("A1")) == 0
    assert min_moves_formula((-1, -1, -1), fam("A3")) == 1 == min_moves_to_forbidden((-1, -1, -1), fam("A3"))
    assert min_moves_formula((0, 1), fam("A2")) is None
    assert min_moves_formula_general((0, 1), fam("A2")) is None


def test_min_moves_refuses_asymmetric(asym):
    with pytest.raises(ValueError, match="general"):
        min_moves_formula((-H, -H), asym)


def test_min_moves_general_on_asymmetric(asym):
    v = (-H, -H)
    assert min_moves_formula_general(v, asym) == min_moves_to_forbidden(v, asym) == 1


def test_min_moves_general_equals_plain_under_symmetry(fam):
    for label in ("A2", "A3"):
        g = fam(label)
        for v in box(g.rank, -3, 1):
            assert min_moves_formula(v, g) == min_moves_formula_general(v, g)


def test_min_moves_incomplete_enumeration():
    g = build_general([[2, -3], [-3, 2]])
    with pytest.raises(EnumerationIncomplete):
        min_moves_formula((-1, 3), g, bound=5)
    assert min_moves_formula((1, 1), g, bound=5) is None  # dominant: nothing to find
    assert min_moves_formula((-2, 0), g, bound=5) == 0


def test_min_moves_affine_proves_absence(fam):
    g = fam("A~2")
    assert min_moves_formula((0, 1, -1), g, bound=8) is None  # level zero, looping
    assert min_moves_formula((1, 1, -1), g, bound=2) is None  # positive level
    assert min_moves_formula((-1, -1, 0), g, bound=8) == min_moves_to_forbidden((-1, -1, 0), g)


# ---- general graphs


def test_general_affine_rank_two_loops():
    g = build_general([[2, -2], [-2, 2]])
    v = classify_general((1, -1), g)
    assert v.tag is Tag.LOOPING
    assert explore((1, -1), g).tag is OracleTag.LOOPING


def test_general_matches_dynkin_on_a2(fam):
    g = fam("A2")
    for v in box(2):
        assert classify_general(v, g).tag is classify_dynkin(v, g).tag


def test_general_matches_extended_on_affine_a2(fam):
    g = fam("A~2")
    for v in box(3):
        assert classify_general(v, g).tag is classify_extended(v, g).tag, v


def test_general_asymmetric_is_winning_with_witness(asym):
    v = classify_general((-H, -H), asym)
    assert v.tag is Tag.WINNING
    assert is_dominant(v.trace.end)
    assert v.trace.replays(asym)
    assert "Mixed" in v.note


def test_general_indefinite_unknown_or_decided():
    g = build_general([[2, -3], [-3, 2]])
    assert classify_general((1, 1), g).tag is Tag.WINNING
    assert classify_general((-2, 5), g).tag is Tag.LOSING
    lost = classify_general((-1, 0), g)
    assert lost.tag is Tag.LOSING and "exhaustive search" in lost.note
    assert classify_general((-1, 0), g, budgets=Budgets(max_states=1)).tag is Tag.UNKNOWN


# ---- verdict invariants


def test_verdict_certificate_must_match_tag():
    with pytest.raises(ValueError):
        Verdict(Tag.WINNING)
    with pytest.raises(ValueError):
        Verdict(Tag.LOSING, root=(1, 1), value=-1)
    with pytest.raises(ValueError):
        Verdict(Tag.LOOPING)
    assert Verdict(Tag.UNKNOWN, note="x").certificate() == "x"
