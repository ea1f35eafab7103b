from __future__ import annotations

import itertools
from fractions import Fraction as F

from cutoffgame.game import _fire, is_dominant
from cutoffgame.oracle import Budgets, OracleTag, explore, min_moves_to_forbidden, weyl_orbit
from cutoffgame.roots import dot

H = F(1, 2)


def test_a2_losing(fam):
    e = explore((-1, -1), fam("A2"))
    assert e.tag is OracleTag.LOSING
    assert e.outcome.min_moves_to_forbidden == 1
    assert not e.outcome.exhausted


def test_affine_a2_looping(fam):
    g = fam("A~2")
    e = explore((1, -1, 0), g)
    assert e.tag is OracleTag.LOOPING
    assert len(e.verdict.cycle_script) == 3
    # replaying prefix + cycle twice returns to the same state
    t = e.witness(g)
    assert t.replays(g)


def test_a2_winning(fam):
    g = fam("A2")
    e = explore((-1, 0), g)
    assert e.tag is OracleTag.WINNING
    assert e.outcome.min_moves_to_win == 2
    assert e.witness(g).end == (0, 1)


def test_dominant_start(fam):
    e = explore((0, 1), fam("A2"))
    assert e.outcome.can_win and e.outcome.min_moves_to_win == 0


def test_min_moves_to_forbidden(fam):
    assert min_moves_to_forbidden((-2,), fam("A1")) == 0
    assert min_moves_to_forbidden((-1, -1), fam("A2")) == 1
    assert min_moves_to_forbidden((-1, -1, -1), fam("A3")) == 1  # frozen from the search
    assert min_moves_to_forbidden((0, -1, 0), fam("A3")) is None


def test_asymmetric_mixed(asym):
    e = explore((-H, -H), asym)
    assert e.tag is OracleTag.MIXED
    assert e.outcome.can_win and e.outcome.can_reach_forbidden
    assert e.outcome.min_moves_to_forbidden == 1
    assert e.verdict.forbidden_script == (0,)
    assert e.verdict.win_script == (1, 0, 1)


def test_budget_exhaustion_is_honest(fam):
    e = explore((-1, 0, 0), fam("A~2"), Budgets(max_states=2))
    assert e.outcome.exhausted
    assert e.tag in (OracleTag.UNKNOWN, OracleTag.WINNING, OracleTag.MIXED)


def test_dynkin_never_mixed_nor_exhausted(fam):
    for label in ("A2", "A3", "D4"):
        g = fam(label)
        for v in itertools.product(range(-2, 3), repeat=g.rank):
            e = explore(v, g)
            assert not e.outcome.exhausted
            assert e.tag in (OracleTag.WINNING, OracleTag.LOSING)
            if not e.outcome.exhausted:
                assert e.outcome.can_reach_forbidden == (e.outcome.min_moves_to_forbidden is not None)


def test_negative_level_terminates(fam):
    g = fam("A~2")
    for v in itertools.product(range(-2, 3), repeat=3):
        if dot(g.delta, v) < 0:
            e = explore(v, g)
            assert not e.outcome.exhausted and not e.outcome.can_win and not e.outcome.can_loop


def test_winning_persists_under_any_move(fam):
    for label in ("A2", "A3", "A~2"):
        g = fam(label)
        for v in itertools.product(range(-1, 3), repeat=g.rank):
            if explore(v, g).tag is OracleTag.WINNING and not is_dominant(v):
                for i, x in enumerate(v):
                    if x < 0:
                        assert explore(_fire(i, v, g), g).tag is OracleTag.WINNING


def test_weyl_orbit(fam):
    g = fam("A2")
    assert weyl_orbit((1, 0), g) == {(1, 0), (-1, 1), (0, -1)}
    assert weyl_orbit((1, -1, 0), fam("A~2")) == {(1, -1, 0), (0, 1, -1), (-1, 0, 1)}
