"""Root-theoretic classification of cutoff-game configurations.

Each classifier returns a :class:`Verdict` with a checkable certificate:
a winning play, a positive root ``b`` with ``b . v < -1``, or a looping
orbit representative.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import CoxeterGraph, CoxeterType, Kind
from .game import FiringTrace, Outcome, Step, _fire, is_dominant, is_forbidden, play, usual_game_terminates
from .oracle import Budgets, OracleTag, explore
from .roots import (
    DEFAULT_DEPTH_BOUND,
    Root,
    affine_test_roots,
    coroot_config,
    dominates_simple,
    dot,
    positive_roots,
    restrict,
    support,
)
from .validation import Configuration, Rational, as_configuration


class Tag(str, Enum):
    WINNING = "Winning"
    LOSING = "Losing"
    LOOPING = "Looping"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


class EnumerationIncomplete(LookupError):
    """No answer within the depth bound of a truncated root enumeration."""


@dataclass(frozen=True)
class Verdict:
    tag: Tag
    trace: FiringTrace | None = None  # WINNING: play to a dominant configuration; LOOPING: play to the representative
    root: Root | None = None  # LOSING: positive root with root . v < -1
    value: Rational | None = None  # root . v
    representative: Configuration | None = None  # LOOPING
    note: str = ""

    def __post_init__(self):
        if self.tag is Tag.WINNING and self.trace is None:
            raise ValueError("a winning verdict needs a witness trace")
        if self.tag is Tag.LOSING and (self.root is None or not self.value < -1):
            raise ValueError("a losing verdict needs a root b with b . v < -1")
        if self.tag is Tag.LOOPING and self.representative is None:
            raise ValueError("a looping verdict needs an orbit representative")

    def certificate(self):
        return {
            Tag.WINNING: self.trace,
            Tag.LOSING: self.root,
            Tag.LOOPING: self.representative,
            Tag.UNKNOWN: self.note,
        }[self.tag]


def _require(graph: CoxeterGraph, *kinds: Kind) -> None:
    if graph.kind not in kinds:
        names = ", ".join(k.value for k in kinds)
        raise ValueError(f"expected a graph of kind {names}, got {graph.kind.value}")


def _winning(v: Configuration, graph: CoxeterGraph, note: str = "") -> Verdict:
    res = play(v, graph)
    if res.outcome is not Outcome.WON:
        raise RuntimeError(f"lowest-index play from {v} ended {res.outcome.value}, expected a win")
    return Verdict(Tag.WINNING, trace=res.trace, note=note)


def _losing(root: Root, v: Configuration, note: str = "") -> Verdict:
    return Verdict(Tag.LOSING, root=tuple(root), value=dot(root, v), note=note)


def _first_violation(v: Configuration, roots: Iterable[Root]) -> Root | None:
    for r in roots:
        if dot(r, v) < -1:
            return r
    return None


# --------------------------------------------------------------------------
# simply-laced Dynkin and extended Dynkin graphs


def classify_dynkin(v: Sequence[Rational], graph: CoxeterGraph) -> Verdict:
    """Winning iff ``a . v >= -1`` for every positive root; otherwise losing."""
    _require(graph, Kind.SIMPLY_LACED_DYNKIN)
    v = as_configuration(v, graph.rank)
    bad = _first_violation(v, positive_roots(graph))
    if bad is not None:
        return _losing(bad, v)
    return _winning(v, graph)


def orbit_representative(v: Sequence[Rational], graph: CoxeterGraph, extending: int | None = None):
    """Fire only away from ``extending`` until its amplitude is the sole negative one.

    Returns ``(configuration, trace)``, or ``None`` if that play hits a
    forbidden configuration.
    """
    v = as_configuration(v, graph.rank)
    i0 = min(graph.extending_vertices()) if extending is None else extending
    cur = v
    steps = []
    while True:
        if is_forbidden(cur):
            return None
        moves = [j for j, x in enumerate(cur) if x < 0 and j != i0]
        if not moves:
            return cur, FiringTrace(v, tuple(steps), cur)
        j = moves[0]
        steps.append(Step(j, cur[j]))
        cur = _fire(j, cur, graph)


def _extended_certificate(v: Configuration, graph: CoxeterGraph) -> Root:
    bad = _first_violation(v, positive_roots(graph, DEFAULT_DEPTH_BOUND))
    if bad is not None:
        return bad
    d = graph.delta
    r = min(affine_test_roots(graph), key=lambda b: dot(b, v))
    while dot(r, v) >= -1:
        r = tuple(x + y for x, y in zip(r, d))
    return r


def classify_extended(v: Sequence[Rational], graph: CoxeterGraph) -> Verdict:
    """Trichotomy on an extended Dynkin graph via the finite set of affine test roots."""
    _require(graph, Kind.SIMPLY_LACED_EXTENDED_DYNKIN)
    v = as_configuration(v, graph.rank)
    if not any(v):
        return _winning(v, graph, note="zero configuration is already dominant")
    d = dot(graph.delta, v)
    worst = min(dot(r, v) for r in affine_test_roots(graph))
    if worst < -1 or d < 0:
        return _losing(_extended_certificate(v, graph), v)
    if d == 0:
        rep = orbit_representative(v, graph)
        if rep is None:
            raise RuntimeError(f"looping configuration {v} reached a forbidden state off the extending vertex")
        return Verdict(Tag.LOOPING, trace=rep[1], representative=rep[0])
    return _winning(v, graph)


@lru_cache(maxsize=64)
def _coroot_conditions(graph: CoxeterGraph) -> tuple:
    if graph.kind is Kind.SIMPLY_LACED_DYNKIN:
        roots = positive_roots(graph).roots
    else:
        roots = affine_test_roots(graph)  # exactly the real roots b <= delta
    out = []
    for r in roots:
        s = sorted(support(r))
        neg = tuple(-x for x in restrict(coroot_config(r, graph), s))
        out.append((r, s, neg))
    return tuple(out)


def classify_integral(v: Sequence[Rational], graph: CoxeterGraph) -> Verdict:
    """Explicit test for integral configurations: no forbidden entry and no negative coroot on a support."""
    _require(graph, Kind.SIMPLY_LACED_DYNKIN, Kind.SIMPLY_LACED_EXTENDED_DYNKIN)
    v = as_configuration(v, graph.rank)
    if not all(isinstance(x, int) for x in v):
        raise ValueError(f"classify_integral needs integer amplitudes, got {v}")
    n = graph.rank
    extended = graph.kind is Kind.SIMPLY_LACED_EXTENDED_DYNKIN
    if extended:
        if not any(v):
            return _winning(v, graph, note="zero configuration is already dominant")
        if dot(graph.delta, v) == 0:
            ext = graph.extending_vertices()
            i0 = min(ext)
            rep = orbit_representative(v, graph, i0)
            if rep is not None:
                mu = rep[0]
                others = [j for j in ext if j != i0 and mu[j] == 1]
                if mu[i0] == -1 and len(others) == 1 and sum(1 for x in mu if x) == 2:
                    return Verdict(Tag.LOOPING, trace=rep[1], representative=mu)
            return _losing(_extended_certificate(v, graph), v, note="delta . v = 0 outside the looping orbits")

    for i, x in enumerate(v):
        if x < -1:
            return _losing(tuple(1 if k == i else 0 for k in range(n)), v, note=f"amplitude {x} at vertex {i}")
    for r, s, neg in _coroot_conditions(graph):
        if all(v[k] == c for k, c in zip(s, neg)):
            return _losing(r, v, note="restriction to the support is a negative coroot")
    if extended:
        for j in graph.extending_vertices():
            if all(x == (-1 if k == j else 0) for k, x in enumerate(v)):
                root = tuple(d + (1 if k == j else 0) for k, d in enumerate(graph.delta))
                return _losing(root, v, note=f"v = -omega_{j} at an extending vertex")
    return _winning(v, graph)


def classify(v: Sequence[Rational], graph: CoxeterGraph, **kw) -> Verdict:
    """Dispatch to the classifier appropriate to the graph's kind."""
    if graph.kind is Kind.SIMPLY_LACED_DYNKIN:
        return classify_dynkin(v, graph)
    if graph.kind is Kind.SIMPLY_LACED_EXTENDED_DYNKIN:
        return classify_extended(v, graph)
    return classify_general(v, graph, **kw)


def looping_subgraph_test(v: Sequence[Rational], graph: CoxeterGraph) -> bool:
    """With ``delta . v = 0``: loops iff ``v`` and ``-v`` both win on the complement of an extending vertex."""
    _require(graph, Kind.SIMPLY_LACED_EXTENDED_DYNKIN)
    v = as_configuration(v, graph.rank)
    if not any(v):
        raise ValueError("looping_subgraph_test needs a nonzero configuration")
    if dot(graph.delta, v) != 0:
        raise ValueError("looping_subgraph_test needs delta . v = 0")
    i0 = min(graph.extending_vertices())
    keep = [k for k in graph.vertices if k != i0]
    sub = _subgraph(graph, tuple(keep))
    w = restrict(v, keep)
    return (
        classify_dynkin(w, sub).tag is Tag.WINNING
        and classify_dynkin(tuple(-x for x in w), sub).tag is Tag.WINNING
    )


@lru_cache(maxsize=1024)
def _subgraph(graph: CoxeterGraph, vertices: tuple) -> CoxeterGraph:
    return graph.subgraph(vertices)


# --------------------------------------------------------------------------
# minimal losing configurations


def minimal_losing_catalog(graph: CoxeterGraph, box_low: int, box_high: int) -> set[Configuration]:
    """Integral configurations in the box that lose, yet win on every proper connected subgraph."""
    _require(graph, Kind.SIMPLY_LACED_DYNKIN, Kind.SIMPLY_LACED_EXTENDED_DYNKIN)
    subsets = [tuple(sorted(s)) for s in graph.connected_subsets(proper=True)]
    subs = {s: _subgraph(graph, s) for s in subsets}
    out = set()
    for v in itertools.product(range(box_low, box_high + 1), repeat=graph.rank):
        if classify(v, graph).tag is not Tag.LOSING:
            continue
        if all(classify(restrict(v, s), subs[s]).tag is Tag.WINNING for s in subsets):
            out.add(v)
    return out


def closed_form_minimal_losing(graph: CoxeterGraph, box_low: int, box_high: int) -> set[Configuration]:
    """Closed form: ``-b^v`` for fully supported ``b`` (``b <= delta`` when extended), ``-omega_j`` for
    extending ``j``, and the forbidden one-vertex configurations; intersected with the box."""
    _require(graph, Kind.SIMPLY_LACED_DYNKIN, Kind.SIMPLY_LACED_EXTENDED_DYNKIN)
    n = graph.rank
    cands: set[Configuration] = set()
    if n == 1:
        cands |= {(x,) for x in range(box_low, min(box_high, -2) + 1)}
    else:
        if graph.kind is Kind.SIMPLY_LACED_DYNKIN:
            roots = positive_roots(graph).roots
        else:
            roots = affine_test_roots(graph)
            cands |= {tuple(-1 if k == j else 0 for k in range(n)) for j in graph.extending_vertices()}
        for r in roots:
            if len(support(r)) == n:
                cands.add(tuple(-x for x in coroot_config(r, graph)))
    return {v for v in cands if all(box_low <= x <= box_high for x in v)}


# --------------------------------------------------------------------------
# minimum number of moves to a forbidden configuration


def _min_violation(v: Configuration, graph: CoxeterGraph, bound: int, dominating_only: bool) -> int | None:
    """Least depth of a positive root with ``b . v < -1``; ``None`` only when provably absent."""
    if is_dominant(v):
        return None
    R = positive_roots(graph, bound)
    pool = _dominating_roots(graph, bound) if dominating_only else R
    bad = _first_violation(v, pool)
    if bad is not None:
        return R.depth(bad)
    if R.complete:
        return None
    if graph.coxeter_type is CoxeterType.AFFINE:
        level = dot(graph.delta, v)
        if level > 0:
            # every root with b . v < 0 has depth at most the usual game's move count
            moves = usual_game_terminates(v, graph).moves
            if moves + 1 <= bound:
                return None
            return _min_violation(v, graph, moves + 1, dominating_only)
        if level == 0 and _delta_classes(graph, bound) is not None:
            return None  # b . v is constant along delta-chains and every chain was reached
    raise EnumerationIncomplete(f"no violated root of depth <= {bound}")


def min_moves_formula(v: Sequence[Rational], graph: CoxeterGraph, bound: int = DEFAULT_DEPTH_BOUND) -> int | None:
    """``min(depth(b) - 1)`` over positive roots with ``b . v < -1``; ``None`` when there are none.

    Needs ``c_ij == c_ji`` on odd edges; raises :class:`EnumerationIncomplete`
    when a truncated enumeration can neither find nor rule out a violated root.
    """
    if not graph.odd_symmetry():
        raise ValueError("min_moves_formula needs c_ij = c_ji on odd edges; use min_moves_formula_general")
    v = as_configuration(v, graph.rank)
    dp = _min_violation(v, graph, bound, dominating_only=False)
    return None if dp is None else dp - 1


@lru_cache(maxsize=64)
def _dominating_roots(graph: CoxeterGraph, bound: int) -> tuple[Root, ...]:
    return tuple(r for r in positive_roots(graph, bound) if dominates_simple(r, graph) is not None)


def min_moves_formula_general(v: Sequence[Rational], graph: CoxeterGraph, bound: int = DEFAULT_DEPTH_BOUND) -> int | None:
    """As :func:`min_moves_formula`, restricted to roots lying above some simple root; any Cartan data."""
    v = as_configuration(v, graph.rank)
    dp = _min_violation(v, graph, bound, dominating_only=True)
    return None if dp is None else dp - 1


# --------------------------------------------------------------------------
# general Coxeter graphs


def _from_oracle(v: Configuration, graph: CoxeterGraph, budgets: Budgets | None, bound: int, why: str) -> Verdict:
    e = explore(v, graph, budgets)
    tag = e.tag
    note = f"{why}; decided by exhaustive search ({e.outcome.states} states, oracle: {tag.value})"
    if tag in (OracleTag.WINNING, OracleTag.MIXED):
        return Verdict(Tag.WINNING, trace=FiringTrace.from_script(v, e.verdict.win_script, graph), note=note)
    if tag is OracleTag.LOSING:
        R = positive_roots(graph, bound)
        bad = _first_violation(v, _dominating_roots(graph, bound)) or _first_violation(v, R)
        if bad is not None:
            return _losing(bad, v, note=note)
        return Verdict(Tag.UNKNOWN, note=note + f"; no violated root of depth <= {bound}")
    if tag is OracleTag.LOOPING:
        prefix = e.verdict.cycle_prefix
        trace = FiringTrace.from_script(v, prefix, graph)
        return Verdict(Tag.LOOPING, trace=trace, representative=trace.end, note=note)
    return Verdict(Tag.UNKNOWN, note=note)


def _residue_mod_delta(r: Root, d: Sequence[int]) -> Root:
    k = min(x // y for x, y in zip(r, d))
    return tuple(x - k * y for x, y in zip(r, d))


@lru_cache(maxsize=64)
def _delta_classes(graph: CoxeterGraph, bound: int) -> tuple[Root, ...] | None:
    """Least-depth representative of each class of positive roots modulo delta.

    ``None`` unless the enumeration is complete or no new class appeared in
    the deeper half of the depth range.
    """
    R = positive_roots(graph, bound)
    classes: dict = {}
    late = False
    for r in R:
        key = _residue_mod_delta(r, graph.delta)
        if key not in classes:
            classes[key] = r
            late = late or R.depth(r) > bound // 2
    if late and not R.complete:
        return None
    return tuple(classes.values())


def classify_general(
    v: Sequence[Rational],
    graph: CoxeterGraph,
    bound: int = DEFAULT_DEPTH_BOUND,
    budgets: Budgets | None = None,
) -> Verdict:
    """Classify on any validated graph.

    Winning iff the usual game terminates and ``a . v >= -1`` for all
    positive roots.  A violated inequality gives a losing verdict when
    ``c_ij == c_ji`` on odd edges; otherwise the exhaustive search decides.
    """
    v = as_configuration(v, graph.rank)
    if not any(v):
        return _winning(v, graph, note="zero configuration is already dominant")
    sym = graph.odd_symmetry()
    ctype = graph.coxeter_type

    def violated(bad: Root) -> Verdict:
        if sym:
            return _losing(bad, v)
        return _from_oracle(v, graph, budgets, bound, "inequality fails without odd-edge symmetry")

    if ctype is CoxeterType.FINITE:
        bad = _first_violation(v, positive_roots(graph))
        return _winning(v, graph) if bad is None else violated(bad)

    if ctype is CoxeterType.AFFINE:
        d = graph.delta
        level = dot(d, v)
        if level < 0:
            bad = _first_violation(v, positive_roots(graph, bound))
            if bad is None:
                return _from_oracle(v, graph, budgets, bound, f"delta . v < 0 but no violated root of depth <= {bound}")
            return violated(bad)
        if level > 0:
            moves = usual_game_terminates(v, graph).moves
            bad = _first_violation(v, positive_roots(graph, max(bound, moves + 1)))
            return _winning(v, graph) if bad is None else violated(bad)
        # level zero: b . v depends only on b modulo delta
        classes = _delta_classes(graph, bound)
        if classes is None:
            return _from_oracle(v, graph, budgets, bound, "root classes modulo delta not yet stable")
        bad = _first_violation(v, classes)
        if bad is not None:
            return violated(bad)
        res = play(v, graph, max_steps=10**5)
        if res.outcome is not Outcome.LOOP:
            raise RuntimeError(f"level-zero configuration {v} did not loop ({res.outcome.value})")
        k = len(res.trace) - len(res.cycle)
        trace = FiringTrace.from_script(v, res.trace.script[:k], graph)
        return Verdict(Tag.LOOPING, trace=trace, representative=res.cycle[0])

    term = usual_game_terminates(v, graph, bound=10 * bound)
    if term.status == "yes":
        bad = _first_violation(v, positive_roots(graph, max(bound, term.moves + 1)))
        return _winning(v, graph) if bad is None else violated(bad)
    return _from_oracle(v, graph, budgets, bound, f"usual game: {term.status} ({term.note})")
