"""Brute-force ground truth for the cutoff game.

Explores the full game graph reachable from a configuration, keyed by exact
amplitudes, and decides winning/losing/looping directly from the definitions.
No root-theoretic fact is used here; the classifier is checked against it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .coxeter import CoxeterGraph
from .game import FiringTrace, _fire, is_dominant, is_forbidden
from .validation import Configuration, Rational, as_configuration

_INTERNAL, _WON, _FORBIDDEN = 0, 1, 2


@dataclass(frozen=True)
class Budgets:
    max_states: int = 10**6
    max_depth: int = 10**4


class OracleTag(str, Enum):
    WINNING = "Winning"
    LOSING = "Losing"
    LOOPING = "Looping"
    MIXED = "Mixed"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OutcomeSet:
    can_win: bool
    can_reach_forbidden: bool
    can_loop: bool
    min_moves_to_forbidden: int | None
    min_moves_to_win: int | None
    exhausted: bool
    states: int


@dataclass(frozen=True)
class OracleVerdict:
    """Verdict plus replayable witnesses (vertex scripts from the start)."""

    tag: OracleTag
    win_script: tuple[int, ...] | None = None
    forbidden_script: tuple[int, ...] | None = None
    cycle_prefix: tuple[int, ...] | None = None
    cycle_script: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Exploration:
    start: Configuration
    outcome: OutcomeSet
    verdict: OracleVerdict

    @property
    def tag(self) -> OracleTag:
        return self.verdict.tag

    def witness(self, graph: CoxeterGraph) -> FiringTrace | None:
        v = self.verdict
        script = v.win_script
        if script is None and v.tag is OracleTag.LOSING:
            script = v.forbidden_script
        if script is None and v.cycle_prefix is not None:
            script = v.cycle_prefix + v.cycle_script
        if script is None:
            return None
        return FiringTrace.from_script(self.start, script, graph)


def _path(parent: dict, node) -> tuple[int, ...]:
    out = []
    while True:
        prev, i = parent[node]
        if prev is None:
            break
        out.append(i)
        node = prev
    return tuple(reversed(out))


def explore(v: Sequence[Rational], graph: CoxeterGraph, budgets: Budgets | None = None) -> Exploration:
    """Breadth-first exploration of every cutoff play from ``v``."""
    budgets = budgets or Budgets()
    start = as_configuration(v, graph.rank)

    def status(c):
        if is_forbidden(c):
            return _FORBIDDEN
        if is_dominant(c):
            return _WON
        return _INTERNAL

    kind = {start: status(start)}
    dist = {start: 0}
    parent = {start: (None, None)}
    succ: dict[Configuration, list] = {}
    win_node = start if kind[start] == _WON else None
    forb_node = start if kind[start] == _FORBIDDEN else None
    exhausted = False
    queue = deque([start] if kind[start] == _INTERNAL else [])
    while queue:
        u = queue.popleft()
        if dist[u] >= budgets.max_depth:
            exhausted = True
            continue
        edges = []
        for i, x in enumerate(u):
            if not x < 0:
                continue
            w = _fire(i, u, graph)
            st = kind.get(w)
            if st is None:
                if len(kind) >= budgets.max_states:
                    exhausted = True
                    continue
                st = kind[w] = status(w)
                dist[w] = dist[u] + 1
                parent[w] = (u, i)
                if st == _FORBIDDEN:
                    if forb_node is None:
                        forb_node = w
                elif st == _WON:
                    if win_node is None:
                        win_node = w
                else:
                    queue.append(w)
            if st == _INTERNAL:
                edges.append((i, w))
        succ[u] = edges

    cycle_prefix = cycle_script = None
    cyc = _find_cycle(succ)
    if cyc is not None:
        node, script = cyc
        cycle_prefix, cycle_script = _path(parent, node), script

    outcome = OutcomeSet(
        can_win=win_node is not None,
        can_reach_forbidden=forb_node is not None,
        can_loop=cyc is not None,
        min_moves_to_forbidden=None if forb_node is None else dist[forb_node],
        min_moves_to_win=None if win_node is None else dist[win_node],
        exhausted=exhausted,
        states=len(kind),
    )
    if outcome.can_win and outcome.can_reach_forbidden:
        tag = OracleTag.MIXED
    elif outcome.can_win:
        tag = OracleTag.WINNING
    elif exhausted:
        tag = OracleTag.UNKNOWN
    elif outcome.can_loop:
        tag = OracleTag.LOOPING
    else:
        tag = OracleTag.LOSING
    verdict = OracleVerdict(
        tag,
        win_script=None if win_node is None else _path(parent, win_node),
        forbidden_script=None if forb_node is None else _path(parent, forb_node),
        cycle_prefix=cycle_prefix,
        cycle_script=cycle_script,
    )
    return Exploration(start, outcome, verdict)


def _find_cycle(succ: dict) -> tuple[Configuration, tuple[int, ...]] | None:
    """A node on a directed cycle of the explored internal graph and the script around it."""
    outdeg = {u: len(e) for u, e in succ.items()}
    preds: dict = {}
    for u, edges in succ.items():
        for _, w in edges:
            preds.setdefault(w, []).append(u)
    # nodes never expanded (budget) are sinks
    for u, edges in succ.items():
        outdeg[u] = sum(1 for _, w in edges if w in succ)
    queue = deque(u for u, d in outdeg.items() if d == 0)
    removed = set()
    while queue:
        u = queue.popleft()
        removed.add(u)
        for p in preds.get(u, ()):
            if p in succ and p not in removed:
                outdeg[p] -= 1
                if outdeg[p] == 0:
                    queue.append(p)
    alive = [u for u in succ if u not in removed]
    if not alive:
        return None
    node = alive[0]
    order = {}
    walk = []
    while node not in order:
        order[node] = len(walk)
        i, nxt = next((i, w) for i, w in succ[node] if w in succ and w not in removed)
        walk.append((node, i))
        node = nxt
    k = order[node]
    return node, tuple(i for _, i in walk[k:])


def min_moves_to_forbidden(v: Sequence[Rational], graph: CoxeterGraph, budgets: Budgets | None = None) -> int | None:
    return explore(v, graph, budgets).outcome.min_moves_to_forbidden


def weyl_orbit(v: Sequence[Rational], graph: CoxeterGraph, max_size: int = 10**6) -> set[Configuration]:
    """Orbit of ``v`` under the linear reflection action on configurations."""
    start = as_configuration(v, graph.rank)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for i in graph.vertices:
            if u[i] == 0:
                continue
            w = _fire(i, u, graph)
            if w not in seen:
                seen.add(w)
                if len(seen) > max_size:
                    raise OverflowError(f"orbit exceeds {max_size} configurations")
                queue.append(w)
    return seen
