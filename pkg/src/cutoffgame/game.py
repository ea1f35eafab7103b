"""The (weighted) numbers game, with and without the -1 cutoff."""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from .coxeter import CoxeterGraph, CoxeterType
from .roots import DEFAULT_DEPTH_BOUND, dot, positive_roots, projective_key
from .validation import Configuration, Rational, as_configuration, format_configuration


class FiringNotLegal(ValueError):
    """Attempt to fire a vertex whose amplitude is not negative (or not allowed under the cutoff)."""


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def fire(i: int, v: Sequence[Rational], graph: CoxeterGraph) -> Configuration:
    """Fire vertex ``i``: ``v_i -> -v_i`` and ``v_j -> v_j - c_ij v_i``."""
    a = v[i]
    if not a < 0:
        raise FiringNotLegal(f"vertex {i} has amplitude {a}; only negative amplitudes fire")
    return _fire(i, v, graph)


def _fire(i: int, v: Sequence[Rational], graph: CoxeterGraph) -> Configuration:
    a = v[i]
    out = list(v)
    out[i] = -a
    for j, c in graph.weighted_neighbors[i]:
        out[j] = _norm(out[j] - c * a)
    return tuple(out)


def reflect_config(i: int, v: Sequence[Rational], graph: CoxeterGraph) -> Configuration:
    """The linear action of ``s_i`` on configurations (firing without the sign rule)."""
    return _fire(i, v, graph)


def is_allowed(v: Sequence[Rational]) -> bool:
    return all(x >= -1 for x in v)


def is_forbidden(v: Sequence[Rational]) -> bool:
    return any(x < -1 for x in v)


def is_dominant(v: Sequence[Rational]) -> bool:
    return all(x >= 0 for x in v)


def legal_moves(v: Sequence[Rational], graph: CoxeterGraph | None = None, cutoff: bool = True) -> tuple[int, ...]:
    if cutoff and is_forbidden(v):
        return ()
    return tuple(i for i, x in enumerate(v) if x < 0)


@dataclass(frozen=True)
class Step:
    vertex: int
    amplitude: Rational  # amplitude of the fired vertex just before firing


@dataclass(frozen=True)
class FiringTrace:
    start: Configuration
    steps: tuple[Step, ...]
    end: Configuration

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def script(self) -> list[int]:
        return [s.vertex for s in self.steps]

    def configurations(self, graph: CoxeterGraph) -> list[Configuration]:
        out = [self.start]
        for s in self.steps:
            out.append(fire(s.vertex, out[-1], graph))
        return out

    def replays(self, graph: CoxeterGraph) -> bool:
        """Replaying the steps from ``start`` reproduces the amplitudes and ``end``."""
        v = self.start
        for s in self.steps:
            if v[s.vertex] != s.amplitude or not s.amplitude < 0:
                return False
            v = fire(s.vertex, v, graph)
        return v == self.end

    def is_cutoff_legal(self, graph: CoxeterGraph) -> bool:
        configs = self.configurations(graph)
        return all(is_allowed(c) for c in configs[:-1]) and all(-1 <= s.amplitude < 0 for s in self.steps)

    @classmethod
    def from_script(cls, start: Sequence[Rational], script: Sequence[int], graph: CoxeterGraph) -> "FiringTrace":
        v = tuple(start)
        steps = []
        for i in script:
            steps.append(Step(i, v[i]))
            v = fire(i, v, graph)
        return cls(tuple(start), tuple(steps), v)

    def format_lines(self, graph: CoxeterGraph) -> list[str]:
        """``fire i: (amplitudes after firing)`` for each step."""
        configs = self.configurations(graph)
        return [f"fire {s.vertex}: {format_configuration(c)}" for s, c in zip(self.steps, configs[1:])]


class Outcome(str, Enum):
    WON = "Won"
    FORBIDDEN = "Forbidden"
    LOOP = "Loop"
    BUDGET = "Budget"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PlayResult:
    trace: FiringTrace
    outcome: Outcome
    cycle: tuple[Configuration, ...] = ()  # for LOOP: the repeating configurations, in order

    @property
    def end(self) -> Configuration:
        return self.trace.end


Strategy = Callable[[Configuration, tuple], int]


def _make_strategy(strategy, seed, script):
    if callable(strategy):
        return strategy
    if strategy in ("lowest", "lowest-index"):
        return lambda v, moves: moves[0]
    if strategy == "random":
        rng = random.Random(seed)
        return lambda v, moves: rng.choice(moves)
    if strategy == "scripted":
        if script is None:
            raise ValueError("scripted strategy needs a script")
        it = iter(list(script))

        def scripted(v, moves):
            i = next(it, None)
            if i is None:
                raise StopIteration
            if i not in moves:
                raise FiringNotLegal(f"script fires vertex {i}, which is not a legal move at {format_configuration(v)}")
            return i

        return scripted
    raise ValueError(f"unknown strategy {strategy!r}")


def play(
    v: Sequence[Rational],
    graph: CoxeterGraph,
    strategy="lowest",
    *,
    seed: int | None = None,
    script: Sequence[int] | None = None,
    max_steps: int = 10_000,
    cutoff: bool = True,
) -> PlayResult:
    """Play the game from ``v`` until it is won, lost, loops, or the budget runs out.

    ``strategy`` is ``"lowest"``, ``"random"`` (with ``seed``), ``"scripted"``
    (with ``script``) or a callable ``(config, legal_moves) -> vertex``.  A
    scripted game that runs out of script ends with :attr:`Outcome.BUDGET`.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    if script is not None and strategy == "lowest":
        strategy = "scripted"
    choose = _make_strategy(strategy, seed, script)
    start = as_configuration(v, graph.rank)
    cur = start
    steps: list[Step] = []
    visited = {cur: 0}
    history = [cur]
    while True:
        if is_dominant(cur):
            outcome = Outcome.WON
            break
        if cutoff and is_forbidden(cur):
            outcome = Outcome.FORBIDDEN
            break
        if len(steps) >= max_steps:
            outcome = Outcome.BUDGET
            break
        moves = legal_moves(cur, graph, cutoff)
        try:
            i = choose(cur, moves)
        except StopIteration:
            outcome = Outcome.BUDGET
            break
        if i not in moves:
            raise FiringNotLegal(f"strategy chose vertex {i}, not among legal moves {moves}")
        steps.append(Step(i, cur[i]))
        cur = _fire(i, cur, graph)
        if cur in visited:
            k = visited[cur]
            return PlayResult(FiringTrace(start, tuple(steps), cur), Outcome.LOOP, tuple(history[k:]))
        visited[cur] = len(history)
        history.append(cur)
    return PlayResult(FiringTrace(start, tuple(steps), cur), outcome)


@dataclass(frozen=True)
class Termination:
    """Whether the usual (no cutoff) game terminates; ``moves`` is the forced move count."""

    status: str  # "yes" | "no" | "unknown"
    moves: int | None = None
    note: str = ""

    @property
    def terminates(self) -> bool | None:
        return {"yes": True, "no": False}.get(self.status)


def usual_game_terminates(v: Sequence[Rational], graph: CoxeterGraph, bound: int = DEFAULT_DEPTH_BOUND) -> Termination:
    """Decide termination of the usual numbers game from ``v``.

    Finite types always terminate.  Affine types terminate iff ``delta . v > 0``
    (or ``v == 0``).  Otherwise the game is simulated for ``bound`` moves;
    by strong convergence any order gives the same answer, and the move count
    equals the number of (projectively distinct) positive roots ``b`` with
    ``b . v < 0``.
    """
    v = as_configuration(v, graph.rank)
    ctype = graph.coxeter_type
    if ctype is CoxeterType.AFFINE and any(v):
        if dot(graph.delta, v) <= 0:
            return Termination("no", note="delta . v <= 0 on an affine graph")
    limit = None if ctype is not CoxeterType.INDEFINITE else bound
    res = play(v, graph, max_steps=limit if limit is not None else 10**7, cutoff=False)
    if res.outcome is Outcome.WON:
        return Termination("yes", len(res.trace))
    if res.outcome is Outcome.LOOP:
        return Termination("no", note="configuration repeats")
    return Termination("unknown", note=f"no termination within {bound} moves")


def violated_root_count(v: Sequence[Rational], graph: CoxeterGraph, bound: int = DEFAULT_DEPTH_BOUND) -> int:
    """Projective count of enumerated positive roots ``b`` with ``b . v < 0``."""
    return len({projective_key(b) for b in positive_roots(graph, bound) if dot(b, v) < 0})
