"""Minuscule witness words for winning configurations.

A word ``w = s_{i_1} ... s_{i_t}`` is read right to left, so the firing
order is ``i_t, ..., i_1``: ``reflections`` stores the word as written and
``firing_order`` reverses it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classify import Tag, classify
from .coxeter import CoxeterGraph
from .game import FiringTrace, Outcome, fire, is_allowed, is_dominant, play
from .oracle import Budgets, explore
from .validation import Configuration, Rational, as_configuration, format_rational


class NotWinning(ValueError):
    """The configuration has no winning play, so no minuscule witness exists."""


@dataclass(frozen=True)
class MinusculeWord:
    reflections: tuple[int, ...]  # as written: leftmost is applied last
    amplitudes: tuple[Rational, ...]  # in firing order

    def __len__(self) -> int:
        return len(self.reflections)

    @property
    def firing_order(self) -> tuple[int, ...]:
        return tuple(reversed(self.reflections))

    @classmethod
    def from_trace(cls, trace: FiringTrace) -> "MinusculeWord":
        return cls(tuple(reversed(trace.script)), tuple(s.amplitude for s in trace.steps))

    def format(self, one_based: bool = False) -> str:
        k = 1 if one_based else 0
        return " ".join(f"s_{i + k}" for i in self.reflections) or "e"


@dataclass(frozen=True)
class Check:
    """Result of :func:`verify_minuscule`; falsy with ``step`` and ``reason`` on failure."""

    ok: bool
    step: int | None = None
    reason: str = ""
    end: Configuration | None = None

    def __bool__(self) -> bool:
        return self.ok


def extract_witness(v: Sequence[Rational], graph: CoxeterGraph, budgets: Budgets | None = None) -> MinusculeWord:
    """A witness word from a winning play of ``v``."""
    v = as_configuration(v, graph.rank)
    if graph.odd_symmetry():
        verdict = classify(v, graph)
        if verdict.tag is not Tag.WINNING:
            raise NotWinning(f"{v} is {verdict.tag.value}, not Winning")
        res = play(v, graph)
        if res.outcome is not Outcome.WON:
            raise RuntimeError(f"lowest-index play from winning {v} ended {res.outcome.value}")
        return MinusculeWord.from_trace(res.trace)
    # without odd-edge symmetry some plays of a winning configuration fail
    e = explore(v, graph, budgets)
    if e.verdict.win_script is None:
        raise NotWinning(f"{v} has no winning play (oracle: {e.tag.value})")
    return MinusculeWord.from_trace(FiringTrace.from_script(v, e.verdict.win_script, graph))


def verify_minuscule(word: MinusculeWord, v: Sequence[Rational], graph: CoxeterGraph, integral: bool) -> Check:
    """Replay ``word`` on ``v`` and check every step plus dominance at the end."""
    cur = as_configuration(v, graph.rank)
    if len(word.amplitudes) != len(word.reflections):
        return Check(False, None, "word and amplitude list differ in length")
    for t, (i, recorded) in enumerate(zip(word.firing_order, word.amplitudes)):
        if not 0 <= i < graph.rank:
            return Check(False, t, f"vertex {i} out of range")
        if not is_allowed(cur):
            return Check(False, t, "configuration before the step is forbidden")
        a = cur[i]
        if a != recorded:
            return Check(False, t, f"amplitude {format_rational(a)} at vertex {i}, recorded {format_rational(recorded)}")
        if integral and a != -1:
            return Check(False, t, f"integral step fires {format_rational(a)}, not -1")
        if not -1 <= a < 0:
            return Check(False, t, f"fired amplitude {format_rational(a)} outside [-1, 0)")
        cur = fire(i, cur, graph)
    if not is_dominant(cur):
        return Check(False, len(word), "end configuration is not dominant", cur)
    return Check(True, end=cur)
