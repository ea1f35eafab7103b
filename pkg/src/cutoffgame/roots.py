"""Real roots, reflections, depth and the root poset.

Roots are plain tuples of exact rationals in the simple-root basis.  The
reflection is ``s_i(b) = b - <b, a_i> a_i`` with ``<b, a_i> = sum_k c_ik b_k``,
which is adjoint to the firing move: ``s_i(a) . v == a . fire(i, v)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import CoxeterGraph, CoxeterType, Kind
from .validation import Configuration, Rational

Root = tuple  # tuple[Rational, ...]

DEFAULT_DEPTH_BOUND = 64


class DepthBoundExceeded(RuntimeError):
    """A depth or order query ran past its bound on an infinite root system."""


def simple_root(i: int, n: int) -> Root:
    return tuple(1 if k == i else 0 for k in range(n))


def height(b: Sequence[Rational]) -> Rational:
    return sum(b)


def dot(b: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    """Pairing of a root (simple-root basis) with a configuration (coweight basis)."""
    return sum(x * y for x, y in zip(b, v) if x)


def is_positive(b: Sequence[Rational]) -> bool:
    return all(x >= 0 for x in b) and any(x > 0 for x in b)


def pairing(b: Sequence[Rational], i: int, graph: CoxeterGraph) -> Rational:
    """``<b, a_i>`` as used by the reflection: ``sum_k c_ik b_k``."""
    row = graph.cartan[i]
    return sum(row[k] * x for k, x in enumerate(b) if x)


def reflect(i: int, b: Sequence[Rational], graph: CoxeterGraph) -> Root:
    out = list(b)
    x = b[i] - pairing(b, i, graph)
    if type(x) is Fraction and x.denominator == 1:
        x = x.numerator
    out[i] = x
    return tuple(out)


def cartan_form(a: Sequence[Rational], b: Sequence[Rational], graph: CoxeterGraph) -> Rational:
    """Symmetric Cartan form; only defined for simply-laced graphs."""
    if not graph.is_simply_laced:
        raise ValueError(f"the symmetric Cartan form needs a simply-laced graph, got {graph.kind.value}")
    c = graph.cartan
    n = graph.rank
    return sum(a[i] * c[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])


def support(b: Sequence[Rational]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(b) if x != 0)


def restrict(v: Sequence[Rational], vertices: Iterable[int]) -> Configuration:
    """Keep the coordinates of ``v`` on ``vertices`` (in increasing vertex order)."""
    return tuple(v[i] for i in sorted(set(vertices)))


def simple_multiple(b: Sequence[Rational]) -> int | None:
    """Index ``i`` when ``b`` is a nonzero multiple of ``a_i``."""
    s = [i for i, x in enumerate(b) if x != 0]
    return s[0] if len(s) == 1 else None


def projective_key(b: Sequence[Rational]) -> Root:
    """Normalise ``b`` so that scalar multiples share a key."""
    lead = next(x for x in b if x != 0)
    if lead == 1:
        return tuple(b)
    return tuple(Fraction(x) / lead for x in b)


def coroot_config(a: Sequence[Rational], graph: CoxeterGraph) -> Configuration:
    """Coroot configuration ``a^v`` with ``(a^v)_i = <a, a_i>``."""
    if not graph.is_simply_laced:
        raise ValueError(f"coroot configurations need a simply-laced graph, got {graph.kind.value}")
    return tuple(pairing(a, i, graph) for i in graph.vertices)


def delta(graph: CoxeterGraph) -> Root:
    if graph.delta is None:
        raise ValueError(f"{graph!r} is not affine; it has no null root")
    return graph.delta


@dataclass(frozen=True)
class RootSet:
    """Positive roots found by breadth-first closure, ordered by (depth, coordinates)."""

    roots: tuple[Root, ...]
    depths: dict
    complete: bool
    depth_bound: int

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, b) -> bool:
        return tuple(b) in self.depths

    def depth(self, b) -> int:
        return self.depths[tuple(b)]

    @property
    def max_depth(self) -> int:
        return max(self.depths.values(), default=0)


def positive_roots(graph: CoxeterGraph, depth_bound: int = DEFAULT_DEPTH_BOUND) -> RootSet:
    """Positive roots of depth at most ``depth_bound``.

    Finite types are always enumerated completely, whatever the bound.
    """
    if depth_bound < 1:
        raise ValueError("depth_bound must be >= 1")
    if graph.coxeter_type is CoxeterType.FINITE:
        depth_bound = 10**9
    return _positive_roots(graph, depth_bound)


@lru_cache(maxsize=256)
def _positive_roots(graph: CoxeterGraph, depth_bound: int) -> RootSet:
    n = graph.rank
    seen: dict[Root, int] = {}
    layer = [simple_root(i, n) for i in range(n)]
    for r in layer:
        seen[r] = 1
    level = 1
    complete = False
    while True:
        if level >= depth_bound:
            # one more layer decides whether the closure already stopped
            probe = any(
                (s := reflect(i, r, graph)) not in seen and is_positive(s) for r in layer for i in range(n)
            )
            complete = not probe
            break
        nxt = []
        for r in layer:
            for i in range(n):
                s = reflect(i, r, graph)
                if s not in seen and is_positive(s):
                    seen[s] = level + 1
                    nxt.append(s)
        if not nxt:
            complete = True
            break
        layer = nxt
        level += 1

    depths = _multi_source_depths(seen, graph)
    roots = tuple(sorted(depths, key=lambda r: (depths[r], r)))
    return RootSet(roots, depths, complete, depth_bound)


def _multi_source_depths(found: dict, graph: CoxeterGraph) -> dict:
    # depth - 1 is the reflection-graph distance to the nearest multiple of a simple root
    sources = [r for r in found if simple_multiple(r) is not None]
    if len(sources) == graph.rank:
        return found
    depths = {r: 1 for r in sources}
    queue = deque(sources)
    while queue:
        r = queue.popleft()
        for i in graph.vertices:
            s = reflect(i, r, graph)
            if s in found and s not in depths:
                depths[s] = depths[r] + 1
                queue.append(s)
    return depths


def descending_vertex(b: Sequence[Rational], graph: CoxeterGraph) -> int | None:
    """Lowest ``i`` with ``s_i b < b`` (i.e. ``<b, a_i> > 0``) and ``s_i b`` positive."""
    for i in graph.vertices:
        if b[i] and pairing(b, i, graph) > 0:
            s = reflect(i, b, graph)
            if is_positive(s):
                return i
    return None


def depth(b: Sequence[Rational], graph: CoxeterGraph, bound: int = 10_000) -> int:
    """Minimum number of simple reflections taking the positive root ``b`` negative.

    Walks down the root poset: every descending step lowers depth by exactly
    one, and the walk ends at a multiple of a simple root (depth 1).
    """
    b = tuple(b)
    if not is_positive(b):
        raise ValueError(f"{b} is not a positive root")
    d = 1
    while simple_multiple(b) is None:
        i = descending_vertex(b, graph)
        if i is None:
            raise ValueError(f"{b} is not a real root (no descending reflection)")
        b = reflect(i, b, graph)
        d += 1
        if d > bound:
            raise DepthBoundExceeded(f"depth exceeds {bound}")
    return d


def ascents(b: Sequence[Rational], graph: CoxeterGraph) -> list[Root]:
    """Covers ``s_i b > b`` of a positive root."""
    out = []
    for i in graph.vertices:
        if pairing(b, i, graph) < 0:
            out.append(reflect(i, b, graph))
    return out


def root_order_less(a: Sequence[Rational], b: Sequence[Rational], graph: CoxeterGraph,
                    bound: int = 10_000) -> bool:
    """Strict root-poset order ``a < b``, by upward search of ``depth(b) - depth(a)`` steps."""
    a, b = tuple(a), tuple(b)
    steps = depth(b, graph, bound) - depth(a, graph, bound)
    if steps <= 0:
        return False
    frontier = {a}
    for _ in range(steps):
        frontier = {s for r in frontier for s in ascents(r, graph)}
        if not frontier:
            return False
    return b in frontier


def dominates_simple(b: Sequence[Rational], graph: CoxeterGraph) -> int | None:
    """Lowest ``i`` with ``a_i <= b`` in the root poset, or ``None``."""
    b = tuple(b)
    if not is_positive(b):
        raise ValueError(f"{b} is not a positive root")
    frontier = {b}
    reached: set[int] = set()
    while frontier:
        nxt = set()
        for r in frontier:
            k = simple_multiple(r)
            if k is not None:
                if r[k] == 1:
                    reached.add(k)
                continue
            for i in graph.vertices:
                if r[i] and pairing(r, i, graph) > 0:
                    s = reflect(i, r, graph)
                    if is_positive(s):
                        nxt.add(s)
        frontier = nxt
    return min(reached) if reached else None


def affine_test_roots(graph: CoxeterGraph) -> tuple[Root, ...]:
    """The finite set ``D+ u (delta - D+)`` that decides the affine inequalities.

    ``D+`` is the positive system of the Dynkin graph left after deleting the
    least extending vertex, embedded with coefficient 0 there.
    """
    if graph.kind is not Kind.SIMPLY_LACED_EXTENDED_DYNKIN:
        raise ValueError(f"affine test roots need an extended Dynkin graph, got {graph.kind.value}")
    return _affine_test_roots(graph)


@lru_cache(maxsize=64)
def _affine_test_roots(graph: CoxeterGraph) -> tuple[Root, ...]:
    i0 = min(graph.extending_vertices())
    keep = [v for v in graph.vertices if v != i0]
    sub = graph.subgraph(keep)
    d = graph.delta
    out = []
    for g in positive_roots(sub):
        full = [0] * graph.rank
        for k, v in enumerate(keep):
            full[v] = g[k]
        out.append(tuple(full))
    out += [tuple(x - y for x, y in zip(d, g)) for g in list(out)]
    return tuple(out)
