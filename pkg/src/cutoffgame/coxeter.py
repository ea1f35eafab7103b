"""Coxeter graphs with generalized Cartan data.

A graph is given by its Cartan matrix ``C`` (``C[i][i] == 2``) together with
the Coxeter exponents ``n_ij``.  Firing vertex ``i`` changes the amplitude at
``j`` by ``-C[i][j] * v_i``, i.e. the fired vertex is the *row* index.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .validation import Rational, as_rational

INF = math.inf

# product c_ij * c_ji  ->  Coxeter exponent, for the finite exponents with rational data
_PRODUCT_TO_EXPONENT = {0: 2, 1: 3, 2: 4, 3: 6}
_EXPONENT_TO_PRODUCT = {v: k for k, v in _PRODUCT_TO_EXPONENT.items()}


class ValidationError(ValueError):
    """A Cartan matrix or Coxeter exponent violates the required constraints."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        if pair is not None:
            message = f"{message} (pair {pair[0]},{pair[1]})"
        super().__init__(message)
        self.pair = pair


class Kind(str, Enum):
    SIMPLY_LACED_DYNKIN = "SimplyLacedDynkin"
    SIMPLY_LACED_EXTENDED_DYNKIN = "SimplyLacedExtendedDynkin"
    GENERAL_CRYSTALLOGRAPHIC = "GeneralCrystallographic"
    GENERAL_RATIONAL = "GeneralRational"

    def __str__(self) -> str:
        return self.value


class CoxeterType(str, Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, eq=False)
class CoxeterGraph:
    """An immutable, validated Coxeter graph.

    Use :func:`build_family` or :func:`build_general` rather than the
    constructor; they validate the data and set ``kind``.
    """

    cartan: tuple[tuple[Rational, ...], ...]
    exponents: Mapping[tuple[int, int], float]
    kind: Kind
    name: str | None = None
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    # (j, c_ij) for each neighbour j of i; drives the firing move
    weighted_neighbors: tuple[tuple[tuple[int, Rational], ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.cartan)
        nbrs = tuple(tuple(j for j in range(n) if j != i and self.cartan[i][j] != 0) for i in range(n))
        object.__setattr__(self, "neighbors", nbrs)
        object.__setattr__(
            self,
            "weighted_neighbors",
            tuple(tuple((j, self.cartan[i][j]) for j in nbrs[i]) for i in range(n)),
        )

    def __repr__(self) -> str:
        label = self.name or "custom"
        return f"CoxeterGraph({label}, kind={self.kind.value}, rank={self.rank})"

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def vertices(self) -> range:
        return range(self.rank)

    def exponent(self, i: int, j: int) -> float:
        if i == j:
            return 1
        return self.exponents[(min(i, j), max(i, j))]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in self.vertices for j in self.neighbors[i] if i < j]

    @property
    def is_simply_laced(self) -> bool:
        return self.kind in (Kind.SIMPLY_LACED_DYNKIN, Kind.SIMPLY_LACED_EXTENDED_DYNKIN)

    @cached_property
    def coxeter_type(self) -> CoxeterType:
        if _is_finite_type(self):
            return CoxeterType.FINITE
        if _positive_kernel_vector(self.cartan) is not None:
            return CoxeterType.AFFINE
        return CoxeterType.INDEFINITE

    @cached_property
    def delta(self) -> tuple[int, ...] | None:
        """Primitive positive integer vector spanning ``ker C``; ``None`` unless affine."""
        if self.coxeter_type is not CoxeterType.AFFINE:
            return None
        return _positive_kernel_vector(self.cartan)

    def odd_symmetry(self) -> bool:
        """True iff ``c_ij == c_ji`` on every edge with odd finite exponent."""
        for (i, j), n in self.exponents.items():
            if n != INF and n % 2 == 1 and self.cartan[i][j] != self.cartan[j][i]:
                return False
        return True

    def extending_vertices(self) -> frozenset[int]:
        if self.kind is not Kind.SIMPLY_LACED_EXTENDED_DYNKIN:
            raise ValueError(f"extending vertices need an extended Dynkin graph, got {self.kind.value}")
        return frozenset(i for i, d in enumerate(self.delta) if d == 1)

    def subgraph(self, vertices) -> "CoxeterGraph":
        """Induced subgraph on ``vertices`` (relabelled in increasing order), revalidated."""
        vs = sorted(set(vertices))
        if not vs:
            raise ValueError("empty subgraph")
        pos = {v: k for k, v in enumerate(vs)}
        cartan = [[self.cartan[a][b] for b in vs] for a in vs]
        exps = {(pos[a], pos[b]): n for (a, b), n in self.exponents.items() if a in pos and b in pos}
        return build_general(cartan, exps)

    def connected_subsets(self, proper: bool = True) -> list[frozenset[int]]:
        """All nonempty vertex sets inducing connected subgraphs."""
        found: set[frozenset[int]] = set()
        frontier = [frozenset([i]) for i in self.vertices]
        found.update(frontier)
        while frontier:
            nxt = []
            for s in frontier:
                for a in s:
                    for b in self.neighbors[a]:
                        if b not in s:
                            t = s | {b}
                            if t not in found:
                                found.add(t)
                                nxt.append(t)
            frontier = nxt
        full = frozenset(self.vertices)
        return sorted((s for s in found if not (proper and s == full)), key=lambda s: (len(s), sorted(s)))

    @cached_property
    def dynkin_label(self) -> str | None:
        """Type label such as ``"D4"`` or ``"E~6"`` for simply-laced (extended) Dynkin graphs."""
        if self.kind is Kind.SIMPLY_LACED_DYNKIN:
            return _finite_label(self)
        if self.kind is Kind.SIMPLY_LACED_EXTENDED_DYNKIN:
            i0 = min(self.extending_vertices())
            sub = self.subgraph([v for v in self.vertices if v != i0])
            return sub.dynkin_label[0] + "~" + sub.dynkin_label[1:]
        return None


# --------------------------------------------------------------------------
# validation


def _is_connected(n: int, adj: Sequence[Sequence[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == n


def _parse_exponent(n) -> float:
    if isinstance(n, str):
        if n.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INF
        n = int(n)
    if isinstance(n, bool) or not (isinstance(n, int) or n == INF):
        raise ValidationError(f"Coxeter exponent must be an integer or infinity, got {n!r}")
    return n


def build_general(cartan, exponents: Mapping | None = None, name: str | None = None) -> CoxeterGraph:
    """Validate Cartan data and return a :class:`CoxeterGraph`.

    ``exponents`` maps unordered pairs ``(i, j)`` (tuples or ``"i,j"`` strings)
    to ``n_ij``; missing pairs are inferred from ``c_ij * c_ji``.
    """
    rows = [list(r) for r in cartan]
    n = len(rows)
    if n == 0:
        raise ValidationError("empty Cartan matrix")
    if any(len(r) != n for r in rows):
        raise ValidationError("Cartan matrix must be square")
    c = tuple(tuple(as_rational(x) for x in r) for r in rows)

    given: dict[tuple[int, int], float] = {}
    for key, val in (exponents or {}).items():
        if isinstance(key, str):
            a, b = (int(t) for t in key.split(","))
        else:
            a, b = key
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValidationError("bad vertex pair in exponents", (a, b))
        given[(min(a, b), max(a, b))] = _parse_exponent(val)

    for i in range(n):
        if c[i][i] != 2:
            raise ValidationError(f"diagonal entry c_{i}{i} must be 2, got {c[i][i]}", (i, i))
    exps: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            a, b = c[i][j], c[j][i]
            if (a == 0) != (b == 0):
                raise ValidationError("c_ij = 0 must hold iff c_ji = 0", (i, j))
            if a > 0 or b > 0:
                raise ValidationError("off-diagonal Cartan entries must be nonpositive", (i, j))
            prod = a * b
            if prod in _PRODUCT_TO_EXPONENT:
                inferred = _PRODUCT_TO_EXPONENT[prod]
            elif prod >= 4:
                inferred = INF
            else:
                raise ValidationError(
                    f"c_ij*c_ji = {prod} is not 4cos^2(pi/n) for n in {{2,3,4,6}} and is below 4", (i, j)
                )
            if (i, j) in given:
                m = given[(i, j)]
                if m != INF and m not in _EXPONENT_TO_PRODUCT:
                    raise ValidationError(
                        f"n_ij = {m} unsupported: only 2, 3, 4, 6 and infinity give rational Cartan data", (i, j)
                    )
                if m != inferred:
                    raise ValidationError(f"n_ij = {m} inconsistent with c_ij*c_ji = {prod}", (i, j))
            exps[(i, j)] = inferred

    adj = [[j for j in range(n) if j != i and c[i][j] != 0] for i in range(n)]
    if not _is_connected(n, adj):
        raise ValidationError("graph is disconnected")

    offdiag = {c[i][j] for i in range(n) for j in range(n) if i != j}
    graph = CoxeterGraph(c, exps, Kind.GENERAL_RATIONAL, name)
    if offdiag <= {0, -1}:
        ctype = graph.coxeter_type
        if ctype is CoxeterType.FINITE:
            kind = Kind.SIMPLY_LACED_DYNKIN
        elif ctype is CoxeterType.AFFINE:
            kind = Kind.SIMPLY_LACED_EXTENDED_DYNKIN
        else:
            kind = Kind.GENERAL_CRYSTALLOGRAPHIC
    elif all(isinstance(x, int) for r in c for x in r):
        kind = Kind.GENERAL_CRYSTALLOGRAPHIC
    else:
        kind = Kind.GENERAL_RATIONAL
    object.__setattr__(graph, "kind", kind)
    if name is None and kind in (Kind.SIMPLY_LACED_DYNKIN, Kind.SIMPLY_LACED_EXTENDED_DYNKIN):
        object.__setattr__(graph, "name", graph.dynkin_label)
    return graph


# --------------------------------------------------------------------------
# exact linear algebra (sympy rationals behind a small surface)


def _sympy_matrix(rows):
    import sympy

    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                          for x in r] for r in rows])


def _positive_kernel_vector(cartan) -> tuple[int, ...] | None:
    """Primitive integer vector ``d > 0`` with ``C d = 0`` when the kernel is 1-dimensional."""
    ker = _sympy_matrix(cartan).nullspace()
    if len(ker) != 1:
        return None
    vec = [Fraction(int(x.p), int(x.q)) for x in ker[0]]
    if all(x < 0 for x in vec):
        vec = [-x for x in vec]
    if not all(x > 0 for x in vec):
        return None
    lcm = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * lcm) for x in vec]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def _is_finite_type(graph: CoxeterGraph) -> bool:
    # finite Coxeter graphs are trees; a tree's Cartan matrix is symmetrizable
    n = graph.rank
    if len(graph.edges()) != n - 1:
        return False
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in graph.neighbors[i]:
            if d[j] is None:
                d[j] = d[i] * Fraction(graph.cartan[i][j]) / Fraction(graph.cartan[j][i])
                stack.append(j)
    sym = [[d[i] * Fraction(graph.cartan[i][j]) for j in range(n)] for i in range(n)]
    return bool(_sympy_matrix(sym).is_positive_definite)


def _finite_label(graph: CoxeterGraph) -> str:
    n = graph.rank
    degs = [len(graph.neighbors[i]) for i in graph.vertices]
    branch = [i for i in graph.vertices if degs[i] == 3]
    if not branch:
        return f"A{n}"
    (b,) = branch
    arms = []
    for start in graph.neighbors[b]:
        length, prev, cur = 1, b, start
        while degs[cur] == 2:
            prev, cur = cur, next(x for x in graph.neighbors[cur] if x != prev)
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    return f"E{n}"


# --------------------------------------------------------------------------
# named families


def _simply_laced(n: int, edges) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        c[a][b] = c[b][a] = -1
    return c


def _e_edges(n: int, shift: int = 0) -> list[tuple[int, int]]:
    # Bourbaki: 1-3-4-5-...-n with 2 attached to 4; vertex k sits at index k-1+shift
    bourbaki = [(1, 3), (2, 4)] + [(k, k + 1) for k in range(3, n)]
    return [(a - 1 + shift, b - 1 + shift) for a, b in bourbaki]


_FAMILY_RE = re.compile(r"^\s*([ADE])\s*(~?)\s*(\d+)\s*$", re.IGNORECASE)


def parse_family(label: str) -> tuple[str, int]:
    """Split ``"D~4"`` into ``("D~", 4)``."""
    m = _FAMILY_RE.match(label)
    if m is None:
        raise ValueError(f"unrecognised family label {label!r}; expected e.g. A3, D~4, E~8")
    return m.group(1).upper() + m.group(2), int(m.group(3))


def build_family(name: str, rank: int | None = None) -> CoxeterGraph:
    """Construct a simply-laced (extended) Dynkin graph.

    Vertex order: ``A``: path; ``D_n``: leaves 0, 1, long arm 2..n-2, branch
    node last; ``E_n``: Bourbaki order (index k-1 for Bourbaki k); ``A~_n``:
    cycle 0..n; ``D~_n``: exterior vertices 0..3, interior chain 4..n with 0, 1
    on vertex 4 and 2, 3 on vertex n; ``E~_n``: extending vertex 0, then
    Bourbaki order (index k for Bourbaki k).
    """
    if rank is None:
        name, rank = parse_family(name)
    name = name.upper().replace(" ", "")
    if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
        raise ValueError(f"rank must be a positive integer, got {rank!r}")
    if name == "A":
        c = _simply_laced(rank, [(k, k + 1) for k in range(rank - 1)])
    elif name == "D":
        if rank < 4:
            raise ValueError("D_n needs rank >= 4")
        node = rank - 1
        edges = [(0, node), (1, node), (rank - 2, node)] + [(k, k + 1) for k in range(2, rank - 2)]
        c = _simply_laced(rank, edges)
    elif name == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E_n needs rank 6, 7 or 8")
        c = _simply_laced(rank, _e_edges(rank))
    elif name == "A~":
        if rank < 2:
            raise ValueError("A~_n needs rank >= 2 (A~_1 is a double bond; use build_general)")
        c = _simply_laced(rank + 1, [(k, (k + 1) % (rank + 1)) for k in range(rank + 1)])
    elif name == "D~":
        if rank < 4:
            raise ValueError("D~_n needs rank >= 4")
        a, b = 4, rank
        edges = [(0, a), (1, a), (2, b), (3, b)] + [(k, k + 1) for k in range(4, rank)]
        c = _simply_laced(rank + 1, edges)
    elif name == "E~":
        if rank not in (6, 7, 8):
            raise ValueError("E~_n needs rank 6, 7 or 8")
        attach = {6: 2, 7: 1, 8: 8}[rank]
        c = _simply_laced(rank + 1, _e_edges(rank, shift=1) + [(0, attach)])
    else:
        raise ValueError(f"unknown family {name!r}; expected one of A, D, E, A~, D~, E~")
    label = f"{name}{rank}"
    graph = build_general(c, name=label)
    expected = Kind.SIMPLY_LACED_EXTENDED_DYNKIN if name.endswith("~") else Kind.SIMPLY_LACED_DYNKIN
    assert graph.kind is expected, (label, graph.kind)
    return graph


def graph_from_json(data: Mapping) -> CoxeterGraph:
    """Build a graph from the JSON file schema.

    ``{"family": "D~", "rank": 4}`` or ``{"cartan": [["2", "-1"], ...], "coxeter": {"0,1": 3}}``.
    """
    if "family" in data:
        rank = data.get("rank")
        if rank is None:
            return build_family(data["family"])
        return build_family(data["family"], rank)
    if "cartan" in data:
        return build_general(data["cartan"], data.get("coxeter") or {})
    raise ValueError("graph JSON needs either 'family' or 'cartan'")


def graph_to_json(graph: CoxeterGraph) -> dict:
    def enc(x):
        return x if isinstance(x, int) else str(x)

    return {
        "cartan": [[enc(x) for x in row] for row in graph.cartan],
        "coxeter": {f"{i},{j}": ("inf" if n == INF else n) for (i, j), n in sorted(graph.exponents.items())},
    }
