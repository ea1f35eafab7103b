from __future__ import annotations

from fractions import Fraction as F

import pytest

from cutoffgame.coxeter import (
    CoxeterType,
    Kind,
    ValidationError,
    build_family,
    build_general,
    graph_from_json,
    graph_to_json,
    parse_family,
)

DYNKIN = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8"]
EXTENDED = ["A~2", "A~3", "A~4", "D~4", "D~5", "D~6", "E~6", "E~7", "E~8"]


def test_a2_data():
    g = build_family("A", 2)
    assert g.cartan == ((2, -1), (-1, 2))
    assert g.kind is Kind.SIMPLY_LACED_DYNKIN


def test_d4_is_a_star():
    g = build_family("D", 4)
    degrees = sorted(len(g.neighbors[i]) for i in g.vertices)
    assert degrees == [1, 1, 1, 3]
    assert g.neighbors[3] == (0, 1, 2)


def test_affine_a2_is_a_triangle():
    g = build_family("A~", 2)
    assert g.rank == 3
    assert all(len(g.neighbors[i]) == 2 for i in g.vertices)
    assert g.kind is Kind.SIMPLY_LACED_EXTENDED_DYNKIN


@pytest.mark.parametrize("label", DYNKIN + EXTENDED)
def test_family_roundtrip_through_general(label):
    g = build_family(label)
    h = build_general(g.cartan)
    assert h.kind is g.kind
    assert h.dynkin_label == g.dynkin_label == label
    assert g.odd_symmetry()
    assert all(g.cartan[i][j] == -1 for i, j in g.edges())


@pytest.mark.parametrize("label", EXTENDED)
def test_deleting_an_extending_vertex_leaves_dynkin(label):
    g = build_family(label)
    fam, n = parse_family(label)
    for i in g.extending_vertices():
        sub = g.subgraph([k for k in g.vertices if k != i])
        assert sub.kind is Kind.SIMPLY_LACED_DYNKIN
        assert sub.dynkin_label == f"{fam[0]}{n}"


@pytest.mark.parametrize(
    "label, delta",
    [
        ("A~2", (1, 1, 1)),
        ("D~4", (1, 1, 1, 1, 2)),
        ("D~6", (1, 1, 1, 1, 2, 2, 2)),
        ("E~6", (1, 1, 2, 2, 3, 2, 1)),
        ("E~7", (1, 2, 2, 3, 4, 3, 2, 1)),
        ("E~8", (1, 2, 3, 4, 6, 5, 4, 3, 2)),
    ],
)
def test_delta(label, delta):
    g = build_family(label)
    assert g.delta == delta
    assert all(sum(c * d for c, d in zip(row, delta)) == 0 for row in g.cartan)


def test_extending_vertices():
    assert build_family("A~2").extending_vertices() == {0, 1, 2}
    assert build_family("D~4").extending_vertices() == {0, 1, 2, 3}
    assert build_family("E~8").extending_vertices() == {0}
    assert len(build_family("E~7").extending_vertices()) == 2
    assert len(build_family("E~6").extending_vertices()) == 3
    with pytest.raises(ValueError):
        build_family("A3").extending_vertices()


@pytest.mark.parametrize("name, rank", [("D", 3), ("E", 5), ("E", 9), ("A~", 1), ("A", 0), ("Q", 3), ("D~", 3)])
def test_invalid_rank_or_family(name, rank):
    with pytest.raises(ValueError):
        build_family(name, rank)


def test_general_accepts_asymmetric_rank_two(asym):
    assert asym.kind is Kind.GENERAL_RATIONAL
    assert asym.exponent(0, 1) == 3
    assert not asym.odd_symmetry()
    assert asym.coxeter_type is CoxeterType.FINITE


def test_general_rejects_inconsistent_exponent():
    with pytest.raises(ValidationError) as err:
        build_general([[2, -1], [-1, 2]], {(0, 1): 4})
    assert err.value.pair == (0, 1)
    assert "pair 0,1" in str(err.value)


def test_general_infinite_bond():
    g = build_general([[2, -2], [-2, 2]], {"0,1": "inf"})
    assert g.kind is Kind.GENERAL_CRYSTALLOGRAPHIC
    assert g.coxeter_type is CoxeterType.AFFINE
    assert g.delta == (1, 1)


def test_b2_odd_symmetry_vacuous():
    g = build_general([[2, -1], [-2, 2]], {(0, 1): 4})
    assert g.odd_symmetry()
    assert g.kind is Kind.GENERAL_CRYSTALLOGRAPHIC


@pytest.mark.parametrize(
    "cartan, fragment",
    [
        ([[2, -1], [0, 2]], "= 0"),
        ([[1, -1], [-1, 2]], "diagonal"),
        ([[2, 1], [1, 2]], "nonpositive"),
        ([[2, F(-1, 2)], [F(-1, 2), 2]], "is below 4"),
        ([[2, 0], [0, 2]], "connected"),
        ([[2, -1, 0], [-1, 2]], "square"),
    ],
)
def test_general_validation_errors(cartan, fragment):
    with pytest.raises(ValidationError, match=fragment):
        build_general(cartan)


def test_odd_exponent_five_rejected():
    with pytest.raises(ValidationError):
        build_general([[2, -1], [-1, 2]], {(0, 1): 5})


def test_float_cartan_rejected():
    with pytest.raises(TypeError):
        build_general([[2.0, -1], [-1, 2]])


def test_json_roundtrip(asym):
    data = graph_to_json(asym)
    assert data["cartan"][1][0] == "-1/2"
    back = graph_from_json(data)
    assert back.cartan == asym.cartan
    assert back.exponents == asym.exponents
    assert graph_from_json({"family": "D~", "rank": 4}).dynkin_label == "D~4"
    assert graph_from_json({"family": "E7"}).rank == 7


def test_connected_subsets_of_a3():
    g = build_family("A3")
    subs = sorted(tuple(sorted(s)) for s in g.connected_subsets(proper=True))
    assert subs == [(0,), (0, 1), (1,), (1, 2), (2,)]
