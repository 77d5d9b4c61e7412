from fractions import Fraction

import pytest

from pluennecke.errors import CapExceeded, GraphError, HypothesisNotMet
from pluennecke.graph import VertexId, degrees, path_graph
from pluennecke.magnification import magnification_table
from pluennecke.matching import regularity, verify_plunnecke_conditions, verify_regular
from pluennecke.regular import (
    ThetaMap,
    build_rc,
    build_rk,
    build_theta_r1,
    extend_level,
    predicted_rk_sizes,
    star,
    theta_generators,
    theta_map,
)


def test_theta_k2_offsets():
    theta = theta_map(2)
    assert theta.offsets == {0: (0, -1), 1: (1, -3), 2: (2, -2), 4: (4, 3)}
    assert theta_generators(2) == [0, 1, 2, 4]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_theta_graph_shape(k):
    g, theta = build_theta_r1(k, 2)
    n = 2 * k * k
    assert g.layer_sizes == (n, n, n)
    assert all(degrees(g, VertexId(1, x)) == (2 * k, 2 * k) for x in range(n))
    covered = set().union(*theta.residues(0).values())
    assert len(covered) == 2 * k * k


@pytest.mark.parametrize("k", [2, 3, 4])
def test_theta_translation_invariant(k):
    theta = theta_map(k)
    n = theta.modulus
    for v in range(n):
        shifted = {b: frozenset((r + v) % n for r in rs) for b, rs in theta.residues(0).items()}
        assert theta.residues(v) == shifted


def test_theta_edge_seven_to_zero():
    g, _ = build_theta_r1(2, 1)
    assert g.has_edge(VertexId(0, 7), VertexId(1, 0))


def test_theta_validation_catches_drift():
    bad = ThetaMap(2, {0: (0, -1), 1: (1, -3), 2: (2, -2), 4: (4, 2)})
    with pytest.raises(GraphError):
        bad.validate()
    with pytest.raises(GraphError):
        theta_map(1)


def test_extend_level_from_star():
    g = extend_level(star(2), 2)
    assert g.layer_sizes == (4, 8, 16)
    rep = regularity(g)
    assert (rep.in_degree, rep.out_degree) == (4, 8)
    g3 = extend_level(g, 2)
    assert g3.layer_sizes == (16, 32, 64, 128)
    rep = regularity(g3)
    assert (rep.in_degree, rep.out_degree) == (16, 32)
    assert verify_plunnecke_conditions(g).ok


def test_extend_level_preconditions():
    with pytest.raises(HypothesisNotMet):
        extend_level(star(2), 3)
    g = build_rk(2, 2)
    # R_2 built above is completely joined at the bottom; its inverse is not ratio 2
    with pytest.raises(HypothesisNotMet):
        extend_level(path_graph(2), 2)
    assert extend_level(g, 2).layer_sizes[0] > g.layer_sizes[0]


def test_build_rk_examples():
    assert build_rk(1, 5).same_structure(path_graph(5))
    assert magnification_table(build_rk(1, 5)) == {i: 1 for i in range(1, 6)}
    g = build_rk(3, 2)
    assert g.layer_sizes == (6, 18, 54)
    rep = regularity(g)
    assert (rep.in_degree, rep.out_degree) == (6, 18)


@pytest.mark.parametrize("k,h", [(2, 1), (2, 2), (3, 2), (4, 2), (2, 3)])
def test_build_rk_sizes(k, h):
    g = build_rk(k, h)
    assert list(g.layer_sizes) == predicted_rk_sizes(k, h)
    assert all(g.layer_sizes[i] == k**i * g.layer_sizes[0] for i in range(h + 1))


def test_bottom_grows_with_each_extension():
    bottoms = [build_rk(2, h).layer_sizes[0] for h in (1, 2, 3)]
    assert bottoms == sorted(set(bottoms))


def test_budget():
    with pytest.raises(CapExceeded, match="layer sizes"):
        build_rk(3, 4, budget=10_000)
    with pytest.raises(CapExceeded):
        build_rc(3, 2, 3, budget=10_000)
    with pytest.raises(GraphError):
        build_rk(0, 2)


def test_build_rc_examples():
    g = build_rc(1, 2, 2)
    assert verify_regular(g) == Fraction(1, 2)
    assert magnification_table(g) == {1: Fraction(1, 2), 2: Fraction(1, 4)}
    assert build_rc(1, 1, 3).same_structure(path_graph(3))
    assert build_rc(2, 1, 2).same_structure(build_rk(2, 2))
    assert verify_plunnecke_conditions(g).ok
