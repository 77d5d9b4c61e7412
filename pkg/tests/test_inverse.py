from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from pluennecke.constructors import channel, independent_addition_graph, join_construction
from pluennecke.errors import HypothesisNotMet
from pluennecke.graph import LayeredGraph, VertexSet, path_graph, popcount
from pluennecke.inverse import (
    c1_characterization_check,
    check_sharpness,
    find_minimal_equality_set,
    find_r1_channel,
    inverse_theorem_certificate,
)
from pluennecke.magnification import verify_level2_partition_identity
from pluennecke.matching import verify_regular
from pluennecke.regular import build_rc, build_rk, build_theta_r1
from strategies import addition_graphs


def join_example():
    r1, _ = build_theta_r1(2, 2)
    return join_construction(independent_addition_graph(2, 2), r1)


def brute_minimal_equality(g, c):
    images = g.vertex_images(1)
    n = g.layer_sizes[0]
    for size in range(1, n + 1):
        for z in combinations(range(n), size):
            union = 0
            for x in z:
                union |= images[x]
            if popcount(union) == c * size:
                return list(z)


def test_sharpness_examples():
    assert check_sharpness(build_rc(1, 2, 2)) == Fraction(1, 2)
    assert check_sharpness(build_rc(2, 1, 2)) == 2
    assert check_sharpness(independent_addition_graph(2, 2)) is None
    assert check_sharpness(path_graph(3)) == 1


def test_minimal_equality_set():
    g = build_rk(2, 2)
    z = find_minimal_equality_set(g, 2)
    assert z.sorted() == brute_minimal_equality(g, 2)
    j = join_example()
    z = find_minimal_equality_set(j, 1)
    g_bottom = independent_addition_graph(2, 2).layer_sizes[0]
    assert min(z) >= g_bottom
    assert find_minimal_equality_set(path_graph(2), 1) == VertexSet(0, [0])
    with pytest.raises(HypothesisNotMet):
        find_minimal_equality_set(independent_addition_graph(2, 2), 2)
    with pytest.raises(HypothesisNotMet):
        find_minimal_equality_set(g, 3)


@pytest.mark.parametrize(
    "make,ratio",
    [(lambda: build_rc(1, 2, 2), Fraction(1, 2)), (join_example, 1), (lambda: path_graph(3), 1), (lambda: build_rk(2, 2), 2)],
)
def test_certificates(make, ratio):
    g = make()
    cert = inverse_theorem_certificate(g)
    assert cert.verdict and cert.c == ratio and cert.regular_ratio == ratio
    sizes = cert.channel_layers
    assert all(sizes[i] == ratio**i * sizes[0] for i in range(len(sizes)))


def test_certificate_hypothesis_message():
    with pytest.raises(HypothesisNotMet, match="D_2 = 3 != D_1\\^2 = 4"):
        inverse_theorem_certificate(independent_addition_graph(2, 2))


def test_join_channel_is_r1():
    cert = inverse_theorem_certificate(join_example())
    assert cert.regular_ratio == 1 and len(set(cert.channel_layers)) == 1


def test_c1_examples():
    res = c1_characterization_check(join_example())
    assert res.agree and res.all_ratios_one and res.right_side
    res = c1_characterization_check(build_rk(2, 2))
    assert res.agree and not res.all_ratios_one and not res.right_side
    assert find_r1_channel(build_rk(2, 2)) is None
    res = c1_characterization_check(path_graph(4))
    assert res.agree and res.all_ratios_one and res.r1_channel == VertexSet(0, [0])


def test_minimal_z_has_no_tight_proper_subset():
    for g in (build_rk(2, 2), join_example(), build_rc(1, 2, 2)):
        c = check_sharpness(g)
        z = find_minimal_equality_set(g, c)
        images = g.vertex_images(1)
        for size in range(1, len(z)):
            for s in combinations(z.sorted(), size):
                union = 0
                for x in s:
                    union |= images[x]
                assert popcount(union) > c * size


def test_level2_channels_meet_identity():
    for g in (build_rk(2, 2), build_rc(1, 2, 2), join_example()):
        cert = inverse_theorem_certificate(g)
        h = channel(g, cert.z, g.layer(g.level))
        rep = verify_level2_partition_identity(h, cert.c)
        assert rep.hypotheses_ok and rep.identity_ok


@settings(max_examples=40)
@given(addition_graphs(max_n=9, max_level=3, max_a=4, max_b=3))
def test_inverse_theorem_holds_on_sharp_addition_graphs(g):
    if g.level < 2:
        return
    c = check_sharpness(g)
    if c is not None:
        cert = inverse_theorem_certificate(g)
        assert cert.verdict and verify_regular(cert_channel(g, cert)) == c
    assert c1_characterization_check(g).agree


def cert_channel(g, cert):
    return channel(g, cert.z, g.layer(g.level))


def test_level_one_counterexamples():
    # every level-1 graph is commutative and sharp, but the channel need not be regular
    g = LayeredGraph([2, 3], [[(0, 0), (0, 1), (1, 1), (1, 2)]])
    cert = inverse_theorem_certificate(g)
    assert cert.c == Fraction(3, 2) and cert.layers_geometric and not cert.verdict
    # all ratios one with three disjoint edges, yet no subset has a regular channel
    g = LayeredGraph([3, 3], [[(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]])
    res = c1_characterization_check(g)
    assert res.all_ratios_one and res.disjoint_paths == 3 and res.r1_channel is None
    assert not res.agree
