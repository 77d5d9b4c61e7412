"""Acceptance criteria, one test per criterion; the terminal summary prints PASS/FAIL lines."""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

from oracles import brute_magnification, exhaustive_min_cut, hall_violated, nx_disjoint_paths
from pluennecke import io
from pluennecke.corpus import standard_corpus
from pluennecke.errors import CapExceeded
from pluennecke.graph import LayeredGraph, VertexId, bits, path_graph
from pluennecke.inverse import c1_characterization_check, check_sharpness, inverse_theorem_certificate
from pluennecke.magnification import (
    count_vertex_disjoint_max_paths,
    delta,
    growth_bound_check,
    is_separating,
    magnification_ratio,
    magnification_table,
    min_weight_separating_set,
    plunnecke_inequality_check,
    pull_down,
    verify_level2_partition_identity,
    verify_level2_prime_identity,
)
from pluennecke.matching import verify_degree_monotonicity, verify_plunnecke_conditions, verify_regular
from pluennecke.constructors import independent_addition_graph, join_construction
from pluennecke.regular import build_rc, build_rk, build_theta_r1

CORPUS = standard_corpus()


def criterion_test(number):
    def mark(fn):
        fn.criterion_number = number
        return fn

    return mark


@criterion_test(1)
def test_theta_maps(criterion):
    start = time.perf_counter()
    for k in (2, 3, 4):
        g, theta = build_theta_r1(k, 1)
        theta.validate()
        n = theta.modulus
        residues = theta.residues(0)
        assert len(residues) == 2 * k
        # each theta(b) lies in im^-1(b): b - o is a generator
        for v in range(n):
            for b, targets in theta.residues(v).items():
                top = (v + b) % n
                assert all(g.has_edge(VertexId(0, t), VertexId(1, top)) for t in targets)
        union = set().union(*residues.values())
        assert sum(len(r) for r in residues.values()) == len(union) == 2 * k * k
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    criterion(1, f"theta maps k=2,3,4 valid, {elapsed:.3f}s")


@criterion_test(2)
def test_regular_construction(criterion):
    start = time.perf_counter()
    g = build_rk(2, 3)
    assert g.layer_sizes == (16, 32, 64, 128)
    assert verify_plunnecke_conditions(g).ok
    assert verify_regular(g) == 2
    table = magnification_table(g)
    assert table == {1: 2, 2: 4, 3: 8}
    # independent subset walk for the same values
    assert [brute_magnification(g, i)[0] for i in (1, 2, 3)] == [2, 4, 8]
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    g3 = build_rk(3, 2)
    assert g3.layer_sizes == (6, 18, 54)
    assert magnification_table(g3) == {1: 3, 2: 9}
    criterion(2, f"R_2 level 3 D=(2,4,8), R_3 level 2 D=(3,9), {elapsed:.1f}s")


@criterion_test(3)
def test_inequality_over_corpus(criterion):
    start = time.perf_counter()
    checked = 0
    for entry in CORPUS:
        report = plunnecke_inequality_check(entry.graph)
        assert report.holds, entry.name
        checked += 1
    big = build_rc(3, 2, 2)
    report = plunnecke_inequality_check(big, method="flow")
    assert report.holds and report.table == {1: Fraction(3, 2), 2: Fraction(9, 4)}
    checked += 1
    elapsed = time.perf_counter() - start
    assert checked >= 30 and elapsed < 300
    criterion(3, f"{checked} commutative graphs, 0 failures, {elapsed:.1f}s")


@criterion_test(4)
def test_sharp_rc(criterion):
    for p, q in ((1, 2), (2, 1)):
        g = build_rc(p, q, 2)
        c = Fraction(p, q)
        assert magnification_table(g) == {1: c, 2: c**2}
    g = build_rc(3, 2, 2)
    assert g.layer_sizes == (96, 144, 216)
    table = {i: magnification_ratio(g, i, method="flow").value for i in (1, 2)}
    assert table == {1: Fraction(3, 2), 2: Fraction(9, 4)}
    criterion(4, "R_{1/2}, R_2, R_{3/2} at level 2 give D_i = C^i")


@criterion_test(5)
def test_min_weight_separating_sets(criterion):
    rational = crossed = 0
    for entry in CORPUS:
        g = entry.graph
        d = delta(g, magnification_table(g))
        if d is None:
            continue
        rational += 1
        s = min_weight_separating_set(g, d)
        assert s.weight == g.layer_sizes[0], entry.name
        oracle = exhaustive_min_cut(g, d)
        if oracle is not None:
            crossed += 1
            assert oracle == s.weight, entry.name
    assert rational >= 20 and crossed >= 5
    criterion(5, f"{rational} graphs with rational delta, {crossed} cross-checked exhaustively")


@criterion_test(6)
def test_pull_down(criterion):
    count = 0
    for entry in CORPUS:
        g = entry.graph
        d = delta(g, magnification_table(g))
        if d is None:
            continue
        s = min_weight_separating_set(g, d, side="sink")
        out = pull_down(g, s)
        assert set(out.nonempty_layers()) <= {0, g.level}
        assert out.weight == s.weight
        assert is_separating(g, out.masks())
        count += 1
    criterion(6, f"pull-down on {count} graphs, weight preserved, result in V_0 and V_h")


@criterion_test(7)
def test_level2_identities(criterion):
    met = 0
    for entry in CORPUS:
        g = entry.graph
        if g.level != 2:
            continue
        table = magnification_table(g)
        cs = {table[1]}
        d = delta(g, table)
        if d is not None:
            cs.add(d)
        for c in cs:
            try:
                part = verify_level2_partition_identity(g, c)
                prime = verify_level2_prime_identity(g, c)
            except CapExceeded:
                continue
            if part.hypotheses_ok:
                met += 1
                assert part.identity_ok, (entry.name, c)
            if prime.hypotheses_ok:
                met += 1
                assert prime.identity_ok, (entry.name, c)
    assert met >= 10
    criterion(7, f"{met} level-2 identity instances with hypotheses met, all exact")


@criterion_test(8)
def test_growth_bound(criterion):
    count = 0
    for entry in CORPUS:
        g = entry.graph
        if g.layer_sizes[0] != 1:
            continue
        report = growth_bound_check(g)
        assert report.holds, entry.name
        n = g.layer_sizes[1]
        assert all(s <= comb(n + i - 1, i) for i, s in enumerate(g.layer_sizes))
        count += 1
    report = growth_bound_check(independent_addition_graph(3, 3))
    assert report.attained and report.sizes == (1, 3, 6, 10)
    criterion(8, f"{count} single-source graphs within bound; independent n=3 h=3 attains it")


@criterion_test(9)
def test_disjoint_paths(criterion):
    count = 0
    for entry in CORPUS:
        g = entry.graph
        if magnification_table(g)[g.level] < 1:
            continue
        paths = count_vertex_disjoint_max_paths(g)
        assert paths == g.layer_sizes[0], entry.name
        if g.vertex_count() <= 400:
            assert nx_disjoint_paths(g) == paths
        count += 1
    criterion(9, f"{count} graphs with D_h >= 1 carry |V_0| disjoint paths")


@criterion_test(10)
def test_inverse_theorem(criterion):
    start = time.perf_counter()
    names = []
    for entry in CORPUS:
        g = entry.graph
        if g.level >= 2 and check_sharpness(g) is not None:
            cert = inverse_theorem_certificate(g)
            assert cert.verdict, entry.name
            names.append(entry.name)
    required = {
        "rc 1/2": build_rc(1, 2, 2),
        "rk 2": build_rk(2, 2),
        "path": path_graph(3),
        "join": join_construction(path_graph(2), path_graph(2)),
    }
    for label, g in required.items():
        cert = inverse_theorem_certificate(g)
        assert cert.verdict, label
    assert inverse_theorem_certificate(build_rc(1, 2, 2)).c == Fraction(1, 2)
    agree = 0
    for entry in CORPUS:
        g = entry.graph
        if g.level < 2:
            continue
        assert c1_characterization_check(g).agree, entry.name
        agree += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 120
    criterion(10, f"{len(names)} sharp corpus graphs certified, C=1 characterization on {agree}, {elapsed:.1f}s")


def _mutate(g: LayeredGraph, rng: random.Random) -> LayeredGraph:
    edges = [list(g.edges(i)) for i in range(g.level)]
    i = rng.randrange(g.level)
    present = set(edges[i])
    if rng.random() < 0.5 and len(present) > 1:
        edges[i].remove(rng.choice(edges[i]))
    else:
        absent = [(u, v) for u in range(g.layer_sizes[i]) for v in range(g.layer_sizes[i + 1]) if (u, v) not in present]
        if absent:
            edges[i].append(rng.choice(absent))
        else:
            edges[i].remove(rng.choice(edges[i]))
    return LayeredGraph(g.layer_sizes, edges)


@criterion_test(11)
def test_verifier_soundness(criterion):
    rng = random.Random(20241016)
    pool = [e.graph for e in CORPUS if e.graph.vertex_count() <= 200]
    failing = witnesses = monotone_failures = 0
    for _ in range(100):
        g = _mutate(rng.choice(pool), rng)
        report = verify_plunnecke_conditions(g)
        if not report.ok:
            failing += 1
            for f in report.failures:
                view = f.view(g)
                s = f.violator
                assert s.members and s.members <= view.left.members
                assert len(view.neighborhood(s)) < len(s)
                if len(view.left) <= 12:
                    nbrs = {x: set(bits(view.neighbor_mask(x))) for x in view.left.members}
                    assert hall_violated(nbrs)
                witnesses += 1
        if not verify_degree_monotonicity(g).ok:
            monotone_failures += 1
            assert not report.ok
    assert failing > 0 and monotone_failures > 0
    criterion(
        11,
        f"100 mutations: {failing} non-commutative, {witnesses} witnesses revalidated, "
        f"{monotone_failures} monotonicity failures all flagged",
    )


def _cli(args, cwd):
    env = dict(os.environ, PYTHONHASHSEED=str(random.randrange(1 << 30)))
    proc = subprocess.run(
        [sys.executable, "-m", "pluennecke.cli", *args], capture_output=True, cwd=cwd, env=env
    )
    return proc.returncode, proc.stdout, proc.stderr


@criterion_test(12)
def test_determinism(criterion, tmp_path):
    rk = tmp_path / "rk.g"
    ind = tmp_path / "ind.g"
    rc = tmp_path / "rc.g"
    io.save(build_rk(2, 2), str(rk), "rk k=2 level=2")
    io.save(independent_addition_graph(2, 2), str(ind), "independent n=2 level=2")
    io.save(build_rc(1, 2, 2), str(rc), "rc p=1 q=2 level=2")
    path = tmp_path / "path.g"
    io.save(path_graph(2), str(path), "path level=2")
    commands = [
        ["build", "rk", "--k", "2", "--level", "2"],
        ["build", "independent", "--n", "3", "--level", "3"],
        ["build", "addition", "--modulus", "6", "--a", "0,1,2,3,4,5", "--b", "0,1,3", "--level", "2"],
        ["build", "rc", "--p", "1", "--q", "2", "--level", "2"],
        ["build", "product", str(ind), str(rk)],
        ["build", "inverse", str(ind)],
        ["build", "channel", str(ind), "--from", "0", "--to-layer", "2", "--to", "0,1"],
        ["build", "join", str(ind), str(path)],
        ["verify", "plunnecke", str(rk)],
        ["verify", "regular", str(ind)],
        ["verify", "monotone", str(rc)],
        ["compute", "magnification", str(rc), "--i", "2"],
        ["compute", "magnification", str(rc), "--i", "2", "--method", "flow"],
        ["compute", "inequality", str(ind)],
        ["compute", "sepset", str(rk), "--c", "2"],
        ["compute", "pulldown", str(rc), "--c", "1/2"],
        ["compute", "disjoint-paths", str(rk)],
        ["compute", "growth", str(ind)],
        ["certify", str(rc)],
        ["certify", str(ind)],
        ["export", "dot", str(ind)],
        ["export", "adjacency-text", str(rk)],
        ["compute", "inequality", str(rk), "--format", "text"],
    ]
    for args in commands:
        first = _cli(args, tmp_path)
        second = _cli(args, tmp_path)
        assert first[1] or first[2], args
        assert first == second, args
    criterion(12, f"{len(commands)} commands byte-identical across two runs")
