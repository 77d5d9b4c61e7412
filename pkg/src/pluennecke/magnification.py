"""Magnification ratios, weighted separating sets and the pull-down procedure.

All values are exact: ratios are ``Fraction`` and weights ``c**-i`` are
scaled to integers before any flow computation.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import _backend
from ._pure import _better
from .errors import CapExceeded, GraphError, HypothesisNotMet
from .flow import FlowNetwork
from .graph import LayeredGraph, VertexSet, bits, live_masks, popcount
from .ratio import rational_root

DEFAULT_SUBSET_CAP = 24
LEVEL2_CAP = 20


@dataclass(frozen=True)
class MagnificationReport:
    i: int
    value: Fraction
    witness: VertexSet
    witness_minimal: bool = True


def min_ratio_over_subsets(
    masks: list[int], width: int, cap: int = DEFAULT_SUBSET_CAP, threads: int = 1
) -> tuple[int, int, int]:
    """Exhaustive minimum of |union of masks over Z| / |Z| over nonempty Z.

    Returns ``(image size, |Z|, Z as bitmask)`` with ties broken towards
    smaller |Z|, then the lexicographically smallest index list. With
    ``threads > 1`` the search is split on the highest indices and the
    partial minima are reduced with the same ordering.
    """
    n = len(masks)
    if n > cap:
        raise CapExceeded(
            f"exhaustive search over {n} vertices exceeds the subset cap of {cap}; "
            "raise the cap explicitly to proceed"
        )
    split = 0
    while threads > 1 and (1 << split) < threads and split < n - 1:
        split += 1
    if split == 0:
        return _backend.min_ratio_subset(masks, width)
    free = n - split
    jobs = [prefix << free for prefix in range(1 << split)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda fx: _backend.min_ratio_subset(masks, width, fx, free), jobs))
    best = (0, 0, 0)
    for part in parts:
        if part[1] and _better(*part, *best):
            best = part
    return best


def magnification_ratio(
    g: LayeredGraph,
    i: int,
    cap: int = DEFAULT_SUBSET_CAP,
    method: str = "enumerate",
    threads: int = 1,
) -> MagnificationReport:
    """D_i(g) = min over nonempty Z in V_0 of |im^(i)(Z)| / |Z|.

    ``method="enumerate"`` walks all 2^|V_0| - 1 subsets (bounded by
    ``cap``) and returns the canonical witness. ``method="flow"`` solves the
    same minimum exactly through a parametric min-cut, for bottoms beyond the
    cap; its witness attains the minimum but is not necessarily the
    smallest such set.
    """
    if not 1 <= i <= g.level:
        raise GraphError(f"magnification index {i} outside [1, {g.level}]")
    masks = g.vertex_images(i)
    if method == "enumerate":
        cnt, card, mask = min_ratio_over_subsets(masks, g.layer_sizes[i], cap, threads)
        return MagnificationReport(i, Fraction(cnt, card), VertexSet.from_mask(0, mask), True)
    if method == "flow":
        value, mask = _min_ratio_by_flow(masks, g.layer_sizes[i])
        return MagnificationReport(i, value, VertexSet.from_mask(0, mask), False)
    raise ValueError(f"unknown method {method!r}")


def _min_ratio_by_flow(masks: list[int], width: int) -> tuple[Fraction, int]:
    # Dinkelbach iteration: min_Z b|N(Z)| - a|Z| is a project-selection min cut.
    n = len(masks)
    z_mask = (1 << n) - 1
    union = 0
    for m in masks:
        union |= m
    ratio = Fraction(popcount(union), n)
    while True:
        a, b = ratio.numerator, ratio.denominator
        net = FlowNetwork(n + width + 2)
        s, t = n + width, n + width + 1
        inf = a * n + b * width + 1
        for z, m in enumerate(masks):
            net.add_edge(s, z, a)
            for y in bits(m):
                net.add_edge(z, n + y, inf)
        for y in range(width):
            net.add_edge(n + y, t, b)
        value = net.max_flow(s, t) - a * n
        if value >= 0:
            return ratio, z_mask
        side = net.residual_reachable(s)
        z_mask = sum(1 << z for z in range(n) if side[z])
        image = 0
        for z in bits(z_mask):
            image |= masks[z]
        ratio = Fraction(popcount(image), popcount(z_mask))


def magnification_table(
    g: LayeredGraph, cap: int = DEFAULT_SUBSET_CAP, method: str = "enumerate", threads: int = 1
) -> dict[int, Fraction]:
    return {
        i: magnification_ratio(g, i, cap, method, threads).value for i in range(1, g.level + 1)
    }


def delta(g: LayeredGraph, table: dict[int, Fraction] | None = None, cap: int = DEFAULT_SUBSET_CAP):
    """D_h(g)^(1/h) when rational, else None."""
    if table is None:
        table = {g.level: magnification_ratio(g, g.level, cap).value}
    return rational_root(table[g.level], g.level)


@dataclass(frozen=True)
class InequalityReport:
    holds: bool
    table: dict[int, Fraction]
    failures: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def plunnecke_inequality_check(
    g: LayeredGraph,
    cap: int = DEFAULT_SUBSET_CAP,
    threads: int = 1,
    assume_commutative: bool = False,
    method: str = "enumerate",
) -> InequalityReport:
    """Check D_i^h >= D_h^i for every i, in exact arithmetic."""
    if not assume_commutative:
        from .matching import verify_plunnecke_conditions

        if not verify_plunnecke_conditions(g).ok:
            raise HypothesisNotMet("graph is not commutative; the inequality does not apply")
    table = magnification_table(g, cap, method, threads)
    h = g.level
    failures = tuple(i for i in range(1, h + 1) if table[i] ** h < table[h] ** i)
    return InequalityReport(not failures, table, failures)


# -- separating sets ---------------------------------------------------


@dataclass(frozen=True)
class SeparatingSet:
    """One vertex set per layer; weight uses w(v) = weight_base**-i on layer i."""

    members: tuple[VertexSet, ...]
    weight: Fraction
    weight_base: Fraction

    def layer(self, i: int) -> VertexSet:
        return self.members[i]

    def masks(self) -> list[int]:
        return [m.mask for m in self.members]

    def nonempty_layers(self) -> list[int]:
        return [i for i, m in enumerate(self.members) if m.members]

    def size(self) -> int:
        return sum(len(m) for m in self.members)


def weight_of(masks: list[int], c: Fraction) -> Fraction:
    c = Fraction(c)
    return sum((Fraction(popcount(m)) / c**i for i, m in enumerate(masks)), Fraction(0))


def make_separating_set(g: LayeredGraph, layers: dict[int, object], c) -> SeparatingSet:
    """Build a SeparatingSet from ``{layer: indices}``; the separating property is not assumed."""
    c = Fraction(c)
    sets = []
    for i in range(g.level + 1):
        s = VertexSet(i, layers.get(i, ()))
        g.check_set(s)
        sets.append(s)
    return SeparatingSet(tuple(sets), weight_of([s.mask for s in sets], c), c)


def is_separating(g: LayeredGraph, masks: list[int]) -> bool:
    """True when every path from layer 0 to layer h meets the given sets."""
    reach = g.full_mask(0) & ~masks[0]
    for i in range(g.level):
        reach = g.step_mask(i, reach) & ~masks[i + 1]
    return reach == 0


def duality_self_test(g: LayeredGraph, trials: int = 32, seed: int = 0) -> bool:
    """Check on random nonempty Z in V_0 and random i that (V_0 minus Z) with im^(i)(Z) separates."""
    rng = random.Random(seed)
    n = g.layer_sizes[0]
    for _ in range(trials):
        z = rng.randrange(1, 1 << n) if n < 64 else (rng.getrandbits(n) or 1)
        i = rng.randint(1, g.level)
        masks = [0] * (g.level + 1)
        masks[0] = g.full_mask(0) & ~z
        masks[i] |= g.image_mask(0, z, i)
        if not is_separating(g, masks):
            return False
    return True


def _scaled_weights(h: int, c: Fraction) -> tuple[list[int], int]:
    # c**-i * p**h == q**i * p**(h-i) for c = p/q
    p, q = c.numerator, c.denominator
    return [q**i * p ** (h - i) for i in range(h + 1)], p**h


def min_weight_separating_set(g: LayeredGraph, c, side: str = "source") -> SeparatingSet:
    """Minimum-weight vertex set meeting every maximum-length path.

    Solved as a vertex-capacitated min cut on the vertices that lie on some
    maximum-length path. ``side`` picks the cut closest to the source
    (bottom) or to the sink (top) when several are optimal.
    """
    c = Fraction(c)
    if c <= 0:
        raise GraphError(f"weight base must be positive, got {c}")
    if side not in ("source", "sink"):
        raise ValueError(f"side must be 'source' or 'sink', got {side!r}")
    h = g.level
    live = live_masks(g)
    empty = tuple(VertexSet(i) for i in range(h + 1))
    if not live[0]:
        return SeparatingSet(empty, Fraction(0), c)
    weights, scale = _scaled_weights(h, c)
    node = {}
    for i in range(h + 1):
        for x in bits(live[i]):
            node[(i, x)] = len(node)
    n = len(node)
    s, t = 2 * n, 2 * n + 1
    inf = sum(weights[i] * popcount(live[i]) for i in range(h + 1)) + 1
    net = FlowNetwork(2 * n + 2)
    for (i, x), k in node.items():
        net.add_edge(2 * k, 2 * k + 1, weights[i])
        if i == 0:
            net.add_edge(s, 2 * k, inf)
        if i == h:
            net.add_edge(2 * k + 1, t, inf)
        if i < h:
            for y in bits(g.succ_mask(i, x) & live[i + 1]):
                net.add_edge(2 * k + 1, 2 * node[(i + 1, y)], inf)
    flow = net.max_flow(s, t)
    if side == "source":
        reach = net.residual_reachable(s)
        cut = {key for key, k in node.items() if reach[2 * k] and not reach[2 * k + 1]}
    else:
        coreach = net.residual_coreachable(t)
        cut = {key for key, k in node.items() if coreach[2 * k + 1] and not coreach[2 * k]}
    masks = [0] * (h + 1)
    for i, x in cut:
        masks[i] |= 1 << x
    weight = weight_of(masks, c)
    if weight != Fraction(flow, scale):
        raise AssertionError(f"cut weight {weight} disagrees with flow value {Fraction(flow, scale)}")
    return SeparatingSet(tuple(VertexSet.from_mask(i, m) for i, m in enumerate(masks)), weight, c)


@dataclass(frozen=True)
class PullDownStep:
    layer: int
    lower: VertexSet
    middle: VertexSet


def pull_down(g: LayeredGraph, s: SeparatingSet, trace: list | None = None) -> SeparatingSet:
    """Move a minimum-weight separating set into V_0 and V_h without changing its weight.

    Repeatedly take the highest layer j < h with S_j nonempty. U_0 is the
    part of V_{j-1} reachable from V_0 along vertices outside S, U_2 the
    part of V_{j+1} that still leads to V_h outside S_h; the middle layer of
    the channel between them is S_j, which is replaced by U_0.
    """
    c = s.weight_base
    masks = s.masks()
    if len(masks) != g.level + 1:
        raise GraphError("separating set has the wrong number of layers")
    if not is_separating(g, masks):
        raise HypothesisNotMet("input is not a separating set")
    if weight_of(masks, c) != s.weight:
        raise HypothesisNotMet("stated weight does not match the members")
    optimum = min_weight_separating_set(g, c).weight
    if s.weight != optimum:
        raise HypothesisNotMet(
            f"input weight {s.weight} is not minimal (minimum is {optimum}); pull-down needs a minimum"
        )
    h = g.level
    while True:
        below_top = [i for i in range(h) if masks[i]]
        if not below_top or below_top[-1] == 0:
            break
        j = below_top[-1]
        lower = g.full_mask(0) & ~masks[0]
        for i in range(j - 1):
            lower = g.step_mask(i, lower) & ~masks[i + 1]
        upper = g.full_mask(h) & ~masks[h]
        for i in range(h, j + 1, -1):
            upper = g.step_mask(i, upper, forward=False)
        middle = g.step_mask(j - 1, lower) & g.step_mask(j + 1, upper, forward=False)
        if middle != masks[j]:
            raise HypothesisNotMet(
                f"layer {j} of the separating set is not the middle of its channel; input not minimal"
            )
        if Fraction(popcount(lower)) / c ** (j - 1) != Fraction(popcount(middle)) / c**j:
            raise HypothesisNotMet(
                f"pull-down at layer {j} would change the weight; the graph is not commutative"
            )
        if trace is not None:
            trace.append(PullDownStep(j, VertexSet.from_mask(j - 1, lower), VertexSet.from_mask(j, middle)))
        masks[j] = 0
        masks[j - 1] |= lower
        if not is_separating(g, masks):
            raise AssertionError(f"pull-down at layer {j} produced a non-separating set")
    out = SeparatingSet(tuple(VertexSet.from_mask(i, m) for i, m in enumerate(masks)), weight_of(masks, c), c)
    if out.weight != s.weight:
        raise AssertionError("pull-down changed the weight")
    return out


# -- level-2 identities ------------------------------------------------


@dataclass(frozen=True)
class Level2Report:
    c: Fraction
    hypotheses_ok: bool
    failed_hypothesis: str | None = None
    violator: VertexSet | None = None
    in_table: dict[int, tuple[int, int]] = field(default_factory=dict)
    out_table: dict[int, tuple[int, int]] = field(default_factory=dict)
    identity_ok: bool | None = None

    def __bool__(self) -> bool:
        return bool(self.identity_ok)


def _check_level2(g: LayeredGraph, cap: int) -> None:
    if g.level != 2:
        raise GraphError(f"level-2 identity needs a level-2 graph, got level {g.level}")
    if g.layer_sizes[1] > cap:
        raise CapExceeded(f"middle layer has {g.layer_sizes[1]} vertices, cap is {cap}")


def _middle_min_ratio(g: LayeredGraph, forward: bool) -> tuple[Fraction, VertexSet]:
    n1 = g.layer_sizes[1]
    if forward:
        masks, width = [g.succ_mask(1, x) for x in range(n1)], g.layer_sizes[2]
    else:
        masks, width = [g.pred_mask(1, x) for x in range(n1)], g.layer_sizes[0]
    cnt, card, mask = _backend.min_ratio_subset(masks, width)
    return Fraction(cnt, card), VertexSet.from_mask(1, mask)


def _degree_classes(g: LayeredGraph, layer: int, incoming: bool) -> dict[int, int]:
    out: dict[int, int] = {}
    for x in range(g.layer_sizes[layer]):
        d = popcount(g.pred_mask(layer, x) if incoming else g.succ_mask(layer, x))
        if d:
            out[d] = out.get(d, 0) + 1
    return out


def verify_level2_partition_identity(g: LayeredGraph, c, cap: int = LEVEL2_CAP) -> Level2Report:
    """Given |im(S)| >= c|S| and |im^-1(S)| >= |S|/c on the middle layer, check
    c|X_i| = |Y_i| (in-degree classes of U_1, U_2) and |X'_i|/c = |Y'_i|
    (out-degree classes of U_1, U_0)."""
    c = Fraction(c)
    _check_level2(g, cap)
    fwd, fwd_set = _middle_min_ratio(g, True)
    if fwd < c:
        return Level2Report(c, False, "forward", fwd_set)
    bwd, bwd_set = _middle_min_ratio(g, False)
    if bwd < 1 / c:
        return Level2Report(c, False, "backward", bwd_set)
    x_in, y_in = _degree_classes(g, 1, True), _degree_classes(g, 2, True)
    x_out, y_out = _degree_classes(g, 1, False), _degree_classes(g, 0, False)
    in_table = {d: (x_in.get(d, 0), y_in.get(d, 0)) for d in sorted(set(x_in) | set(y_in))}
    out_table = {d: (x_out.get(d, 0), y_out.get(d, 0)) for d in sorted(set(x_out) | set(y_out))}
    ok = all(c * x == y for x, y in in_table.values()) and all(
        x / c == y for x, y in out_table.values()
    )
    return Level2Report(c, True, None, None, in_table, out_table, ok)


def verify_level2_prime_identity(g: LayeredGraph, c, cap: int = LEVEL2_CAP) -> Level2Report:
    """Given |im^-1(S)| >= |S|/c on the middle layer and c|E(U_0,U_1)| = |E(U_1,U_2)|,
    check |U_1| = c|U_0|."""
    c = Fraction(c)
    _check_level2(g, cap)
    bwd, bwd_set = _middle_min_ratio(g, False)
    if bwd < 1 / c:
        return Level2Report(c, False, "backward", bwd_set)
    if c * g.edge_count(0) != g.edge_count(1):
        return Level2Report(c, False, "edges")
    ok = g.layer_sizes[1] == c * g.layer_sizes[0]
    return Level2Report(c, True, identity_ok=ok)


# -- paths and growth --------------------------------------------------


def count_vertex_disjoint_max_paths(g: LayeredGraph) -> int:
    """Maximum number of vertex-disjoint paths from layer 0 to layer h."""
    h = g.level
    live = live_masks(g)
    if not live[0]:
        return 0
    node = {}
    for i in range(h + 1):
        for x in bits(live[i]):
            node[(i, x)] = len(node)
    n = len(node)
    s, t = 2 * n, 2 * n + 1
    net = FlowNetwork(2 * n + 2)
    for (i, x), k in node.items():
        net.add_edge(2 * k, 2 * k + 1, 1)
        if i == 0:
            net.add_edge(s, 2 * k, 1)
        if i == h:
            net.add_edge(2 * k + 1, t, 1)
        if i < h:
            for y in bits(g.succ_mask(i, x) & live[i + 1]):
                net.add_edge(2 * k + 1, 2 * node[(i + 1, y)], 1)
    return net.max_flow(s, t)


@dataclass(frozen=True)
class GrowthReport:
    holds: bool
    attained: bool
    sizes: tuple[int, ...]
    bounds: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.holds


def growth_bound_check(g: LayeredGraph) -> GrowthReport:
    """With a single bottom vertex and n = |V_1|: |V_i| <= C(n + i - 1, i)."""
    if g.layer_sizes[0] != 1:
        raise HypothesisNotMet(f"growth bound needs |V_0| = 1, got {g.layer_sizes[0]}")
    n = g.layer_sizes[1]
    bounds = tuple(comb(n + i - 1, i) for i in range(g.level + 1))
    sizes = g.layer_sizes
    return GrowthReport(
        all(s <= b for s, b in zip(sizes, bounds)), sizes == bounds, tuple(sizes), bounds
    )
