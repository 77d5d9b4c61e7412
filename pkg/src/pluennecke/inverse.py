"""Sharpness detection and certificates for graphs with D_i = C^i for every i."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .constructors import channel, channel_vertices
from .errors import CapExceeded, HypothesisNotMet
from .graph import LayeredGraph, VertexSet, bits, live_masks, popcount
from .magnification import DEFAULT_SUBSET_CAP, count_vertex_disjoint_max_paths, magnification_table
from .matching import verify_regular
from .ratio import format_ratio


@dataclass(frozen=True)
class SharpnessResult:
    ratio: Fraction | None
    table: dict[int, Fraction]

    @property
    def reason(self) -> str | None:
        """Why the graph is not sharp, naming the first failing index."""
        if self.ratio is not None:
            return None
        d1 = self.table[1]
        for i, d in self.table.items():
            if d != d1**i:
                return (
                    f"D_{i} = {_fmt(d)} != D_1^{i} = {_fmt(d1**i)}"
                )
        return None


def _fmt(x: Fraction) -> str:
    return format_ratio(x)


def sharpness(g: LayeredGraph, cap: int = DEFAULT_SUBSET_CAP) -> SharpnessResult:
    table = magnification_table(g, cap)
    c = table[1]
    sharp = all(table[i] == c**i for i in table)
    return SharpnessResult(c if sharp else None, table)


def check_sharpness(g: LayeredGraph, cap: int = DEFAULT_SUBSET_CAP) -> Fraction | None:
    """C = D_1(g) when D_i(g) = C^i for every i, else None."""
    return sharpness(g, cap).ratio


def find_minimal_equality_set(g: LayeredGraph, c, cap: int = DEFAULT_SUBSET_CAP) -> VertexSet:
    """Smallest nonempty Z in V_0 with |im(Z)| = c|Z|, lexicographically first among ties.

    Subsets are scanned by increasing size, so the first hit is minimal.
    """
    c = Fraction(c)
    result = sharpness(g, cap)
    if result.ratio != c:
        raise HypothesisNotMet(
            f"graph is not sharp with ratio {_fmt(c)}: " + (result.reason or f"D_1 = {_fmt(result.table[1])}")
        )
    images = g.vertex_images(1)
    n = g.layer_sizes[0]
    for size in range(1, n + 1):
        for z in combinations(range(n), size):
            union = 0
            for x in z:
                union |= images[x]
            if popcount(union) == c * size:
                return VertexSet(0, z)
    raise AssertionError("D_1 is attained, so some subset must reach equality")


@dataclass(frozen=True)
class InverseCertificate:
    c: Fraction
    z: VertexSet
    channel_layers: tuple[int, ...]
    regular_ratio: Fraction | None
    verdict: bool
    layers_geometric: bool = False

    def __bool__(self) -> bool:
        return self.verdict


def inverse_theorem_certificate(g: LayeredGraph, cap: int = DEFAULT_SUBSET_CAP) -> InverseCertificate:
    """Locate the minimal equality set Z and certify its channel is regular of ratio C.

    Regularity is recomputed on the extracted channel; nothing is inferred.
    The argument needs level >= 2: a level-1 graph is always sharp, and its
    minimal equality set can have a non-regular channel, in which case the
    verdict is false.
    """
    result = sharpness(g, cap)
    if result.ratio is None:
        raise HypothesisNotMet("hypothesis not met: " + (result.reason or "not sharp"))
    c = result.ratio
    z = find_minimal_equality_set(g, c, cap)
    h = channel(g, z, g.layer(g.level))
    sizes = h.layer_sizes
    geometric = all(sizes[i] == c**i * sizes[0] for i in range(len(sizes)))
    ratio = verify_regular(h)
    return InverseCertificate(c, z, tuple(sizes), ratio, geometric and ratio == c, geometric)


@dataclass(frozen=True)
class C1Characterization:
    all_ratios_one: bool
    disjoint_paths: int
    bottom_size: int
    r1_channel: VertexSet | None

    @property
    def right_side(self) -> bool:
        return self.disjoint_paths == self.bottom_size and self.r1_channel is not None

    @property
    def agree(self) -> bool:
        return self.all_ratios_one == self.right_side

    def __bool__(self) -> bool:
        return self.agree


def find_r1_channel(g: LayeredGraph, cap: int = DEFAULT_SUBSET_CAP) -> VertexSet | None:
    """Some nonempty Z in V_0 whose channel is regular of ratio 1, searched by increasing |Z|.

    Only vertices on maximum-length paths can contribute to a channel, and a
    ratio-1 regular channel has all layers of equal size, which prunes most
    candidates before the regularity check.
    """
    live = live_masks(g)
    candidates = bits(live[0])
    if len(candidates) > cap:
        raise CapExceeded(f"{len(candidates)} bottom vertices exceed the subset cap of {cap}")
    top = g.layer(g.level)
    images = g.vertex_images(1)
    for size in range(1, len(candidates) + 1):
        for z in combinations(candidates, size):
            # the channel's second layer is im(Z) restricted to live vertices
            union = 0
            for x in z:
                union |= images[x]
            if popcount(union & live[1]) != size:
                continue
            zs = VertexSet(0, z)
            masks = channel_vertices(g, zs, top)
            if any(popcount(m) != size for m in masks):
                continue
            if verify_regular(channel(g, zs, top)) == 1:
                return zs
    return None


def c1_characterization_check(g: LayeredGraph, cap: int = DEFAULT_SUBSET_CAP) -> C1Characterization:
    """Evaluate both sides of: all D_i = 1 iff |V_0| disjoint maximum paths and some R_1 channel.

    The sides are computed independently. They agree on commutative graphs of
    level >= 2; at level 1 they can disagree.
    """
    table = magnification_table(g, cap)
    paths = count_vertex_disjoint_max_paths(g)
    # the right side is a conjunction, so the channel search is skipped once it is lost
    r1 = find_r1_channel(g, cap) if paths == g.layer_sizes[0] else None
    return C1Characterization(all(d == 1 for d in table.values()), paths, g.layer_sizes[0], r1)
