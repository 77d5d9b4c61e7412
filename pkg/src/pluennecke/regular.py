"""Regular commutative graphs of every rational ratio.

The building block is the addition graph of B = {0, 1, ..., k-1, k, 2k, ..., k^2}
over Z_{2k^2}: a ratio-1 regular graph that carries an explicit one-to-k
matching (the theta map) from the image of any bottom vertex back onto the
bottom layer. Taking products with it and adding a completely joined bottom
layer extends a ratio-k regular graph by one level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructors import AbelianGroup, GroupSet, addition_graph, cartesian_product, inverse_graph
from .errors import CapExceeded, GraphError, HypothesisNotMet
from .graph import LayeredGraph, path_graph
from .matching import regularity

DEFAULT_SIZE_BUDGET = 10**6


def theta_generators(k: int) -> list[int]:
    return list(range(k)) + [m * k for m in range(1, k + 1)]


@dataclass(frozen=True)
class ThetaMap:
    """For each b in B, the k offsets o such that v + o is matched to v + b."""

    k: int
    offsets: dict[int, tuple[int, ...]]

    @property
    def modulus(self) -> int:
        return 2 * self.k * self.k

    def residues(self, v: int = 0) -> dict[int, frozenset[int]]:
        n = self.modulus
        return {b: frozenset((v + o) % n for o in offs) for b, offs in self.offsets.items()}

    def validate(self) -> None:
        """Raise GraphError on the first offset that breaks adjacency or disjointness."""
        n = self.modulus
        gens = {b % n for b in theta_generators(self.k)}
        seen: dict[int, int] = {}
        for b, offs in self.offsets.items():
            if len(offs) != self.k:
                raise GraphError(f"theta({b}) has {len(offs)} elements, expected {self.k}")
            for o in offs:
                if (b - o) % n not in gens:
                    raise GraphError(f"theta({b}) contains offset {o}, but {b} - {o} is not in B")
                r = o % n
                if r in seen:
                    raise GraphError(f"theta({seen[r]}) and theta({b}) share the residue {r}")
                seen[r] = b


def theta_map(k: int) -> ThetaMap:
    if k < 2:
        raise GraphError(f"theta map needs k >= 2, got {k}")
    offsets = {0: tuple(-t for t in range(k))}
    for j in range(1, k):
        offsets[j] = (j,) + tuple(j - m * k for m in range(2, k + 1))
    offsets[k] = (k,) + tuple(-m * k for m in range(1, k))
    for m in range(2, k + 1):
        offsets[m * k] = tuple(m * k - t for t in range(k))
    return ThetaMap(k, offsets)


def build_theta_r1(k: int, h: int) -> tuple[LayeredGraph, ThetaMap]:
    """The ratio-1 addition graph over Z_{2k^2} and its validated theta map."""
    theta = theta_map(k)
    theta.validate()
    group = AbelianGroup.cyclic(theta.modulus)
    g = addition_graph(GroupSet(group, group.elements()), GroupSet(group, theta_generators(k)), h)
    return g, theta


def star(k: int) -> LayeredGraph:
    """Level-1 graph: one bottom vertex joined to k top vertices."""
    return LayeredGraph([1, k], [[(0, v) for v in range(k)]])


def _completely_joined(g: LayeredGraph) -> bool:
    full = g.full_mask(1)
    return all(g.succ_mask(0, u) == full for u in range(g.layer_sizes[0]))


def extend_level(g: LayeredGraph, k: int) -> LayeredGraph:
    """One more level: g x (theta graph), plus 2dk new bottom vertices joined to its whole bottom.

    ``g`` must be regular of ratio k with its first layer completely joined
    to its second; then d = |V_0| is its in-degree.
    """
    report = regularity(g)
    if report.ratio != k:
        raise HypothesisNotMet(f"graph is not regular of ratio {k} (found {report.ratio})")
    if not _completely_joined(g):
        raise HypothesisNotMet("first layer is not completely joined to the second")
    d = g.layer_sizes[0]
    r1, _ = build_theta_r1(k, g.level)
    prod = cartesian_product(g, r1)
    bottom = 2 * d * k
    top = prod.layer_sizes[0]
    sizes = [bottom, *prod.layer_sizes]
    edges = [[(u, v) for u in range(bottom) for v in range(top)]]
    edges += [prod.edges(i) for i in range(prod.level)]
    labels = [[f"b{u}" for u in range(bottom)]] + [list(layer) for layer in prod.labels]
    return LayeredGraph(sizes, edges, labels)


def predicted_rk_sizes(k: int, h: int) -> list[int]:
    if k == 1:
        return [1] * (h + 1)
    sizes, d = [1, k], 1
    for _ in range(h - 1):
        bottom = 2 * d * k
        sizes = [bottom] + [s * 2 * k * k for s in sizes]
        d = bottom
    return sizes


def _check_budget(sizes: list[int], budget: int, what: str) -> None:
    if sum(sizes) > budget:
        raise CapExceeded(
            f"{what} would have layer sizes {sizes} ({sum(sizes)} vertices), over the budget of {budget}"
        )


def build_rk(k: int, h: int, budget: int = DEFAULT_SIZE_BUDGET) -> LayeredGraph:
    """Regular commutative graph of integer ratio k and level h."""
    if k < 1 or h < 1:
        raise GraphError(f"build_rk needs k, h >= 1, got k={k}, h={h}")
    _check_budget(predicted_rk_sizes(k, h), budget, f"R_{k} of level {h}")
    if k == 1:
        return path_graph(h)
    g = star(k)
    for _ in range(h - 1):
        g = extend_level(g, k)
    return g


def build_rc(p: int, q: int, h: int, budget: int = DEFAULT_SIZE_BUDGET) -> LayeredGraph:
    """Regular commutative graph of ratio p/q: R_p times the inverse of R_q."""
    if p < 1 or q < 1:
        raise GraphError(f"build_rc needs p, q >= 1, got p={p}, q={q}")
    sp, sq = predicted_rk_sizes(p, h), predicted_rk_sizes(q, h)
    sizes = [a * b for a, b in zip(sp, reversed(sq))]
    _check_budget(sizes, budget, f"R_{p}/{q} of level {h}")
    return cartesian_product(build_rk(p, h, budget), inverse_graph(build_rk(q, h, budget)))

