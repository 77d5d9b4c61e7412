"""Graph families: addition graphs, products, inverses, channels and joins."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import GraphError, HypothesisNotMet
from .graph import LayeredGraph, VertexId, VertexSet, bits

Element = Union[int, tuple[int, ...]]


@dataclass(frozen=True)
class AbelianGroup:
    """Either the cyclic group Z_n or the free abelian group Z^rank."""

    kind: str
    order: int = 0
    rank: int = 0

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        if n < 2:
            raise GraphError(f"cyclic group order must be >= 2, got {n}")
        return cls("cyclic", order=n)

    @classmethod
    def free(cls, rank: int) -> "AbelianGroup":
        if rank < 1:
            raise GraphError(f"free group rank must be >= 1, got {rank}")
        return cls("free", rank=rank)

    def reduce(self, x) -> Element:
        if self.kind == "cyclic":
            return int(x) % self.order
        x = tuple(int(c) for c in x)
        if len(x) != self.rank:
            raise GraphError(f"element {x} does not have length {self.rank}")
        return x

    def add(self, x: Element, y: Element) -> Element:
        if self.kind == "cyclic":
            return (x + y) % self.order
        return tuple(a + b for a, b in zip(x, y))

    def zero(self) -> Element:
        return 0 if self.kind == "cyclic" else (0,) * self.rank

    def generator(self, j: int) -> tuple[int, ...]:
        return tuple(1 if t == j else 0 for t in range(self.rank))

    def elements(self) -> list[int]:
        if self.kind != "cyclic":
            raise GraphError("only a cyclic group can be enumerated")
        return list(range(self.order))

    def format(self, x: Element) -> str:
        if self.kind == "cyclic":
            return str(x)
        return "(" + ",".join(str(c) for c in x) + ")"


@dataclass(frozen=True)
class GroupSet:
    group: AbelianGroup
    elements: tuple

    def __init__(self, group: AbelianGroup, elements: Iterable):
        reduced = sorted({group.reduce(x) for x in elements})
        if not reduced:
            raise GraphError("group sets must be nonempty")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", tuple(reduced))

    def __len__(self) -> int:
        return len(self.elements)


def addition_graph(a: GroupSet, b: GroupSet, h: int) -> LayeredGraph:
    """Layers A + iB; an edge x -> y whenever y - x lies in B."""
    if a.group != b.group:
        raise GraphError(f"sets live in different groups: {a.group} and {b.group}")
    if h < 1:
        raise GraphError(f"level must be >= 1, got {h}")
    group = a.group
    layers = [list(a.elements)]
    edges = []
    for _ in range(h):
        current = layers[-1]
        nxt = sorted({group.add(x, y) for x in current for y in b.elements})
        where = {x: j for j, x in enumerate(nxt)}
        edges.append([(u, where[group.add(x, y)]) for u, x in enumerate(current) for y in b.elements])
        layers.append(nxt)
    labels = [[group.format(x) for x in layer] for layer in layers]
    return LayeredGraph([len(x) for x in layers], edges, labels)


def independent_addition_graph(n: int, h: int) -> LayeredGraph:
    """Addition graph of {0} and the n free generators."""
    if n < 1:
        raise GraphError(f"number of generators must be >= 1, got {n}")
    group = AbelianGroup.free(n)
    return addition_graph(
        GroupSet(group, [group.zero()]), GroupSet(group, [group.generator(j) for j in range(n)]), h
    )


def cartesian_product(g: LayeredGraph, k: LayeredGraph) -> LayeredGraph:
    """Layer i is V_i(g) x V_i(k); vertex (u, x) has index u * |V_i(k)| + x."""
    if g.level != k.level:
        raise GraphError(f"levels differ: {g.level} and {k.level}")
    sizes = [a * b for a, b in zip(g.layer_sizes, k.layer_sizes)]
    edges = []
    for i in range(g.level):
        m0, m1 = k.layer_sizes[i], k.layer_sizes[i + 1]
        ke = k.edges(i)
        edges.append([(u * m0 + x, v * m1 + y) for u, v in g.edges(i) for x, y in ke])
    labels = [
        [f"({g.label(VertexId(i, u))},{k.label(VertexId(i, x))})" for u in range(g.layer_sizes[i]) for x in range(k.layer_sizes[i])]
        for i in range(g.level + 1)
    ]
    return LayeredGraph(sizes, [sorted(e) for e in edges], labels)


def inverse_graph(g: LayeredGraph) -> LayeredGraph:
    """Reverse the layer order and every edge."""
    h = g.level
    sizes = list(reversed(g.layer_sizes))
    edges = []
    for j in range(h):
        i = h - 1 - j
        edges.append(sorted((v, u) for u, v in g.edges(i)))
    labels = list(reversed(g.labels)) if g.labels is not None else None
    return LayeredGraph(sizes, edges, labels)


def channel_vertices(g: LayeredGraph, x: VertexSet, y: VertexSet) -> list[int]:
    """Per layer from ``x.layer`` to ``y.layer``, the bitmask of vertices on an x-to-y path."""
    g.check_set(x)
    g.check_set(y)
    if x.layer >= y.layer:
        raise GraphError(f"channel needs x.layer < y.layer, got {x.layer} and {y.layer}")
    fwd = [x.mask]
    for i in range(x.layer, y.layer):
        fwd.append(g.step_mask(i, fwd[-1]))
    bwd = [y.mask]
    for i in range(y.layer, x.layer, -1):
        bwd.append(g.step_mask(i, bwd[-1], forward=False))
    bwd.reverse()
    return [f & b for f, b in zip(fwd, bwd)]


def subgraph(g: LayeredGraph, first_layer: int, masks: list[int]) -> LayeredGraph:
    """Induced subgraph on the given per-layer vertex masks, starting at ``first_layer``."""
    keep = [bits(m) for m in masks]
    if any(not k for k in keep):
        raise GraphError("empty channel")
    where = [{old: new for new, old in enumerate(k)} for k in keep]
    edges = []
    for t in range(len(keep) - 1):
        i = first_layer + t
        block = []
        for u in keep[t]:
            for v in bits(g.succ_mask(i, u) & masks[t + 1]):
                block.append((where[t][u], where[t + 1][v]))
        edges.append(sorted(block))
    labels = [[g.label(VertexId(first_layer + t, u)) for u in k] for t, k in enumerate(keep)]
    return LayeredGraph([len(k) for k in keep], edges, labels)


def channel(g: LayeredGraph, x: VertexSet, y: VertexSet) -> LayeredGraph:
    """Subgraph formed by all directed paths that start in x and end in y."""
    return subgraph(g, x.layer, channel_vertices(g, x, y))


def join_construction(g: LayeredGraph, r: LayeredGraph) -> LayeredGraph:
    """Disjoint union of ``g`` and ``r`` plus every edge from V_i(g) to U_{i+1}(r).

    In the result, layer i lists the vertices of g first, then those of r.
    Preconditions (level 2, r an R_1, g commutative with D_i(g) >= 1) are
    checked with the verifiers before building.
    """
    from .magnification import magnification_table
    from .matching import verify_plunnecke_conditions, verify_regular

    if g.level != 2 or r.level != 2:
        raise HypothesisNotMet(f"join needs two level-2 graphs, got levels {g.level} and {r.level}")
    if verify_regular(r) != 1:
        raise HypothesisNotMet("second graph is not regular of ratio 1")
    for name, graph in (("first", g), ("second", r)):
        if not verify_plunnecke_conditions(graph).ok:
            raise HypothesisNotMet(f"{name} graph is not commutative")
    table = magnification_table(g)
    low = {i: d for i, d in table.items() if d < 1}
    if low:
        raise HypothesisNotMet(f"first graph has magnification ratios below one: {low}")

    gs, rs = g.layer_sizes, r.layer_sizes
    sizes = [a + b for a, b in zip(gs, rs)]
    edges = []
    for i in range(2):
        block = list(g.edges(i))
        block += [(gs[i] + u, gs[i + 1] + v) for u, v in r.edges(i)]
        block += [(u, gs[i + 1] + v) for u in range(gs[i]) for v in range(rs[i + 1])]
        edges.append(sorted(block))
    labels = [
        [f"G:{g.label(VertexId(i, u))}" for u in range(gs[i])] + [f"R:{r.label(VertexId(i, u))}" for u in range(rs[i])]
        for i in range(3)
    ]
    return LayeredGraph(sizes, edges, labels)
