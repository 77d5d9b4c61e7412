"""Layered directed graphs and the image/preimage machinery built on them.

Vertices are addressed by ``(layer, index)`` with dense indices per layer.
Vertex sets inside one layer are also handled as Python ``int`` bitmasks
(bit ``j`` set means vertex ``j`` of that layer is present); the helpers
ending in ``_mask`` work on that representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphError


@dataclass(frozen=True, order=True)
class VertexId:
    layer: int
    index: int

    def __str__(self) -> str:
        return f"L{self.layer}_{self.index}"


@dataclass(frozen=True)
class VertexSet:
    """A subset of a single layer."""

    layer: int
    members: frozenset[int]

    def __init__(self, layer: int, members: Iterable[int] = ()):
        object.__setattr__(self, "layer", int(layer))
        object.__setattr__(self, "members", frozenset(int(m) for m in members))

    @classmethod
    def from_mask(cls, layer: int, mask: int) -> "VertexSet":
        return cls(layer, bits(mask))

    @property
    def mask(self) -> int:
        out = 0
        for m in self.members:
            out |= 1 << m
        return out

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, index: object) -> bool:
        return index in self.members

    def __repr__(self) -> str:
        return f"VertexSet(layer={self.layer}, members={self.sorted()})"


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class LayeredGraph:
    """Immutable directed graph whose edges join consecutive layers only.

    ``edges[i]`` lists the pairs ``(u, v)`` with ``u`` in layer ``i`` and
    ``v`` in layer ``i + 1``. Adjacency is kept in both directions, as
    sorted tuples and as bitmasks.
    """

    __slots__ = ("_sizes", "_succ", "_pred", "_succ_mask", "_pred_mask", "_labels", "_hash")

    def __init__(
        self,
        layer_sizes: Sequence[int],
        edges: Sequence[Iterable[tuple[int, int]]],
        labels: Sequence[Sequence[str]] | None = None,
    ):
        sizes = tuple(int(s) for s in layer_sizes)
        if len(sizes) < 2:
            raise GraphError("a layered graph needs at least two layers (level >= 1)")
        if any(s <= 0 for s in sizes):
            raise GraphError(f"empty layer in layer sizes {list(sizes)}")
        if len(edges) != len(sizes) - 1:
            raise GraphError(
                f"expected {len(sizes) - 1} edge blocks for level {len(sizes) - 1}, got {len(edges)}"
            )
        succ: list[list[list[int]]] = [[[] for _ in range(s)] for s in sizes]
        pred: list[list[list[int]]] = [[[] for _ in range(s)] for s in sizes]
        for i, block in enumerate(edges):
            seen = set()
            for u, v in block:
                u, v = int(u), int(v)
                if not (0 <= u < sizes[i]) or not (0 <= v < sizes[i + 1]):
                    raise GraphError(
                        f"edge ({u}, {v}) between layers {i} and {i + 1} out of bounds "
                        f"(sizes {sizes[i]} and {sizes[i + 1]})"
                    )
                if (u, v) in seen:
                    raise GraphError(f"duplicate edge ({u}, {v}) between layers {i} and {i + 1}")
                seen.add((u, v))
                succ[i][u].append(v)
                pred[i + 1][v].append(u)
        self._sizes = sizes
        self._succ = tuple(tuple(tuple(sorted(a)) for a in layer) for layer in succ)
        self._pred = tuple(tuple(tuple(sorted(a)) for a in layer) for layer in pred)
        self._succ_mask = tuple(tuple(_mask_of(a) for a in layer) for layer in self._succ)
        self._pred_mask = tuple(tuple(_mask_of(a) for a in layer) for layer in self._pred)
        if labels is not None:
            if len(labels) != len(sizes) or any(len(lab) != s for lab, s in zip(labels, sizes)):
                raise GraphError("labels must provide one string per vertex in every layer")
            self._labels = tuple(tuple(str(x) for x in lab) for lab in labels)
        else:
            self._labels = None
        self._hash = None

    # -- shape ---------------------------------------------------------

    @property
    def level(self) -> int:
        return len(self._sizes) - 1

    h = level

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return self._sizes

    @property
    def labels(self) -> tuple[tuple[str, ...], ...] | None:
        return self._labels

    def label(self, v: VertexId) -> str:
        if self._labels is None:
            return str(v)
        return self._labels[v.layer][v.index]

    def vertex_count(self) -> int:
        return sum(self._sizes)

    def edge_count(self, i: int | None = None) -> int:
        if i is None:
            return sum(self.edge_count(j) for j in range(self.level))
        return sum(len(a) for a in self._succ[i])

    def edges(self, i: int) -> list[tuple[int, int]]:
        """Edges between layers ``i`` and ``i + 1`` sorted by ``(u, v)``."""
        return [(u, v) for u, out in enumerate(self._succ[i]) for v in out]

    def all_edges(self) -> list[tuple[VertexId, VertexId]]:
        return [
            (VertexId(i, u), VertexId(i + 1, v)) for i in range(self.level) for u, v in self.edges(i)
        ]

    def layer(self, i: int) -> VertexSet:
        self._check_layer(i)
        return VertexSet(i, range(self._sizes[i]))

    def full_mask(self, i: int) -> int:
        return (1 << self._sizes[i]) - 1

    # -- adjacency -----------------------------------------------------

    def successors(self, v: VertexId) -> tuple[int, ...]:
        self.check_vertex(v)
        if v.layer == self.level:
            return ()
        return self._succ[v.layer][v.index]

    def predecessors(self, v: VertexId) -> tuple[int, ...]:
        self.check_vertex(v)
        return self._pred[v.layer][v.index]

    def succ_mask(self, layer: int, index: int) -> int:
        if layer == self.level:
            return 0
        return self._succ_mask[layer][index]

    def pred_mask(self, layer: int, index: int) -> int:
        return self._pred_mask[layer][index]

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        if v.layer != u.layer + 1:
            return False
        return bool(self.succ_mask(u.layer, u.index) >> v.index & 1)

    def step_mask(self, layer: int, mask: int, forward: bool = True) -> int:
        """One-step image (or preimage) of a bitmask living in ``layer``."""
        table = self._succ_mask[layer] if forward else self._pred_mask[layer]
        out = 0
        while mask:
            low = mask & -mask
            out |= table[low.bit_length() - 1]
            mask ^= low
        return out

    def image_mask(self, layer: int, mask: int, steps: int) -> int:
        forward = steps > 0
        for t in range(abs(steps)):
            here = layer + t if forward else layer - t
            mask = self.step_mask(here, mask, forward)
        return mask

    def vertex_images(self, i: int, source_layer: int = 0) -> list[int]:
        """Bitmask image in layer ``source_layer + i`` of every single vertex of ``source_layer``."""
        return [
            self.image_mask(source_layer, 1 << z, i) for z in range(self._sizes[source_layer])
        ]

    # -- validation ----------------------------------------------------

    def _check_layer(self, i: int) -> None:
        if not 0 <= i <= self.level:
            raise GraphError(f"layer {i} out of range [0, {self.level}]")

    def check_vertex(self, v: VertexId) -> None:
        self._check_layer(v.layer)
        if not 0 <= v.index < self._sizes[v.layer]:
            raise GraphError(
                f"vertex index {v.index} out of range [0, {self._sizes[v.layer]}) in layer {v.layer}"
            )

    def check_set(self, s: VertexSet) -> None:
        self._check_layer(s.layer)
        bad = [m for m in s.members if not 0 <= m < self._sizes[s.layer]]
        if bad:
            raise GraphError(f"vertex indices {sorted(bad)} out of range for layer {s.layer}")

    # -- identity ------------------------------------------------------

    def _key(self):
        return (self._sizes, self._succ, self._labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LayeredGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def same_structure(self, other: "LayeredGraph") -> bool:
        """Equality ignoring labels."""
        return self._sizes == other._sizes and self._succ == other._succ

    def __repr__(self) -> str:
        return f"LayeredGraph(level={self.level}, layer_sizes={list(self._sizes)}, edges={self.edge_count()})"


def _mask_of(indices: Iterable[int]) -> int:
    out = 0
    for j in indices:
        out |= 1 << j
    return out


def image(g: LayeredGraph, s: VertexSet, steps: int) -> VertexSet:
    """Vertices reachable from ``s`` by directed paths of ``|steps|`` edges.

    Negative ``steps`` walks edges backwards (the preimage).
    """
    g.check_set(s)
    target = s.layer + steps
    if not 0 <= target <= g.level:
        raise GraphError(
            f"image of layer {s.layer} by {steps} steps lands in layer {target}, "
            f"outside [0, {g.level}]"
        )
    return VertexSet.from_mask(target, g.image_mask(s.layer, s.mask, steps))


def complement(g: LayeredGraph, s: VertexSet) -> VertexSet:
    g.check_set(s)
    return VertexSet.from_mask(s.layer, g.full_mask(s.layer) & ~s.mask)


def degrees(g: LayeredGraph, v: VertexId) -> tuple[int, int]:
    """``(in_degree, out_degree)`` of ``v``."""
    return len(g.predecessors(v)), len(g.successors(v))


def forward_reach(g: LayeredGraph) -> list[int]:
    """Per layer, the vertices reachable from the bottom layer."""
    out = [g.full_mask(0)]
    for i in range(g.level):
        out.append(g.step_mask(i, out[-1]))
    return out


def backward_reach(g: LayeredGraph) -> list[int]:
    """Per layer, the vertices from which the top layer is reachable."""
    out = [g.full_mask(g.level)]
    for i in range(g.level, 0, -1):
        out.append(g.step_mask(i, out[-1], forward=False))
    return out[::-1]


def live_masks(g: LayeredGraph) -> list[int]:
    """Per layer, the vertices lying on some path from layer 0 to layer h."""
    return [f & b for f, b in zip(forward_reach(g), backward_reach(g))]


def max_length_paths_exist_through(g: LayeredGraph, v: VertexId) -> bool:
    g.check_vertex(v)
    up = g.image_mask(v.layer, 1 << v.index, g.level - v.layer)
    down = g.image_mask(v.layer, 1 << v.index, -v.layer)
    return bool(up) and bool(down)


def path_graph(level: int) -> LayeredGraph:
    """A single directed path with one vertex per layer."""
    return LayeredGraph([1] * (level + 1), [[(0, 0)] for _ in range(level)])
