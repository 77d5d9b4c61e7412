"""One-to-k matchings with Hall witnesses, and the commutativity verifiers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import _backend
from .errors import CapExceeded, GraphError
from .graph import LayeredGraph, VertexId, VertexSet, bits, degrees

MATCHED = "matched"
VIOLATED = "violated"


@dataclass(frozen=True)
class BipartiteView:
    """Two adjacent-layer vertex sets of a host graph, read as an undirected bipartite graph."""

    graph: LayeredGraph
    left: VertexSet
    right: VertexSet

    def __post_init__(self):
        self.graph.check_set(self.left)
        self.graph.check_set(self.right)
        if abs(self.left.layer - self.right.layer) != 1:
            raise GraphError(
                f"bipartite view needs adjacent layers, got {self.left.layer} and {self.right.layer}"
            )

    def neighbor_mask(self, x: int) -> int:
        g, layer = self.graph, self.left.layer
        if self.right.layer == layer + 1:
            nbrs = g.succ_mask(layer, x)
        else:
            nbrs = g.pred_mask(layer, x)
        return nbrs & self.right.mask

    def neighborhood(self, s) -> VertexSet:
        out = 0
        for x in s:
            out |= self.neighbor_mask(x)
        return VertexSet.from_mask(self.right.layer, out)


@dataclass(frozen=True)
class MatchingWitness:
    verdict: str
    k: int
    assignment: dict[int, tuple[int, ...]] = field(default_factory=dict)
    violator: VertexSet | None = None

    @property
    def matched(self) -> bool:
        return self.verdict == MATCHED

    def revalidate(self, view: BipartiteView) -> bool:
        """Re-check the certificate against the view's adjacency."""
        if self.matched:
            if set(self.assignment) != set(view.left.members):
                return False
            used = set()
            for x, ys in self.assignment.items():
                if len(ys) != self.k or len(set(ys)) != self.k:
                    return False
                nbrs = view.neighbor_mask(x)
                for y in ys:
                    if y in used or not nbrs >> y & 1:
                        return False
                    used.add(y)
            return True
        s = self.violator
        if s is None or not s.members or not s.members <= view.left.members:
            return False
        return len(view.neighborhood(s)) < self.k * len(s)


def one_to_k_matching(view: BipartiteView, k: int = 1) -> MatchingWitness:
    """Find k distinct partners per left vertex, or a set S with |Gamma(S)| < k|S|.

    Left vertices are replicated k times and matched with Hopcroft-Karp; on
    failure the violator is the set of left vertices reachable by alternating
    paths from an unmatched copy.
    """
    if k < 1:
        raise GraphError(f"k must be >= 1, got {k}")
    left = view.left.sorted()
    right = view.right.sorted()
    rpos = {y: j for j, y in enumerate(right)}
    base_adj = [[rpos[y] for y in bits(view.neighbor_mask(x))] for x in left]
    adj = [nbrs for nbrs in base_adj for _ in range(k)]
    match = _backend.max_matching(adj, len(right))
    if all(m >= 0 for m in match):
        assignment = {
            x: tuple(sorted(right[match[a * k + c]] for c in range(k))) for a, x in enumerate(left)
        }
        return MatchingWitness(MATCHED, k, assignment)
    match_r = [-1] * len(right)
    for a, m in enumerate(match):
        if m >= 0:
            match_r[m] = a
    seen_l = [False] * len(adj)
    seen_r = [False] * len(right)
    queue = deque()
    for a, m in enumerate(match):
        if m < 0:
            seen_l[a] = True
            queue.append(a)
    while queue:
        a = queue.popleft()
        for j in adj[a]:
            if not seen_r[j]:
                seen_r[j] = True
                b = match_r[j]
                if b >= 0 and not seen_l[b]:
                    seen_l[b] = True
                    queue.append(b)
    violator = VertexSet(view.left.layer, {left[a // k] for a in range(len(adj)) if seen_l[a]})
    return MatchingWitness(VIOLATED, k, violator=violator)


UPWARD = "upward"
DOWNWARD = "downward"


@dataclass(frozen=True)
class ConditionFailure:
    edge: tuple[VertexId, VertexId]
    direction: str
    violator: VertexSet

    def view(self, g: LayeredGraph) -> BipartiteView:
        return condition_view(g, self.edge, self.direction)


@dataclass(frozen=True)
class PlunneckeReport:
    upward_ok: bool
    downward_ok: bool
    failures: tuple[ConditionFailure, ...]

    @property
    def ok(self) -> bool:
        return self.upward_ok and self.downward_ok

    def __bool__(self) -> bool:
        return self.ok


def condition_view(g: LayeredGraph, edge: tuple[VertexId, VertexId], direction: str) -> BipartiteView:
    """The bipartite graph in which an edge's upward or downward condition asks for a matching.

    Upward at uv: match im(v) into im(u). Downward at uv: match
    im^{-1}(u) into im^{-1}(v).
    """
    u, v = edge
    if direction == UPWARD:
        return BipartiteView(
            g,
            VertexSet.from_mask(v.layer + 1, g.succ_mask(v.layer, v.index)),
            VertexSet.from_mask(v.layer, g.succ_mask(u.layer, u.index)),
        )
    return BipartiteView(
        g,
        VertexSet.from_mask(u.layer - 1, g.pred_mask(u.layer, u.index)),
        VertexSet.from_mask(u.layer, g.pred_mask(v.layer, v.index)),
    )


def verify_plunnecke_conditions(g: LayeredGraph) -> PlunneckeReport:
    """Check the upward and downward matching conditions on every edge."""
    failures = []
    up_ok = down_ok = True
    for edge in g.all_edges():
        u, v = edge
        if v.layer < g.level:
            w = one_to_k_matching(condition_view(g, edge, UPWARD), 1)
            if not w.matched:
                up_ok = False
                failures.append(ConditionFailure(edge, UPWARD, w.violator))
        if u.layer > 0:
            w = one_to_k_matching(condition_view(g, edge, DOWNWARD), 1)
            if not w.matched:
                down_ok = False
                failures.append(ConditionFailure(edge, DOWNWARD, w.violator))
    return PlunneckeReport(up_ok, down_ok, tuple(failures))


@dataclass(frozen=True)
class MonotonicityResult:
    ok: bool
    edge: tuple[VertexId, VertexId] | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_degree_monotonicity(g: LayeredGraph) -> MonotonicityResult:
    """Every edge uv must have d+(u) >= d+(v) and d-(u) <= d-(v)."""
    for u, v in g.all_edges():
        du_in, du_out = degrees(g, u)
        dv_in, dv_out = degrees(g, v)
        if du_out < dv_out or du_in > dv_in:
            return MonotonicityResult(False, (u, v))
    return MonotonicityResult(True)


@dataclass(frozen=True)
class EquivalenceCheck:
    conditions_hold: bool
    channels_monotone: bool
    witness_channel: LayeredGraph | None = None
    witness_edge: tuple[VertexId, VertexId] | None = None

    @property
    def agree(self) -> bool:
        return self.conditions_hold == self.channels_monotone

    def __bool__(self) -> bool:
        return self.agree


def channel_monotonicity_equivalence_check(
    g: LayeredGraph, vertex_cap: int = 64, neighborhood_cap: int = 12
) -> EquivalenceCheck:
    """Cross-validate the matching verifier against degree monotonicity on channels.

    For every edge uv and every nonempty S inside im(v), the channel between
    {u} and S must be degree monotone; likewise for every S inside
    im^{-1}(u) and the channel between S and {v}. A failed matching
    condition always shows up as such a non-monotone channel.
    """
    from .constructors import channel

    if g.vertex_count() > vertex_cap:
        raise CapExceeded(f"graph has {g.vertex_count()} vertices, cap is {vertex_cap}")
    conditions = verify_plunnecke_conditions(g).ok
    for u, v in g.all_edges():
        families = []
        if v.layer < g.level:
            families.append((v.layer + 1, g.succ_mask(v.layer, v.index), True))
        if u.layer > 0:
            families.append((u.layer - 1, g.pred_mask(u.layer, u.index), False))
        for layer, mask, upward in families:
            members = bits(mask)
            if len(members) > neighborhood_cap:
                raise CapExceeded(
                    f"neighbourhood of size {len(members)} exceeds cap {neighborhood_cap}"
                )
            for r in range(1, len(members) + 1):
                for s in combinations(members, r):
                    s = VertexSet(layer, s)
                    if upward:
                        h = channel(g, VertexSet(u.layer, [u.index]), s)
                    else:
                        h = channel(g, s, VertexSet(v.layer, [v.index]))
                    mono = verify_degree_monotonicity(h)
                    if not mono.ok:
                        return EquivalenceCheck(conditions, False, h, mono.edge)
    return EquivalenceCheck(conditions, True)


@dataclass(frozen=True)
class RegularityReport:
    ratio: Fraction | None
    in_degree: int | None = None
    out_degree: int | None = None
    counterexample: VertexId | None = None

    @property
    def regular(self) -> bool:
        return self.ratio is not None


def regularity(g: LayeredGraph) -> RegularityReport:
    """Constant in-degree d off the bottom layer, constant out-degree C*d off the top."""
    d_in = d_out = None
    for i in range(g.level + 1):
        for x in range(g.layer_sizes[i]):
            v = VertexId(i, x)
            din, dout = degrees(g, v)
            if i > 0:
                if d_in is None:
                    d_in = din
                elif din != d_in:
                    return RegularityReport(None, counterexample=v)
            if i < g.level:
                if d_out is None:
                    d_out = dout
                elif dout != d_out:
                    return RegularityReport(None, counterexample=v)
    if not d_in or not d_out:
        bad = VertexId(1, 0) if not d_in else VertexId(0, 0)
        return RegularityReport(None, counterexample=bad)
    return RegularityReport(Fraction(d_out, d_in), d_in, d_out)


def verify_regular(g: LayeredGraph) -> Fraction | None:
    return regularity(g).ratio
