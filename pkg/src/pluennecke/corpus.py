"""A fixed corpus of small commutative graphs for regression and property checks.

Every entry keeps |V_0| within the default subset cap so that magnification
tables can be computed exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from .constructors import (
    AbelianGroup,
    GroupSet,
    addition_graph,
    cartesian_product,
    channel,
    independent_addition_graph,
    inverse_graph,
    join_construction,
)
from .graph import LayeredGraph, VertexSet, path_graph
from .regular import build_rc, build_rk


@dataclass
class CorpusEntry:
    name: str
    make: Callable[[], LayeredGraph]
    family: str

    @cached_property
    def graph(self) -> LayeredGraph:
        return self.make()


def zn_addition(n: int, a, b, h: int) -> LayeredGraph:
    grp = AbelianGroup.cyclic(n)
    return addition_graph(GroupSet(grp, a), GroupSet(grp, b), h)


def zn_full(n: int, b, h: int) -> LayeredGraph:
    return zn_addition(n, range(n), b, h)


# (modulus, A, B, level)
ADDITION_PARAMS = [
    (3, range(3), (0, 1), 2),
    (4, range(4), (0, 1), 3),
    (5, range(5), (0, 2), 3),
    (6, range(6), (0, 1, 3), 2),
    (5, (0,), (0, 1), 3),
    (6, (0, 1), (0, 2, 3), 3),
    (7, (0,), (0, 1, 3), 2),
    (8, range(8), (0, 1), 2),
    (9, (0,), (0, 1, 2, 4), 2),
    (10, (0, 3), (0, 1, 2, 7), 2),
    (11, (0, 1, 2, 3, 4), (0, 2), 3),
    (12, (0, 1, 2), (0, 1, 5), 2),
    (12, (0, 4, 8), (0, 1, 6), 2),
    (12, (0, 1), (1, 3, 4, 9), 2),
]

INDEPENDENT_PARAMS = [(1, 3), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)]

RK_PARAMS = [(1, 2), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2), (5, 2)]

RC_PARAMS = [(1, 2, 2), (2, 1, 2)]


def _name_addition(n, a, b, h) -> str:
    a_text = "all" if tuple(a) == tuple(range(n)) else ",".join(map(str, a))
    return f"Z{n}[A={a_text};B={','.join(map(str, b))};h={h}]"


def standard_corpus() -> list[CorpusEntry]:
    out: list[CorpusEntry] = []
    for n, a, b, h in ADDITION_PARAMS:
        out.append(CorpusEntry(_name_addition(n, a, b, h), lambda n=n, a=a, b=b, h=h: zn_addition(n, a, b, h), "addition"))
    for n, h in INDEPENDENT_PARAMS:
        out.append(CorpusEntry(f"independent[n={n};h={h}]", lambda n=n, h=h: independent_addition_graph(n, h), "independent"))
    for k, h in RK_PARAMS:
        out.append(CorpusEntry(f"rk[k={k};h={h}]", lambda k=k, h=h: build_rk(k, h), "regular"))
    for p, q, h in RC_PARAMS:
        out.append(CorpusEntry(f"rc[{p}/{q};h={h}]", lambda p=p, q=q, h=h: build_rc(p, q, h), "regular"))

    out += [
        CorpusEntry("path[h=1]", lambda: path_graph(1), "path"),
        CorpusEntry("path[h=3]", lambda: path_graph(3), "path"),
        CorpusEntry(
            "product[independent(2,2)xZ5(0;0,1)]",
            lambda: cartesian_product(independent_addition_graph(2, 2), zn_addition(5, (0,), (0, 1), 2)),
            "product",
        ),
        CorpusEntry(
            "product[independent(2,2)xindependent(2,2)]",
            lambda: cartesian_product(independent_addition_graph(2, 2), independent_addition_graph(2, 2)),
            "product",
        ),
        CorpusEntry(
            "product[rk(2,2)xZ3full(0,1)]",
            lambda: cartesian_product(build_rk(2, 2), zn_full(3, (0, 1), 2)),
            "product",
        ),
        CorpusEntry(
            "product[path(2)xindependent(3,2)]",
            lambda: cartesian_product(path_graph(2), independent_addition_graph(3, 2)),
            "product",
        ),
        CorpusEntry("inverse[independent(2,3)]", lambda: inverse_graph(independent_addition_graph(2, 3)), "inverse"),
        CorpusEntry("inverse[Z7(0;0,1,3)]", lambda: inverse_graph(zn_addition(7, (0,), (0, 1, 3), 2)), "inverse"),
        CorpusEntry("inverse[rk(2,2)]", lambda: inverse_graph(build_rk(2, 2)), "inverse"),
        CorpusEntry(
            "channel[independent(3,3);V0->top{0,1,4}]",
            lambda: channel(independent_addition_graph(3, 3), VertexSet(0, [0]), VertexSet(3, [0, 1, 4])),
            "channel",
        ),
        CorpusEntry(
            "channel[rk(2,2);{0,1}->top]",
            lambda: _channel_to_top(build_rk(2, 2), [0, 1]),
            "channel",
        ),
        CorpusEntry(
            "channel[inverse(Z12(0,1,2;0,1,5));{0,1,2}->top]",
            lambda: _channel_to_top(inverse_graph(zn_addition(12, (0, 1, 2), (0, 1, 5), 2)), [0, 1, 2]),
            "channel",
        ),
        CorpusEntry(
            "channel[independent(2,4);layers1..3]",
            lambda: channel(
                independent_addition_graph(2, 4), VertexSet(1, [0, 1]), VertexSet(3, [0, 1, 2, 3])
            ),
            "channel",
        ),
        CorpusEntry(
            "join[independent(2,2);Z8full(0,1)]",
            lambda: join_construction(independent_addition_graph(2, 2), zn_full(8, (0, 1), 2)),
            "join",
        ),
        CorpusEntry("join[path(2);path(2)]", lambda: join_construction(path_graph(2), path_graph(2)), "join"),
        CorpusEntry(
            "join[Z7(0;0,1,3);Z6full(0,1)]",
            lambda: join_construction(zn_addition(7, (0,), (0, 1, 3), 2), zn_full(6, (0, 1), 2)),
            "join",
        ),
    ]
    return out


def _channel_to_top(g: LayeredGraph, z) -> LayeredGraph:
    return channel(g, VertexSet(0, z), g.layer(g.level))
