"""Pure-Python kernels; same API as the compiled ``_kernels`` module."""

from __future__ import annotations

from collections import deque
from typing import Sequence


def _better(cnt: int, card: int, mask: int, bcnt: int, bcard: int, bmask: int) -> bool:
    if bcard == 0:
        return True
    lhs, rhs = cnt * bcard, bcnt * card
    if lhs != rhs:
        return lhs < rhs
    if card != bcard:
        return card < bcard
    diff = mask ^ bmask
    return bool(diff) and bool(mask & diff & -diff)


def min_ratio_subset(
    masks: Sequence[int], width: int, fixed: int = 0, free_bits: int = -1
) -> tuple[int, int, int]:
    """Minimise ``popcount(union of masks[j] for j in Z) / |Z|`` over subsets Z.

    Z ranges over ``fixed | L`` for every subset ``L`` of the low
    ``free_bits`` indices (``fixed`` must only use higher indices); the empty
    set is skipped. Ties go to smaller ``|Z|`` and then to the
    lexicographically smallest sorted index list.

    Returns ``(image_count, cardinality, subset_mask)``; ``cardinality`` is 0
    when nothing was enumerated.
    """
    n = len(masks)
    if free_bits < 0:
        free_bits = n
    base = 0
    fixed_card = 0
    f = fixed
    while f:
        low = f & -f
        base |= masks[low.bit_length() - 1]
        fixed_card += 1
        f ^= low
    acc = [base] * (free_bits + 1)
    bcnt = bcard = bmask = 0
    start = 0 if fixed else 1
    for m in range(start, 1 << free_bits):
        if m:
            t = (m & -m).bit_length() - 1
            u = acc[t + 1] | masks[t]
            for j in range(t + 1):
                acc[j] = u
        cnt = bin(acc[0]).count("1")
        card = bin(m).count("1") + fixed_card
        full = fixed | m
        if _better(cnt, card, full, bcnt, bcard, bmask):
            bcnt, bcard, bmask = cnt, card, full
    return bcnt, bcard, bmask


def max_matching(adj: Sequence[Sequence[int]], n_right: int) -> list[int]:
    """Hopcroft-Karp maximum matching; returns the right partner of each left vertex or -1."""
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            if match_r[v] < 0:
                match_l[u] = v
                match_r[v] = u
                break
    inf = n_left + 1
    dist = [0] * n_left

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(root: int) -> bool:
        # iterative augmenting search along the BFS layering
        stack = [(root, iter(adj[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w < 0:
                    path.append((u, v))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[w] == dist[u] + 1:
                    path.append((u, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = inf
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0:
                dfs(u)
    return match_l
