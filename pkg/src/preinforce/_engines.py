"""Exact search engines shared by the domination and deficiency modules.

Two independent routes are provided and cross-checked by the test-suite:

* bitmask enumeration with numpy, for any graph small enough to enumerate;
* dynamic programs over a rooted tree, for trees of any practical size.

All quantities are exact integers.
"""
from __future__ import annotations

from collections import deque

import numpy as np

from .graph_core import Graph

INF = 1 << 40  # larger than any deficiency total we can meet


# --- bitmask enumeration ------------------------------------------------------------


def subset_masks(vertices, base: int = 0) -> np.ndarray:
    """Every ``base | S`` for S ranging over subsets of ``vertices``."""
    arr = np.array([base], dtype=np.uint64)
    for v in vertices:
        arr = np.concatenate([arr, arr | np.uint64(1 << v)])
    return arr


def masks_of_size(n: int, k: int) -> np.ndarray:
    arr = subset_masks(range(n))
    return arr[np.bitwise_count(arr) == k]


def popcounts(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks).astype(np.int64)


def _member(masks: np.ndarray, v: int) -> np.ndarray:
    return ((masks >> np.uint64(v)) & np.uint64(1)).astype(bool)


def neighbour_count(masks: np.ndarray, G: Graph, v: int) -> np.ndarray:
    return np.bitwise_count(masks & np.uint64(G.masks[v])).astype(np.int64)


def dominating_flags(masks: np.ndarray, G: Graph, p: int) -> np.ndarray:
    ok = np.ones(masks.shape, dtype=bool)
    for v in range(G.n):
        ok &= _member(masks, v) | (neighbour_count(masks, G, v) >= p)
    return ok


def deficiency_totals(masks: np.ndarray, G: Graph, p: int) -> np.ndarray:
    total = np.zeros(masks.shape, dtype=np.int64)
    for v in range(G.n):
        short = np.maximum(0, p - neighbour_count(masks, G, v))
        total += np.where(_member(masks, v), 0, short)
    return total


def mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def lex_smallest(masks) -> int:
    """Mask whose sorted member tuple is lexicographically smallest."""
    return min((int(m) for m in masks), key=mask_to_tuple)


# --- tree dynamic programs ------------------------------------------------------------


def _bfs(G: Graph, root: int):
    parent = [-1] * G.n
    order = [root]
    seen = [False] * G.n
    seen[root] = True
    q = deque([root])
    while q:
        v = q.popleft()
        for u in G.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                order.append(u)
                q.append(u)
    children = [[] for _ in range(G.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    return order, children


_NONE = (INF, 0)


def _add(a, b):
    if a[0] >= INF or b[0] >= INF:
        return _NONE
    return (a[0] + b[0], a[1] * b[1])


def _min(a, b):
    if a[0] < b[0]:
        return a
    if b[0] < a[0]:
        return b
    return (a[0], a[1] + b[1]) if a[0] < INF else _NONE


def tree_gamma_count(T: Graph, p: int, forced_in: int = 0, forced_out: int = 0) -> tuple[int, int]:
    """Minimum size of a p-dominating set of the tree and the number of such sets.

    ``forced_in`` / ``forced_out`` are bitmasks of vertices whose membership is
    fixed.  Returns ``(INF, 0)`` when the constraints admit no p-dominating set.

    Per-vertex states: in the set; outside with exactly ``p-1`` children in the
    set (needs the parent); outside with at least ``p`` children in the set.
    """
    order, children = _bfs(T, 0)
    IN, NEED, OK = 0, 1, 2
    table = [None] * T.n
    for v in reversed(order):
        bit = 1 << v
        if forced_out & bit:
            s_in = _NONE
        else:
            s_in = (1, 1)
            for c in children[v]:
                tc = table[c]
                s_in = _add(s_in, _min(_min(tc[IN], tc[NEED]), tc[OK]))
        if forced_in & bit:
            s_need = s_ok = _NONE
        else:
            f = [_NONE] * (p + 1)
            f[0] = (0, 1)
            for c in children[v]:
                tc = table[c]
                g = [_NONE] * (p + 1)
                for j, val in enumerate(f):
                    if val[0] >= INF:
                        continue
                    g[j] = _min(g[j], _add(val, tc[OK]))
                    jj = min(p, j + 1)
                    g[jj] = _min(g[jj], _add(val, tc[IN]))
                f = g
            s_ok = f[p]
            s_need = f[p - 1] if p >= 1 else _NONE
        table[v] = (s_in, s_need, s_ok)
    root = table[0]
    return _min(root[IN], root[OK])


def _minplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Min-plus convolution of two size-indexed profiles."""
    out = np.full(len(a) + len(b) - 1, INF, dtype=np.int64)
    for i, ai in enumerate(a):
        if ai >= INF:
            continue
        seg = out[i:i + len(b)]
        np.minimum(seg, ai + b, out=seg)
    return np.minimum(out, INF)


def tree_eta_tables(T: Graph, p: int, root: int = 0, forced_in: int = 0, forced_out: int = 0):
    """Size-indexed deficiency profiles of a tree, split by the root's membership.

    Returns ``(root_in, root_out)``: arrays indexed by ``k = |X|`` holding the
    minimum of ``sum_{v not in X} max(0, p - |N(v) ∩ X|)`` over admissible X
    with the root inside / outside X.  Entries equal to ``INF`` are infeasible.
    """
    order, children = _bfs(T, root)
    tab_in: list = [None] * T.n
    tab_out: list = [None] * T.n  # tab_out[v][j]: j = children in X (capped at p), own deficiency pending
    inf1 = np.array([INF], dtype=np.int64)
    for v in reversed(order):
        bit = 1 << v
        if forced_out & bit:
            a_in = np.array([INF, INF], dtype=np.int64)
        else:
            a_in = np.array([INF, 0], dtype=np.int64)
            for c in children[v]:
                best = tab_in[c].copy()
                for j, prof in enumerate(tab_out[c]):
                    np.minimum(best, prof + max(0, p - j - 1), out=best)
                a_in = _minplus(a_in, best)
        if forced_in & bit:
            outs = [inf1.copy() for _ in range(p + 1)]
        else:
            outs = [inf1.copy() for _ in range(p + 1)]
            outs[0] = np.array([0], dtype=np.int64)
            for c in children[v]:
                as_out = np.full(len(tab_in[c]), INF, dtype=np.int64)
                for j, prof in enumerate(tab_out[c]):
                    np.minimum(as_out, prof + max(0, p - j), out=as_out)
                new = [None] * (p + 1)
                for j, prof in enumerate(outs):
                    stay = _minplus(prof, as_out)
                    up = _minplus(prof, tab_in[c])
                    jj = min(p, j + 1)
                    new[j] = stay if new[j] is None else _pad_min(new[j], stay)
                    new[jj] = up if new[jj] is None else _pad_min(new[jj], up)
                outs = new
        size = max(len(a_in), max(len(o) for o in outs))
        tab_in[v] = _pad(a_in, size)
        tab_out[v] = [_pad(np.minimum(o, INF), size) for o in outs]
    r_in = tab_in[root]
    r_out = np.full(len(r_in), INF, dtype=np.int64)
    for j, prof in enumerate(tab_out[root]):
        np.minimum(r_out, prof + max(0, p - j), out=r_out)
    return np.minimum(r_in, INF), np.minimum(r_out, INF)


def _pad(a: np.ndarray, size: int) -> np.ndarray:
    if len(a) >= size:
        return a
    return np.concatenate([a, np.full(size - len(a), INF, dtype=np.int64)])


def _pad_min(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    size = max(len(a), len(b))
    return np.minimum(_pad(a, size), _pad(b, size))


def tree_eta_profile(T: Graph, p: int, forced_in: int = 0, forced_out: int = 0) -> np.ndarray:
    """``profile[k]`` = min deficiency over admissible X with ``|X| = k``."""
    r_in, r_out = tree_eta_tables(T, p, 0, forced_in, forced_out)
    return np.minimum(r_in, r_out)
