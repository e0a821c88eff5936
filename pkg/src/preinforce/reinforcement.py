"""The p-reinforcement number r_p: by definition, via eta_p, and a dispatcher."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np

from . import _engines as eng
from .deficiency import eta_graph
from .domination import EXHAUSTIVE_GUARD, forced_vertices, gamma_p, is_p_dominating
from .exceptions import BudgetExhausted, PreconditionError, SizeGuardError
from .graph_core import Graph, complement_edges

DEFINITION_GUARD = 10
_CHUNK_CELLS = 4_000_000


@dataclass(frozen=True)
class ReinforcementResult:
    p: int
    value: int
    witness_edges: tuple[tuple[int, int], ...]
    method: str  # "definition", "eta" or "convention"
    gamma: int
    witness_verified: bool = True


def _convention(p: int, gamma: int) -> ReinforcementResult:
    return ReinforcementResult(p, 0, (), "convention", gamma, True)


def _reduces(G: Graph, p: int, gamma: int, B) -> bool:
    """Recompute gamma_p(G + B) and compare; None when too large to recompute."""
    H = G.add_edges(B)
    free = H.n - len(forced_vertices(H, p))
    if free > EXHAUSTIVE_GUARD - 4:
        return None
    try:
        return gamma_p(H, p, method="exhaustive").value < gamma
    except SizeGuardError:
        return None


def r_p_by_definition(
    G: Graph, p: int, budget: int | None = None, guard: int = DEFINITION_GUARD
) -> ReinforcementResult:
    """Smallest number of added non-edges that lowers gamma_p, by direct search.

    Edge sets B are tried in order of increasing size.  For each candidate the
    search asks whether ``G + B`` has a p-dominating set of size
    ``gamma_p(G) - 1``, checking every such vertex set at once with numpy.
    ``budget`` defaults to ``p + 2``; pass ``budget=0`` for no limit.
    Raises :class:`BudgetExhausted` when nothing within the budget works.
    """
    if G.n > guard:
        raise SizeGuardError("r_p by definition", G.n, guard)
    gamma = gamma_p(G, p).value
    if gamma <= p:
        return _convention(p, gamma)
    non_edges = complement_edges(G)
    m = len(non_edges)
    if budget is None:
        budget = p + 2
    if budget < 0:
        raise ValueError("budget must be >= 0")
    limit = m if budget == 0 else min(budget, m)

    Xs = eng.masks_of_size(G.n, gamma - 1)
    in_x = np.stack([eng._member(Xs, v) for v in range(G.n)], axis=1)  # (numX, n)
    base = np.stack([eng.neighbour_count(Xs, G, v) for v in range(G.n)], axis=1).astype(np.int16)
    # delta[e, i, v]: neighbours gained inside X_i by vertex v when edge e is added
    delta = np.zeros((m, len(Xs), G.n), dtype=np.int16)
    for e, (a, b) in enumerate(non_edges):
        delta[e, :, a] = in_x[:, b]
        delta[e, :, b] = in_x[:, a]

    for k in range(1, limit + 1):
        chunk = max(1, _CHUNK_CELLS // (k * len(Xs) * G.n))
        combos = combinations(range(m), k)
        while True:
            block = np.array(list(islice(combos, chunk)), dtype=np.int64)
            if block.size == 0:
                break
            counts = base[None] + delta[block].sum(axis=1)
            ok = (in_x[None] | (counts >= p)).all(axis=2).any(axis=1)
            if ok.any():
                B = tuple(non_edges[i] for i in block[int(np.argmax(ok))])
                verified = _reduces(G, p, gamma, B)
                return ReinforcementResult(p, k, B, "definition", gamma, verified is not False)
    raise BudgetExhausted(budget)


def witness_edges_from_eta(G: Graph, p: int, X: frozenset[int]) -> tuple[tuple[int, int], ...]:
    """Join every deficient vertex to just enough non-adjacent vertices of X."""
    B = []
    for v in range(G.n):
        if v in X:
            continue
        have = sum(1 for u in G.adjacency[v] if u in X)
        need = p - have
        if need <= 0:
            continue
        free = [u for u in sorted(X) if not G.has_edge(u, v)]
        B.extend((min(u, v), max(u, v)) for u in free[:need])
    return tuple(sorted(B))


def r_p_by_eta(G: Graph, p: int) -> ReinforcementResult:
    """r_p as the minimum deficiency eta_p(G); requires gamma_p(G) >= p + 1.

    The witness edge set is built from the minimising X and checked: X must
    p-dominate ``G + B`` and, for small graphs, gamma_p(G + B) is recomputed.
    """
    eta = eta_graph(G, p)
    if eta.gamma <= p:
        raise PreconditionError(
            f"gamma_{p}(G) = {eta.gamma} <= p; r_p is 0 by convention (use r_p)"
        )
    B = witness_edges_from_eta(G, p, eta.X)
    ok = len(B) == eta.total and is_p_dominating(G.add_edges(B), p, eta.X)
    if ok:
        again = _reduces(G, p, eta.gamma, B)
        ok = again is not False
    return ReinforcementResult(p, eta.total, B, "eta", eta.gamma, ok)


def r_p(G: Graph, p: int, method: str = "auto", budget: int | None = None) -> ReinforcementResult:
    """p-reinforcement number; 0 by convention when gamma_p(G) <= p.

    ``method`` selects the eta route (``"eta"``/``"auto"``) or direct search
    (``"definition"``).
    """
    if method not in ("auto", "eta", "definition"):
        raise ValueError(f"unknown method {method!r}")
    if method == "definition":
        return r_p_by_definition(G, p, budget)
    gamma = gamma_p(G, p).value
    if gamma <= p:
        return _convention(p, gamma)
    return r_p_by_eta(G, p)
