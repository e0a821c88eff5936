"""The deficiency functional eta_p and the private-neighbour functional mu_p."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _engines as eng
from .domination import all_minimum_p_dominating_sets, gamma_p, private_neighbors
from .exceptions import PreconditionError, SizeGuardError
from .graph_core import Graph, check_vertex_set, from_mask, is_tree, require_tree, to_mask

EXHAUSTIVE_GUARD = 20
AUTO_EXHAUSTIVE_MAX_N = 16  # bitmask search beats the tree DP below this size


def vertex_deficiency(G: Graph, p: int, X: frozenset[int], x: int) -> int:
    if x in X:
        return 0
    return max(0, p - (G.masks[x] & to_mask(X)).bit_count())


def deficiencies(G: Graph, p: int, X: Iterable[int]) -> tuple[int, ...]:
    """Per-vertex shortfall: 0 inside X, ``max(0, p - |N(v) ∩ X|)`` outside."""
    X = check_vertex_set(G, X, "X")
    xm = to_mask(X)
    return tuple(0 if v in X else max(0, p - (G.masks[v] & xm).bit_count()) for v in range(G.n))


def eta_local(G: Graph, p: int, X: Iterable[int], S: Iterable[int]) -> int:
    """eta_p(S, X, G): total shortfall of the vertices of S with respect to X."""
    S = check_vertex_set(G, S, "S")
    d = deficiencies(G, p, X)
    return sum(d[v] for v in S)


@dataclass(frozen=True)
class EtaWitness:
    p: int
    X: frozenset[int]
    deficiencies: tuple[int, ...]
    total: int
    gamma: int


def _witness(G: Graph, p: int, X: frozenset[int], gamma: int) -> EtaWitness:
    d = deficiencies(G, p, X)
    return EtaWitness(p, X, d, sum(d), gamma)


def _eta_exhaustive(G: Graph, p: int, gamma: int, restricted: bool, guard: int) -> frozenset[int]:
    if G.n > guard:
        raise SizeGuardError("eta_p exhaustive search", G.n, guard)
    masks = eng.subset_masks(range(G.n))
    sizes = eng.popcounts(masks)
    masks = masks[sizes == gamma - 1] if restricted else masks[sizes < gamma]
    totals = eng.deficiency_totals(masks, G, p)
    best = masks[totals == totals.min()]
    return from_mask(eng.lex_smallest(best))


def _tree_lex_at_size(T: Graph, p: int, k: int, value: int) -> frozenset[int]:
    fin = fout = 0
    for v in range(T.n):
        trial = eng.tree_eta_profile(T, p, fin | 1 << v, fout)
        if k < len(trial) and trial[k] == value:
            fin |= 1 << v
        else:
            fout |= 1 << v
    return from_mask(fin)


def _eta_tree(T: Graph, p: int, gamma: int, restricted: bool) -> frozenset[int]:
    prof = eng.tree_eta_profile(T, p)
    sizes = [gamma - 1] if restricted else list(range(gamma))
    value = min(int(prof[k]) for k in sizes)
    cands = [_tree_lex_at_size(T, p, k, value) for k in sizes if prof[k] == value]
    return min(cands, key=lambda s: tuple(sorted(s)))


def eta_graph(
    G: Graph,
    p: int,
    *,
    restricted: bool = True,
    method: str = "auto",
    guard: int = EXHAUSTIVE_GUARD,
) -> EtaWitness:
    """eta_p(G) with the lexicographically smallest minimising set X.

    By default only sets of size ``gamma_p(G) - 1`` are searched; pass
    ``restricted=False`` to search every size below ``gamma_p(G)`` (the
    reference mode used to test that restriction).
    """
    if method not in ("auto", "exhaustive", "tree_dp"):
        raise ValueError(f"unknown method {method!r}")
    gamma = gamma_p(G, p).value
    if gamma < 1:
        raise PreconditionError("eta_p needs gamma_p(G) >= 1")
    use_dp = method == "tree_dp" or (
        method == "auto" and is_tree(G) and G.n > AUTO_EXHAUSTIVE_MAX_N
    )
    if use_dp:
        require_tree(G)
        X = _eta_tree(G, p, gamma, restricted)
    else:
        X = _eta_exhaustive(G, p, gamma, restricted, guard)
    return _witness(G, p, X, gamma)


def eta_value(G: Graph, p: int) -> tuple[int, int]:
    """``(gamma_p(G), eta_p(G))`` without building a witness set."""
    gamma = gamma_p(G, p).value if not is_tree(G) else eng.tree_gamma_count(G, p)[0]
    if G.n <= AUTO_EXHAUSTIVE_MAX_N or not is_tree(G):
        if G.n > EXHAUSTIVE_GUARD:
            raise SizeGuardError("eta_p exhaustive search", G.n, EXHAUSTIVE_GUARD)
        masks = eng.masks_of_size(G.n, gamma - 1)
        return gamma, int(eng.deficiency_totals(masks, G, p).min())
    return gamma, int(eng.tree_eta_profile(G, p)[gamma - 1])


# --- mu_p -----------------------------------------------------------------------


@dataclass(frozen=True)
class MuEntry:
    vertex: int
    private_count: int
    deficit: int

    @property
    def mu(self) -> int:
        return self.private_count + self.deficit


@dataclass(frozen=True)
class MuReport:
    p: int
    D: frozenset[int]
    entries: tuple[MuEntry, ...]
    set_min: int
    graph_min: int | None = None
    vertex: int | None = None  # a vertex of D attaining set_min


def mu_point(G: Graph, p: int, D: Iterable[int], x: int) -> int:
    """``|PN_p(x, D, G)| + max(0, p - |N(x) ∩ D|)`` for ``x`` in D."""
    D = check_vertex_set(G, D, "D")
    if x not in D:
        raise PreconditionError(f"vertex {x} is not in D")
    inside = (G.masks[x] & to_mask(D)).bit_count()
    return len(private_neighbors(G, p, D, x)) + max(0, p - inside)


def mu_set(G: Graph, p: int, D: Iterable[int]) -> MuReport:
    D = check_vertex_set(G, D, "D")
    if not D:
        raise PreconditionError("mu_p of an empty set is undefined")
    dm = to_mask(D)
    entries = tuple(
        MuEntry(x, len(private_neighbors(G, p, D, x)), max(0, p - (G.masks[x] & dm).bit_count()))
        for x in sorted(D)
    )
    best = min(entries, key=lambda e: (e.mu, e.vertex))
    return MuReport(p, D, entries, best.mu, None, best.vertex)


def mu_graph(G: Graph, p: int) -> MuReport:
    """mu_p(G): the smallest mu_p(D, G) over all minimum p-dominating sets D.

    The report describes the first minimum set (in sorted order) attaining it.
    """
    best = None
    for D in all_minimum_p_dominating_sets(G, p):
        rep = mu_set(G, p, D)
        if best is None or rep.set_min < best.set_min:
            best = rep
    return MuReport(best.p, best.D, best.entries, best.set_min, best.set_min, best.vertex)


def eta_profile(G: Graph, p: int, forced_in: Iterable[int] = (), forced_out: Iterable[int] = ()) -> np.ndarray:
    """Size-indexed minimum deficiency of a tree under membership constraints.

    ``profile[k]`` is the least ``eta_p(V, X, G)`` over ``|X| = k`` with
    ``forced_in ⊆ X`` and ``X ∩ forced_out = ∅``; infeasible sizes hold
    ``_engines.INF``.
    """
    require_tree(G)
    return eng.tree_eta_profile(G, p, to_mask(forced_in), to_mask(forced_out))
