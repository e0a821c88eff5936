"""p-dominating sets, the p-domination number and p-private neighbourhoods."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from . import _engines as eng
from .exceptions import PreconditionError, SizeGuardError
from .graph_core import Graph, check_vertex_set, from_mask, is_tree, require_tree, to_mask

EXHAUSTIVE_GUARD = 22  # max number of free (non-forced) vertices for bitmask search
ALL_SETS_GUARD = 20
MAX_LISTED_SETS = 100_000


@dataclass(frozen=True)
class GammaCertificate:
    p: int
    value: int
    witness: frozenset[int]
    unique: bool
    count: int
    all_min_sets: tuple[frozenset[int], ...] | None = None


class UniquenessVerdict(NamedTuple):
    unique: bool
    offender: int | None


def _check_p(p: int) -> None:
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")


def forced_vertices(G: Graph, p: int) -> frozenset[int]:
    """Vertices of degree at most p-1; every p-dominating set contains them."""
    return frozenset(v for v in range(G.n) if G.degree(v) <= p - 1)


def is_p_dominating(G: Graph, p: int, D: Iterable[int]) -> bool:
    D = check_vertex_set(G, D, "D")
    dm = to_mask(D)
    return all(v in D or (G.masks[v] & dm).bit_count() >= p for v in range(G.n))


def private_neighbors(G: Graph, p: int, X: Iterable[int], x: int) -> frozenset[int]:
    """PN_p(x, X, G): neighbours y of x outside X with exactly p neighbours in X."""
    X = check_vertex_set(G, X, "X")
    if x not in X:
        raise PreconditionError(f"vertex {x} is not in X")
    xm = to_mask(X)
    return frozenset(
        y for y in G.adjacency[x] if y not in X and (G.masks[y] & xm).bit_count() == p
    )


# --- search back-ends ----------------------------------------------------------------


MASK_BITS = 64  # vertex ids must fit in a uint64 mask


def _exhaustive_min_sets(G: Graph, p: int, guard: int):
    if G.n > MASK_BITS:
        raise SizeGuardError("bitmask search (vertex count)", G.n, MASK_BITS)
    forced = forced_vertices(G, p)
    free = [v for v in range(G.n) if v not in forced]
    if len(free) > guard:
        raise SizeGuardError("gamma_p exhaustive search", len(free), guard)
    masks = eng.subset_masks(free, base=to_mask(forced))
    masks = masks[eng.dominating_flags(masks, G, p)]
    sizes = eng.popcounts(masks)
    value = int(sizes.min())
    return value, masks[sizes == value]


def _tree_lex_witness(T: Graph, p: int, value: int) -> frozenset[int]:
    fin = fout = 0
    for v in range(T.n):
        if eng.tree_gamma_count(T, p, fin | 1 << v, fout)[0] == value:
            fin |= 1 << v
        else:
            fout |= 1 << v
    return from_mask(fin)


def _tree_enumerate(T: Graph, p: int, value: int) -> list[frozenset[int]]:
    out: list[frozenset[int]] = []

    def branch(v: int, fin: int, fout: int) -> None:
        if v == T.n:
            out.append(from_mask(fin))
            return
        for fi, fo in ((fin | 1 << v, fout), (fin, fout | 1 << v)):
            if eng.tree_gamma_count(T, p, fi, fo)[0] == value:
                branch(v + 1, fi, fo)

    branch(0, 0, 0)
    return out


def _sorted_sets(sets: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(sets, key=lambda s: tuple(sorted(s))))


def gamma_p(
    G: Graph,
    p: int,
    *,
    method: str = "auto",
    all_sets: bool = False,
    guard: int = EXHAUSTIVE_GUARD,
) -> GammaCertificate:
    """Exact p-domination number with the lexicographically smallest minimum set.

    ``method`` is ``"exhaustive"`` (bitmask search seeded with the forced
    low-degree vertices), ``"tree_dp"`` (rooted dynamic program; trees only) or
    ``"auto"``.  Never returns an approximate value: instances beyond the
    guard raise :class:`SizeGuardError`.
    """
    _check_p(p)
    if method not in ("auto", "exhaustive", "tree_dp"):
        raise ValueError(f"unknown method {method!r}")
    use_dp = method == "tree_dp" or (method == "auto" and is_tree(G))
    listed = None
    if use_dp:
        require_tree(G)
        value, count = eng.tree_gamma_count(G, p)
        witness = _tree_lex_witness(G, p, value)
        if all_sets:
            if count > MAX_LISTED_SETS:
                raise SizeGuardError("listing minimum sets", count, MAX_LISTED_SETS)
            listed = _sorted_sets(_tree_enumerate(G, p, value))
    else:
        value, masks = _exhaustive_min_sets(G, p, guard)
        count = len(masks)
        witness = from_mask(eng.lex_smallest(masks))
        if all_sets:
            listed = _sorted_sets(from_mask(int(m)) for m in masks)
    if not is_p_dominating(G, p, witness) or len(witness) != value:
        raise AssertionError("internal error: gamma_p witness failed verification")
    if not forced_vertices(G, p) <= witness:
        raise AssertionError("internal error: witness misses a forced vertex")
    return GammaCertificate(p, value, witness, count == 1, count, listed)


def all_minimum_p_dominating_sets(G: Graph, p: int, guard: int = ALL_SETS_GUARD) -> list[frozenset[int]]:
    """Every minimum p-dominating set, sorted by member tuple.

    Graphs with more than ``guard`` vertices are refused unless they are trees,
    which are handled by the tree dynamic program.
    """
    _check_p(p)
    if G.n <= guard:
        value, masks = _exhaustive_min_sets(G, p, max(guard, EXHAUSTIVE_GUARD))
        return list(_sorted_sets(from_mask(int(m)) for m in masks))
    if is_tree(G):
        return list(gamma_p(G, p, method="tree_dp", all_sets=True).all_min_sets)
    raise SizeGuardError("all_minimum_p_dominating_sets", G.n, guard)


def uniqueness_report(T: Graph, p: int, D: Iterable[int]) -> UniquenessVerdict:
    """Local test deciding whether the p-dominating set ``D`` of a tree is its unique minimum set.

    The criterion: every ``x`` in ``D`` with degree at least ``p`` has at most
    ``p-2`` neighbours in ``D`` or at least two p-private neighbours.  The
    first vertex breaking it is reported.
    """
    require_tree(T)
    if p < 2:
        raise PreconditionError("the uniqueness criterion needs p >= 2")
    D = check_vertex_set(T, D, "D")
    if not is_p_dominating(T, p, D):
        raise PreconditionError("D is not p-dominating")
    dm = to_mask(D)
    for x in sorted(D):
        if T.degree(x) < p:
            continue
        inside = (T.masks[x] & dm).bit_count()
        if inside <= p - 2 or len(private_neighbors(T, p, D, x)) >= 2:
            continue
        return UniquenessVerdict(False, x)
    return UniquenessVerdict(True, None)


def unique_gamma_set(T: Graph, p: int) -> frozenset[int]:
    """The unique minimum p-dominating set of a tree; raises if it is not unique."""
    cert = gamma_p(T, p)
    if not cert.unique:
        raise PreconditionError(f"tree has {cert.count} minimum {p}-dominating sets")
    return cert.witness


def ell_p(T: Graph, p: int) -> int:
    """Number of vertices that are p-private neighbours w.r.t. the unique minimum set."""
    D = unique_gamma_set(T, p)
    pn = [private_neighbors(T, p, D, x) for x in D]
    union = frozenset().union(*pn)
    total = sum(len(s) for s in pn)
    # each private neighbour has exactly p neighbours in D
    if total % p or total // p != len(union):
        raise AssertionError("private-neighbour double count is inconsistent")
    return len(union)


def minimum_sets_array(G: Graph, p: int) -> tuple[int, np.ndarray]:
    """Raw bitmask form of the exhaustive search, used by verifier oracles."""
    return _exhaustive_min_sets(G, p, EXHAUSTIVE_GUARD)
