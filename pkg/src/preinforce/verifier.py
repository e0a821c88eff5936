"""Bounded exhaustive verification of the structural results on small trees.

Each claim is a predicate evaluated on every tree up to ``n_max`` vertices.
Reports aggregate deterministically: trees are visited in canonical order and
violations are sorted, so two runs with the same inputs produce the same JSON
(apart from ``elapsed_ms``, which :meth:`VerificationReport.to_json` can zero).
"""
from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from . import _engines as eng
from .deficiency import eta_local, eta_value, mu_graph, mu_point
from .domination import all_minimum_p_dominating_sets, forced_vertices, gamma_p, private_neighbors, uniqueness_report
from .exceptions import PreconditionError
from .family import recognize, recognize_exhaustive, replay_trace
from .graph_core import (
    Graph,
    canonical_code,
    component_of,
    edge_list_string,
    enumerate_trees,
    is_tree,
    parse_edge_list,
    random_connected_graph,
)
from .reinforcement import r_p, r_p_by_definition, r_p_by_eta

SEED = 20240601
RANDOM_GRAPHS = 200
EXHAUSTIVE_RECOGNIZE_MAX_N = 12


@dataclass
class VerificationReport:
    claim: str
    p: int
    n_max: int
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    census: dict[int, int] = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "claim": self.claim,
            "p": self.p,
            "n_max": self.n_max,
            "checked": self.checked,
            "violations": list(self.violations),
            "census": {str(n): c for n, c in sorted(self.census.items())},
            "elapsed_ms": self.elapsed_ms if timing else 0,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)


def _r(T: Graph, p: int) -> int:
    gamma, eta = eta_value(T, p)
    return 0 if gamma <= p else eta


# --- per-tree predicates ----------------------------------------------------------------
# Each returns (list of violation details, r_p(T) or None).


def _check_thm_1_2(T, p):
    r = _r(T, p)
    return ([f"r_p = {r} > p + 1"] if r > p + 1 else []), r


def _check_thm_2_2(T, p):
    if gamma_p(T, p).value <= p:
        return [], None
    by_def = r_p_by_definition(T, p, budget=0).value
    by_eta = r_p_by_eta(T, p)
    out = []
    if by_def != by_eta.value:
        out.append(f"definition gives {by_def}, eta gives {by_eta.value}")
    if not by_eta.witness_verified:
        out.append("eta witness edges failed verification")
    return out, by_eta.value


def _check_thm_2_4(T, p):
    r = r_p(T, p).value
    mu = mu_graph(T, p).graph_min
    out = []
    if r > mu:
        out.append(f"r_p = {r} > mu_p = {mu}")
    if r == 1 and mu != 1:
        out.append(f"r_p = 1 but mu_p = {mu}")
    return out, r


def _check_thm_3_2(T, p):
    r = _r(T, p)
    if r != p + 1:
        return [], r
    cert = gamma_p(T, p)
    out = []
    if not cert.unique:
        out.append(f"{cert.count} minimum sets")
    for x in sorted(cert.witness):
        if not private_neighbors(T, p, cert.witness, x):
            out.append(f"vertex {x} has no p-private neighbour")
    return out, r


def _check_thm_4_4(T, p):
    r = _r(T, p)
    trace = recognize(T, p)
    out = []
    if (trace is not None) != (r == p + 1):
        out.append(f"recognize {'accepts' if trace else 'rejects'} but r_p = {r}")
    if trace is not None and canonical_code(replay_trace(trace)[0]) != canonical_code(T):
        out.append("replayed trace is not isomorphic to the input")
    if T.n <= EXHAUSTIVE_RECOGNIZE_MAX_N:
        ref = recognize_exhaustive(T, p)
        if (ref is None) != (trace is None):
            out.append("recognize and recognize_exhaustive disagree")
    return out, r


def _check_obs_1_2(T, p):
    forced = forced_vertices(T, p)
    bad = [D for D in all_minimum_p_dominating_sets(T, p) if not forced <= D]
    return [f"minimum set {sorted(D)} misses a vertex of degree < p" for D in bad], None


def _deficiency_table(T: Graph, p: int) -> tuple[np.ndarray, np.ndarray]:
    masks = eng.subset_masks(range(T.n))  # masks[i] == i
    return eng.deficiency_totals(masks, T, p), eng.popcounts(masks)


def _check_obs_2_1(T, p):
    gamma = gamma_p(T, p).value
    totals, sizes = _deficiency_table(T, p)
    below = sizes < gamma
    best = totals[below].min()
    argmins = sizes[below & (totals == best)]
    restricted = totals[sizes == gamma - 1].min()
    out = []
    if restricted != best:
        out.append(f"restricted minimum {restricted} != unrestricted {best}")
    if np.any(argmins != gamma - 1):
        out.append(f"an eta-set has size {int(argmins.min())} != gamma_p - 1")
    return out, None


def _check_eta_monotone(T, p):
    totals, _ = _deficiency_table(T, p)
    dominating = eng.dominating_flags(eng.subset_masks(range(T.n)), T, p)
    idx = np.arange(len(totals))
    out = []
    for v in range(T.n):
        lo = idx[(idx >> v) & 1 == 0]
        if np.any(totals[lo | (1 << v)] > totals[lo]):
            out.append(f"adding vertex {v} raised the deficiency")
    if np.any((totals == 0) != dominating):
        out.append("zero deficiency does not coincide with p-domination")
    return out, None


def _check_lem_3_1(T, p):
    sets = all_minimum_p_dominating_sets(T, p)
    out = []
    for D in sets:
        verdict = uniqueness_report(T, p, D)
        if verdict.unique != (len(sets) == 1):
            out.append(f"criterion says unique={verdict.unique} for {sorted(D)}, {len(sets)} minimum sets")
    return out, None


def _check_eq_4_7(T, p):
    cert = gamma_p(T, p)
    if not cert.unique:
        return [], None
    D = cert.witness
    pns = [private_neighbors(T, p, D, x) for x in D]
    total = sum(map(len, pns))
    union = frozenset().union(*pns)
    if total != p * len(union):
        return [f"sum |PN| = {total} but {len(union)} private neighbours"], None
    return [], None


def _check_cor_2_3(T, p):
    r = _r(T, p)
    gamma_t = gamma_p(T, p).value
    out = []
    for a, b in T.edges:
        for x, y in ((a, b), (b, a)):
            side = component_of(T, x, y)
            if len(side) == T.n:
                continue
            H, _ = T.induced(side)
            rest, _ = T.induced(set(range(T.n)) - side)
            gh = gamma_p(H, p).value
            if gh < p + 1 or gamma_t < gh + gamma_p(rest, p).value:
                continue
            rh = _r(H, p)
            if r > rh:
                out.append(f"r_p(T) = {r} > r_p(H) = {rh} for the side of {x}-{y} containing {y}")
    return out, r


def _check_structure(T, p):
    r = _r(T, p)
    out = [f"{claim}: {detail}" for claim, status, detail in structural_property_checks(T, p) if status == "fail"]
    return out, r


CLAIMS: dict[str, tuple[Callable, int, int]] = {
    # claim -> (predicate, minimum p, default n_max)
    "thm-1.2": (_check_thm_1_2, 2, 12),
    "thm-2.2": (_check_thm_2_2, 1, 9),
    "thm-2.4": (_check_thm_2_4, 1, 11),
    "thm-3.2": (_check_thm_3_2, 2, 12),
    "thm-4.4": (_check_thm_4_4, 3, 14),
    "obs-1.2": (_check_obs_1_2, 1, 10),
    "obs-2.1": (_check_obs_2_1, 1, 10),
    "eta-monotone": (_check_eta_monotone, 1, 10),
    "lem-3.1": (_check_lem_3_1, 2, 10),
    "eq-4.7": (_check_eq_4_7, 1, 10),
    "cor-2.3": (_check_cor_2_3, 1, 9),
    "structure": (_check_structure, 2, 12),
}


def _run_chunk(claim: str, p: int, trees: list[Graph]) -> list[tuple[int, list[str], int | None]]:
    check = CLAIMS[claim][0]
    out = []
    for T in trees:
        details, r = check(T, p)
        out.append((T.n, details, r))
    return out


def random_non_trees(count: int, seed: int, p: int):
    """Seeded connected non-tree graphs on 4..8 vertices with gamma_p >= p + 1."""
    rng = random.Random(seed * 31 + p)
    found = 0
    while found < count:
        n = rng.randint(4, 8)
        G = random_connected_graph(n, rng.randint(1, 3), rng.randrange(1 << 30))
        if is_tree(G) or gamma_p(G, p).value < p + 1:
            continue
        found += 1
        yield G


def run_theorem_suite(claim: str, p: int, n_max: int | None = None, jobs: int = 1) -> VerificationReport:
    """Evaluate ``claim`` on every tree with at most ``n_max`` vertices."""
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; known: {', '.join(sorted(CLAIMS))}")
    _, p_min, default_n = CLAIMS[claim]
    if p < p_min:
        raise PreconditionError(f"claim {claim} needs p >= {p_min}")
    n_max = default_n if n_max is None else n_max
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    start = time.perf_counter()
    report = VerificationReport(claim, p, n_max)
    trees = [T for n in range(1, n_max + 1) for T in enumerate_trees(n)]
    if jobs > 1 and len(trees) > 1:
        chunks = [trees[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, [claim] * jobs, [p] * jobs, chunks))
        results = [None] * len(trees)
        for i, part in enumerate(parts):
            results[i::jobs] = part
    else:
        results = _run_chunk(claim, p, trees)

    for T, (n, details, r) in zip(trees, results):
        report.checked += 1
        report.census.setdefault(n, 0)
        if r is not None and r == p + 1:
            report.census[n] += 1
        report.violations.extend({"tree": edge_list_string(T), "detail": d} for d in details)
    if claim == "thm-2.2":
        for G in random_non_trees(RANDOM_GRAPHS, SEED, p):
            report.checked += 1
            details, _ = _check_thm_2_2(G, p)
            report.violations.extend({"tree": edge_list_string(G), "detail": d} for d in details)
    if all(r is None for _, _, r in results):
        report.census = {}
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# --- structural checks ---------------------------------------------------------------------


def _split_at(T: Graph, x: int):
    """Components of T - x, keyed by the neighbour of x they contain."""
    parts = {}
    for y in T.adjacency[x]:
        side = sorted(component_of(T, x, y))
        H, ids = T.induced(side)
        parts[y] = (H, ids, ids.index(y))
    return parts


def split_deficiency_profiles(T: Graph, p: int, x: int, D: frozenset[int]) -> tuple[np.ndarray, np.ndarray]:
    """Least total deficiency of X ⊆ V - x by size, split by whether X matches D's
    count on every component of T - x.

    Returns ``(matching, deviating)`` arrays indexed by ``|X|``.  With x outside
    X each component's deficiency is self-contained; only x's own shortfall
    depends on how many neighbours of x lie in X.
    """
    # state: (neighbours of x in X capped at p, deviated) -> size-indexed profile
    states = {(0, False): np.array([0], dtype=np.int64)}
    for y, (H, ids, root) in sorted(_split_at(T, x).items()):
        target = len(D & set(ids))
        t_in, t_out = eng.tree_eta_tables(H, p, root)
        new: dict = {}
        for (c, dev), prof in states.items():
            for y_in, table in ((True, t_in), (False, t_out)):
                same = np.full(len(table), eng.INF, dtype=np.int64)
                if target < len(table):
                    same[target] = table[target]
                other = table.copy()
                if target < len(table):
                    other[target] = eng.INF
                for deviates, part in ((dev, same), (True, other)):
                    key = (min(p, c + y_in), deviates)
                    combined = eng._minplus(prof, part)
                    new[key] = combined if key not in new else eng._pad_min(new[key], combined)
        states = new
    size = max(len(v) for v in states.values())
    matching = np.full(size, eng.INF, dtype=np.int64)
    deviating = matching.copy()
    for (c, dev), prof in states.items():
        total = eng._pad(prof, size) + max(0, p - c)
        target = deviating if dev else matching
        np.minimum(target, np.minimum(total, eng.INF), out=target)
    return matching, deviating


def structural_property_checks(T: Graph, p: int) -> list[tuple[str, str, str]]:
    """Local structure of a tree with r_p(T) = p + 1.

    Returns ``(claim, status, detail)`` triples with status ``pass``, ``fail``,
    ``skipped`` or ``expected`` (a claim stated only for p >= 3 failing at p = 2).
    Claims: ``thm-3.3i`` and ``thm-3.3i-moreover`` for each private neighbour y of
    some x in the unique minimum set, ``thm-3.3ii`` for the other neighbours, and
    ``lem-3.4`` / ``thm-3.5`` for each x whose mu value is at least p + 2.
    """
    if p < 2:
        raise PreconditionError("structural checks need p >= 2")
    r = _r(T, p)
    if r != p + 1:
        return [("all", "skipped", f"r_p(T) = {r}, not p + 1 = {p + 1}")]
    cert = gamma_p(T, p)
    D = cert.witness
    gamma = cert.value
    out: list[tuple[str, str, str]] = []
    for x in sorted(D):
        pn = private_neighbors(T, p, D, x)
        parts = _split_at(T, x)
        for y in sorted(T.adjacency[x]):
            H, ids, root = parts[y]
            DH = frozenset(i for i, v in enumerate(ids) if v in D)
            where = f"x={x}, y={y}"
            if y in pn:
                is_star = H.n == p and H.degree(root) == p - 1
                ok = is_star
                if not is_star:
                    g_h, eta_h = eta_value(H, p)
                    r_h = 0 if g_h <= p else eta_h
                    ok = r_h == 1 and len(DH) < g_h and eta_local(H, p, DH, range(H.n)) == eta_h
                out.append(("thm-3.3i", "pass" if ok else "fail", where))
                prof = eng.tree_eta_profile(H, p, 1 << root, 0)
                k = len(DH)
                least = int(prof[k]) if k < len(prof) else eng.INF
                ok = least >= p - 1
                out.append(("thm-3.3i-moreover", "pass" if ok else "fail", f"{where}: min = {least}"))
            else:
                g_h, eta_h = eta_value(H, p)
                r_h = 0 if g_h <= p else eta_h
                sub = gamma_p(H, p)
                ok = r_h == p + 1 and sub.unique and sub.witness == DH
                out.append(("thm-3.3ii", "pass" if ok else "fail", f"{where}: r_p(T_y) = {r_h}"))
        mu = mu_point(T, p, D, x)
        if mu < p + 2:
            continue
        matching, deviating = split_deficiency_profiles(T, p, x, D)
        low = min(int(matching[:gamma].min()), int(deviating[:gamma].min()))
        status = "pass" if low >= p + 2 else ("expected" if p < 3 else "fail")
        out.append(("thm-3.5", status, f"x={x}: least deficiency avoiding x = {low}"))
        bad = bool(np.any(deviating[:gamma] == p + 1))
        status = "pass" if not bad else ("expected" if p < 3 else "fail")
        out.append(("lem-3.4", status, f"x={x}: deviating X with deficiency p + 1 {'exists' if bad else 'absent'}"))
    return out


# --- the tree of the private-neighbour counterexample ----------------------------------------

FIGURE1_X = frozenset({0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 19, 21, 22, 24, 26, 29})
FIGURE1_CENTRE, FIGURE1_X1, FIGURE1_X2 = 5, 6, 4


def figure1_tree() -> Graph:
    text = resources.files("preinforce").joinpath("fixtures/figure1.txt").read_text()
    return parse_edge_list(text)


def figure1_values() -> dict[str, int]:
    T = figure1_tree()
    p = 2
    cert = gamma_p(T, p)
    D = cert.witness
    T1 = component_of(T, FIGURE1_CENTRE, FIGURE1_X1)
    T2 = component_of(T, FIGURE1_CENTRE, FIGURE1_X2)
    return {
        "n": T.n,
        "gamma_2": cert.value,
        "r_2": r_p(T, p).value,
        "|X|": len(FIGURE1_X),
        "eta_2(V,X)": eta_local(T, p, FIGURE1_X, range(T.n)),
        "mu_2(x,D)": mu_point(T, p, D, FIGURE1_CENTRE),
        "|X∩T1|": len(FIGURE1_X & T1),
        "|X∩T2|": len(FIGURE1_X & T2),
        "|D∩T1|": len(D & T1),
        "|D∩T2|": len(D & T2),
    }


FIGURE1_EXPECTED = {
    "n": 31,
    "gamma_2": 17,
    "r_2": 3,
    "|X|": 16,
    "eta_2(V,X)": 3,
    "mu_2(x,D)": 4,
    "|X∩T1|": 7,
    "|X∩T2|": 9,
    "|D∩T1|": 8,
    "|D∩T2|": 8,
}


def figure1_fixture_check() -> VerificationReport:
    start = time.perf_counter()
    T = figure1_tree()
    report = VerificationReport("fig-1", 2, T.n)
    values = figure1_values()
    for key, want in FIGURE1_EXPECTED.items():
        report.checked += 1
        if values[key] != want:
            report.violations.append(
                {"tree": edge_list_string(T), "detail": f"{key} = {values[key]}, expected {want}"}
            )
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


__all__ = [
    "CLAIMS",
    "VerificationReport",
    "figure1_fixture_check",
    "figure1_tree",
    "figure1_values",
    "random_non_trees",
    "run_theorem_suite",
    "split_deficiency_profiles",
    "structural_property_checks",
]
