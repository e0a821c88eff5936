"""The tree family built from K_{1,p} by the four attachment operations O1-O4.

Block labelling (also the order in which a step assigns new vertex ids):

* star ``K_{1,t}``: centre, then leaves;
* ``F`` (path on three vertices with p-1 leaves at both ends): centre, then for
  each end ``x_i`` the vertex ``x_i`` followed by its leaves;
* ``Ft`` (spider ``S_t`` with p-1 leaves at each foot): centre, then for each
  arm the middle vertex, the foot ``x_i`` and its leaves;
* ``spider``: centre, then (middle, foot) per arm;
* ``double_star``: the two centres, then the leaves of each centre in turn.

A step ``(op, y, t)`` attaches the block's centre to vertex ``y`` of the current
tree ``T_i`` (whose ids are kept) and numbers the block's vertices from
``|V(T_i)|`` upward in the order above.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable

from .deficiency import mu_point
from .domination import gamma_p, private_neighbors
from .exceptions import PreconditionError, SizeGuardError
from .graph_core import (
    Graph,
    canonical_code,
    check_vertex_set,
    from_edge_list,
    require_tree,
    rooted,
    rooted_code,
    star,
)

OPS = ("O1", "O2", "O3", "O4")


class TraceError(PreconditionError):
    """A construction step whose precondition does not hold."""

    def __init__(self, message: str, step: int | None = None):
        prefix = f"step {step}: " if step is not None else ""
        super().__init__(prefix + message)
        self.step = step


def _check_family_p(p: int) -> None:
    if p < 3:
        raise PreconditionError(f"the construction is only defined here for p >= 3, got p={p}")


# --- blocks ---------------------------------------------------------------------


def build_block(kind: str, p: int, t: int | None = None) -> tuple[Graph, frozenset[int]]:
    """A building block with vertex 0 as its centre, and its canonical dominating set.

    ``star`` is ``K_{1,t}`` (``t`` defaults to p) with its leaves as the set;
    ``F`` and ``Ft`` carry their unique minimum p-dominating sets.
    """
    edges: list[tuple[int, int]] = []
    black: set[int] = set()
    if kind == "star":
        t = p if t is None else t
        if t < 1:
            raise ValueError("a star needs t >= 1")
        G = star(t)
        return G, frozenset(range(1, t + 1))
    if kind == "double_star":
        edges.append((0, 1))
        nxt = 2
        for c in (0, 1):
            for _ in range(p):
                edges.append((c, nxt))
                black.add(nxt)
                nxt += 1
        return from_edge_list(nxt, edges), frozenset(black)
    if kind == "spider":
        if t is None or t < 2:
            raise ValueError("a spider needs t >= 2")
        nxt = 1
        for _ in range(t):
            edges += [(0, nxt), (nxt, nxt + 1)]
            nxt += 2
        G = from_edge_list(nxt, edges)
        cert = gamma_p(G, p)
        if not cert.unique:
            raise PreconditionError(f"spider S_{t} has no unique minimum {p}-dominating set")
        return G, cert.witness
    if p < 2:
        raise ValueError(f"block {kind!r} needs p >= 2")
    if kind == "F":
        black.add(0)
        nxt = 1
        for _ in range(2):
            end = nxt
            edges.append((0, end))
            nxt += 1
            for _ in range(p - 1):
                edges.append((end, nxt))
                black.add(nxt)
                nxt += 1
        return from_edge_list(nxt, edges), frozenset(black)
    if kind == "Ft":
        if t is None or t < p:
            raise ValueError(f"F_(t,p-1) needs t >= p, got t={t}")
        nxt = 1
        for _ in range(t):
            mid, foot = nxt, nxt + 1
            edges += [(0, mid), (mid, foot)]
            black.add(mid)
            nxt += 2
            for _ in range(p - 1):
                edges.append((foot, nxt))
                black.add(nxt)
                nxt += 1
        return from_edge_list(nxt, edges), frozenset(black)
    raise ValueError(f"unknown block kind {kind!r}")


def join_with_edge(G: Graph, x: int, H: Graph, y: int) -> Graph:
    """Disjoint union of G and H (H shifted by ``|V(G)|``) plus the edge ``x - y``."""
    if not (0 <= x < G.n and 0 <= y < H.n):
        raise ValueError("join vertex out of range")
    shift = G.n
    edges = list(G.edges) + [(u + shift, v + shift) for u, v in H.edges] + [(x, y + shift)]
    return from_edge_list(G.n + H.n, edges)


_BLOCK_OF_OP = {"O1": ("star", "p-1"), "O2": ("star", "p"), "O3": ("F", None), "O4": ("Ft", "t")}


def _block_for(op: str, p: int, t: int | None) -> tuple[Graph, frozenset[int]]:
    if op == "O1":
        return build_block("star", p, p - 1)
    if op == "O2":
        return build_block("star", p, p)
    if op == "O3":
        return build_block("F", p)
    if op == "O4":
        if t is None or t < p:
            raise TraceError(f"O4 needs t >= p, got t={t}")
        return build_block("Ft", p, t)
    raise TraceError(f"unknown operation {op!r}")


def op_violation(T: Graph, A: frozenset[int], p: int, op: str, y: int) -> str | None:
    """Why ``op`` may not be applied at ``y`` (``None`` when it may)."""
    if not 0 <= y < T.n:
        return f"attachment vertex {y} is not in the tree"
    if op in ("O1", "O3") and y not in A:
        return f"{op} needs y in A(T_i), but {y} is not"
    if op == "O2" and y in A:
        return f"O2 needs y outside A(T_i), but {y} is in it"
    if op == "O3":
        pn = len(private_neighbors(T, p, A, y))
        inside = sum(1 for u in T.adjacency[y] if u in A)
        need = min(p + 1, inside + 2)
        if pn < need:
            return f"O3 needs |PN_p(y, A, T_i)| >= {need}, but it is {pn}"
    if op not in OPS:
        return f"unknown operation {op!r}"
    return None


def apply_operation(
    T: Graph, A: Iterable[int], p: int, op: str, y: int, t: int | None = None
) -> tuple[Graph, frozenset[int]]:
    """One construction step: attach the op's block at ``y`` and extend the tracked set."""
    _check_family_p(p)
    A = check_vertex_set(T, A, "A")
    why = op_violation(T, A, p, op, y)
    if why:
        raise TraceError(why)
    block, black = _block_for(op, p, t)
    return join_with_edge(T, y, block, 0), A | {b + T.n for b in black}


# --- traces -------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    op: str
    y: int
    t: int | None = None


@dataclass(frozen=True)
class ConstructionTrace:
    p: int
    steps: tuple[Step, ...]

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "ops": [{"op": s.op, "y": s.y, "t": s.t} for s in self.steps]}
        )

    @classmethod
    def from_json(cls, text: str) -> "ConstructionTrace":
        data = json.loads(text)
        steps = tuple(Step(str(o["op"]), int(o["y"]), None if o.get("t") is None else int(o["t"])) for o in data["ops"])
        return cls(int(data["p"]), steps)


def initial_tree(p: int) -> tuple[Graph, frozenset[int]]:
    """T_0 = K_{1,p} (centre 0) with A(T_0) its leaves."""
    return build_block("star", p, p)


def replay_trace(trace: ConstructionTrace) -> tuple[Graph, frozenset[int]]:
    _check_family_p(trace.p)
    if not trace.steps:
        raise TraceError("a trace needs at least one step")
    T, A = initial_tree(trace.p)
    for i, s in enumerate(trace.steps):
        try:
            T, A = apply_operation(T, A, trace.p, s.op, s.y, s.t)
        except (TraceError, ValueError) as exc:
            raise TraceError(str(exc), step=i) from None
    return T, A


def applicable_steps(T: Graph, A: frozenset[int], p: int, t_max: int) -> list[Step]:
    out = []
    for y in range(T.n):
        if y in A:
            out.append(Step("O1", y))
            if op_violation(T, A, p, "O3", y) is None:
                out.append(Step("O3", y))
        else:
            out.append(Step("O2", y))
        out.extend(Step("O4", y, t) for t in range(p, t_max + 1))
    return out


def generate_member(p: int, ops: int, seed: int, t_max: int | None = None) -> tuple[Graph, ConstructionTrace]:
    """Random member built by ``ops`` steps, each drawn uniformly from the applicable ones."""
    _check_family_p(p)
    if ops < 1:
        raise ValueError("need at least one operation")
    t_max = p + 2 if t_max is None else t_max
    rng = random.Random(seed)
    T, A = initial_tree(p)
    steps = []
    for _ in range(ops):
        s = rng.choice(applicable_steps(T, A, p, t_max))
        T, A = apply_operation(T, A, p, s.op, s.y, s.t)
        steps.append(s)
    return T, ConstructionTrace(p, tuple(steps))


# --- recognition ------------------------------------------------------------------------


@dataclass(frozen=True)
class LayerPartition:
    """``layer[v]`` = greatest distance from v down to a vertex of D[v]."""

    root: int
    layer: tuple[int, ...]

    def members(self, i: int) -> list[int]:
        return [v for v, h in enumerate(self.layer) if h == i]


def layer_partition(T: Graph, root: int) -> LayerPartition:
    return LayerPartition(root, tuple(rooted(T, root).heights()))


def _block_order(T: Graph, x: int, B: frozenset[int], op: str) -> list[int]:
    """Vertices of a peeled block in builder order (ids of ``T``)."""
    nb = lambda v, skip: sorted(u for u in T.adjacency[v] if u in B and u != skip)  # noqa: E731
    order = [x]
    if op in ("O1", "O2"):
        order += nb(x, None)
    elif op == "O3":
        for arm in nb(x, None):
            order += [arm] + nb(arm, x)
    else:
        for mid in nb(x, None):
            (foot,) = nb(mid, x)
            order += [mid, foot] + nb(foot, mid)
    return order


def _is_base(H: Graph, D: frozenset[int], p: int) -> bool:
    if H.n != p + 1:
        return False
    centres = [v for v in range(H.n) if H.degree(v) == p]
    return len(centres) == 1 and D == frozenset(range(H.n)) - {centres[0]}


def _peel_once(H: Graph, D: frozenset[int], p: int):
    """Remove one pendant block following the case analysis for extremal trees.

    Returns ``(op, y, block_order, t)`` in the ids of ``H``, or ``None`` when no
    case applies (the tree is then not in the family).
    """
    if H.n < p + 2:
        return None
    r = min(H.leaves())
    view = rooted(H, r)
    h = view.heights()
    if h[r] < 3:
        return None
    V1 = [v for v in range(H.n) if h[v] == 1]
    if any(H.degree(v) not in (p, p + 1) for v in V1):
        return None
    big = [v for v in V1 if H.degree(v) == p + 1]
    if big:
        x = big[0]
        B = view.closed_descendants(x)
        return "O2", view.parent[x], _block_order(H, x, B, "O2"), None

    x = min(v for v in range(H.n) if h[v] == 3)
    w = min((c for c in view.children[x] if h[c] == 2), key=lambda c: (-H.degree(c), c))
    v = min(c for c in view.children[w] if h[c] == 1)
    if w not in D:
        return None
    mu = mu_point(H, p, D, w)
    if mu >= p + 2:
        return "O1", w, _block_order(H, v, view.closed_descendants(v), "O1"), None
    if mu != p + 1 or any(h[c] != 1 for c in view.children[w]):
        return None
    if len(view.children[w]) == 2 and x in D:
        return "O3", x, _block_order(H, w, view.closed_descendants(w), "O3"), None
    if len(view.children[w]) == 1 and x not in D and x not in private_neighbors(H, p, D, w):
        arms = view.children[x]
        if len(arms) < p or x == r:
            return None
        for m in arms:
            kids = view.children[m]
            if len(kids) != 1 or H.degree(m) != 2 or h[kids[0]] != 1 or H.degree(kids[0]) != p:
                return None
        B = view.closed_descendants(x)
        return "O4", view.parent[x], _block_order(H, x, B, "O4"), len(arms)
    return None


def _trace_from_peels(T: Graph, p: int, base: list[int], peels: list) -> ConstructionTrace | None:
    """Turn peeled blocks (outermost first) into a trace and check it replays to T exactly."""
    ids = {v: i for i, v in enumerate(base)}
    steps = []
    for op, y, order, t in reversed(peels):
        steps.append(Step(op, ids[y], t))
        for v in order:
            ids[v] = len(ids)
    trace = ConstructionTrace(p, tuple(steps))
    try:
        G, _ = replay_trace(trace)
    except TraceError:
        return None
    mapped = {tuple(sorted((ids[u], ids[v]))) for u, v in T.edges}
    if G.n != T.n or mapped != set(G.edges):
        return None
    return trace


def _base_order(T: Graph, alive: frozenset[int], p: int) -> list[int]:
    (centre,) = [v for v in alive if sum(1 for u in T.adjacency[v] if u in alive) == p]
    return [centre] + sorted(alive - {centre})


def recognize(T: Graph, p: int) -> ConstructionTrace | None:
    """A construction trace for ``T`` if it belongs to the family, else ``None``.

    The unique minimum p-dominating set of T is computed once; blocks are then
    peeled one at a time (largest-degree stem first, then the O1/O3/O4 cases
    read off a deepest path ``x w v u``).  Any trace found is replayed and
    compared edge-for-edge with T before it is returned.
    """
    require_tree(T)
    _check_family_p(p)
    cert = gamma_p(T, p)
    if not cert.unique or cert.value <= p:
        return None
    alive = frozenset(range(T.n))
    D = cert.witness
    peels = []
    while True:
        H, ids = T.induced(alive)
        DH = frozenset(i for i, v in enumerate(ids) if v in D)
        if _is_base(H, DH, p):
            break
        step = _peel_once(H, DH, p)
        if step is None:
            return None
        op, y, order, t = step
        order = [ids[v] for v in order]
        peels.append((op, ids[y], order, t))
        alive = alive - set(order)
        D = D - set(order)
    if not peels:
        return None
    return _trace_from_peels(T, p, _base_order(T, alive, p), peels)


def recognize_exhaustive(T: Graph, p: int, guard: int = 20) -> ConstructionTrace | None:
    """Reference recogniser: search every way of peeling pendant blocks.

    Uses only the family definition: a state is a subtree together with a
    candidate tracked set, and each operation's condition is checked against the
    tracked set of the smaller tree.  Exponential; refuses trees above ``guard``.
    """
    require_tree(T)
    _check_family_p(p)
    if T.n > guard:
        raise SizeGuardError("recognize_exhaustive", T.n, guard)
    templates = {
        rooted_code(build_block("star", p, p - 1)[0], 0): "O1",
        rooted_code(build_block("star", p, p)[0], 0): "O2",
        rooted_code(build_block("F", p)[0], 0): "O3",
    }
    for t in range(p, (T.n - 1) // (p + 1) + 1):
        templates[rooted_code(build_block("Ft", p, t)[0], 0)] = "O4"

    memo: dict[frozenset[int], dict] = {}

    def component(alive: frozenset[int], start: int, banned: int) -> frozenset[int]:
        seen = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in T.adjacency[a]:
                if b in alive and b != banned and b not in seen:
                    seen.add(b)
                    stack.append(b)
        return frozenset(seen)

    def reach(alive: frozenset[int]) -> dict:
        if alive in memo:
            return memo[alive]
        found: dict = {}
        if len(alive) == p + 1:
            degs = {v: sum(1 for u in T.adjacency[v] if u in alive) for v in alive}
            centres = [v for v, d in degs.items() if d == p]
            if len(centres) == 1:
                found[alive - {centres[0]}] = None
        for x in sorted(alive):
            for y in T.adjacency[x]:
                if y not in alive:
                    continue
                B = component(alive, x, y)
                rest = alive - B
                if len(rest) < p + 1:
                    continue
                op = templates.get(rooted_code(T, x, B))
                if op is None:
                    continue
                order = _block_order(T, x, B, op)
                t = (len(B) - 1) // (p + 1) if op == "O4" else None
                block, black = _block_for(op, p, t)
                A_block = frozenset(order[b] for b in black)
                H, ids = T.induced(rest)
                pos = {v: i for i, v in enumerate(ids)}
                for A_prev in reach(rest):
                    AH = frozenset(pos[v] for v in A_prev)
                    if op_violation(H, AH, p, op, pos[y]) is not None:
                        continue
                    A_new = A_prev | A_block
                    if A_new not in found:
                        found[A_new] = (op, y, order, t, rest, A_prev)
        memo[alive] = found
        return found

    everything = frozenset(range(T.n))
    options = {A: back for A, back in reach(everything).items() if back is not None}
    if not options:
        return None
    A = min(options, key=lambda s: tuple(sorted(s)))
    peels = []
    alive = everything
    back = options[A]
    while back is not None:
        op, y, order, t, rest, A_prev = back
        peels.append((op, y, order, t))
        alive, A = rest, A_prev
        back = memo[alive][A]
    return _trace_from_peels(T, p, _base_order(T, alive, p), peels)


def is_member(T: Graph, p: int) -> bool:
    return recognize(T, p) is not None


def trace_code(trace: ConstructionTrace) -> bytes:
    return canonical_code(replay_trace(trace)[0])
