"""Graphs on dense vertex ids, tree utilities, canonical codes and tree generators.

Vertex sets are plain ``frozenset`` objects over ``0..n-1``.  Internally the
search engines convert them to integer bitmasks (``Graph.masks``).
"""
from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .exceptions import GraphError, NotATreeError

VertexSet = frozenset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.  Build
    instances through :func:`from_edge_list`, which validates the input.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an integer bitmask."""
        out = []
        for nbrs in self.adjacency:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            out.append(mask)
        return tuple(out)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if len(self.adjacency[v]) == 1)

    def vertices(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        """Return ``G + B`` for a set ``B`` of non-edges."""
        return from_edge_list(self.n, list(self.edges) + list(extra))

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, relabelled to ``0..k-1``.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        return from_edge_list(len(old), edges), old

    def __str__(self) -> str:
        return edge_list_string(self)


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    >>> from_edge_list(3, [(0, 1), (1, 2)]).edges
    ((0, 1), (1, 2))
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an id outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at ({u}, {v})")
        if v in nbrs[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def check_vertex_set(G: Graph, S: Iterable[int], name: str = "vertex set") -> frozenset[int]:
    S = frozenset(S)
    bad = [v for v in S if not (0 <= v < G.n)]
    if bad:
        raise GraphError(f"{name} contains ids outside 0..{G.n - 1}: {sorted(bad)}")
    return S


def to_mask(S: Iterable[int]) -> int:
    mask = 0
    for v in S:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in G.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == G.n


def is_tree(G: Graph) -> bool:
    """True iff ``G`` is connected with exactly ``n-1`` edges."""
    return G.n >= 1 and G.m == G.n - 1 and is_connected(G)


def require_tree(G: Graph) -> None:
    if not is_tree(G):
        raise NotATreeError("input graph is not a tree")


def component_of(G: Graph, x: int, y: int) -> frozenset[int]:
    """Vertex set of the component of ``G - x`` that contains ``y``."""
    if not (0 <= x < G.n and 0 <= y < G.n) or not G.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is not an edge")
    seen = {y}
    stack = [y]
    while stack:
        v = stack.pop()
        for u in G.adjacency[v]:
            if u != x and u not in seen:
                seen.add(u)
                stack.append(u)
    return frozenset(seen)


def complement_edges(G: Graph) -> list[tuple[int, int]]:
    """All non-adjacent pairs ``(u, v)`` with ``u < v``, lexicographically ordered."""
    return [(u, v) for u, v in combinations(range(G.n), 2) if not G.has_edge(u, v)]


@dataclass(frozen=True)
class RootedView:
    """A tree hung from ``root``; ``parent[root]`` is ``None``."""

    root: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]  # BFS order from the root

    def descendants(self, x: int) -> frozenset[int]:
        """D(x): strict descendants of ``x``."""
        out = []
        stack = list(self.children[x])
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self.children[v])
        return frozenset(out)

    def closed_descendants(self, x: int) -> frozenset[int]:
        """D[x] = D(x) together with ``x``."""
        return self.descendants(x) | {x}

    def heights(self) -> list[int]:
        """Longest downward distance from each vertex to a vertex of D[x]."""
        h = [0] * len(self.parent)
        for v in reversed(self.order):
            for c in self.children[v]:
                h[v] = max(h[v], h[c] + 1)
        return h


def rooted(T: Graph, root: int) -> RootedView:
    require_tree(T)
    parent: list[int | None] = [None] * T.n
    children: list[list[int]] = [[] for _ in range(T.n)]
    order = [root]
    seen = [False] * T.n
    seen[root] = True
    q = deque([root])
    while q:
        v = q.popleft()
        for u in T.adjacency[v]:
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                children[v].append(u)
                order.append(u)
                q.append(u)
    return RootedView(root, tuple(parent), tuple(tuple(c) for c in children), tuple(order))


def tree_centers(T: Graph) -> list[int]:
    """The one or two central vertices of a tree (repeated leaf stripping)."""
    require_tree(T)
    if T.n <= 2:
        return list(range(T.n))
    deg = [T.degree(v) for v in range(T.n)]
    layer = [v for v in range(T.n) if deg[v] == 1]
    remaining = T.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in T.adjacency[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_codes(adjacency: Sequence[Sequence[int]], root: int, alive=None) -> dict[int, bytes]:
    """AHU codes of every rooted subtree when hanging the tree from ``root``."""
    parent = {root: -1}
    order = [root]
    for v in order:
        for u in adjacency[v]:
            if u != parent[v] and (alive is None or u in alive):
                parent[u] = v
                order.append(u)
    codes: dict[int, bytes] = {}
    kids: dict[int, list[bytes]] = {v: [] for v in order}
    for v in reversed(order):
        code = b"(" + b"".join(sorted(kids[v])) + b")"
        codes[v] = code
        if parent[v] >= 0:
            kids[parent[v]].append(code)
    return codes


def rooted_code(T: Graph, root: int, alive=None) -> bytes:
    """Canonical code of ``T`` (or of the subtree on ``alive``) rooted at ``root``."""
    return _rooted_codes(T.adjacency, root, alive)[root]


def canonical_code(T: Graph) -> bytes:
    """Isomorphism-invariant code of a tree, rooted at its centre.

    For bicentral trees the smaller of the two centre-rooted codes is used.
    """
    return min(rooted_code(T, c) for c in tree_centers(T))


def canonical_relabel(T: Graph) -> Graph:
    """Isomorphic copy of ``T`` whose labels depend only on its isomorphism class."""
    best = min(tree_centers(T), key=lambda c: rooted_code(T, c))
    codes = _rooted_codes(T.adjacency, best)
    new_id = {best: 0}
    q = deque([best])
    while q:
        v = q.popleft()
        kids = [u for u in T.adjacency[v] if u not in new_id]
        for u in sorted(kids, key=lambda u: (codes[u], u)):
            new_id[u] = len(new_id)
            q.append(u)
    return from_edge_list(T.n, [(new_id[u], new_id[v]) for u, v in T.edges])


@lru_cache(maxsize=None)
def _trees_of_order(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (from_edge_list(1, []),)
    found: dict[bytes, Graph] = {}
    for T in _trees_of_order(n - 1):
        for v in range(n - 1):
            G = from_edge_list(n, list(T.edges) + [(v, n - 1)])
            code = canonical_code(G)
            if code not in found:
                found[code] = G
    return tuple(canonical_relabel(found[c]) for c in sorted(found))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Yield one tree per isomorphism class on ``n`` vertices.

    Trees come out sorted by canonical code and canonically labelled, so the
    stream is fully deterministic.
    """
    if n < 1:
        raise ValueError("enumerate_trees needs n >= 1")
    yield from _trees_of_order(n)


def prufer_decode(word: Sequence[int], n: int) -> Graph:
    """Labelled tree on ``n >= 2`` vertices encoded by a Prüfer word of length ``n-2``."""
    if len(word) != n - 2:
        raise ValueError("Prüfer word must have length n - 2")
    degree = [1] * n
    for v in word:
        degree[v] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for v in word:
        leaf = heapq.heappop(heap)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(heap, v)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return from_edge_list(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    """Uniformly random labelled tree (random Prüfer word), reproducible from ``seed``."""
    if n < 1:
        raise ValueError("random_tree needs n >= 1")
    if n == 1:
        return from_edge_list(1, [])
    rng = random.Random(seed)
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def random_connected_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """Random spanning tree plus ``extra_edges`` random non-edges (capped by availability)."""
    rng = random.Random(seed)
    T = random_tree(n, rng.randrange(2**32))
    free = complement_edges(T)
    k = min(extra_edges, len(free))
    return T.add_edges(rng.sample(free, k))


# --- text formats -----------------------------------------------------------------


def format_edge_list(G: Graph, comment: str | None = None) -> str:
    """Edge-list text: optional ``#`` comments, a ``n m`` line, then ``u v`` lines."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{G.n} {G.m}")
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise GraphError("empty edge list")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (IndexError, ValueError) as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges but {len(edges)} follow")
    return from_edge_list(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(G: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_edge_list(G, comment))


def edge_list_string(G: Graph) -> str:
    """One-line form ``n:u-v,u-v,...`` used inside JSON reports."""
    return f"{G.n}:" + ",".join(f"{u}-{v}" for u, v in G.edges)


def parse_edge_list_string(s: str) -> Graph:
    head, _, body = s.partition(":")
    edges = [tuple(map(int, e.split("-"))) for e in body.split(",") if e]
    return from_edge_list(int(head), edges)


def to_dot(G: Graph, name: str = "G", highlight: Iterable[int] = ()) -> str:
    """Graphviz DOT text; vertices in ``highlight`` are drawn filled."""
    marked = set(highlight)
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        style = ' style=filled fillcolor=black fontcolor=white' if v in marked else ""
        lines.append(f'  {v} [label="{v}"{style}];')
    lines.extend(f"  {u} -- {v};" for u, v in G.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- small named graphs used throughout the tests and demos ----------------------------


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(t: int) -> Graph:
    """K_{1,t} with centre 0."""
    return from_edge_list(t + 1, [(0, i) for i in range(1, t + 1)])


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, list(combinations(range(n), 2)))
