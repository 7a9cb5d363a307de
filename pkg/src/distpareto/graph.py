"""Undirected simple graphs, named families, parsers, and distance-based metrics.

Vertices are always labeled 0..n-1.  Canonical labelings of the built-in
families (see :func:`make_family`) are fixed so that vertex subsets appearing
in reports are reproducible across runs:

* ``path``: vertices in path order, edges (i, i+1)
* ``cycle``: vertices in cycle order, edges (i, i+1 mod n)
* ``complete``: all pairs
* ``star``: center = vertex 0, leaves 1..n-1
* ``complete_bipartite`` (a, b): first part 0..a-1, second part a..a+b-1
* ``complete_minus_edge``: K_n minus {0, 1}
* ``complete_minus_two_nonincident_edges``: K_n minus {0, 1} and {2, 3}
* ``complete_minus_two_incident_edges``: K_n minus {0, 1} and {0, 2}
* ``clique_plus_pendant_p`` (w, p): clique 0..w-1 plus vertex w joined to 0..p-1
* ``star_plus_edge``: star with center 0 plus the edge {1, 2}
* ``wheel``: hub = vertex 0, rim cycle 1..n-1
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError, DisconnectedGraphError, GraphParseError

__all__ = [
    "Graph",
    "DistanceMatrix",
    "StructureSummary",
    "make_graph",
    "make_family",
    "FAMILY_NAMES",
    "parse_edge_list",
    "parse_graph6",
    "edge_list_text",
    "distance_matrix",
    "transmission",
    "wiener",
    "diameter",
    "clique_number",
    "structure_queries",
    "delete_edge",
    "delete_vertex",
    "coalesce",
]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph order must be positive, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) not sorted or out of range for n={self.n}")

    @property
    def size(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        """Neighbor lists, each sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        label = self.name or f"G{self.n}"
        return f"Graph({label}, n={self.n}, m={self.size})"


def make_graph(n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
    """Build a Graph, normalizing edge orientation and collapsing duplicates."""
    normalized = frozenset((min(u, v), max(u, v)) for u, v in edges)
    return Graph(n=n, edges=normalized, name=name)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Dense all-pairs shortest-path (hop) distances of a connected graph."""

    n: int
    d: np.ndarray  # (n, n) int64, symmetric, zero diagonal

    def __post_init__(self):
        self.d.setflags(write=False)


@dataclass(frozen=True)
class StructureSummary:
    degrees: tuple[int, ...]
    pendant_vertices: tuple[int, ...]
    quasipendant_vertices: tuple[int, ...]
    is_connected: bool
    is_tree: bool
    is_bipartite: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None


# ---------------------------------------------------------------------------
# Families


def _path(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def _cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def _complete(n: int) -> Graph:
    return make_graph(n, itertools.combinations(range(n), 2), name=f"K{n}")


def _star(n: int) -> Graph:
    if n < 2:
        raise ValueError("star needs n >= 2")
    return make_graph(n, [(0, i) for i in range(1, n)], name=f"S{n}")


def _complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs both parts nonempty")
    return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], name=f"K{a},{b}")


def _complete_minus_edge(n: int) -> Graph:
    if n < 3:
        raise ValueError("complete_minus_edge needs n >= 3 to stay connected")
    edges = set(itertools.combinations(range(n), 2)) - {(0, 1)}
    return make_graph(n, edges, name=f"K{n}-e")


def _complete_minus_two_nonincident_edges(n: int) -> Graph:
    if n < 4:
        raise ValueError("needs n >= 4 for two non-incident edges")
    edges = set(itertools.combinations(range(n), 2)) - {(0, 1), (2, 3)}
    return make_graph(n, edges, name=f"K{n}-2e")


def _complete_minus_two_incident_edges(n: int) -> Graph:
    if n < 4:
        raise ValueError("needs n >= 4 to stay connected")
    edges = set(itertools.combinations(range(n), 2)) - {(0, 1), (0, 2)}
    return make_graph(n, edges, name=f"K{n}-2e-inc")


def _clique_plus_pendant_p(w: int, p: int) -> Graph:
    if w < 1 or not (1 <= p <= w):
        raise ValueError("clique_plus_pendant_p needs 1 <= p <= w")
    edges = list(itertools.combinations(range(w), 2)) + [(i, w) for i in range(p)]
    return make_graph(w + 1, edges, name=f"K{w}^{p}")


def _star_plus_edge(n: int) -> Graph:
    if n < 3:
        raise ValueError("star_plus_edge needs n >= 3")
    edges = [(0, i) for i in range(1, n)] + [(1, 2)]
    return make_graph(n, edges, name=f"S{n}+")


def _wheel(n: int) -> Graph:
    if n < 4:
        raise ValueError("wheel needs n >= 4")
    rim = [(i, i + 1) for i in range(1, n - 1)] + [(1, n - 1)]
    hub = [(0, i) for i in range(1, n)]
    return make_graph(n, rim + hub, name=f"W{n}")


_FAMILIES = {
    "path": (_path, 1),
    "cycle": (_cycle, 1),
    "complete": (_complete, 1),
    "star": (_star, 1),
    "complete_bipartite": (_complete_bipartite, 2),
    "complete_minus_edge": (_complete_minus_edge, 1),
    "complete_minus_two_nonincident_edges": (_complete_minus_two_nonincident_edges, 1),
    "complete_minus_two_incident_edges": (_complete_minus_two_incident_edges, 1),
    "clique_plus_pendant_p": (_clique_plus_pendant_p, 2),
    "star_plus_edge": (_star_plus_edge, 1),
    "wheel": (_wheel, 1),
}

FAMILY_NAMES = tuple(sorted(_FAMILIES))


def make_family(family: str, params: Sequence[int]) -> Graph:
    """Construct a named graph family instance with its canonical labeling."""
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILY_NAMES)}")
    builder, arity = _FAMILIES[family]
    params = [int(p) for p in params]
    if len(params) != arity:
        raise ValueError(f"family {family!r} takes {arity} parameter(s), got {len(params)}")
    return builder(*params)


# ---------------------------------------------------------------------------
# Parsers


def parse_edge_list(text: str) -> Graph:
    """Parse the line-oriented edge-list format.

    First non-comment line is the order n; every following non-comment line is
    an edge ``u v``.  ``#`` starts a comment line.  Duplicate edges collapse.
    """
    n: int | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise GraphParseError(f"line {lineno}: expected vertex count, got {line!r}") from None
            if n < 1:
                raise GraphParseError(f"line {lineno}: vertex count must be positive, got {n}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: vertex out of range [0, {n}) in {line!r}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        edges.add((min(u, v), max(u, v)))
    if n is None:
        raise GraphParseError("empty input: no vertex count line")
    return make_graph(n, edges)


def edge_list_text(g: Graph) -> str:
    """Inverse of :func:`parse_edge_list` (labels preserved)."""
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


_G6_HEADER = ">>graph6<<"


def parse_graph6(line: str | bytes) -> Graph:
    """Parse one graph in graph6 format (optional ``>>graph6<<`` header).

    Bytes 63..126; upper triangle packed column-major, 6 bits per byte,
    big-endian within each byte.
    """
    if isinstance(line, bytes):
        line = line.decode("ascii", errors="replace")
    line = line.strip()
    if line.startswith(_G6_HEADER):
        line = line[len(_G6_HEADER):]
    if not line:
        raise GraphParseError("empty graph6 input")
    data = [ord(c) - 63 for c in line]
    if any(x < 0 or x > 63 for x in data):
        raise GraphParseError(f"graph6 byte out of range in {line!r}")
    if data[0] < 63:
        n = data[0]
        body = data[1:]
    else:
        if len(data) < 4:
            raise GraphParseError("truncated graph6 long-form order")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    if n < 1:
        raise GraphParseError("graph6 order must be positive")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphParseError(
            f"graph6 body length {len(body)} does not match order {n}"
        )
    bits = []
    for x in body:
        bits.extend((x >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return make_graph(n, edges)


# ---------------------------------------------------------------------------
# Metrics


def distance_matrix(g: Graph) -> DistanceMatrix:
    """BFS from every vertex; raises DisconnectedGraphError on disconnected input."""
    n = g.n
    adj = g.adjacency()
    d = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        d[s, s] = 0
        frontier = [s]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if d[s, y] < 0:
                        d[s, y] = level
                        nxt.append(y)
            frontier = nxt
        if (d[s] < 0).any():
            unreachable = int(np.argmin(d[s]))
            raise DisconnectedGraphError(s, unreachable)
    return DistanceMatrix(n=n, d=d)


def transmission(dm: DistanceMatrix, v: int) -> int:
    """Sum of distances from v to every other vertex."""
    if not (0 <= v < dm.n):
        raise IndexError(f"vertex {v} out of range")
    return int(dm.d[v].sum())


def wiener(dm: DistanceMatrix) -> int:
    """Half the sum of all pairwise distances."""
    return int(dm.d.sum()) // 2


def diameter(dm: DistanceMatrix) -> int:
    return int(dm.d.max())


def clique_number(g: Graph, limit: int = 32) -> int:
    """Exact clique number by bitset branch-and-bound; guarded by ``limit``."""
    if g.n > limit:
        raise CapExceededError(f"clique_number limited to n <= {limit}, got {g.n}")
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best = 0

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(cand & nbr[v], size + 1)

    expand((1 << g.n) - 1, 0)
    return best


def structure_queries(g: Graph) -> StructureSummary:
    """Degrees, pendant/quasipendant sets, tree/bipartite/connectivity flags."""
    deg = g.degrees()
    adj = g.adjacency()
    pendants = tuple(v for v in range(g.n) if deg[v] == 1)
    quasi = tuple(sorted({w for v in pendants for w in adj[v]}))

    color = [-1] * g.n
    components = 0
    bipartite = True
    for s in range(g.n):
        if color[s] >= 0:
            continue
        components += 1
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    bipartite = False
    connected = components == 1
    is_tree = connected and g.size == g.n - 1
    parts = None
    if bipartite:
        parts = (
            tuple(v for v in range(g.n) if color[v] == 0),
            tuple(v for v in range(g.n) if color[v] == 1),
        )
    return StructureSummary(
        degrees=tuple(deg),
        pendant_vertices=pendants,
        quasipendant_vertices=quasi,
        is_connected=connected,
        is_tree=is_tree,
        is_bipartite=bipartite,
        bipartition=parts,
    )


# ---------------------------------------------------------------------------
# Surgery


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Remove one edge; the result may be disconnected (validated on use)."""
    key = (min(e), max(e))
    if key not in g.edges:
        raise ValueError(f"edge {key} not in graph")
    return Graph(n=g.n, edges=g.edges - {key}, name=g.name and f"{g.name}-e")


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove a vertex; higher labels shift down by one."""
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} not in graph")

    def relabel(x: int) -> int:
        return x if x < v else x - 1

    edges = [(relabel(a), relabel(b)) for a, b in g.edges if v not in (a, b)]
    return make_graph(g.n - 1, edges, name=g.name and f"{g.name}-v{v}")


def coalesce(g: Graph, u: int, h: Graph, w: int) -> Graph:
    """Identify vertex u of g with vertex w of h.

    The result has g.n + h.n - 1 vertices: g keeps its labels; the vertices of
    h other than w take labels g.n, g.n+1, ... in increasing label order.
    """
    if not (0 <= u < g.n):
        raise ValueError(f"vertex {u} not in first graph")
    if not (0 <= w < h.n):
        raise ValueError(f"vertex {w} not in second graph")
    mapping = {}
    nxt = g.n
    for x in range(h.n):
        if x == w:
            mapping[x] = u
        else:
            mapping[x] = nxt
            nxt += 1
    edges = list(g.edges) + [(mapping[a], mapping[b]) for a, b in h.edges]
    return make_graph(g.n + h.n - 1, edges)
