"""Structural property checkers and exhaustive searches at desk scale.

The exhaustive machinery enumerates labeled graphs as edge bitmasks with a
connectivity filter, and labeled trees from Prufer sequences with
canonical-form deduplication (sorted rooted encodings at the tree centers).
Pareto counts are isomorphism-invariant, so searches aggregate on labeled
graphs and deduplicate only the witnesses.
"""

from __future__ import annotations

import heapq
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError
from .graph import Graph, coalesce, delete_edge, distance_matrix, make_graph, structure_queries
from .pareto import (
    DEFAULT_DEDUP_TOL,
    ParetoEigenpair,
    _perron_roots_for_rows,
    _subsets_by_size,
    rho2_fast,
)
from .spectral import spectral_radius_many

__all__ = [
    "PropertyReport",
    "ExtremalResult",
    "check_eigenvector_convexity",
    "check_min_structure",
    "check_edge_monotonicity",
    "check_coalescence_quasiconvexity",
    "check_tree_extremes",
    "extremal_search",
    "labeled_trees",
    "trees_upto_iso",
    "connected_graphs_labeled",
    "connected_graph_classes",
    "canonical_form",
    "is_isomorphic",
    "random_connected_graph",
]

_STRICT_TOL = 1e-9
_CONVEXITY_TOL = 1e-12
_ISO_MAX_ORDER = 8
_EXTREMAL_MAX_ORDER = 7
_TREES_MAX_ORDER = 9


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    instance: str
    holds: bool
    counterexample: dict | None = None
    inconclusive: bool = False
    hypothesis_failed: bool = False
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExtremalResult:
    order: int
    max_count: int
    witnesses: tuple[Graph, ...]
    graphs_scanned: int


def _describe(g: Graph) -> str:
    return g.name or f"n={g.n}, edges={g.sorted_edges()}"


# ---------------------------------------------------------------------------
# Tree enumeration (Prufer sequences + canonical rooted encodings)


def _prufer_to_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def labeled_trees(n: int):
    """Yield every labeled tree on n vertices (n^(n-2) of them)."""
    if n < 2:
        raise ValueError("labeled_trees needs n >= 2")
    if n == 2:
        yield make_graph(2, [(0, 1)])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        yield make_graph(n, _prufer_to_edges(seq, n))


def _tree_centers(n: int, adj: list[list[int]]) -> list[int]:
    if n == 1:
        return [0]
    degree = [len(a) for a in adj]
    layer = [v for v in range(n) if degree[v] == 1]
    removed = len(layer)
    while removed < n:
        nxt = []
        for v in layer:
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        if not nxt:
            break
        removed += len(nxt)
        layer = nxt
    return sorted(layer)


def _rooted_code(root: int, parent: int, adj: list[list[int]]) -> str:
    children = sorted(
        _rooted_code(w, root, adj) for w in adj[root] if w != parent
    )
    return "(" + "".join(children) + ")"


def tree_canonical_code(g: Graph) -> str:
    """Canonical encoding of a tree: minimal rooted code over its centers."""
    adj = g.adjacency()
    centers = _tree_centers(g.n, adj)
    return min(_rooted_code(c, -1, adj) for c in centers)


def trees_upto_iso(n: int) -> list[Graph]:
    """One representative per isomorphism class of trees on n vertices."""
    if not (1 <= n <= _TREES_MAX_ORDER):
        raise CapExceededError(f"tree enumeration limited to n <= {_TREES_MAX_ORDER}")
    if n == 1:
        return [make_graph(1, [])]
    out: dict[str, Graph] = {}
    for t in labeled_trees(n):
        code = tree_canonical_code(t)
        if code not in out:
            out[code] = t
    return [out[code] for code in sorted(out)]


# ---------------------------------------------------------------------------
# Labeled / unlabeled connected graph enumeration


def _edge_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _mask_to_graph(mask: int, n: int, pairs: list[tuple[int, int]]) -> Graph:
    return make_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def _connected_masks(n: int) -> list[int]:
    """Edge bitmasks of all connected labeled graphs on n vertices."""
    pairs = _edge_pairs(n)
    full = (1 << n) - 1
    out = []
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        if seen == full:
            out.append(mask)
    return out


def connected_graphs_labeled(n: int):
    """Yield every connected labeled graph on n vertices (n <= 7)."""
    if not (1 <= n <= _EXTREMAL_MAX_ORDER):
        raise CapExceededError(f"labeled sweep limited to n <= {_EXTREMAL_MAX_ORDER}")
    pairs = _edge_pairs(n)
    for mask in _connected_masks(n):
        yield _mask_to_graph(mask, n, pairs)


def _perm_edge_columns(n: int) -> np.ndarray:
    """(n!, C(n,2)) table: column j of a mask under each vertex permutation."""
    pairs = _edge_pairs(n)
    index = {p: i for i, p in enumerate(pairs)}
    table = []
    for perm in itertools.permutations(range(n)):
        table.append([index[tuple(sorted((perm[u], perm[v])))] for (u, v) in pairs])
    return np.array(table, dtype=np.intp)


def _canonical_mask_values(masks: list[int], n: int) -> np.ndarray:
    """Vectorized canonical form (minimal packed bitmask over permutations)."""
    npairs = n * (n - 1) // 2
    bits = np.zeros((len(masks), npairs), dtype=np.int64)
    arr = np.array(masks, dtype=np.int64)
    for j in range(npairs):
        bits[:, j] = (arr >> j) & 1
    pow2 = (1 << np.arange(npairs, dtype=np.int64))
    table = _perm_edge_columns(n)
    best = np.full(len(masks), np.iinfo(np.int64).max, dtype=np.int64)
    for row in table:
        packed = bits[:, row] @ pow2
        np.minimum(best, packed, out=best)
    return best


def canonical_form(g: Graph) -> tuple[tuple[int, int], ...]:
    """Lexicographically minimal edge set over all vertex relabelings (n <= 8)."""
    if g.n > _ISO_MAX_ORDER:
        raise CapExceededError(f"canonical_form limited to n <= {_ISO_MAX_ORDER}")
    best = None
    edges = g.sorted_edges()
    for perm in itertools.permutations(range(g.n)):
        relabeled = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or relabeled < best:
            best = relabeled
    return best


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.size != b.size:
        return False
    return canonical_form(a) == canonical_form(b)


def connected_graph_classes(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs (n <= 6)."""
    if not (1 <= n <= 6):
        raise CapExceededError("isomorphism-class sweep limited to n <= 6")
    if n == 1:
        return [make_graph(1, [])]
    pairs = _edge_pairs(n)
    masks = _connected_masks(n)
    canon = _canonical_mask_values(masks, n)
    _, first = np.unique(canon, return_index=True)
    return [_mask_to_graph(masks[i], n, pairs) for i in sorted(first)]


def random_connected_graph(n: int, rng: np.random.Generator, extra_edge_prob: float = 0.3) -> Graph:
    """Random spanning tree (uniform via Prufer) plus Bernoulli extra edges."""
    if n < 2:
        raise ValueError("random_connected_graph needs n >= 2")
    seq = tuple(int(x) for x in rng.integers(0, n, size=max(0, n - 2)))
    edges = set(_prufer_to_edges(seq, n)) if n > 2 else {(0, 1)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < extra_edge_prob:
            edges.add((u, v))
    return make_graph(n, edges)


# ---------------------------------------------------------------------------
# Property checkers


def check_eigenvector_convexity(t: Graph, pair: ParetoEigenpair) -> PropertyReport:
    """Strict convexity of a Pareto eigenvector on the forest induced by its support.

    For every path i ~ j ~ k inside the support, 2 x_j < x_i + x_k must hold
    strictly.  Zero Pareto value (singleton support) holds vacuously.
    """
    if not structure_queries(t).is_tree:
        raise ValueError("convexity checker requires a tree")
    instance = f"{_describe(t)}, support={pair.support}"
    if pair.value <= _CONVEXITY_TOL:
        return PropertyReport(
            property_id="eigenvector_convexity",
            instance=instance,
            holds=True,
            details={"vacuous": True},
        )
    support = set(pair.support)
    adj = t.adjacency()
    x = pair.vector
    checked = 0
    for j in pair.support:
        nbrs = [w for w in adj[j] if w in support]
        for i, k in itertools.combinations(nbrs, 2):
            checked += 1
            margin = x[i] + x[k] - 2.0 * x[j]
            if margin <= _CONVEXITY_TOL:
                return PropertyReport(
                    property_id="eigenvector_convexity",
                    instance=instance,
                    holds=False,
                    counterexample={
                        "path": (i, j, k),
                        "values": (float(x[i]), float(x[j]), float(x[k])),
                        "margin": float(margin),
                    },
                )
    return PropertyReport(
        property_id="eigenvector_convexity",
        instance=instance,
        holds=True,
        details={"paths_checked": checked},
    )


def _is_strictly_quasiconvex(t: Graph, f: np.ndarray) -> tuple[bool, dict | None]:
    adj = t.adjacency()
    for j in range(t.n):
        for i, k in itertools.combinations(adj[j], 2):
            if not f[j] < max(f[i], f[k]):
                return False, {"path": (i, j, k), "values": (float(f[i]), float(f[j]), float(f[k]))}
    return True, None


def check_min_structure(t: Graph, f) -> PropertyReport:
    """Minimizer structure of a strictly (quasi)convex vertex function on a tree.

    Verifies the hypothesis first (strict convexity implies strict
    quasiconvexity, so the latter is checked); on success asserts that the
    minimum is attained at one vertex or two adjacent vertices and that the
    function strictly increases along every path leaving the minimizer set.
    """
    if not structure_queries(t).is_tree:
        raise ValueError("min-structure checker requires a tree")
    values = np.asarray(f, dtype=np.float64)
    if values.shape != (t.n,):
        raise ValueError(f"expected {t.n} vertex values, got shape {values.shape}")
    instance = f"{_describe(t)}, f={[float(v) for v in values]}"
    ok, witness = _is_strictly_quasiconvex(t, values)
    if not ok:
        return PropertyReport(
            property_id="min_structure",
            instance=instance,
            holds=False,
            hypothesis_failed=True,
            counterexample=witness,
        )
    fmin = float(values.min())
    tol = _CONVEXITY_TOL * max(1.0, abs(fmin))
    argmin = [v for v in range(t.n) if values[v] <= fmin + tol]
    if len(argmin) > 2 or (len(argmin) == 2 and not t.has_edge(*argmin)):
        return PropertyReport(
            property_id="min_structure",
            instance=instance,
            holds=False,
            counterexample={"minimizers": argmin},
        )
    adj = t.adjacency()
    seen = set(argmin)
    frontier = list(argmin)
    while frontier:
        nxt = []
        for p in frontier:
            for c in adj[p]:
                if c in seen:
                    continue
                if not values[c] > values[p]:
                    return PropertyReport(
                        property_id="min_structure",
                        instance=instance,
                        holds=False,
                        counterexample={
                            "edge": (p, c),
                            "values": (float(values[p]), float(values[c])),
                        },
                    )
                seen.add(c)
                nxt.append(c)
        frontier = nxt
    return PropertyReport(
        property_id="min_structure",
        instance=instance,
        holds=True,
        details={"minimizers": argmin},
    )


def check_edge_monotonicity(g: Graph, e: tuple[int, int]) -> PropertyReport:
    """Deleting an edge (keeping the graph connected) cannot lower rho2."""
    g2 = delete_edge(g, e)
    before, _ = rho2_fast(g)
    after, _ = rho2_fast(g2)  # raises DisconnectedGraphError when g-e splits
    scale = max(1.0, abs(before))
    holds = after >= before - _STRICT_TOL * scale
    relation = "equal" if abs(after - before) <= _STRICT_TOL * scale else (
        "strict_increase" if after > before else "decrease"
    )
    report = PropertyReport(
        property_id="edge_monotonicity",
        instance=f"{_describe(g)}, e={tuple(sorted(e))}",
        holds=holds,
        counterexample=None
        if holds
        else {"edge": tuple(sorted(e)), "rho2_before": before, "rho2_after": after},
        details={"rho2_before": before, "rho2_after": after, "relation": relation},
    )
    return report


def check_coalescence_quasiconvexity(t: Graph, h: Graph, w: int) -> PropertyReport:
    """Quasiconvexity of rho2 over the attachment vertex of a fixed graph.

    For every vertex i of the tree t, build the coalescence of t at i with h
    at w.  Asserts rho2 is strictly quasiconvex along t and, for every common
    deletion vertex u, the one-sided convexity
    rho(D(G^i) - u) + rho(D(G^k) - u) >= 2 rho(D(G^j) - u) on paths i ~ j ~ k.
    """
    if not structure_queries(t).is_tree or t.n < 3:
        raise ValueError("needs a tree with at least 3 vertices")
    st_h = structure_queries(h)
    if not st_h.is_connected or h.n < 2:
        raise ValueError("attachment graph must be connected with >= 2 vertices")
    total = t.n + h.n - 1
    graphs = [coalesce(t, i, h, w) for i in range(t.n)]
    r2 = np.array([rho2_fast(gi)[0] for gi in graphs])
    # rho of every single-vertex deletion, per coalescence point
    deletion_rho = np.empty((t.n, total))
    rows = np.array(
        [[x for x in range(total) if x != u] for u in range(total)], dtype=np.intp
    )
    for i, gi in enumerate(graphs):
        dmat = distance_matrix(gi).d.astype(np.float64)
        deletion_rho[i] = _perron_roots_for_rows(dmat, rows)

    instance = f"tree {_describe(t)} x attachment {_describe(h)} at {w}"
    adj = t.adjacency()
    inconclusive = False
    checked = 0
    for j in range(t.n):
        for i, k in itertools.combinations(adj[j], 2):
            checked += 1
            gap = max(r2[i], r2[k]) - r2[j]
            scale = max(1.0, abs(r2[j]))
            if gap <= -_STRICT_TOL * scale:
                return PropertyReport(
                    property_id="coalescence_quasiconvexity",
                    instance=instance,
                    holds=False,
                    counterexample={
                        "path": (i, j, k),
                        "rho2": (float(r2[i]), float(r2[j]), float(r2[k])),
                    },
                )
            if gap <= _STRICT_TOL * scale:
                inconclusive = True
            for u in range(total):
                s = deletion_rho[i, u] + deletion_rho[k, u] - 2.0 * deletion_rho[j, u]
                if s < -_STRICT_TOL * max(1.0, abs(deletion_rho[j, u])):
                    return PropertyReport(
                        property_id="coalescence_quasiconvexity",
                        instance=instance,
                        holds=False,
                        counterexample={
                            "path": (i, j, k),
                            "deletion_vertex": u,
                            "sum_minus_twice_middle": float(s),
                        },
                    )
    return PropertyReport(
        property_id="coalescence_quasiconvexity",
        instance=instance,
        holds=True,
        inconclusive=inconclusive,
        details={"paths_checked": checked, "rho2_by_vertex": [float(v) for v in r2]},
    )


def check_tree_extremes(n: int) -> PropertyReport:
    """rho2 over all trees of order n: maximized by the path, minimized by the star."""
    if not (3 <= n <= _TREES_MAX_ORDER):
        raise CapExceededError(f"tree extremes need 3 <= n <= {_TREES_MAX_ORDER}")
    trees = trees_upto_iso(n)
    values = [rho2_fast(t)[0] for t in trees]
    degs = [tuple(sorted(t.degrees())) for t in trees]
    path_sig = tuple(sorted([1, 1] + [2] * (n - 2)))
    star_sig = tuple(sorted([n - 1] + [1] * (n - 1)))
    path_idx = degs.index(path_sig)
    star_idx = degs.index(star_sig)
    instance = f"all {len(trees)} trees of order {n}"
    vmax, vmin = max(values), min(values)
    problems = []
    for idx, v in enumerate(values):
        scale = max(1.0, abs(vmax))
        if idx != path_idx and v >= vmax - _STRICT_TOL * scale:
            problems.append({"kind": "max_not_unique_to_path", "tree": _describe(trees[idx])})
        if idx != star_idx and v <= vmin + _STRICT_TOL * max(1.0, abs(vmin)):
            problems.append({"kind": "min_not_unique_to_star", "tree": _describe(trees[idx])})
    holds = values[path_idx] == vmax and values[star_idx] == vmin and not problems
    return PropertyReport(
        property_id="tree_extremes",
        instance=instance,
        holds=holds,
        counterexample=None if holds else {"problems": problems},
        details={
            "tree_count": len(trees),
            "path_rho2": float(values[path_idx]),
            "star_rho2": float(values[star_idx]),
        },
    )


# ---------------------------------------------------------------------------
# Extremal search over connected graphs


def _bulk_distances(adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distances for a stack of adjacency matrices; flags connected graphs."""
    m, n, _ = adj.shape
    eye = np.eye(n, dtype=bool)
    dist = np.where(adj, 1, 0).astype(np.int64)
    reach = adj | eye
    step = (adj | eye).astype(np.uint8)
    for level in range(2, n):
        nxt = (reach.astype(np.uint8) @ step) > 0
        new = nxt & ~reach
        if not new.any():
            break
        dist[new] = level
        reach = nxt
    connected = reach.reshape(m, -1).all(axis=1)
    return dist, connected


def _bulk_pareto_counts(dmats: np.ndarray, tol: float) -> np.ndarray:
    """Distinct Pareto eigenvalue count per distance matrix in a stack."""
    m, n, _ = dmats.shape
    subsets = _subsets_by_size(n)
    blocks = [np.zeros((m, n))]  # singletons contribute value 0
    if n >= 2:
        s2 = subsets[2]
        blocks.append(dmats[:, s2[:, 0], s2[:, 1]].astype(np.float64))
    for k in range(3, n + 1):
        sk = subsets[k]
        sub = dmats[:, sk[:, :, None], sk[:, None, :]].astype(np.float64)
        flat = sub.reshape(-1, k, k)
        blocks.append(spectral_radius_many(flat).reshape(m, -1))
    vals = np.concatenate(blocks, axis=1)
    vals.sort(axis=1)
    gaps = vals[:, 1:] - vals[:, :-1]
    breaks = gaps > tol * np.maximum(1.0, vals[:, 1:])
    return 1 + breaks.sum(axis=1)


def extremal_search(
    n: int,
    dedup_iso: bool = True,
    jobs: int = 1,
    chunk_size: int = 4096,
) -> ExtremalResult:
    """Maximum number of distance Pareto eigenvalues over connected graphs of order n.

    Sweeps all 2^(n(n-1)/2) labeled graphs in chunks: connectivity and
    distances are computed with vectorized matrix powers, Perron roots are
    batched by subset size, and counts use the standard dedup tolerance.
    Witnesses attaining the maximum are returned, deduplicated by canonical
    form when ``dedup_iso`` is set.
    """
    if not (2 <= n <= _EXTREMAL_MAX_ORDER):
        raise CapExceededError(f"extremal search limited to 2 <= n <= {_EXTREMAL_MAX_ORDER}")
    pairs = _edge_pairs(n)
    npairs = len(pairs)
    total = 1 << npairs
    ui, vi = np.array([p[0] for p in pairs]), np.array([p[1] for p in pairs])

    def scan(span: tuple[int, int]) -> tuple[int, list[int], int]:
        lo, hi = span
        best = 0
        witnesses: list[int] = []
        scanned = 0
        for start in range(lo, hi, chunk_size):
            stop = min(start + chunk_size, hi)
            masks = np.arange(start, stop, dtype=np.int64)
            bits = ((masks[:, None] >> np.arange(npairs)) & 1).astype(bool)
            adj = np.zeros((len(masks), n, n), dtype=bool)
            adj[:, ui, vi] = bits
            adj[:, vi, ui] = bits
            dist, connected = _bulk_distances(adj)
            if not connected.any():
                continue
            scanned += int(connected.sum())
            counts = _bulk_pareto_counts(dist[connected], DEFAULT_DEDUP_TOL)
            cmax = int(counts.max())
            if cmax > best:
                best = cmax
                witnesses = []
            if cmax == best:
                sel = masks[connected][counts == best]
                witnesses.extend(int(x) for x in sel)
        return best, witnesses, scanned

    jobs = max(1, int(jobs))
    if jobs == 1:
        best, witness_masks, scanned = scan((0, total))
    else:
        bounds = np.linspace(0, total, jobs + 1).astype(int)
        spans = [(int(bounds[i]), int(bounds[i + 1])) for i in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(scan, spans))
        best = max(p[0] for p in parts)
        witness_masks = sorted(
            itertools.chain.from_iterable(p[1] for p in parts if p[0] == best)
        )
        scanned = sum(p[2] for p in parts)

    if dedup_iso and witness_masks:
        canon = _canonical_mask_values(witness_masks, n)
        _, first = np.unique(canon, return_index=True)
        witness_masks = [witness_masks[i] for i in sorted(first)]
    graphs = tuple(_mask_to_graph(m, n, pairs) for m in witness_masks)
    return ExtremalResult(order=n, max_count=best, witnesses=graphs, graphs_scanned=scanned)
