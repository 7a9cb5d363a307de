"""Distance Pareto spectra by principal-submatrix enumeration.

The set of distance Pareto (complementarity) eigenvalues of a connected graph
equals the set of Perron roots of all nonempty principal submatrices of its
distance matrix.  ``pareto_spectrum`` enumerates every vertex subset in
canonical order (ascending cardinality, lexicographic within a cardinality),
computes each Perron root with a full symmetric eigendecomposition batched by
subset size, then deduplicates with a relative tolerance.  The witness kept
for each distinct value is the first subset in canonical order, i.e. the
lexicographically smallest one of smallest cardinality.

``jobs > 1`` splits the canonical subset range into contiguous chunks handled
by worker threads (LAPACK releases the GIL); the deduplication runs on the
merged value array, so results are identical for every worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, EigensolverError
from .graph import Graph, distance_matrix
from .spectral import SymMatrix, spectral_radius, spectral_radius_many

__all__ = [
    "ParetoSpectrum",
    "ParetoEigenpair",
    "DEFAULT_DEDUP_TOL",
    "DEFAULT_MAX_ORDER",
    "pareto_spectrum",
    "pareto_count",
    "rho_k",
    "mu_k",
    "rho2_fast",
    "pareto_eigenpair",
    "distinct_submatrix_count",
]

DEFAULT_DEDUP_TOL = 1e-8
DEFAULT_MAX_ORDER = 20
_SUBMATRIX_COUNT_MAX_ORDER = 8


@dataclass(frozen=True)
class ParetoSpectrum:
    """Distinct distance Pareto eigenvalues of one graph, ascending."""

    values: tuple[float, ...]
    witnesses: tuple[tuple[int, ...], ...]
    dedup_tolerance: float
    graph_order: int

    @property
    def count(self) -> int:
        return len(self.values)

    def rho_k(self, k: int) -> float:
        """k-th largest distinct value (k = 1 is the spectral radius)."""
        if not (1 <= k <= self.count):
            raise ValueError(f"k must be in 1..{self.count}, got {k}")
        return self.values[-k]

    def mu_k(self, k: int) -> float:
        """k-th smallest distinct value (k = 1 is always 0)."""
        if not (1 <= k <= self.count):
            raise ValueError(f"k must be in 1..{self.count}, got {k}")
        return self.values[k - 1]


@dataclass(frozen=True, eq=False)
class ParetoEigenpair:
    """One Pareto eigenvalue with its supported nonnegative unit eigenvector."""

    value: float
    support: tuple[int, ...]
    vector: np.ndarray  # length graph_order, zero exactly off the support

    def __post_init__(self):
        self.vector.setflags(write=False)


# ---------------------------------------------------------------------------
# Subset machinery


def _subsets_by_size(n: int) -> dict[int, np.ndarray]:
    """Size -> (C(n,k), k) array of subsets, rows in lexicographic order."""
    out = {}
    for k in range(1, n + 1):
        out[k] = np.array(list(itertools.combinations(range(n), k)), dtype=np.intp)
    return out


def _perron_roots_for_rows(dmat: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Perron roots of dmat restricted to each index row of ``rows``."""
    m, k = rows.shape
    if k == 1:
        return np.zeros(m)
    if k == 2:
        return dmat[rows[:, 0], rows[:, 1]].astype(np.float64)
    subs = dmat[rows[:, :, None], rows[:, None, :]]
    return spectral_radius_many(subs)


def _all_subset_values(dmat: np.ndarray, subsets: dict[int, np.ndarray], jobs: int) -> np.ndarray:
    """Perron roots for every nonempty subset, in canonical flat order."""
    n = dmat.shape[0]
    counts = [subsets[k].shape[0] for k in range(1, n + 1)]
    offsets = np.concatenate([[0], np.cumsum(counts)])
    total = int(offsets[-1])
    values = np.empty(total, dtype=np.float64)

    def fill(span: tuple[int, int]) -> None:
        lo, hi = span
        for k in range(1, n + 1):
            k_lo, k_hi = int(offsets[k - 1]), int(offsets[k])
            a, b = max(lo, k_lo), min(hi, k_hi)
            if a >= b:
                continue
            rows = subsets[k][a - k_lo : b - k_lo]
            values[a:b] = _perron_roots_for_rows(dmat, rows)

    jobs = max(1, int(jobs))
    if jobs == 1 or total < 2 * jobs:
        fill((0, total))
    else:
        bounds = np.linspace(0, total, jobs + 1).astype(int)
        spans = [(int(bounds[i]), int(bounds[i + 1])) for i in range(jobs)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(fill, spans))
    return values


def _dedup(values: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Cluster near-equal values; return (representatives, witness flat indices).

    Two Perron roots a <= b belong to the same Pareto eigenvalue when
    b - a <= tol * max(1, b).  The representative of each cluster is the value
    at the smallest canonical index in the cluster.
    """
    order = np.argsort(values, kind="stable")
    s = values[order]
    if s.size == 0:
        return np.empty(0), np.empty(0, dtype=np.intp)
    breaks = (s[1:] - s[:-1]) > tol * np.maximum(1.0, s[1:])
    starts = np.concatenate([[0], np.nonzero(breaks)[0] + 1])
    witness_idx = np.minimum.reduceat(order, starts)
    return values[witness_idx], witness_idx


def _decode_flat(idx: int, subsets: dict[int, np.ndarray], offsets: np.ndarray) -> tuple[int, ...]:
    k = int(np.searchsorted(offsets, idx, side="right"))
    row = idx - int(offsets[k - 1])
    return tuple(int(x) for x in subsets[k][row])


# ---------------------------------------------------------------------------
# Public operations


def pareto_spectrum(
    g: Graph,
    *,
    jobs: int = 1,
    dedup_tolerance: float = DEFAULT_DEDUP_TOL,
    max_order: int = DEFAULT_MAX_ORDER,
) -> ParetoSpectrum:
    """All distinct distance Pareto eigenvalues of ``g`` with one witness each."""
    if g.n > max_order:
        raise CapExceededError(
            f"pareto_spectrum enumerates 2^n - 1 subsets; n={g.n} exceeds cap {max_order}"
        )
    dm = distance_matrix(g)
    dmat = dm.d.astype(np.float64)
    subsets = _subsets_by_size(g.n)
    counts = [subsets[k].shape[0] for k in range(1, g.n + 1)]
    offsets = np.concatenate([[0], np.cumsum(counts)])
    values = _all_subset_values(dmat, subsets, jobs)
    reps, witness_idx = _dedup(values, dedup_tolerance)
    witnesses = tuple(_decode_flat(int(i), subsets, offsets) for i in witness_idx)
    return ParetoSpectrum(
        values=tuple(float(v) for v in reps),
        witnesses=witnesses,
        dedup_tolerance=dedup_tolerance,
        graph_order=g.n,
    )


def pareto_count(g: Graph, **kwargs) -> int:
    """Number of distinct distance Pareto eigenvalues."""
    return pareto_spectrum(g, **kwargs).count


def rho_k(g: Graph, k: int, **kwargs) -> float:
    """k-th largest distinct distance Pareto eigenvalue."""
    return pareto_spectrum(g, **kwargs).rho_k(k)


def mu_k(g: Graph, k: int, **kwargs) -> float:
    """k-th smallest distinct distance Pareto eigenvalue."""
    return pareto_spectrum(g, **kwargs).mu_k(k)


def rho2_fast(g: Graph) -> tuple[float, int]:
    """Second largest distance Pareto eigenvalue without full enumeration.

    Equals the maximum Perron root over single-vertex deletions at non-pendant
    vertices; pendant deletions are dominated by their quasipendant neighbor's
    and can be skipped.  For K_2 (every vertex pendant) either deletion gives
    the 1x1 zero matrix.  Returns the value and the smallest achieving vertex.
    """
    if g.n < 2:
        raise ValueError("second largest Pareto eigenvalue needs n >= 2")
    dm = distance_matrix(g)
    deg = g.degrees()
    candidates = [v for v in range(g.n) if deg[v] > 1] or list(range(g.n))
    rows = np.array(
        [[u for u in range(g.n) if u != v] for v in candidates], dtype=np.intp
    )
    vals = _perron_roots_for_rows(dm.d.astype(np.float64), rows)
    vmax = float(vals.max())
    pick = int(np.argmax(vals >= vmax - 1e-12 * max(1.0, abs(vmax))))
    return float(vals[pick]), candidates[pick]


def pareto_eigenpair(g: Graph, support: tuple[int, ...] | list[int]) -> ParetoEigenpair:
    """Pareto eigenpair for a given support set J.

    The value is the Perron root of the distance submatrix on J and the vector
    is its Perron eigenvector embedded at positions J (zeros elsewhere).  The
    complementarity condition (Dx >= value * x) and the Rayleigh identity are
    verified before returning.
    """
    J = tuple(sorted(set(int(v) for v in support)))
    if not J:
        raise ValueError("support must be nonempty")
    dm = distance_matrix(g)
    if J[0] < 0 or J[-1] >= g.n:
        raise ValueError(f"support {J} out of range [0, {g.n})")
    x = np.zeros(g.n)
    if len(J) == 1:
        value = 0.0
        x[J[0]] = 1.0
    else:
        sub = SymMatrix.from_array(dm.d[np.ix_(J, J)].astype(np.float64))
        eig = spectral_radius(sub)
        if eig.vector.min() <= 1e-12:
            raise EigensolverError(
                f"Perron vector not strictly positive on support {J}"
            )
        value = eig.value
        x[list(J)] = eig.vector
    dmat = dm.d.astype(np.float64)
    slack = dmat @ x - value * x
    if slack.min() < -1e-9 * max(1.0, abs(value)):
        raise EigensolverError("complementarity condition violated")
    quad = float(x @ dmat @ x)
    if abs(quad - value) > 1e-9 * max(1.0, abs(value)):
        raise EigensolverError("Rayleigh identity violated for the eigenpair")
    return ParetoEigenpair(value=value, support=J, vector=x)


def distinct_submatrix_count(g: Graph) -> int:
    """Principal submatrices of the distance matrix up to permutation similarity.

    Canonical form of a k x k submatrix is the lexicographic minimum of the
    flattened matrix over all simultaneous row/column permutations; factorial
    cost, so limited to n <= 8.
    """
    if g.n > _SUBMATRIX_COUNT_MAX_ORDER:
        raise CapExceededError(
            f"distinct_submatrix_count limited to n <= {_SUBMATRIX_COUNT_MAX_ORDER}"
        )
    d = distance_matrix(g).d
    classes: set[tuple] = set()
    for k in range(1, g.n + 1):
        perms = list(itertools.permutations(range(k)))
        for S in itertools.combinations(range(g.n), k):
            if k == 1:
                classes.add((1, (0,)))
                continue
            sub = d[np.ix_(S, S)]
            if k == 2:
                classes.add((2, (0, int(sub[0, 1]), int(sub[0, 1]), 0)))
                continue
            best = None
            for p in perms:
                flat = tuple(int(sub[i, j]) for i in p for j in p)
                if best is None or flat < best:
                    best = flat
            classes.add((k, best))
    return len(classes)
