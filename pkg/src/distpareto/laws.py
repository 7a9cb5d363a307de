"""Closed-form values and inequalities for the second largest Pareto eigenvalue.

Each closed form is evaluated in floating point from its surd expression and
then self-checked against the quadratic it solves (residual <= 1e-9 scaled).
Bounds are never errors: when a graph is outside a bound's hypothesis the
result carries ``applicable=False`` with a reason string, so ``bound_report``
is total on connected graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graph import (
    Graph,
    distance_matrix,
    diameter,
    make_family,
    structure_queries,
    transmission,
    wiener,
)
from .pareto import ParetoSpectrum, pareto_eigenpair, pareto_spectrum, rho2_fast
from .spectral import SymMatrix, full_spectrum

__all__ = [
    "BoundResult",
    "BOUND_IDS",
    "CLOSED_FORM_IDS",
    "TIGHT_TOL",
    "closed_form",
    "closed_form_surd",
    "closed_form_brute_force",
    "star_spectrum",
    "evaluate_bound",
    "bound_report",
]

TIGHT_TOL = 1e-8
_SELF_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class BoundResult:
    """Outcome of evaluating one inequality on one graph.

    ``slack`` is actual - bound for lower bounds and bound - actual for upper
    bounds, so nonnegative slack means the inequality holds.  ``k`` is set
    only for the per-k family ``rho_k_lower``.
    """

    bound_id: str
    direction: str  # "lower" | "upper"
    bound_value: float
    actual_value: float
    slack: float
    tight: bool
    applicable: bool
    reason: str = ""
    k: int | None = None


def _result(
    bound_id: str,
    direction: str,
    bound_value: float,
    actual_value: float,
    k: int | None = None,
) -> BoundResult:
    slack = (actual_value - bound_value) if direction == "lower" else (bound_value - actual_value)
    return BoundResult(
        bound_id=bound_id,
        direction=direction,
        bound_value=bound_value,
        actual_value=actual_value,
        slack=slack,
        tight=abs(slack) <= TIGHT_TOL,
        applicable=True,
        k=k,
    )


def _inapplicable(bound_id: str, direction: str, reason: str, k: int | None = None) -> BoundResult:
    return BoundResult(
        bound_id=bound_id,
        direction=direction,
        bound_value=math.nan,
        actual_value=math.nan,
        slack=math.nan,
        tight=False,
        applicable=False,
        reason=reason,
        k=k,
    )


def _check_quadratic(value: float, b: float, c: float) -> float:
    """Assert value solves x^2 - b*x - c = 0 (residual self-check)."""
    residual = value * value - b * value - c
    scale = max(1.0, value * value)
    if abs(residual) > _SELF_CHECK_TOL * scale:
        raise AssertionError(f"closed form residual {residual:.3e} too large")
    return value


# ---------------------------------------------------------------------------
# Closed forms


def _star_radius(n: int) -> float:
    if n < 2:
        raise ValueError("star radius needs n >= 2")
    v = n - 2 + math.sqrt((n - 2) ** 2 + n - 1)
    return _check_quadratic(v, 2 * (n - 2), n - 1)


def _kn_minus_e_radius(n: int) -> float:
    if n < 3:
        raise ValueError("kn_minus_e_radius needs n >= 3")
    v = (n - 1 + math.sqrt((n - 1) ** 2 + 8)) / 2
    return _check_quadratic(v, n - 1, 2.0)


def _rho2_kn_minus_e(n: int) -> float:
    if n < 3:
        raise ValueError("rho2_kn_minus_e needs n >= 3")
    v = (n - 2 + math.sqrt(n * n - 4 * n + 12)) / 2
    return _check_quadratic(v, n - 2, 2.0)


def _rho2_kab(a: int, b: int) -> float:
    if not (1 <= a <= b):
        raise ValueError("rho2_kab needs 1 <= a <= b")
    v = a + b - 3 + math.sqrt(a * a + b * b + b - a * b - 2 * a + 1)
    if a >= 2:
        # Perron root of the distance matrix of K_{a-1,b}
        p, q = a - 1, b
        _check_quadratic(v, 2 * (p + q - 2), float(p * q - 4 * (p - 1) * (q - 1)))
    return v


def _rho2_k_pendant(n: int) -> float:
    if n < 3:
        raise ValueError("rho2_k_pendant needs n >= 3")
    v = (n - 3 + math.sqrt(n * n + 10 * n - 23)) / 2
    return _check_quadratic(v, n - 3, 4.0 * (n - 2))


def _rho2_two_nonincident(n: int) -> float:
    # The closed form matches brute force only from n = 5 up: at n = 4 the
    # graph is C4, whose largest proper Perron root is 1 + sqrt(3), not this
    # surd.  n >= 5 is the formula's validity range.
    if n < 5:
        raise ValueError("rho2_two_nonincident needs n >= 5")
    v = (n - 2 + math.sqrt(n * n - 4 * n + 20)) / 2
    return _check_quadratic(v, n - 2, 4.0)


def closed_form(identifier: str, *params: int):
    """Evaluate a named closed form; returns a float (or list for spectra)."""
    if identifier == "complete_spectrum":
        (n,) = params
        if n < 1:
            raise ValueError("complete_spectrum needs n >= 1")
        return [float(i) for i in range(n)]
    funcs = {
        "star_radius": _star_radius,
        "kn_minus_e_radius": _kn_minus_e_radius,
        "rho2_kn_minus_e": _rho2_kn_minus_e,
        "rho2_kab": _rho2_kab,
        "rho2_k_pendant": _rho2_k_pendant,
        "rho2_two_nonincident": _rho2_two_nonincident,
    }
    if identifier not in funcs:
        raise ValueError(f"unknown closed form {identifier!r}")
    return funcs[identifier](*params)


CLOSED_FORM_IDS = (
    "complete_spectrum",
    "star_radius",
    "kn_minus_e_radius",
    "rho2_kn_minus_e",
    "rho2_kab",
    "rho2_k_pendant",
    "rho2_two_nonincident",
)


def closed_form_surd(identifier: str, *params: int) -> str:
    """Exact surd expression as a display string."""
    if identifier == "complete_spectrum":
        (n,) = params
        return "{" + ", ".join(str(i) for i in range(n)) + "}"
    if identifier == "star_radius":
        (n,) = params
        return f"{n - 2}+sqrt({(n - 2) ** 2 + n - 1})"
    if identifier == "kn_minus_e_radius":
        (n,) = params
        return f"({n - 1}+sqrt({(n - 1) ** 2 + 8}))/2"
    if identifier == "rho2_kn_minus_e":
        (n,) = params
        return f"({n - 2}+sqrt({n * n - 4 * n + 12}))/2"
    if identifier == "rho2_kab":
        a, b = params
        return f"{a + b - 3}+sqrt({a * a + b * b + b - a * b - 2 * a + 1})"
    if identifier == "rho2_k_pendant":
        (n,) = params
        return f"({n - 3}+sqrt({n * n + 10 * n - 23}))/2"
    if identifier == "rho2_two_nonincident":
        (n,) = params
        return f"({n - 2}+sqrt({n * n - 4 * n + 20}))/2"
    raise ValueError(f"unknown closed form {identifier!r}")


def closed_form_brute_force(identifier: str, *params: int):
    """Independent enumeration-based value for the same family instance."""
    if identifier == "complete_spectrum":
        (n,) = params
        return list(pareto_spectrum(make_family("complete", [n])).values)
    if identifier == "star_radius":
        (n,) = params
        return pareto_spectrum(make_family("star", [n])).values[-1]
    if identifier == "kn_minus_e_radius":
        (n,) = params
        return pareto_spectrum(make_family("complete_minus_edge", [n])).values[-1]
    if identifier == "rho2_kn_minus_e":
        (n,) = params
        return rho2_fast(make_family("complete_minus_edge", [n]))[0]
    if identifier == "rho2_kab":
        a, b = params
        return rho2_fast(make_family("complete_bipartite", [a, b]))[0]
    if identifier == "rho2_k_pendant":
        (n,) = params
        return rho2_fast(make_family("clique_plus_pendant_p", [n - 1, 1]))[0]
    if identifier == "rho2_two_nonincident":
        (n,) = params
        return rho2_fast(make_family("complete_minus_two_nonincident_edges", [n]))[0]
    raise ValueError(f"unknown closed form {identifier!r}")


def star_spectrum(n: int) -> list[float]:
    """All 2(n-1) Pareto eigenvalues of the star S_n, ascending.

    The distinct principal submatrices of the star's distance matrix at each
    order k in 2..n-1 are the star distance matrix of order k and 2(J_k - I_k);
    their Perron roots interleave, giving 0, then star radii and the even
    integers 2(k-1) alternating, topped by the order-n star radius.
    """
    if n < 2:
        raise ValueError("star_spectrum needs n >= 2")
    values = [0.0]
    for k in range(2, n):
        values.append(_star_radius(k))
        values.append(2.0 * (k - 1))
    values.append(_star_radius(n))
    return values


# ---------------------------------------------------------------------------
# Bounds


BOUND_IDS = (
    "count_lower",
    "rho2_bipartite_lower",
    "rho2_diam2_upper",
    "rho2_dominating_lower",
    "rho2_dominating_upper",
    "rho2_noncomplete_lower",
    "rho2_second_component_upper",
    "rho2_simple_lower",
    "rho2_tmin_lower",
    "rho2_two_edges_lower",
    "rho2_vs_lambda2",
    "rho2_wiener_lower",
    "rho_k_lower",
)

_RHO2_BOUND_IDS = tuple(b for b in BOUND_IDS if b.startswith("rho2_"))


class _BoundContext:
    """Caches the per-graph quantities shared by several bounds."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n

    @cached_property
    def dm(self):
        return distance_matrix(self.g)

    @cached_property
    def diam(self) -> int:
        return diameter(self.dm)

    @cached_property
    def spectrum(self) -> ParetoSpectrum:
        return pareto_spectrum(self.g)

    @cached_property
    def rho2_pair(self) -> tuple[float, int]:
        return rho2_fast(self.g)

    @property
    def rho2(self) -> float:
        return self.rho2_pair[0]

    @property
    def rho2_witness(self) -> int:
        return self.rho2_pair[1]

    @cached_property
    def lambda2(self) -> float:
        spec = full_spectrum(SymMatrix.from_array(self.dm.d.astype(float)))
        return spec[-2]

    @cached_property
    def transmissions(self) -> list[int]:
        return [transmission(self.dm, v) for v in range(self.n)]

    @cached_property
    def is_complete(self) -> bool:
        return self.g.size == self.n * (self.n - 1) // 2

    @cached_property
    def is_complete_minus_edge(self) -> bool:
        return self.g.size == self.n * (self.n - 1) // 2 - 1

    @cached_property
    def structure(self):
        return structure_queries(self.g)

    @cached_property
    def rho2_vector(self) -> np.ndarray:
        support = tuple(v for v in range(self.n) if v != self.rho2_witness)
        return pareto_eigenpair(self.g, support).vector


def _second_component_bound(ctx: _BoundContext) -> float:
    """Upper bound on rho2 from the top two eigenvector components.

    Let x be the rho2 Pareto eigenvector, u its zero vertex, i its largest
    component and j a second-largest component.  The two eigenvalue equations
    at i and j give, for every valid j,

        rho2 <= (beta + sqrt(beta^2 + 4*gamma)) / 2,
        beta = T_j - d(i,j) - d(j,u),  gamma = d(i,j) * (T_i - d(i,u)).

    Ties for i break to the smallest label; tied j (within 1e-9 relative) are
    all evaluated and the minimum reported.  With i adjacent to u and j, a
    uniform tail (T_i = n-1) this reduces to
    (T_j - 2 + sqrt((T_j - 2)^2 + 4(n - 2))) / 2.
    """
    x = ctx.rho2_vector
    u = ctx.rho2_witness
    d = ctx.dm.d
    i = int(np.argmax(x))
    ti = ctx.transmissions[i]
    rest = [(x[v], v) for v in range(ctx.n) if v != i]
    second = max(val for val, _ in rest)
    tied = [v for val, v in rest if val >= second - 1e-9 * max(1.0, second)]
    bounds = []
    for j in tied:
        beta = ctx.transmissions[j] - int(d[i, j]) - int(d[j, u])
        gamma = int(d[i, j]) * (ti - int(d[i, u]))
        bounds.append((beta + math.sqrt(beta * beta + 4 * gamma)) / 2)
    return min(bounds)


def _evaluate(ctx: _BoundContext, bound_id: str, k: int | None = None) -> BoundResult:
    n = ctx.n

    if bound_id == "rho_k_lower":
        if k is None:
            raise ValueError("rho_k_lower requires k")
        if not (1 <= k <= ctx.spectrum.count):
            return _inapplicable(bound_id, "lower", f"k={k} exceeds spectrum size", k=k)
        return _result(bound_id, "lower", float(n - k), ctx.spectrum.rho_k(k), k=k)

    if bound_id == "count_lower":
        return _result(bound_id, "lower", float(n + ctx.diam - 1), float(ctx.spectrum.count))

    if bound_id in _RHO2_BOUND_IDS and n < 2:
        return _inapplicable(bound_id, "lower" if bound_id.endswith("lower") else "upper", "order < 2")

    if bound_id == "rho2_dominating_lower":
        if max(ctx.g.degrees()) != n - 1:
            return _inapplicable(bound_id, "lower", "no vertex of degree n-1")
        return _result(bound_id, "lower", float(n - 2), ctx.rho2)

    if bound_id == "rho2_dominating_upper":
        if max(ctx.g.degrees()) != n - 1:
            return _inapplicable(bound_id, "upper", "no vertex of degree n-1")
        return _result(bound_id, "upper", float(2 * (n - 2)), ctx.rho2)

    if bound_id == "rho2_diam2_upper":
        if ctx.diam != 2:
            return _inapplicable(bound_id, "upper", f"diameter is {ctx.diam}, not 2")
        return _result(bound_id, "upper", float(2 * (n - 2)), ctx.rho2)

    if bound_id == "rho2_noncomplete_lower":
        if ctx.is_complete:
            return _inapplicable(bound_id, "lower", "graph is complete")
        return _result(bound_id, "lower", _rho2_kn_minus_e(n), ctx.rho2)

    if bound_id == "rho2_simple_lower":
        if ctx.is_complete:
            return _inapplicable(bound_id, "lower", "graph is complete")
        return _result(bound_id, "lower", n - 2 + 2.0 / (n - 1), ctx.rho2)

    if bound_id == "rho2_two_edges_lower":
        if ctx.is_complete or ctx.is_complete_minus_edge:
            return _inapplicable(bound_id, "lower", "graph is K_n or K_n minus an edge")
        if n < 5:
            return _inapplicable(bound_id, "lower", "closed form valid only for n >= 5")
        return _result(bound_id, "lower", _rho2_two_nonincident(n), ctx.rho2)

    if bound_id == "rho2_wiener_lower":
        dm = ctx.dm
        w = wiener(dm)
        tmin = min(ctx.transmissions)
        return _result(bound_id, "lower", 2.0 * (w - tmin) / (n - 1), ctx.rho2)

    if bound_id == "rho2_tmin_lower":
        tmin = min(ctx.transmissions)
        d = ctx.diam
        a = tmin - 2 * d
        bound = (a + math.sqrt(a * a + 4 * (n - d - 1))) / 2
        return _result(bound_id, "lower", bound, ctx.rho2)

    if bound_id == "rho2_vs_lambda2":
        return _result(bound_id, "lower", ctx.lambda2, ctx.rho2)

    if bound_id == "rho2_bipartite_lower":
        st = ctx.structure
        if not st.is_bipartite:
            return _inapplicable(bound_id, "lower", "graph is not bipartite")
        a = n // 2
        bound = n - 3 + math.sqrt(n * n + n + 1 + 3 * a * (a - n - 1))
        return _result(bound_id, "lower", bound, ctx.rho2)

    if bound_id == "rho2_second_component_upper":
        if n < 3:
            return _inapplicable(bound_id, "upper", "needs n >= 3 (two positive components)")
        return _result(bound_id, "upper", _second_component_bound(ctx), ctx.rho2)

    raise ValueError(f"unknown bound id {bound_id!r}")


def evaluate_bound(bound_id: str, g: Graph, k: int | None = None) -> BoundResult:
    """Evaluate one bound on one connected graph (never errors on hypothesis)."""
    return _evaluate(_BoundContext(g), bound_id, k=k)


def bound_report(g: Graph) -> list[BoundResult]:
    """Every bound evaluated on ``g``; rho_k_lower expands over k = 1..n.

    Results are ordered by (bound_id, k) so reports are deterministic.
    """
    ctx = _BoundContext(g)
    results: list[BoundResult] = []
    for bound_id in BOUND_IDS:
        if bound_id == "rho_k_lower":
            for k in range(1, g.n + 1):
                results.append(_evaluate(ctx, bound_id, k=k))
        else:
            results.append(_evaluate(ctx, bound_id))
    results.sort(key=lambda r: (r.bound_id, r.k if r.k is not None else 0))
    return results
