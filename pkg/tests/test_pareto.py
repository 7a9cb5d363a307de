import itertools
import math

import numpy as np
import pytest

from distpareto.errors import CapExceededError, DisconnectedGraphError
from distpareto.graph import distance_matrix, make_family, make_graph
from distpareto.pareto import (
    distinct_submatrix_count,
    mu_k,
    pareto_count,
    pareto_eigenpair,
    pareto_spectrum,
    rho2_fast,
    rho_k,
)

SQ3 = math.sqrt(3)
SQ7 = math.sqrt(7)


def fam(name, *params):
    return make_family(name, list(params))


def enumeration_oracle(g, tol=1e-8):
    """Independent sequential enumeration: numeric bitmask order, one
    eigendecomposition per subset, plain-loop dedup."""
    d = distance_matrix(g).d.astype(float)
    values = []
    for mask in range(1, 1 << g.n):
        keep = [v for v in range(g.n) if mask >> v & 1]
        if len(keep) == 1:
            values.append(0.0)
        else:
            sub = d[np.ix_(keep, keep)]
            values.append(float(np.linalg.eigvalsh(sub)[-1]))
    values.sort()
    out = [values[0]]
    for v in values[1:]:
        if v - out[-1] > tol * max(1.0, v):
            out.append(v)
    return out


def test_spectrum_path3_exact():
    spec = pareto_spectrum(fam("path", 3))
    assert spec.values == pytest.approx([0.0, 1.0, 2.0, 1 + SQ3], abs=1e-9)
    assert spec.count == 4


def test_spectrum_complete_graphs():
    for n in range(2, 8):
        spec = pareto_spectrum(fam("complete", n))
        assert spec.values == pytest.approx(list(range(n)), abs=1e-9)


def test_spectrum_star4_against_oracle():
    g = fam("star", 4)
    spec = pareto_spectrum(g)
    assert list(spec.values) == pytest.approx(enumeration_oracle(g), abs=1e-9)
    assert spec.values == pytest.approx(
        [0.0, 1.0, 2.0, 1 + SQ3, 4.0, 2 + SQ7], abs=1e-9
    )
    assert spec.count == 2 * (4 - 1)


def test_witness_rule_smallest_cardinality_then_lex():
    spec = pareto_spectrum(fam("path", 3))
    assert spec.witnesses == ((0,), (0, 1), (0, 2), (0, 1, 2))


def test_counts_paths():
    assert [pareto_count(fam("path", n)) for n in (2, 3, 4, 5)] == [2, 4, 7, 13]


def test_count_path_with_triangle_graph():
    g = make_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 5)])
    assert pareto_count(g) == 30


def test_rho_k_and_mu_k():
    s4 = fam("star", 4)
    assert rho_k(s4, 1) == pytest.approx(2 + SQ7, abs=1e-9)
    assert mu_k(s4, 1) == 0.0
    for g in [fam("cycle", 5), fam("wheel", 6), fam("path", 4)]:
        assert mu_k(g, 1) == 0.0
    with pytest.raises(ValueError):
        rho_k(s4, 7)
    with pytest.raises(ValueError):
        mu_k(s4, 0)


def test_rho2_path4_deleted_vertex_oracle():
    # oracle: eigendecomposition of the path-4 distance matrix without row/col 1
    d = distance_matrix(fam("path", 4)).d.astype(float)
    keep = [0, 2, 3]
    expected = float(np.linalg.eigvalsh(d[np.ix_(keep, keep)])[-1])
    assert rho_k(fam("path", 4), 2) == pytest.approx(expected, abs=1e-9)
    value, witness = rho2_fast(fam("path", 4))
    assert value == pytest.approx(expected, abs=1e-9)
    assert witness in (1, 2)


def test_rho2_fast_star4():
    value, witness = rho2_fast(fam("star", 4))
    assert value == pytest.approx(4.0, abs=1e-9)
    assert witness == 0  # the center is the only non-pendant vertex


def test_rho2_fast_wheel6():
    value, _ = rho2_fast(fam("wheel", 6))
    assert value == pytest.approx(6.0, abs=1e-9)


def test_rho2_fast_complete4():
    value, _ = rho2_fast(fam("complete", 4))
    assert value == pytest.approx(2.0, abs=1e-9)


def test_rho2_fast_k2_fallback():
    value, witness = rho2_fast(fam("complete", 2))
    assert value == 0.0 and witness == 0


def test_rho2_fast_matches_enumeration(classes_by_order):
    for n in (4, 5):
        for g in classes_by_order[n]:
            spec = pareto_spectrum(g)
            assert rho2_fast(g)[0] == pytest.approx(spec.rho_k(2), abs=1e-9)


def test_eigenpair_path3_pair_support():
    pair = pareto_eigenpair(fam("path", 3), (0, 2))
    assert pair.value == pytest.approx(2.0, abs=1e-10)
    assert pair.vector == pytest.approx([1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)], abs=1e-10)


def test_eigenpair_k3_full():
    pair = pareto_eigenpair(fam("complete", 3), (0, 1, 2))
    assert pair.value == pytest.approx(2.0, abs=1e-10)
    assert pair.vector == pytest.approx([1 / SQ3] * 3, abs=1e-10)


def test_eigenpair_path4_partial_support():
    d = distance_matrix(fam("path", 4)).d.astype(float)
    expected = float(np.linalg.eigvalsh(d[np.ix_([0, 2, 3], [0, 2, 3])])[-1])
    pair = pareto_eigenpair(fam("path", 4), (0, 2, 3))
    assert pair.value == pytest.approx(expected, abs=1e-9)
    assert pair.support == (0, 2, 3)
    assert pair.vector[1] == 0.0
    assert min(pair.vector[[0, 2, 3]]) > 0


def test_eigenpair_complementarity_everywhere(classes_by_order):
    for g in classes_by_order[5][:10]:
        d = distance_matrix(g).d.astype(float)
        for k in (1, 2, 4):
            for J in itertools.combinations(range(5), k):
                pair = pareto_eigenpair(g, J)
                slack = d @ pair.vector - pair.value * pair.vector
                assert slack.min() >= -1e-9 * max(1.0, pair.value)
                assert pair.vector @ d @ pair.vector == pytest.approx(
                    pair.value, abs=1e-9 * max(1.0, pair.value)
                )


def test_eigenpair_empty_support_rejected():
    with pytest.raises(ValueError):
        pareto_eigenpair(fam("path", 3), ())


def _submatrix_classes_oracle(g):
    """Independent canonicalizer: maximal flattening instead of minimal."""
    d = distance_matrix(g).d
    classes = set()
    for k in range(1, g.n + 1):
        for S in itertools.combinations(range(g.n), k):
            sub = d[np.ix_(S, S)]
            best = max(
                tuple(int(sub[i, j]) for i in p for j in p)
                for p in itertools.permutations(range(k))
            )
            classes.add((k, best))
    return len(classes)


def test_distinct_submatrix_counts():
    k3 = fam("complete", 3)
    s4 = fam("star", 4)
    p3 = fam("path", 3)
    assert distinct_submatrix_count(k3) == 3 == _submatrix_classes_oracle(k3)
    assert distinct_submatrix_count(s4) == 6 == _submatrix_classes_oracle(s4)
    # the order-2 classes of the path are {distance 1} and {distance 2};
    # together with the singleton class and the full matrix that makes 4
    assert distinct_submatrix_count(p3) == 4 == _submatrix_classes_oracle(p3)


def test_distinct_submatrix_bounds_spectrum_count(classes_by_order):
    for g in classes_by_order[5][:8]:
        assert pareto_count(g) <= distinct_submatrix_count(g)


def test_jobs_do_not_change_results():
    for g in [fam("wheel", 7), fam("path", 6), fam("complete_bipartite", 2, 4)]:
        base = pareto_spectrum(g, jobs=1)
        for jobs in (2, 3, 4):
            other = pareto_spectrum(g, jobs=jobs)
            assert other.values == base.values
            assert other.witnesses == base.witnesses


def test_integer_ladder_and_top_value(classes_by_order):
    for n in (3, 4, 5):
        for g in classes_by_order[n]:
            dm = distance_matrix(g)
            spec = pareto_spectrum(g)
            d = int(dm.d.max())
            for target in range(d + 1):
                assert any(abs(v - target) <= 1e-9 for v in spec.values), (g, target)
            top = float(np.linalg.eigvalsh(dm.d.astype(float))[-1])
            assert spec.values[-1] == pytest.approx(top, abs=1e-9)
            assert spec.witnesses[-1] == tuple(range(n))
            assert spec.values[0] == 0.0 and len(spec.witnesses[0]) == 1
            for a, b in zip(spec.values, spec.values[1:]):
                assert b - a > spec.dedup_tolerance


def test_count_lower_bound_small_orders(classes_by_order):
    for n in (2, 3, 4, 5):
        for g in classes_by_order[n]:
            d = int(distance_matrix(g).d.max())
            assert pareto_count(g) >= n + d - 1


def test_count_lower_equality_set(classes_by_order):
    """Graphs attaining |values| = n + d - 1 for n <= 6.

    Complete graphs and the 3-path attain it; so do the 4-cycle and the
    4-clique minus an edge, whose proper principal submatrices produce no
    Perron root outside the forced chain (every 3-subset of the 4-cycle is
    permutation similar to the 3-path's distance matrix).
    """
    from distpareto.verify import canonical_form

    for n in range(2, 7):
        attained = set()
        for g in classes_by_order[n]:
            d = int(distance_matrix(g).d.max())
            if pareto_count(g) == n + d - 1:
                attained.add(canonical_form(g))
        expected = {canonical_form(fam("complete", n))}
        if n == 3:
            expected.add(canonical_form(fam("path", 3)))
        if n == 4:
            expected.add(canonical_form(fam("cycle", 4)))
            expected.add(canonical_form(fam("complete_minus_edge", 4)))
        assert attained == expected, n


def test_rho_k_floor_equality_only_for_complete(classes_by_order):
    """rho_k >= n - k for every k, with equality at all k only on K_n."""
    for n in (3, 4, 5):
        for g in classes_by_order[n]:
            spec = pareto_spectrum(g)
            all_tight = True
            for k in range(1, n + 1):
                rk = spec.rho_k(k)
                assert rk >= n - k - 1e-9
                if abs(rk - (n - k)) > 1e-9:
                    all_tight = False
            assert all_tight == (g.size == n * (n - 1) // 2)


def test_oracle_identity_on_random_graphs():
    """Random graphs can have distinct Perron roots closer than the dedup
    tolerance (the roots then merge into one cluster, and the two enumeration
    orders may report different members of it), so values are compared at the
    dedup tolerance rather than at the eigensolver tolerance."""
    from distpareto.verify import random_connected_graph

    rng = np.random.default_rng(424242)
    for _ in range(200):
        n = int(rng.integers(7, 11))
        g = random_connected_graph(n, rng)
        spec = pareto_spectrum(g)
        oracle = enumeration_oracle(g)
        assert spec.count == len(oracle)
        for mine, theirs in zip(spec.values, oracle):
            assert abs(mine - theirs) <= 1e-8 * max(1.0, abs(theirs)), (g, mine, theirs)
        assert abs(rho2_fast(g)[0] - spec.rho_k(2)) <= 1e-8 * max(1.0, spec.rho_k(2))


def test_rho2_rayleigh_characterization(classes_by_order):
    """rho2 is the supremum of the quadratic form over nonnegative unit
    vectors vanishing at exactly one vertex, attained by the witness pair."""
    rng = np.random.default_rng(99)
    for n in (4, 5, 6):
        for g in classes_by_order[n]:
            d = distance_matrix(g).d.astype(float)
            rho2, witness = rho2_fast(g)
            best_sample = -np.inf
            for i in range(n):
                x = np.abs(rng.normal(size=(500, n)))
                x[:, i] = 0.0
                x /= np.linalg.norm(x, axis=1, keepdims=True)
                quad = np.einsum("ij,jk,ik->i", x, d, x)
                assert quad.max() <= rho2 + 1e-9, (g, i)
                best_sample = max(best_sample, float(quad.max()))
            support = tuple(v for v in range(n) if v != witness)
            pair = pareto_eigenpair(g, support)
            assert pair.value == pytest.approx(rho2, abs=1e-9)
            assert best_sample <= rho2 + 1e-9


def test_caps_and_errors():
    with pytest.raises(CapExceededError):
        pareto_spectrum(fam("path", 8), max_order=6)
    with pytest.raises(DisconnectedGraphError):
        pareto_spectrum(make_graph(3, [(0, 1)]))
    with pytest.raises(CapExceededError):
        distinct_submatrix_count(fam("path", 9))
    with pytest.raises(ValueError):
        rho2_fast(make_graph(1, []))
