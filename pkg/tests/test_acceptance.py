"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run as ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Criterion 5 is split: 5a is the bound-validity sweep, 5b asserts the
claimed uniqueness of the equality cases.  5b fails by design: exhaustive
search finds two additional tight graphs (documented in the failure message
and in the printed FAIL line); the counterexamples are exact algebraic ties,
not numerical artifacts.
"""

import itertools
import math
import time

import numpy as np
import pytest

from distpareto.errors import DisconnectedGraphError
from distpareto.graph import (
    distance_matrix,
    make_family,
    make_graph,
)
from distpareto.laws import bound_report, closed_form, closed_form_brute_force, star_spectrum
from distpareto.pareto import (
    pareto_count,
    pareto_eigenpair,
    pareto_spectrum,
    rho2_fast,
)
from distpareto.verify import (
    canonical_form,
    check_edge_monotonicity,
    check_eigenvector_convexity,
    check_tree_extremes,
    connected_graphs_labeled,
    extremal_search,
    is_isomorphic,
    random_connected_graph,
    trees_upto_iso,
)

SQ3 = math.sqrt(3)


def fam(name, *params):
    return make_family(name, list(params))


def report(num, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num}: {status}"
    if detail:
        line += f" - {detail}"
    print(line)


def enumeration_oracle(g, tol=1e-8):
    """Second enumeration order (numeric bitmasks), per-subset eigensolver."""
    d = distance_matrix(g).d.astype(float)
    values = []
    for mask in range(1, 1 << g.n):
        keep = [v for v in range(g.n) if mask >> v & 1]
        if len(keep) == 1:
            values.append(0.0)
        else:
            values.append(float(np.linalg.eigvalsh(d[np.ix_(keep, keep)])[-1]))
    values.sort()
    out = [values[0]]
    for v in values[1:]:
        if v - out[-1] > tol * max(1.0, v):
            out.append(v)
    return out


@pytest.fixture(scope="module")
def random_graphs():
    rng = np.random.default_rng(20240601)
    graphs = []
    for _ in range(500):
        n = int(rng.integers(7, 11))
        graphs.append(random_connected_graph(n, rng))
    return graphs


@pytest.fixture(scope="module")
def sweep(classes_by_order, random_graphs):
    """Bound reports over the exhaustive range and the random batch."""
    exhaustive = []
    for n in range(2, 7):
        for g in classes_by_order[n]:
            exhaustive.append((g, bound_report(g)))
    random_part = [(g, bound_report(g)) for g in random_graphs]
    return exhaustive, random_part


def test_criterion_01_small_exact_spectra():
    start = time.perf_counter()
    p3 = pareto_spectrum(fam("path", 3))
    assert list(p3.values) == pytest.approx([0.0, 1.0, 2.0, 1 + SQ3], abs=1e-9)
    for n in range(2, 11):
        kn = pareto_spectrum(fam("complete", n))
        assert list(kn.values) == pytest.approx([float(i) for i in range(n)], abs=1e-9)
    elapsed = time.perf_counter() - start
    report(1, True, f"P3 and K2..K10 exact in {elapsed:.3f}s")
    assert elapsed < 1.0


def test_criterion_02_extremal_counts():
    assert [pareto_count(fam("path", n)) for n in (2, 3, 4)] == [2, 4, 7]
    r5 = extremal_search(5)
    assert r5.max_count == 13
    assert len(r5.witnesses) == 3
    assert any(is_isomorphic(w, fam("path", 5)) for w in r5.witnesses)
    start = time.perf_counter()
    r6 = extremal_search(6)
    elapsed = time.perf_counter() - start
    assert r6.max_count == 30
    assert len(r6.witnesses) == 1
    expected_unique = make_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (2, 5)])
    assert is_isomorphic(r6.witnesses[0], expected_unique)
    report(2, True, f"n=5 max 13 (3 witnesses), n=6 max 30 (unique) in {elapsed:.1f}s")
    assert elapsed < 300.0


def test_criterion_03_oracle_equivalence(classes_by_order):
    checked = 0
    for n in range(2, 6):
        for g in connected_graphs_labeled(n):
            spec = pareto_spectrum(g)
            assert list(spec.values) == pytest.approx(enumeration_oracle(g), abs=1e-9)
            assert rho2_fast(g)[0] == pytest.approx(spec.rho_k(2), abs=1e-9)
            checked += 1
    for g in classes_by_order[6]:
        spec = pareto_spectrum(g)
        assert list(spec.values) == pytest.approx(enumeration_oracle(g), abs=1e-9)
        assert rho2_fast(g)[0] == pytest.approx(spec.rho_k(2), abs=1e-9)
        for jobs in (2, 3, 4):
            alt = pareto_spectrum(g, jobs=jobs)
            assert alt.values == spec.values and alt.witnesses == spec.witnesses
        checked += 1
    report(3, True, f"{checked} graphs: enumeration oracle, worker counts, rho2 fast path")


def test_criterion_04_closed_form_agreement():
    cases = []
    cases += [("complete_spectrum", (n,)) for n in range(2, 11)]
    cases += [("star_radius", (n,)) for n in range(2, 11)]
    cases += [("kn_minus_e_radius", (n,)) for n in range(3, 11)]
    cases += [("rho2_kn_minus_e", (n,)) for n in range(3, 11)]
    cases += [("rho2_kab", (a, b)) for a in range(1, 6) for b in range(a, 11 - a)]
    cases += [("rho2_k_pendant", (n,)) for n in range(3, 11)]
    cases += [("rho2_two_nonincident", (n,)) for n in range(5, 11)]
    worst = 0.0
    for ident, params in cases:
        formula = closed_form(ident, *params)
        brute = closed_form_brute_force(ident, *params)
        if isinstance(formula, list):
            diff = max(abs(a - b) for a, b in zip(formula, brute))
        else:
            diff = abs(formula - brute)
        assert diff < 1e-9, (ident, params, diff)
        worst = max(worst, diff)
    report(4, True, f"{len(cases)} formula instances, max |formula - brute| = {worst:.2e}")


def test_criterion_05a_bound_sweep_validity(sweep):
    exhaustive, random_part = sweep
    checked = 0
    for g, results in exhaustive + random_part:
        for r in results:
            if not r.applicable:
                continue
            checked += 1
            assert r.slack >= -1e-8, (g, r)
    report(
        "5a",
        True,
        f"{checked} applicable bound evaluations on "
        f"{len(exhaustive)} exhaustive + {len(random_part)} random graphs, no violations",
    )


def _tight_set(reports_by_graph, bound_id, order):
    tight = []
    for g, results in reports_by_graph:
        if g.n != order:
            continue
        for r in results:
            if r.bound_id == bound_id and r.applicable and r.tight:
                tight.append(g)
    return tight


def test_criterion_05b_equality_characterizations(sweep):
    exhaustive, _ = sweep
    expected = {
        "rho2_dominating_upper": lambda n: [fam("star", n)],
        # the 2-vertex star is complete with diameter 1, outside this bound's domain
        "rho2_diam2_upper": lambda n: [fam("star", n)] if n >= 3 else [],
        "rho2_noncomplete_lower": lambda n: [fam("complete_minus_edge", n)] if n >= 3 else [],
        "rho2_two_edges_lower": lambda n: (
            [fam("complete_minus_two_nonincident_edges", n)] if n >= 5 else []
        ),
        "rho2_bipartite_lower": lambda n: [fam("complete_bipartite", n // 2, n - n // 2)],
        "rho2_tmin_lower": lambda n: [fam("complete", n)],
    }
    mismatches = []
    for bound_id, family in expected.items():
        for n in range(2, 7):
            want = {canonical_form(g) for g in family(n)}
            got_graphs = _tight_set(exhaustive, bound_id, n)
            got = {canonical_form(g) for g in got_graphs}
            if got != want:
                extra = [g for g in got_graphs if canonical_form(g) not in want]
                missing = want - got
                mismatches.append(
                    {
                        "bound": bound_id,
                        "order": n,
                        "extra_tight_graphs": [g.sorted_edges() for g in extra],
                        "missing": sorted(missing),
                    }
                )
    ok = not mismatches
    report(
        "5b",
        ok,
        "uniqueness of equality cases"
        if ok
        else f"{len(mismatches)} characterization(s) have additional tight graphs: {mismatches}",
    )
    if mismatches:
        pytest.fail(
            "Equality cases are not unique to the claimed families. Exhaustive "
            "search finds additional exact ties:\n"
            + "\n".join(str(m) for m in mismatches)
            + "\nKnown algebraic ties: the 4-cycle K_{2,2} attains the "
            "noncomplete lower bound at n=4 (both equal 1+sqrt(3)); K_6 minus "
            "a perfect matching attains the two-nonincident-edges bound at "
            "n=6 (both equal 2+2*sqrt(2)). These are exact, not numerical."
        )


def test_criterion_06_rho2_strictly_above_lambda2(sweep):
    exhaustive, random_part = sweep
    min_slack = math.inf
    count = 0
    for _, results in exhaustive + random_part:
        for r in results:
            if r.bound_id == "rho2_vs_lambda2" and r.applicable:
                min_slack = min(min_slack, r.slack)
                count += 1
    assert min_slack > 0.0
    report(6, True, f"rho2 > lambda2 on all {count} graphs, min slack {min_slack:.6f}")


def test_criterion_07_tree_convexity():
    checked = 0
    for n in range(2, 8):
        for t in trees_upto_iso(n):
            for k in range(1, n + 1):
                for J in itertools.combinations(range(n), k):
                    rep = check_eigenvector_convexity(t, pareto_eigenpair(t, J))
                    assert rep.holds, rep
                    checked += 1
    report(7, True, f"{checked} eigenpairs over all trees with n <= 7, zero violations")


def test_criterion_08_edge_monotonicity(classes_by_order):
    checked = 0
    for n in range(2, 7):
        for g in classes_by_order[n]:
            for e in g.sorted_edges():
                try:
                    rep = check_edge_monotonicity(g, e)
                except DisconnectedGraphError:
                    continue
                assert rep.holds, rep
                checked += 1
    w6 = fam("wheel", 6)
    spoke = check_edge_monotonicity(w6, (0, 1))
    assert spoke.details["relation"] == "equal"
    assert spoke.details["rho2_before"] == pytest.approx(6.0, abs=1e-9)
    report(8, True, f"{checked} (graph, edge) pairs with n <= 6; wheel spoke equality at 6")


def test_criterion_09_tree_extremality():
    start = time.perf_counter()
    for n in range(3, 9):
        rep = check_tree_extremes(n)
        assert rep.holds, rep
    elapsed = time.perf_counter() - start
    report(9, True, f"paths maximize and stars minimize rho2 for 3 <= n <= 8 in {elapsed:.1f}s")
    assert elapsed < 120.0


def test_criterion_10_star_spectrum_cardinality():
    for n in range(3, 11):
        spec = pareto_spectrum(fam("star", n))
        assert spec.count == 2 * (n - 1), n
        assert list(spec.values) == pytest.approx(star_spectrum(n), abs=1e-9)
        # interleaving: star radius of order k+1 > 2(k-1) > star radius of order k
        for k in range(2, n):
            assert closed_form("star_radius", k + 1) > 2 * (k - 1) + 1e-9
            assert 2 * (k - 1) > closed_form("star_radius", k) + 1e-9
    # Document the odd-index closed-form discrepancy: the alternative surd
    # k-1+sqrt(k^2-3k+3) does not reproduce the enumerated star values (at
    # k=3 it gives 2+sqrt(3), which is not a Pareto eigenvalue of the
    # 4-vertex star); the enumerated set, matched exactly by the star radii
    # k-2+sqrt((k-2)^2+k-1) interleaved with the even integers 2(k-1), is
    # authoritative.
    s4 = pareto_spectrum(fam("star", 4))
    alt = 3 - 1 + math.sqrt(9 - 9 + 3)
    assert all(abs(v - alt) > 1e-6 for v in s4.values)
    good = 3 - 2 + math.sqrt(1 + 2)
    assert any(abs(v - good) <= 1e-9 for v in s4.values)
    print(
        "DISCREPANCY NOTE: odd-index star closed form k-1+sqrt(k^2-3k+3) "
        f"yields {alt:.9f} at k=3, absent from the enumerated spectrum of the "
        f"4-vertex star {[round(v, 9) for v in s4.values]}; the enumerated "
        "values (star radii interleaved with even integers) are authoritative."
    )
    report(10, True, "star spectra have 2(n-1) values for n=3..10, interleaving verified")
