"""Exit criteria for the package, one test (or small group) per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion lines;
the terminal summary always lists PASS/FAIL per criterion.
"""

import random
import time
from itertools import combinations

import pytest

from oracles import brute_connectivity, oracle_pebbling_number, oracle_reachable
from pebbling.generators import chh_graph, cycle_graph, gnp_sample, path_graph
from pebbling.graph import Graph, diameter, is_isomorphic, vertex_connectivity
from pebbling.number import classify_small, is_class0, iter_witnesses, pebbling_number
from pebbling.proof import Verdict, audit_counterexample
from pebbling.solver import Move, apply_move, can_pebble, verify_certificate, weight
from pebbling.threshold import ExperimentConfig, Property, parse_grid, sweep

criterion = pytest.mark.criterion


def line(k, ok, detail):
    print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def small_classes():
    started = time.perf_counter()
    six = classify_small(6, progress=lambda msg: print(msg))
    elapsed = time.perf_counter() - started
    return six, elapsed


@criterion(1)
@pytest.mark.parametrize("which", ["G1", "G2"])
def test_c1_pebbling_number_seven(which):
    g = chh_graph(which)
    started = time.perf_counter()
    f = pebbling_number(g)
    elapsed = time.perf_counter() - started
    ok = f == 7 and elapsed < 120
    line(1, ok, f"f({which}) = {f} in {elapsed:.2f}s")
    assert f == 7
    assert elapsed < 120


@criterion(2)
@pytest.mark.parametrize("which", ["G1", "G2"])
def test_c2_two_connected_diameter_two(which):
    g = chh_graph(which)
    kappa, brute, diam = vertex_connectivity(g), brute_connectivity(g.n, g.edges), diameter(g)
    line(2, kappa == brute == 2 and diam == 2, f"{which}: kappa={kappa} (brute {brute}), diameter={diam}")
    assert kappa == brute == 2
    assert diam == 2


@criterion(3)
def test_c3_classification(small_classes):
    six, elapsed = small_classes
    g1, g2 = chh_graph("G1"), chh_graph("G2")
    matched = sorted(
        (is_isomorphic(c.graph, g1), is_isomorphic(c.graph, g2)) for c in six
    )
    five = classify_small(5)
    ok = matched == [(False, True), (True, False)] and five == [] and elapsed <= 15 * 60
    line(3, ok, f"{len(six)} classes up to 6 vertices, {len(five)} up to 5, {elapsed:.1f}s")
    assert len(six) == 2
    assert matched == [(False, True), (True, False)]
    assert all(c.graph.n == 6 for c in six)
    assert five == []
    assert elapsed <= 15 * 60


@criterion(4)
def test_c4_paths_and_cycle():
    started = time.perf_counter()
    results = {}
    for n in (2, 3, 4, 5):
        g = path_graph(n)
        f = pebbling_number(g)
        results[f"P{n}"] = (f, oracle_pebbling_number(n, g.edges))
        assert f == 2 ** (n - 1) == results[f"P{n}"][1]
    c6 = cycle_graph(6)
    results["C6"] = (pebbling_number(c6), oracle_pebbling_number(6, c6.edges))
    assert results["C6"] == (8, 8)
    assert not is_class0(path_graph(3)).class0
    elapsed = time.perf_counter() - started
    line(4, elapsed < 300, f"{results} in {elapsed:.1f}s")
    assert elapsed < 300


@criterion(5)
def test_c5_k2_equals_three_spot_check():
    rng = random.Random(5_000)
    started = time.perf_counter()
    accepted = violations = drawn = 0
    while accepted < 500:
        drawn += 1
        n = rng.randint(5, 8)
        g = gnp_sample(n, rng.uniform(0.5, 0.95), rng.getrandbits(64))
        if diameter(g) > 2 or vertex_connectivity(g) < 3:
            continue
        accepted += 1
        if not is_class0(g).class0:
            violations += 1
    elapsed = time.perf_counter() - started
    line(5, violations == 0 and elapsed < 600, f"{accepted} samples (of {drawn} drawn), {violations} Class 1, {elapsed:.1f}s")
    assert violations == 0
    assert elapsed < 600


def _witness_graphs(small_classes):
    six, _ = small_classes
    graphs = [(f"class{i}", c.graph) for i, c in enumerate(six)]
    graphs += [(f"P{n}", path_graph(n)) for n in (3, 4, 5)]
    graphs += [("C6", cycle_graph(6))]
    return graphs


@criterion(6)
def test_c6_conditional_claims(small_classes):
    started = time.perf_counter()
    audited = 0
    premise4_unmet = 0
    for name, g in _witness_graphs(small_classes):
        depth = int(diameter(g))
        for w in iter_witnesses(g):
            d, z0 = w.distribution, w.target
            assert sum(d) == g.n and not can_pebble(g, d, z0)
            a = audit_counterexample(g, d, z0)
            assert not a.z0_reachable
            for claim in ("claim1", "claim2", "claim3", "claim5"):
                assert a.claim(claim).verdict is Verdict.HOLDS, (name, w, claim)
            assert max(a.claim("claim1").quantities["bounds"].values()) < 2**depth
            assert max(a.claim("claim2").quantities["cut_sizes"].values()) < 2**depth
            assert all(rep.statement1 and rep.statement3 for rep in a.separators.values())
            assert max(a.claim("claim3").quantities["mass"].values()) < 2 ** (depth + 2)
            c4 = a.claim("claim4")
            if c4.premise_met:
                assert c4.verdict is Verdict.HOLDS
                assert c4.quantities["q_times_cap"] > c4.quantities["big_total"]
            else:
                premise4_unmet += 1
                assert c4.verdict is not Verdict.FAILS
            audited += 1
    elapsed = time.perf_counter() - started
    line(6, elapsed < 300, f"{audited} witnesses audited, claim-4 step premise unmet on {premise4_unmet}, {elapsed:.1f}s")
    assert audited > 0
    assert elapsed < 300


@criterion(7)
def test_c7_solver_properties():
    rng = random.Random(7_777)
    started = time.perf_counter()
    cases = 0
    while cases < 10_000:
        n = rng.randint(1, 6)
        pairs = list(combinations(range(n), 2))
        g = Graph.from_edges(n, [e for e in pairs if rng.random() < 0.5])
        total = rng.randint(0, 8)
        d = [0] * n
        for _ in range(total):
            d[rng.randrange(n)] += 1
        d = tuple(d)
        t = rng.randrange(n)
        res = can_pebble(g, d, t)
        assert res.reachable == oracle_reachable(n, g.edges, d, t), (g, d, t)
        if weight(g, d, t).value < 1:
            assert not res.reachable
        if res.reachable:
            assert verify_certificate(g, d, t, res.certificate)
            more = list(d)
            more[rng.randrange(n)] += 1
            assert can_pebble(g, tuple(more), t).reachable
            missing = [e for e in pairs if not g.has_edge(*e)]
            if missing:
                assert can_pebble(g.with_edge(*rng.choice(missing)), d, t).reachable
        for x in range(n):
            if d[x] >= 2:
                for y in g.adj[x]:
                    assert weight(g, apply_move(g, d, Move(x, y)), t).value <= weight(g, d, t).value
        cases += 1
    elapsed = time.perf_counter() - started
    line(7, elapsed < 600, f"{cases} randomized cases in {elapsed:.1f}s")
    assert elapsed < 600


@criterion(8)
def test_c8_threshold_sweep():
    props = tuple(Property.parse(p) for p in ("connected", "diam_le(2)", "kappa_ge(3)", "class0"))
    cfg = ExperimentConfig(10, parse_grid("0.1:0.9:0.1"), 200, 20_261_019, props)
    started = time.perf_counter()
    first = sweep(cfg, threads=1)
    elapsed = time.perf_counter() - started
    second = sweep(cfg, threads=1)
    rows = first.rows_for("class0")
    # nondecreasing up to CI overlap: each later interval reaches the earlier one
    monotone = all(later.ci_high >= earlier.ci_low for i, earlier in enumerate(rows) for later in rows[i + 1:])
    top = rows[-1].estimate
    identical = first.to_csv().encode() == second.to_csv().encode()
    ok = monotone and top >= 0.95 and not first.violations and identical and elapsed < 1800
    line(8, ok, f"class0 estimates {[r.estimate for r in rows]}, violations {len(first.violations)}, {elapsed:.1f}s")
    assert monotone
    assert top >= 0.95
    assert first.violations == []
    assert identical
    assert elapsed < 1800
