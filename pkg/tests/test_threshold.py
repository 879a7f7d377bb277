import csv
import io
import json
import math

import pytest
from hypothesis import given, strategies as st

from oracles import gnp_connected_probability
from pebbling.generators import complete_graph
from pebbling.graph import Graph
from pebbling.threshold import (
    CSV_FIELDS,
    ExperimentConfig,
    ExperimentError,
    GraphFacts,
    Property,
    estimate_probability,
    evaluate_property,
    parse_grid,
    scaling_reference,
    sweep,
    trial_seed,
    wilson_interval,
)


class TestProperty:
    @pytest.mark.parametrize(
        "text, prop",
        [
            ("connected", Property("connected")),
            ("class0", Property("class0")),
            ("diam_le(2)", Property("diam_le", 2)),
            ("kappa_ge:3", Property("kappa_ge", 3)),
        ],
    )
    def test_parse(self, text, prop):
        assert Property.parse(text) == prop

    @pytest.mark.parametrize("text", ["planar", "diam_le", "kappa_ge(x)"])
    def test_parse_errors(self, text):
        with pytest.raises(ExperimentError):
            Property.parse(text)

    def test_evaluate(self, p3):
        assert evaluate_property(p3, "connected")
        assert evaluate_property(p3, "diam_le(2)") and not evaluate_property(p3, "diam_le(1)")
        assert evaluate_property(p3, "kappa_ge(1)") and not evaluate_property(p3, "kappa_ge(2)")
        assert not evaluate_property(p3, "class0")
        assert evaluate_property(complete_graph(5), "class0")

    def test_disconnected_facts(self):
        facts = GraphFacts(Graph.from_edges(4, [(0, 1)]))
        assert not facts.connected and facts.diameter == math.inf and facts.kappa == 0
        assert facts.implication_failures() == []


class TestWilson:
    @given(st.integers(1, 500), st.data())
    def test_bracket(self, trials, data):
        k = data.draw(st.integers(0, trials))
        lo, hi = wilson_interval(k, trials)
        assert 0 <= lo <= k / trials <= hi <= 1

    def test_known_value(self):
        lo, hi = wilson_interval(0, 200)
        assert lo == 0 and hi == pytest.approx(3.8415 / (200 + 3.8415), rel=1e-4)


class TestEstimate:
    def test_complete_is_class0(self):
        r = estimate_probability(5, 1.0, 10, 1, "class0")
        assert r.estimate == 1.0 and r.successes == 10

    def test_empty_disconnected(self):
        assert estimate_probability(5, 0.0, 10, 1, "connected").estimate == 0.0

    def test_connected_n8(self):
        exact = gnp_connected_probability(8, 0.5)
        assert exact == pytest.approx(0.93709, abs=1e-5)
        r = estimate_probability(8, 0.5, 200, 4242, "connected")
        assert 0.8 <= r.estimate <= 1.0

    def test_connected_n8_coverage(self):
        exact = gnp_connected_probability(8, 0.5)
        rows = [estimate_probability(8, 0.5, 200, seed, "connected") for seed in range(100)]
        covered = sum(r.ci_low <= exact <= r.ci_high for r in rows)
        # 95% nominal coverage: fewer than 90 of 100 would reject it at the 5% level
        assert covered >= 90

    def test_guard(self):
        with pytest.raises(ExperimentError):
            estimate_probability(11, 0.5, 5, 1, "class0")

    @pytest.mark.parametrize(
        "kwargs",
        [dict(trials=0), dict(p_grid=(1.5,)), dict(p_grid=()), dict(properties=())],
    )
    def test_config_validation(self, kwargs):
        base = dict(n=5, p_grid=(0.5,), trials=3, seed=1, properties=(Property("connected"),))
        base.update(kwargs)
        with pytest.raises(ExperimentError):
            ExperimentConfig(**base)

    def test_trial_seed_stable(self):
        assert trial_seed(7, 0) == trial_seed(7, 0)
        assert len({trial_seed(7, t) for t in range(100)}) == 100
        assert 0 <= trial_seed(2**70, 3) < 2**64


class TestSweep:
    def config(self, **kw):
        base = dict(
            n=7,
            p_grid=(0.2, 0.5, 0.8),
            trials=25,
            seed=99,
            properties=(Property("connected"), Property("diam_le", 2), Property("kappa_ge", 3), Property("class0")),
        )
        base.update(kw)
        return ExperimentConfig(**base)

    def test_deterministic_csv(self):
        a = sweep(self.config()).to_csv()
        b = sweep(self.config()).to_csv()
        assert a == b
        rows = list(csv.DictReader(io.StringIO(a)))
        assert list(rows[0].keys()) == CSV_FIELDS
        assert len(rows) == 12

    def test_threads_do_not_change_rows(self):
        assert sweep(self.config(), threads=2).to_csv() == sweep(self.config(), threads=1).to_csv()

    def test_json_mirror(self):
        res = sweep(self.config(trials=5))
        doc = json.loads(res.to_json())
        assert [set(r) for r in doc["rows"]] == [set(CSV_FIELDS)] * len(res.rows)
        assert "limitation" in doc["metadata"]

    def test_monotone_under_coupling(self):
        res = sweep(self.config(p_grid=parse_grid("0.1:0.9:0.2")))
        for prop in ("connected", "class0", "kappa_ge(3)", "diam_le(2)"):
            counts = [r.successes for r in res.rows_for(prop)]
            assert counts == sorted(counts)
        assert res.violations == []

    def test_rows_invariants(self):
        for r in sweep(self.config()).rows:
            assert 0 <= r.ci_low <= r.estimate <= r.ci_high <= 1
            assert r.successes <= r.trials


class TestGridAndScaling:
    def test_grid(self):
        assert parse_grid("0.1:0.9:0.1") == (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
        assert parse_grid("0.25,0.5") == (0.25, 0.5)
        with pytest.raises(ExperimentError):
            parse_grid("a:b:c")
        with pytest.raises(ExperimentError):
            parse_grid("0:1:0")

    def test_reference_values(self):
        assert scaling_reference(1, [2])[0].diameter_curve == pytest.approx(1.0)
        assert scaling_reference(2, [16])[0].diameter_curve == pytest.approx(0.5)
        assert scaling_reference(1, [8])[0].connectivity_curve == pytest.approx(0.375)

    def test_reference_errors(self):
        with pytest.raises(ExperimentError):
            scaling_reference(0, [4])
        with pytest.raises(ExperimentError):
            scaling_reference(1, [1])
