"""Monte Carlo estimates of Pr(property) for G(n, p) over a grid of p.

Trial ``i`` of a sweep always uses the same derived seed, whatever ``p`` is.
Since :func:`gnp_sample` thresholds one fixed uniform draw per vertex pair, the
sampled graphs are nested in ``p``, so estimates of monotone properties can
only go up along the grid.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .generators import gnp_sample
from .graph import Graph, diameter, is_connected, vertex_connectivity
from .number import is_class0

CLASS0_GUARD = 10
WILSON_Z = 1.959963984540054
CSV_FIELDS = ["n", "p", "property", "trials", "successes", "estimate", "ci_low", "ci_high", "seed"]
LIMITATION = (
    "Estimates at a single finite n; a threshold is an asymptotic function class and is not "
    "identified by any finite experiment. Reference curves are asymptotic guides only."
)


class ExperimentError(ValueError):
    pass


@dataclass(frozen=True)
class Property:
    name: str  # connected | diam_le | kappa_ge | class0
    param: int | None = None

    @classmethod
    def parse(cls, text: str) -> "Property":
        text = text.strip()
        for name in ("diam_le", "kappa_ge"):
            if text.startswith(name):
                rest = text[len(name):].strip("():= ")
                try:
                    return cls(name, int(rest))
                except ValueError:
                    raise ExperimentError(f"{name} needs an integer parameter, got {text!r}") from None
        if text in ("connected", "class0"):
            return cls(text)
        raise ExperimentError(f"unknown property {text!r}")

    def __str__(self) -> str:
        return self.name if self.param is None else f"{self.name}({self.param})"


class GraphFacts:
    """Lazily computed invariants of one sampled graph."""

    def __init__(self, g: Graph):
        self.g = g
        self._cache: dict[str, object] = {}

    def _get(self, key: str, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def connected(self) -> bool:
        return self._get("connected", lambda: is_connected(self.g))

    @property
    def diameter(self) -> float:
        return self._get("diameter", lambda: diameter(self.g) if self.connected else math.inf)

    @property
    def kappa(self) -> int:
        return self._get("kappa", lambda: vertex_connectivity(self.g) if self.g.n >= 2 else 0)

    @property
    def class0(self) -> bool:
        return self._get("class0", lambda: is_class0(self.g).class0)

    def holds(self, prop: Property) -> bool:
        if prop.name == "connected":
            return self.connected
        if prop.name == "diam_le":
            return self.diameter <= prop.param
        if prop.name == "kappa_ge":
            return self.kappa >= prop.param
        if prop.name == "class0":
            return self.class0
        raise ExperimentError(f"unknown property {prop}")

    def implication_failures(self) -> list[str]:
        """Per-sample consequences of the Class 0 results; each must hold for every graph."""
        bad = []
        if self.class0 and not self.connected:
            bad.append("class0 => connected")
        if self.g.n >= 2 and self.diameter <= 1 and not self.class0:
            bad.append("diam<=1 => class0")
        if self.connected and self.diameter <= 2 and self.kappa >= 3 and not self.class0:
            bad.append("kappa>=3 and diam<=2 => class0")
        return bad


def evaluate_property(g: Graph, prop: Property | str) -> bool:
    if isinstance(prop, str):
        prop = Property.parse(prop)
    return GraphFacts(g).holds(prop)


def trial_seed(master: int, trial: int) -> int:
    """64-bit seed for one trial, from numpy's SeedSequence hash of (master, trial)."""
    state = np.random.SeedSequence([master % (1 << 64), trial]).generate_state(2, np.uint32)
    return (int(state[0]) << 32) | int(state[1])


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    if trials <= 0:
        raise ExperimentError("trials must be positive")
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # clamp rounding noise so that low <= phat <= high exactly
    return max(0.0, min(phat, centre - half)), min(1.0, max(phat, centre + half))


@dataclass(frozen=True)
class Row:
    n: int
    p: float
    property: str
    trials: int
    successes: int
    estimate: float
    ci_low: float
    ci_high: float
    seed: int

    @classmethod
    def build(cls, n: int, p: float, prop: str, trials: int, successes: int, seed: int) -> "Row":
        lo, hi = wilson_interval(successes, trials)
        return cls(n, p, prop, trials, successes, successes / trials, lo, hi, seed)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p_grid: tuple[float, ...]
    trials: int
    seed: int
    properties: tuple[Property, ...]

    def __post_init__(self):
        if self.trials < 1:
            raise ExperimentError("trials must be at least 1")
        if self.n < 1:
            raise ExperimentError("n must be at least 1")
        if not self.p_grid:
            raise ExperimentError("empty p grid")
        if any(not 0.0 <= p <= 1.0 for p in self.p_grid):
            raise ExperimentError("every p must lie in [0, 1]")
        if not self.properties:
            raise ExperimentError("no properties requested")
        if any(pr.name == "class0" for pr in self.properties) and self.n > CLASS0_GUARD:
            raise ExperimentError(f"class0 evaluation is limited to n <= {CLASS0_GUARD}")


@dataclass
class Violation:
    p: float
    trial: int
    seed: int
    edges: list[tuple[int, int]]
    implications: list[str]


@dataclass
class SweepResult:
    rows: list[Row]
    violations: list[Violation] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for r in self.rows:
            writer.writerow(
                [r.n, repr(r.p), r.property, r.trials, r.successes,
                 f"{r.estimate:.6f}", f"{r.ci_low:.6f}", f"{r.ci_high:.6f}", r.seed]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "rows": [asdict(r) for r in self.rows],
            "violations": [asdict(v) for v in self.violations],
            "metadata": self.metadata,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def rows_for(self, prop: str) -> list[Row]:
        return [r for r in self.rows if r.property == prop]


def _run_grid_point(args) -> tuple[list[int], list[Violation]]:
    n, p, trials, seed, props, check = args
    successes = [0] * len(props)
    violations = []
    for t in range(trials):
        s = trial_seed(seed, t)
        facts = GraphFacts(gnp_sample(n, p, s))
        for i, prop in enumerate(props):
            successes[i] += facts.holds(prop)
        if check:
            bad = facts.implication_failures()
            if bad:
                violations.append(Violation(p, t, s, facts.g.sorted_edges(), bad))
    return successes, violations


def estimate_probability(n: int, p: float, trials: int, seed: int, prop: Property | str) -> Row:
    if isinstance(prop, str):
        prop = Property.parse(prop)
    ExperimentConfig(n, (p,), trials, seed, (prop,))
    (succ,), _ = _run_grid_point((n, p, trials, seed, (prop,), False))
    return Row.build(n, p, str(prop), trials, succ, seed)


def sweep(
    config: ExperimentConfig,
    threads: int | None = 1,
    progress: Callable[[str], None] | None = None,
) -> SweepResult:
    """Estimate every property at every grid point.

    Rows come out in grid order, properties in config order, and do not depend
    on ``threads``. When class0 is among the properties, every sample is also
    checked against the implications in :meth:`GraphFacts.implication_failures`.
    """
    check = any(pr.name == "class0" for pr in config.properties)
    jobs = [(config.n, p, config.trials, config.seed, config.properties, check) for p in config.p_grid]
    threads = threads or os.cpu_count() or 1
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_grid_point, jobs))
    else:
        results = []
        for job in jobs:
            results.append(_run_grid_point(job))
            if progress:
                progress(f"p={job[1]} done")
    out = SweepResult([], metadata={"limitation": LIMITATION, "seed_scheme": "SeedSequence([seed, trial])"})
    for p, (succ, viol) in zip(config.p_grid, results):
        for prop, s in zip(config.properties, succ):
            out.rows.append(Row.build(config.n, p, str(prop), config.trials, s, config.seed))
        out.violations += viol
    return out


def parse_grid(text: str) -> tuple[float, ...]:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0:
                raise ExperimentError("grid step must be positive")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return tuple(round(start + i * step, 10) for i in range(count))
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ExperimentError(f"cannot parse p grid {text!r}") from None


@dataclass(frozen=True)
class ScalingRow:
    n: int
    diameter_curve: float  # (n lg n)^(1/d) / n
    connectivity_curve: float  # lg n / n


def scaling_reference(d: int, n_list: Sequence[int]) -> list[ScalingRow]:
    """Asymptotic reference curves to plot next to sweep estimates."""
    if d < 1:
        raise ExperimentError("d must be at least 1")
    rows = []
    for n in n_list:
        if n < 2:
            raise ExperimentError("n must be at least 2")
        lg = math.log2(n)
        rows.append(ScalingRow(n, (n * lg) ** (1.0 / d) / n, lg / n))
    return rows
