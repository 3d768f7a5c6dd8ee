"""Repetition harness and cross-network comparison.

Repetition ``r`` of any cell simulates with seed ``derive_seed(master_seed,
"rep", r)``, so results do not depend on execution order or on how work is
split across processes. Randomized networks are built once per spec from
their construction seed and shared by all cases and repetitions.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

from mixsim import netgen
from mixsim.commsim import SimConfig, run
from mixsim.errors import InvalidParameter
from mixsim.msm import MEASURE_NAMES, MeasureSet, measure_series
from mixsim.rng import derive_seed, make_rng

log = logging.getLogger(__name__)

BENCHMARK_CASES = ((0.4, 0.3), (0.4, 0.4), (0.5, 0.4), (0.5, 0.5))

# kind -> ordered parameter names, with converters
NETWORK_KINDS = {
    "star": (("n", int),),
    "tree": (("branching", int), ("depth", int)),
    "jumpers": (("branching", int), ("depth", int), ("count", int)),
    "ws": (("n", int), ("k", int), ("p", float)),
    "ba": (("n", int), ("m", int)),
    "hypercube": (("dim", int),),
}


@dataclass(frozen=True)
class NetworkSpec:
    name: str
    kind: str
    params: dict
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in NETWORK_KINDS:
            raise InvalidParameter(f"unknown network kind {self.kind!r}; choose from {sorted(NETWORK_KINDS)}")
        expected = [p for p, _ in NETWORK_KINDS[self.kind]]
        if sorted(self.params) != sorted(expected):
            raise InvalidParameter(f"{self.kind} takes parameters {expected}, got {sorted(self.params)}")

    def build(self, master_seed: int = 0) -> netgen.Graph:
        p = self.params
        seed = self.seed if self.seed is not None else derive_seed(master_seed, "net", self.name)
        rng = make_rng(seed, "graph")
        if self.kind == "star":
            return netgen.make_star(p["n"])
        if self.kind == "tree":
            return netgen.make_tree(p["branching"], p["depth"])
        if self.kind == "jumpers":
            return netgen.add_jumpers(netgen.make_tree(p["branching"], p["depth"]), p["count"], rng)
        if self.kind == "ws":
            return netgen.make_ws(p["n"], p["k"], p["p"], rng)
        if self.kind == "ba":
            return netgen.make_ba(p["n"], p["m"], rng)
        return netgen.make_hypercube(p["dim"])


def parse_network(text: str, name: Optional[str] = None, seed: Optional[int] = None) -> NetworkSpec:
    """Parse an inline constructor such as ``star:91`` or ``ws:91,4,0.55``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind not in NETWORK_KINDS:
        raise InvalidParameter(f"unknown network kind {kind!r} in {text!r}")
    fields = NETWORK_KINDS[kind]
    values = [v.strip() for v in rest.split(",")] if rest.strip() else []
    if len(values) != len(fields):
        names = ",".join(p for p, _ in fields)
        raise InvalidParameter(f"{kind} expects {kind}:{names}, got {text!r}")
    try:
        params = {p: conv(v) for (p, conv), v in zip(fields, values)}
    except ValueError as exc:
        raise InvalidParameter(f"bad parameter in {text!r}: {exc}") from None
    return NetworkSpec(name or text, kind, params, seed)


def case_label(g_rate: float, d_rate: float) -> str:
    return f"g{g_rate:g}_d{d_rate:g}"


def default_networks() -> list[NetworkSpec]:
    return [
        NetworkSpec("Star", "star", {"n": 91}),
        NetworkSpec("Tree", "tree", {"branching": 9, "depth": 2}),
        NetworkSpec("Tree+Jumpers", "jumpers", {"branching": 9, "depth": 2, "count": 30}),
        NetworkSpec("Tree+More", "jumpers", {"branching": 9, "depth": 2, "count": 60}),
        NetworkSpec("Small-world", "ws", {"n": 91, "k": 4, "p": 0.55}),
        NetworkSpec("Hypercube", "hypercube", {"dim": 6}),
    ]


@dataclass(frozen=True)
class ExperimentSpec:
    networks: list
    cases: list = field(default_factory=lambda: list(BENCHMARK_CASES))
    reps: int = 100
    base: SimConfig = field(default_factory=SimConfig)
    master_seed: int = 0

    def __post_init__(self):
        if self.reps < 1:
            raise InvalidParameter(f"reps must be >= 1, got {self.reps}")
        if not self.networks:
            raise InvalidParameter("at least one network is required")
        if not self.cases:
            raise InvalidParameter("at least one (g, d) case is required")
        names = [net.name for net in self.networks]
        if len(set(names)) != len(names):
            raise InvalidParameter(f"network names must be unique, got {names}")
        for g, d in self.cases:
            replace(self.base, g_rate=g, d_rate=d)  # validates the rates

    def case_config(self, index: int) -> SimConfig:
        g, d = self.cases[index]
        return replace(self.base, g_rate=g, d_rate=d)


def default_spec(master_seed: int = 0, reps: int = 100, mode: str = "single") -> ExperimentSpec:
    """Six networks x four (g, d) cases with u=1, n0=10, t_max=100."""
    return ExperimentSpec(
        networks=default_networks(),
        cases=list(BENCHMARK_CASES),
        reps=reps,
        base=SimConfig(u=1, n0=10, t_max=100, mode=mode),
        master_seed=master_seed,
    )


def average_measures(per_rep: list) -> MeasureSet:
    """Per-measure arithmetic mean over repetitions that define it, in index order."""
    values = {}
    absent = {}
    for name in MEASURE_NAMES:
        defined = [getattr(ms, name) for ms in per_rep if getattr(ms, name) is not None]
        absent_count = len(per_rep) - len(defined)
        if absent_count:
            absent[name] = absent_count
        total = 0.0
        for x in defined:
            total += x
        values[name] = total / len(defined) if defined else None
    return MeasureSet(
        **values,
        excluded_LR=sum(ms.excluded_LR for ms in per_rep),
        excluded_S=sum(ms.excluded_S for ms in per_rep),
        absent_reps=absent,
    )


def rep_seed(master_seed: int, rep: int) -> int:
    return derive_seed(master_seed, "rep", rep)


def _run_reps(graph, cfg, rep_indices, master_seed):
    return [measure_series(run(graph, cfg.with_seed(rep_seed(master_seed, r)))) for r in rep_indices]


def _chunks(n, parts):
    size = -(-n // parts)
    return [range(i, min(n, i + size)) for i in range(0, n, size)]


def run_repetitions(graph, cfg: SimConfig, reps: int, master_seed: int, workers: Optional[int] = None):
    """Simulate ``reps`` runs and return ``(averaged MeasureSet, per-rep list)``.

    ``workers > 1`` splits the repetitions across processes; the result is
    identical to the serial run.
    """
    if reps < 1:
        raise InvalidParameter(f"reps must be >= 1, got {reps}")
    cfg.check_graph(graph)
    if workers and workers > 1 and reps > 1:
        chunks = _chunks(reps, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_reps, graph, cfg, c, master_seed) for c in chunks]
            per_rep = [ms for fut in futures for ms in fut.result()]
    else:
        per_rep = _run_reps(graph, cfg, range(reps), master_seed)
    return average_measures(per_rep), per_rep


@dataclass
class CellResult:
    network: str
    case: tuple
    average: Optional[MeasureSet] = None
    per_rep: list = field(default_factory=list)
    error: Optional[str] = None


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    graphs: dict
    cells: dict  # (network name, case label) -> CellResult
    radar: dict = field(default_factory=dict)  # case label -> {network -> {measure -> value}}

    @property
    def network_names(self) -> list:
        return [net.name for net in self.spec.networks]

    @property
    def case_labels(self) -> list:
        return [case_label(g, d) for g, d in self.spec.cases]

    def failed(self) -> list:
        return [c for c in self.cells.values() if c.error is not None]

    def average(self, network: str, case: str) -> Optional[MeasureSet]:
        return self.cells[network, case].average


def _cell_task(graph, cfg, reps, master_seed):
    try:
        avg, per_rep = run_repetitions(graph, cfg, reps, master_seed)
        return avg, per_rep, None
    except Exception as exc:  # noqa: BLE001 - reported per cell
        return None, [], f"{type(exc).__name__}: {exc}"


def compare_networks(spec: ExperimentSpec, workers: Optional[int] = None) -> ExperimentReport:
    """Fill the network x case matrix of averaged measures plus radar data."""
    graphs = {}
    build_errors = {}
    for net in spec.networks:
        try:
            graphs[net.name] = net.build(spec.master_seed)
        except Exception as exc:  # noqa: BLE001
            build_errors[net.name] = f"{type(exc).__name__}: {exc}"
            log.warning("could not build network %s: %s", net.name, exc)

    tasks = []
    for net in spec.networks:
        for ci, case in enumerate(spec.cases):
            tasks.append((net.name, ci, case))

    def args(name, ci):
        return graphs[name], spec.case_config(ci), spec.reps, spec.master_seed

    results = {}
    runnable = [t for t in tasks if t[0] in graphs]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {(name, ci): pool.submit(_cell_task, *args(name, ci)) for name, ci, _ in runnable}
            results = {key: fut.result() for key, fut in futures.items()}
    else:
        results = {(name, ci): _cell_task(*args(name, ci)) for name, ci, _ in runnable}

    cells = {}
    for name, ci, case in tasks:
        label = case_label(*case)
        if name in build_errors:
            cells[name, label] = CellResult(name, tuple(case), error=build_errors[name])
            continue
        avg, per_rep, error = results[name, ci]
        if error:
            log.warning("cell %s/%s failed: %s", name, label, error)
        cells[name, label] = CellResult(name, tuple(case), avg, per_rep, error)

    report = ExperimentReport(spec, graphs, cells)
    report.radar = {label: radar_normalize(report, label) for label in report.case_labels}
    return report


def normalize_columns(rows: dict) -> dict:
    """Divide every measure by its column maximum; all-zero columns stay zero."""
    out = {name: {} for name in rows}
    for measure in MEASURE_NAMES:
        column = [v[measure] for v in rows.values() if v.get(measure) is not None]
        top = max(column) if column else None
        for name, values in rows.items():
            x = values.get(measure)
            if x is None:
                out[name][measure] = None
            elif not top:
                out[name][measure] = 0.0
            else:
                out[name][measure] = x / top
    return out


def radar_normalize(report: ExperimentReport, case: str) -> dict:
    """Max-normalized measures per network for one case label."""
    if case not in report.case_labels:
        raise InvalidParameter(f"case {case!r} not in report; available {report.case_labels}")
    rows = {}
    for name in report.network_names:
        avg = report.cells[name, case].average
        if avg is not None:
            rows[name] = avg.measures()
    return normalize_columns(rows)
