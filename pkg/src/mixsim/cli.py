"""Command-line interface: ``mixsim {gen,features,run,compare}``.

Exit codes: 0 success, 1 usage or validation error, 2 runtime or I/O error.
The default seed comes from ``$MIXSIM_SEED`` when ``--seed`` is not given.
"""

import argparse
import configparser
import logging
import os
import sys
from pathlib import Path

from mixsim import netgen, plotting, report
from mixsim.commsim import MODES, EventLog, SimConfig, run as simulate
from mixsim.errors import EdgeListError, InvalidParameter
from mixsim.experiment import (
    NETWORK_KINDS,
    ExperimentSpec,
    NetworkSpec,
    case_label,
    compare_networks,
    default_spec,
    parse_network,
    rep_seed,
    run_repetitions,
)
from mixsim.rng import env_default_seed
from mixsim.trajectory import trajectory, trajectory_csv

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2

log = logging.getLogger("mixsim")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write(path, data):
    if path is None or str(path) == "-":
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
        else:
            sys.stdout.write(data)
        return
    path = Path(path)
    if isinstance(data, bytes):
        path.write_bytes(data)
    else:
        path.write_text(data, encoding="utf-8")


def _seed(args):
    return args.seed if args.seed is not None else env_default_seed()


def load_graph(source: str, seed: int) -> netgen.Graph:
    """Read a graph from an edge-list path or an inline ``kind:params`` string."""
    if os.path.exists(source):
        return netgen.load_edge_list(Path(source).read_text(encoding="utf-8"))
    kind = source.partition(":")[0].strip().lower()
    if kind not in NETWORK_KINDS:
        raise UsageError(f"graph source {source!r} is neither a file nor a kind:params constructor")
    return parse_network(source).build(seed)


# ---- gen -------------------------------------------------------------------

GEN_PARAMS = {
    "star": ("n",),
    "tree": ("branching", "depth"),
    "jumpers": ("branching", "depth", "count"),
    "ws": ("n", "k", "p"),
    "ba": ("n", "m"),
    "hypercube": ("dim",),
}


def cmd_gen(args):
    params = {}
    for name in GEN_PARAMS[args.kind]:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"gen {args.kind} requires --{name}")
        params[name] = value
    unused = [f"--{name}" for name in ("n", "branching", "depth", "count", "k", "p", "m", "dim")
              if getattr(args, name) is not None and name not in params]
    if unused:
        raise UsageError(f"gen {args.kind} does not take {', '.join(unused)}")
    seed = _seed(args)
    graph = NetworkSpec(args.kind, args.kind, params, seed).build(seed)
    _write(args.out, graph.to_edge_list())
    summary = report.features_text(netgen.graph_features(graph), netgen.degree_histogram(graph))
    # keep stdout clean when the edge list itself goes there
    (sys.stderr if args.out in (None, "-") else sys.stdout).write(summary)
    if args.plot:
        _write(args.plot, plotting.degree_histogram_svg({args.kind: netgen.degree_histogram(graph)}))
    return EXIT_OK


# ---- features --------------------------------------------------------------

def cmd_features(args):
    graph = load_graph(args.graph, _seed(args))
    feats = netgen.graph_features(graph)
    hist = netgen.degree_histogram(graph)
    if args.format == "csv":
        _write(args.out, report.features_csv(feats, hist))
    else:
        _write(args.out, report.features_text(feats, hist))
    if args.plot:
        _write(args.plot, plotting.degree_histogram_svg({args.graph: hist}))
    return EXIT_OK


# ---- run -------------------------------------------------------------------

def cmd_run(args):
    seed = _seed(args)
    graph = load_graph(args.graph, seed)
    cfg = SimConfig(g_rate=args.g, d_rate=args.d, u=args.u, n0=args.n0, t_max=args.steps, mode=args.mode)
    cfg.check_graph(graph)
    if args.reps < 1:
        raise InvalidParameter(f"--reps must be >= 1, got {args.reps}")
    avg, _ = run_repetitions(graph, cfg, args.reps, seed, workers=args.workers)
    name = args.name or args.graph
    _write(args.out, report.measures_csv([(name, case_label(args.g, args.d), avg)]))

    if args.trajectory or args.trajectory_svg or args.event_log or args.series:
        # audit outputs replay repetition 0
        events = EventLog() if args.event_log else None
        series = simulate(graph, cfg.with_seed(rep_seed(seed, 0)), log=events)
        points = trajectory(series)
        if args.trajectory:
            _write(args.trajectory, trajectory_csv(points))
        if args.trajectory_svg:
            _write(args.trajectory_svg, plotting.trajectory_svg({name: points}))
        if args.event_log:
            _write(args.event_log, events.to_csv())
        if args.series:
            _write(args.series, series.to_csv())
    return EXIT_OK


# ---- compare ---------------------------------------------------------------

RUN_KEYS = {"reps": int, "u": int, "n0": int, "t_max": int, "mode": str, "seed": int}


def parse_spec_file(text: str, seed_override=None) -> ExperimentSpec:
    """Read an experiment spec from INI-style ``key = value`` sections.

    ``[run]`` holds reps/u/n0/t_max/mode/seed, each ``[network NAME]`` a
    ``kind`` plus that kind's parameters (and optionally ``seed``), each
    ``[case NAME]`` the rates ``g`` and ``d``. Sections keep file order.
    """
    cp = configparser.ConfigParser(interpolation=None, default_section="__none__")
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise UsageError(f"spec file: {exc}") from None

    run_opts = {}
    networks, cases = [], []
    for section in cp.sections():
        items = dict(cp.items(section))
        head, _, name = section.partition(" ")
        name = name.strip()
        try:
            if section == "run":
                unknown = set(items) - set(RUN_KEYS)
                if unknown:
                    raise UsageError(f"[run]: unknown keys {sorted(unknown)}")
                run_opts = {k: RUN_KEYS[k](v) for k, v in items.items()}
            elif head == "network" and name:
                kind = items.pop("kind", None)
                if kind not in NETWORK_KINDS:
                    raise UsageError(f"[{section}]: kind must be one of {sorted(NETWORK_KINDS)}")
                seed = int(items.pop("seed")) if "seed" in items else None
                fields = dict(NETWORK_KINDS[kind])
                unknown = set(items) - set(fields)
                if unknown:
                    raise UsageError(f"[{section}]: unknown keys {sorted(unknown)}")
                networks.append(NetworkSpec(name, kind, {k: fields[k](v) for k, v in items.items()}, seed))
            elif head == "case" and name:
                if set(items) != {"g", "d"}:
                    raise UsageError(f"[{section}]: expected exactly keys g and d, got {sorted(items)}")
                cases.append((float(items["g"]), float(items["d"])))
            else:
                raise UsageError(f"unknown section [{section}]")
        except ValueError as exc:
            if isinstance(exc, InvalidParameter):
                raise
            raise UsageError(f"[{section}]: {exc}") from None

    seed = seed_override if seed_override is not None else run_opts.pop("seed", None)
    run_opts.pop("seed", None)
    if seed is None:
        seed = env_default_seed()
    reps = run_opts.pop("reps", 100)
    base = SimConfig(**{"u": 1, "n0": 10, "t_max": 100, **run_opts})
    if not cases:
        raise UsageError("spec file defines no [case ...] sections")
    return ExperimentSpec(networks=networks, cases=cases, reps=reps, base=base, master_seed=seed)


def cmd_compare(args):
    if args.default:
        spec = default_spec(_seed(args), reps=args.reps or 100, mode=args.mode or "single")
    else:
        try:
            text = Path(args.spec).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read spec file: {exc}") from None
        spec = parse_spec_file(text, args.seed)
        if args.reps:
            spec = ExperimentSpec(spec.networks, spec.cases, args.reps, spec.base, spec.master_seed)
        if args.mode:
            spec = ExperimentSpec(spec.networks, spec.cases, spec.reps,
                                  SimConfig(**{**spec.base.__dict__, "mode": args.mode}), spec.master_seed)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rep = compare_networks(spec, workers=args.workers)
    _write(out / "measures.csv", report.report_measures_csv(rep))
    _write(out / "radar.csv", report.radar_csv(rep))
    _write(out / "report.json", report.report_json(rep))
    for label in rep.case_labels:
        _write(out / f"radar_{label}.svg", plotting.radar_svg(rep.radar[label], title=label))
    _write(out / "mixism.svg", plotting.mixism_svg(rep))
    hists = {name: netgen.degree_histogram(g) for name, g in rep.graphs.items()}
    _write(out / "degree_histograms.svg", plotting.degree_histogram_svg(hists))

    failed = rep.failed()
    for cell in failed:
        print(f"cell {cell.network}/{case_label(*cell.case)} failed: {cell.error}", file=sys.stderr)
    print(f"wrote {len(rep.cells) - len(failed)}/{len(rep.cells)} cells to {out}")
    return EXIT_RUNTIME if failed else EXIT_OK


# ---- parser ----------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="mixsim", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a network and write its edge list")
    p.add_argument("kind", choices=sorted(GEN_PARAMS))
    p.add_argument("--n", type=int)
    p.add_argument("--branching", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--count", type=int, help="jumper edges added to the tree")
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", "-o", help="edge-list path (default: stdout)")
    p.add_argument("--plot", help="write a degree histogram SVG here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("features", help="graph features and degree histogram")
    p.add_argument("graph", help="edge-list path or kind:params")
    p.add_argument("--format", choices=("csv", "text"), default="csv")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", "-o")
    p.add_argument("--plot", help="write a degree histogram SVG here")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("run", help="simulate repetitions on one graph and emit measures")
    p.add_argument("--graph", required=True, help="edge-list path or kind:params, e.g. star:91")
    p.add_argument("--name", help="network label in the CSV (default: --graph)")
    p.add_argument("--g", type=float, default=0.4, help="generation rate")
    p.add_argument("--d", type=float, default=0.3, help="disappearance rate")
    p.add_argument("--u", type=int, default=1, help="information unit")
    p.add_argument("--n0", type=int, default=10, help="initially informed vertices")
    p.add_argument("--steps", type=int, default=100, help="t_max")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--mode", choices=MODES, default="single")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", "-o", help="measures CSV (default: stdout)")
    p.add_argument("--trajectory", help="trajectory CSV of repetition 0")
    p.add_argument("--trajectory-svg", help="polar trajectory SVG of repetition 0")
    p.add_argument("--event-log", help="event log CSV of repetition 0")
    p.add_argument("--series", help="holdings CSV of repetition 0")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="network x case comparison with radar data")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--default", action="store_true", help="six benchmark networks x four cases")
    src.add_argument("--spec", help="experiment spec file")
    p.add_argument("--seed", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out-dir", default="mixsim-out")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, InvalidParameter, EdgeListError) as exc:
        print(f"mixsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mixsim: I/O error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
