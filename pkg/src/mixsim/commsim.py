"""Stochastic generation, transmission and disappearance of information units.

Sending copies a unit: the receiver gains ``u`` and the sender keeps its
holding. Only vertices holding at least ``u`` can send or lose information,
and receivers are always graph neighbors of the sender.

Two event granularities are available:

``single``
    Per step, with probability ``g_rate`` one uniformly drawn holder sends
    to one uniform neighbor; then, with probability ``d_rate``, one uniformly
    drawn holder (re-evaluated after the send) loses ``u``.
``per-vertex``
    Every vertex holding ``u`` or more at the start of the step independently
    sends with probability ``g_rate`` and loses ``u`` with probability
    ``d_rate``. All changes are computed from start-of-step holdings and
    applied together.
"""

import csv
import io
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from mixsim.errors import InvalidParameter
from mixsim.netgen import Graph
from mixsim.rng import make_rng

MODES = ("single", "per-vertex")


@dataclass(frozen=True)
class SimConfig:
    g_rate: float = 0.4
    d_rate: float = 0.3
    u: int = 1
    n0: int = 10
    t_max: int = 100
    mode: str = "single"
    seed: int = 0

    def __post_init__(self):
        for name in ("g_rate", "d_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidParameter(f"{name} must lie in [0, 1], got {value}")
        if self.u < 1:
            raise InvalidParameter(f"information unit u must be a positive integer, got {self.u}")
        if self.n0 < 0:
            raise InvalidParameter(f"n0 must be >= 0, got {self.n0}")
        if self.t_max < 1:
            raise InvalidParameter(f"t_max must be >= 1, got {self.t_max}")
        if self.mode not in MODES:
            raise InvalidParameter(f"mode must be one of {MODES}, got {self.mode!r}")

    def with_seed(self, seed: int) -> "SimConfig":
        return replace(self, seed=seed)

    def check_graph(self, graph: Graph):
        if self.n0 > graph.n:
            raise InvalidParameter(f"n0={self.n0} exceeds vertex count {graph.n}")


@dataclass(frozen=True)
class InfoSeries:
    """Holdings over time: ``states[t, i]`` is vertex ``i``'s holding at step ``t``."""

    states: np.ndarray
    u: int = 1

    def __len__(self):
        return self.states.shape[0]

    @property
    def n(self) -> int:
        return self.states.shape[1]

    def totals(self) -> np.ndarray:
        return self.states.sum(axis=1)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t"] + [f"q_{i}" for i in range(self.n)])
        for t, row in enumerate(self.states.tolist()):
            writer.writerow([t, *row])
        return buf.getvalue()


class EventLog:
    """Collects simulation events as ``(step, kind, sender, receiver, erased)`` rows.

    Kinds: ``idle``, ``send``, ``send-blocked`` (sender has no neighbors),
    ``erase``. Unused fields are None.
    """

    HEADER = ("step", "kind", "sender", "receiver", "erased")

    def __init__(self):
        self.rows: list[tuple] = []

    def add(self, step, kind, sender=None, receiver=None, erased=None):
        self.rows.append((step, kind, sender, receiver, erased))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.HEADER)
        for row in self.rows:
            writer.writerow(["" if x is None else x for x in row])
        return buf.getvalue()


def init_state(graph: Graph, cfg: SimConfig, rng) -> np.ndarray:
    """Give ``u`` to ``n0`` distinct uniformly drawn vertices."""
    cfg.check_graph(graph)
    q = np.zeros(graph.n, dtype=np.int64)
    chosen = rng.sample(range(graph.n), cfg.n0)
    q[chosen] = cfg.u
    return q


def _step_single(q, adj, cfg, rng, log, t):
    u = cfg.u
    did = False
    # draw both coins every step so stream consumption does not depend on state
    if rng.random() < cfg.g_rate:
        holders = [i for i, x in enumerate(q) if x >= u]
        if holders:
            sender = holders[rng.randrange(len(holders))]
            nbrs = adj[sender]
            if nbrs:
                receiver = nbrs[rng.randrange(len(nbrs))]
                q[receiver] += u
                if log is not None:
                    log.add(t, "send", sender, receiver)
            elif log is not None:
                log.add(t, "send-blocked", sender)
            did = True
    if rng.random() < cfg.d_rate:
        holders = [i for i, x in enumerate(q) if x >= u]
        if holders:
            victim = holders[rng.randrange(len(holders))]
            q[victim] -= u
            if log is not None:
                log.add(t, "erase", erased=victim)
            did = True
    if log is not None and not did:
        log.add(t, "idle")


def _step_per_vertex(q, adj, cfg, rng, log, t):
    u = cfg.u
    delta = [0] * len(q)
    did = False
    for i, x in enumerate(q):
        if x < u:
            continue
        if rng.random() < cfg.g_rate:
            nbrs = adj[i]
            if nbrs:
                receiver = nbrs[rng.randrange(len(nbrs))]
                delta[receiver] += u
                if log is not None:
                    log.add(t, "send", i, receiver)
            elif log is not None:
                log.add(t, "send-blocked", i)
            did = True
        if rng.random() < cfg.d_rate:
            delta[i] -= u
            if log is not None:
                log.add(t, "erase", erased=i)
            did = True
    for i, dx in enumerate(delta):
        q[i] += dx
    if log is not None and not did:
        log.add(t, "idle")


_STEPPERS = {"single": _step_single, "per-vertex": _step_per_vertex}


def step(graph: Graph, state, cfg: SimConfig, rng, log: Optional[EventLog] = None, t: int = 0) -> np.ndarray:
    """Advance one step and return the new holdings; ``state`` is not modified."""
    q = [int(x) for x in state]
    if len(q) != graph.n:
        raise InvalidParameter(f"state has {len(q)} entries, graph has {graph.n} vertices")
    _STEPPERS[cfg.mode](q, graph.adjacency, cfg, rng, log, t)
    return np.asarray(q, dtype=np.int64)


def run(graph: Graph, cfg: SimConfig, log: Optional[EventLog] = None) -> InfoSeries:
    """Simulate ``cfg.t_max`` steps from a fresh initial state seeded by ``cfg.seed``."""
    rng = make_rng(cfg.seed, "sim")
    q = init_state(graph, cfg, rng).tolist()
    adj = graph.adjacency
    stepper = _STEPPERS[cfg.mode]
    out = np.empty((cfg.t_max + 1, graph.n), dtype=np.int64)
    out[0] = q
    for t in range(cfg.t_max):
        stepper(q, adj, cfg, rng, log, t)
        out[t + 1] = q
    return InfoSeries(out, cfg.u)
