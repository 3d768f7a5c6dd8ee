"""Mixbiotic society measures.

Four per-step statistics compare consecutive holdings vectors ``prev`` and
``next``:

* ``I``   change of total information, ``|sum(next) - sum(prev)| / (n*u)``
* ``L``   Euclidean change, ``||next - prev|| / (sqrt(n)*u)``
* ``LR``  relative Euclidean change, ``||next - prev|| / ||next||``
* ``S``   cosine similarity of ``next`` and ``prev``

``LR`` is undefined when ``next`` is the zero vector and ``S`` when either
vector is zero; undefined steps are NaN in a :class:`StepSeries` and are
dropped (and counted) during aggregation.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from mixsim.commsim import InfoSeries
from mixsim.errors import InvalidParameter, MixsimError

MEASURE_NAMES = ("mu_I", "var_I", "mu_L", "var_L", "mu_LR", "var_LR", "mu_S", "var_S", "M_mix")
CSV_COLUMNS = ("network", "case") + MEASURE_NAMES + ("M_atom", "M_mob", "excluded_LR", "excluded_S")

PHASES = ("Mixism", "Atomism", "Mobism", "Nihilism")
# Magnitudes typical of each composite measure in mixism-range simulations;
# these scale the measures against each other before picking the largest.
REFERENCE_SCALES = {"mix": 0.02, "atom": 0.1, "mob": 0.25}
NIHILISM_EPSILON = 1e-3


def _pair(prev, next_):
    a = np.asarray(prev)
    b = np.asarray(next_)
    if a.ndim != 1 or a.shape != b.shape:
        raise InvalidParameter(f"state shapes differ: {a.shape} vs {b.shape}")
    if a.size == 0:
        raise InvalidParameter("states must have at least one vertex")
    return a, b


def stat_I(prev, next_, u=1) -> float:
    a, b = _pair(prev, next_)
    return abs(float(b.sum()) - float(a.sum())) / (a.size * u)


def stat_L(prev, next_, u=1) -> float:
    a, b = _pair(prev, next_)
    d = b.astype(float) - a
    return math.sqrt(float(d @ d)) / (math.sqrt(a.size) * u)


def stat_LR(prev, next_) -> Optional[float]:
    a, b = _pair(prev, next_)
    b = b.astype(float)
    denom = float(b @ b)
    if denom == 0.0:
        return None
    d = b - a
    return math.sqrt(float(d @ d)) / math.sqrt(denom)


def stat_S(prev, next_) -> Optional[float]:
    a, b = _pair(prev, next_)
    a = a.astype(float)
    b = b.astype(float)
    na, nb = float(a @ a), float(b @ b)
    if na == 0.0 or nb == 0.0:
        return None
    return min(1.0, float(b @ a) / math.sqrt(nb * na))


@dataclass(frozen=True)
class StepSeries:
    """Per-transition statistics; entry ``t`` covers ``states[t] -> states[t+1]``."""

    I: np.ndarray
    L: np.ndarray
    LR: np.ndarray
    S: np.ndarray

    def __len__(self):
        return len(self.I)

    @classmethod
    def from_lists(cls, I, L, LR, S):
        conv = lambda xs: np.array([np.nan if x is None else x for x in xs], dtype=float)
        return cls(conv(I), conv(L), conv(LR), conv(S))


def step_series(series, u=None) -> StepSeries:
    """Evaluate all four statistics for every consecutive pair of states.

    ``series`` is an :class:`InfoSeries` or a 2-D array of holdings
    (rows are time steps). ``u`` defaults to the series' own unit.
    """
    if isinstance(series, InfoSeries):
        Q = series.states
        u = series.u if u is None else u
    else:
        Q = np.asarray(series)
        u = 1 if u is None else u
    if Q.ndim != 2 or Q.shape[0] < 2:
        raise InvalidParameter("need a series of at least two states")
    n = Q.shape[1]
    Q = Q.astype(float)
    prev, nxt = Q[:-1], Q[1:]
    diff = nxt - prev
    dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    sq_prev = np.einsum("ij,ij->i", prev, prev)
    sq_next = np.einsum("ij,ij->i", nxt, nxt)
    dot = np.einsum("ij,ij->i", nxt, prev)

    I = np.abs(nxt.sum(axis=1) - prev.sum(axis=1)) / (n * u)
    L = dist / (math.sqrt(n) * u)
    with np.errstate(divide="ignore", invalid="ignore"):
        LR = np.where(sq_next > 0, dist / np.sqrt(sq_next), np.nan)
        S = np.where(
            (sq_next > 0) & (sq_prev > 0),
            np.minimum(1.0, dot / np.sqrt(sq_next * sq_prev)),
            np.nan,
        )
    return StepSeries(I, L, LR, S)


@dataclass(frozen=True)
class MeasureSet:
    """Time means and population variances of the step statistics.

    A measure is None when no step (or, for averaged sets, no repetition)
    defined it. ``M_atom`` and ``M_mob`` are aliases of ``var_LR`` and
    ``mu_L``.
    """

    mu_I: Optional[float]
    var_I: Optional[float]
    mu_L: Optional[float]
    var_L: Optional[float]
    mu_LR: Optional[float]
    var_LR: Optional[float]
    mu_S: Optional[float]
    var_S: Optional[float]
    M_mix: Optional[float]
    excluded_LR: int = 0
    excluded_S: int = 0
    absent_reps: dict = field(default_factory=dict)

    @property
    def M_atom(self):
        return self.var_LR

    @property
    def M_mob(self):
        return self.mu_L

    def measures(self) -> dict:
        return {name: getattr(self, name) for name in MEASURE_NAMES}

    def as_dict(self) -> dict:
        out = self.measures()
        out.update(
            M_atom=self.M_atom,
            M_mob=self.M_mob,
            excluded_LR=self.excluded_LR,
            excluded_S=self.excluded_S,
        )
        if self.absent_reps:
            out["absent_reps"] = dict(self.absent_reps)
        return out


def _mean_var(values: np.ndarray):
    defined = values[~np.isnan(values)]
    if defined.size == 0:
        return None, None, int(values.size)
    mean = float(defined.mean())
    var = float(np.mean((defined - mean) ** 2))
    return mean, var, int(values.size - defined.size)


def aggregate(ss: StepSeries) -> MeasureSet:
    mu_I, var_I, _ = _mean_var(ss.I)
    mu_L, var_L, _ = _mean_var(ss.L)
    mu_LR, var_LR, ex_LR = _mean_var(ss.LR)
    mu_S, var_S, ex_S = _mean_var(ss.S)
    m_mix = None if mu_S is None else mu_S * var_S
    return MeasureSet(mu_I, var_I, mu_L, var_L, mu_LR, var_LR, mu_S, var_S, m_mix, ex_LR, ex_S)


def measure_series(series: InfoSeries) -> MeasureSet:
    return aggregate(step_series(series))


class PhaseUndetermined(MixsimError):
    pass


def classify_phase(ms: MeasureSet, epsilon: float = NIHILISM_EPSILON, scales=None) -> str:
    """Heuristic phase label; not a published decision rule.

    Nihilism when M_mix, M_atom and M_mob are all below ``epsilon``;
    otherwise the phase whose measure is largest relative to its reference
    scale (:data:`REFERENCE_SCALES`).
    """
    scales = {**REFERENCE_SCALES, **(scales or {})}
    values = {"mix": ms.M_mix, "atom": ms.M_atom, "mob": ms.M_mob}
    missing = [k for k, v in values.items() if v is None]
    if missing:
        raise PhaseUndetermined(f"cannot classify: measures M_{', M_'.join(missing)} are absent")
    if max(values.values()) < epsilon:
        return "Nihilism"
    label = {"mix": "Mixism", "atom": "Atomism", "mob": "Mobism"}
    best = max(("mix", "atom", "mob"), key=lambda k: values[k] / scales[k])
    return label[best]
