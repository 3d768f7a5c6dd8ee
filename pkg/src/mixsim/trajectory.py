"""Polar embedding of holdings vectors.

Each state maps to ``r = ||Q||`` and ``theta``, the angle between ``Q`` and
the all-ones vector. The zero state maps to ``(0, 0)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from mixsim.commsim import InfoSeries


@dataclass(frozen=True)
class TrajectoryPoint:
    t: int
    r: float
    theta: float


def polar_point(state) -> tuple[float, float]:
    q = np.asarray(state, dtype=float)
    sq = float(q @ q)
    if sq == 0.0:
        return 0.0, 0.0
    # sqrt(n * sq) is exact when q is proportional to the ones vector
    cos = float(q.sum()) / math.sqrt(q.size * sq)
    return math.sqrt(sq), math.acos(max(-1.0, min(1.0, cos)))


def trajectory(series) -> list[TrajectoryPoint]:
    states = series.states if isinstance(series, InfoSeries) else np.asarray(series)
    return [TrajectoryPoint(t, *polar_point(row)) for t, row in enumerate(states)]


def trajectory_csv(points) -> str:
    lines = ["t,r,theta"]
    lines.extend(f"{p.t},{p.r:.6g},{p.theta:.6g}" for p in points)
    return "\n".join(lines) + "\n"
