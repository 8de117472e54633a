"""Loop-only multicurves on the once-punctured torus and their growth.

A multicurve is a primitive slope ``(a, b)`` with a multiplicity; the
intersection number of two of them is ``w1*w2*|a1*b2 - a2*b1|``.  Counting
multicurves whose total intersection with a fixed spanning set ``K`` is at
most ``N`` grows like ``N^2``.  The four-punctured sphere uses the same slope
model with an extra factor of two (an optional model, off by default).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class LaminationError(ValueError):
    pass


MODELS = {"s11": 1, "s04": 2}


@dataclass(frozen=True)
class TorusMulticurve:
    """``weight`` parallel copies of the slope ``(a, b)``; weight 0 is the empty system."""

    a: int = 1
    b: int = 0
    weight: int = 0

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise LaminationError("weight must be nonnegative")
        if self.weight == 0:
            return
        if math.gcd(self.a, self.b) != 1:
            raise LaminationError(f"slope {(self.a, self.b)} is not primitive")
        if not (self.b > 0 or (self.b == 0 and self.a == 1)):
            raise LaminationError(f"slope {(self.a, self.b)} is not in canonical sign")

    @staticmethod
    def of(a: int, b: int, weight: int = 1) -> "TorusMulticurve":
        """Normalize sign, dividing out any common factor into the weight."""
        if (a, b) == (0, 0):
            return TorusMulticurve()
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        return TorusMulticurve(a, b, weight * g)

    @property
    def empty(self) -> bool:
        return self.weight == 0


EMPTY = TorusMulticurve()
DEFAULT_K = (TorusMulticurve(1, 0, 1), TorusMulticurve(0, 1, 1), TorusMulticurve(1, 1, 1))


def intersection(c1: TorusMulticurve, c2: TorusMulticurve, model: str = "s11") -> int:
    return MODELS[model] * c1.weight * c2.weight * abs(c1.a * c2.b - c2.a * c1.b)


def resolutions(c1: TorusMulticurve, c2: TorusMulticurve) -> tuple[TorusMulticurve, TorusMulticurve]:
    """The two smoothings of a pair of simple slopes meeting once."""
    if c1.weight != 1 or c2.weight != 1 or abs(c1.a * c2.b - c2.a * c1.b) != 1:
        raise LaminationError("resolutions are defined here only for simple slopes meeting once")
    return TorusMulticurve.of(c1.a + c2.a, c1.b + c2.b), TorusMulticurve.of(c1.a - c2.a, c1.b - c2.b)


def _check_K(K: Sequence[TorusMulticurve]) -> None:
    live = [k for k in K if not k.empty]
    if not any(p.a * q.b - q.a * p.b for i, p in enumerate(live) for q in live[i + 1 :]):
        raise LaminationError("K must contain two independent slopes")


def _slope_box(K: Sequence[TorusMulticurve], N: int, model: str) -> tuple[int, int]:
    # Two independent members bound |a| and |b| linearly in the total cost.
    live = [k for k in K if not k.empty]
    best = None
    for i, p in enumerate(live):
        for q in live[i + 1 :]:
            D = abs(p.a * q.b - q.a * p.b)
            if D and (best is None or D > best[0]):
                best = (D, p, q)
    D, p, q = best
    scale = MODELS[model] * min(p.weight, q.weight)
    ra = (max(abs(p.a), abs(q.a)) * N) // (D * scale) + 1
    rb = (max(abs(p.b), abs(q.b)) * N) // (D * scale) + 1
    return ra, rb


def _costs(K: Sequence[TorusMulticurve], N: int, model: str) -> np.ndarray:
    """Cost ``sum_i I(slope, K_i)`` of every primitive canonical slope that can fit."""
    ra, rb = _slope_box(K, N, model)
    a = np.arange(-ra, ra + 1, dtype=np.int64)[:, None]
    b = np.arange(0, rb + 1, dtype=np.int64)[None, :]
    keep = (np.gcd(a, b) == 1) & ((b > 0) | (a == 1))
    cost = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for k in K:
        if not k.empty:
            cost += MODELS[model] * k.weight * np.abs(a * k.b - k.a * b)
    return cost[keep]


def count_bounded(K: Sequence[TorusMulticurve], N: int, model: str = "s11") -> int:
    """Multicurves (the empty one included) with total intersection against ``K`` at most ``N``."""
    _check_K(K)
    if N < 0:
        return 0
    c = _costs(K, N, model)
    c = c[c <= N]
    if np.any(c == 0):
        raise LaminationError("a slope is disjoint from every member of K")
    return 1 + int(np.sum(N // c))


def count_bruteforce(K: Sequence[TorusMulticurve], N: int, radius: int, model: str = "s11") -> int:
    """Direct enumeration over ``|a|, |b| <= radius`` and all weights (test oracle)."""
    total = 1
    for a in range(-radius, radius + 1):
        for b in range(0, radius + 1):
            if math.gcd(a, b) != 1 or not (b > 0 or a == 1):
                continue
            w = 1
            while True:
                c = TorusMulticurve(a, b, w)
                if sum(intersection(c, k, model) for k in K) > N:
                    break
                total += 1
                w += 1
    return total


@dataclass
class GrowthReport:
    bounds: list[int]
    counts: list[int]
    fitted_exponent: float
    preset: str = "loops"
    model: str = "s11"
    slopes: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "bounds": self.bounds,
            "counts": self.counts,
            "fitted_exponent": self.fitted_exponent,
            "incremental_slopes": self.slopes,
            "model": self.model,
            "preset": self.preset,
        }

    def table(self) -> str:
        rows = [f"{'N':>8} {'count':>14} {'log-slope':>10}"]
        for i, (n, c) in enumerate(zip(self.bounds, self.counts)):
            s = "" if i == 0 else f"{self.slopes[i - 1]:.4f}"
            rows.append(f"{n:>8} {c:>14} {s:>10}")
        rows.append(f"fitted exponent: {self.fitted_exponent:.4f}")
        return "\n".join(rows)


PRESETS = ("loops", "quotient")
DEFAULT_LADDER = (64, 128, 256, 512, 1024)


def growth_experiment(
    K: Sequence[TorusMulticurve] = DEFAULT_K,
    N_list: Sequence[int] = DEFAULT_LADDER,
    preset: str = "loops",
    model: str = "s11",
) -> GrowthReport:
    """Counts along a ladder of bounds and the least-squares exponent.

    ``preset="quotient"`` identifies every multicurve with the empty one, as
    happens after filling the puncture, so each count is 1.
    """
    N_list = list(N_list)
    if len(N_list) < 4 or any(b <= a for a, b in zip(N_list, N_list[1:])) or N_list[0] < 1:
        raise LaminationError("the ladder must be increasing, positive and have at least 4 bounds")
    if preset not in PRESETS:
        raise LaminationError(f"unknown preset {preset!r}")
    if model not in MODELS:
        raise LaminationError(f"unknown model {model!r}")
    _check_K(K)
    counts = [1 if preset == "quotient" else count_bounded(K, N, model) for N in N_list]
    x = np.log(np.array(N_list, dtype=float))
    y = np.log(np.array(counts, dtype=float))
    slope = float(np.polyfit(x, y, 1)[0])
    if preset == "quotient":
        slope = 0.0
    inc = [float((y[i + 1] - y[i]) / (x[i + 1] - x[i])) for i in range(len(N_list) - 1)]
    return GrowthReport(N_list, counts, slope, preset, model, inc)


__all__ = [
    "TorusMulticurve",
    "GrowthReport",
    "intersection",
    "resolutions",
    "count_bounded",
    "count_bruteforce",
    "growth_experiment",
    "DEFAULT_K",
    "DEFAULT_LADDER",
    "LaminationError",
]
