"""Admissible scale windows for Rips recovery of metric graphs.

Abstract setting: a sample S within Gromov-Hausdorff distance d of G recovers G
for every beta in (3d, 3 rho / 4). Embedded setting: with alpha = (9 delta + 8) eps
the epsilon-path Rips complex recovers G for beta in
[8 delta alpha + 2 (delta + 1) eps, 2 rho / (3 delta)).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

__all__ = [
    "ScaleWindow",
    "DensityPlan",
    "gh_window",
    "alpha_constant",
    "h_lower_coefficient",
    "h_window",
    "max_feasible_eps",
    "plan_density",
]


@dataclass(frozen=True)
class ScaleWindow:
    lower: float
    upper: float
    lower_inclusive: bool = False
    upper_inclusive: bool = False

    @property
    def feasible(self) -> bool:
        if self.lower_inclusive and self.upper_inclusive:
            return self.lower <= self.upper
        return self.lower < self.upper

    def __contains__(self, value: float) -> bool:
        above = value >= self.lower if self.lower_inclusive else value > self.lower
        below = value <= self.upper if self.upper_inclusive else value < self.upper
        return above and below

    def at(self, position: float, safety: float = 1.0) -> float:
        """A point of the window: ``position`` in [0, 1] across the central ``safety`` fraction.

        With safety < 1 the endpoints are never returned.
        """
        if not 0.0 <= position <= 1.0:
            raise ValueError("position must lie in [0, 1]")
        if not 0.0 < safety <= 1.0:
            raise ValueError("safety must lie in (0, 1]")
        if not self.feasible:
            raise ValueError("window is empty")
        mid = 0.5 * (self.lower + self.upper)
        half = 0.5 * (self.upper - self.lower) * safety
        return (mid - half) + position * (2.0 * half)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["feasible"] = self.feasible
        return out


@dataclass(frozen=True)
class DensityPlan:
    eps: float
    spacing: float
    point_count: int
    total_length: float

    def to_dict(self) -> dict:
        return asdict(self)


def gh_window(rho: float, d_gh_bound: float) -> ScaleWindow:
    """Open window (3 d_GH, 3 rho / 4)."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    if d_gh_bound < 0:
        raise ValueError("d_gh_bound must be non-negative")
    return ScaleWindow(3.0 * d_gh_bound, 0.75 * rho)


def alpha_constant(delta: float, eps: float) -> float:
    """(9 delta + 8) eps."""
    _check_delta_eps(delta, eps)
    return (9.0 * delta + 8.0) * eps


def h_lower_coefficient(delta: float) -> float:
    """72 delta^2 + 66 delta + 2: the window's lower bound per unit eps."""
    return 72.0 * delta * delta + 66.0 * delta + 2.0


def h_window(rho: float, delta: float, eps: float) -> ScaleWindow:
    """Half-open window [8 delta alpha + 2 (delta + 1) eps, 2 rho / (3 delta))."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    alpha = alpha_constant(delta, eps)
    lower = 8.0 * delta * alpha + 2.0 * (delta + 1.0) * eps
    return ScaleWindow(lower, 2.0 * rho / (3.0 * delta), lower_inclusive=True)


def max_feasible_eps(rho: float, delta: float) -> float:
    """Supremum of eps for which the embedded window is non-empty."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    _check_delta_eps(delta, 1.0)
    return 2.0 * rho / (3.0 * delta * h_lower_coefficient(delta))


def plan_density(rho: float, delta: float, safety: float, total_length: float = 1.0) -> DensityPlan:
    """Sampling plan: eps = safety * max_feasible_eps, spacing = eps / 2.

    ``point_count`` is the number of samples needed over ``total_length`` of
    graph (per unit length by default).
    """
    if not 0.0 < safety < 1.0:
        raise ValueError("safety must lie in (0, 1)")
    if not total_length > 0:
        raise ValueError("total_length must be positive")
    eps = safety * max_feasible_eps(rho, delta)
    spacing = eps / 2.0
    return DensityPlan(eps, spacing, math.ceil(total_length / spacing), total_length)


def _check_delta_eps(delta: float, eps: float) -> None:
    if not delta >= 1.0:
        raise ValueError(f"delta must be >= 1, got {delta}")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
