"""Per-subregion labeling rules and the mesh-size / miss-probability calculus.

A subregion is homogeneous when none of its facet-graph components touches
the slice boundary; a non-homogeneous subregion contains a crack when its
largest component strictly exceeds the size threshold tau. The default
threshold, side/delta + 1, equals the vertex count along one lattice edge,
so only components at least as long as the subregion qualify.

The mesh-size bound rests on the geometric fact that a randomly placed
planar convex body of area A misses the lattice delta*Z^2 with probability
below delta^2/4 * (1+eps)/A, which gives the largest mesh keeping the miss
probability at level alpha:

    delta_max(alpha) = floor(2 * sqrt(alpha * A / (1 + eps))).

``simulate_miss_probability`` checks that bound empirically for rectangular
cross-sections under a uniform random isometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import InfeasibleMeshError, ParameterError
from .lattice import Component

__all__ = [
    "RegionLabel",
    "CrackGeometry",
    "classify",
    "default_tau",
    "delta_max",
    "simulate_miss_probability",
]


class RegionLabel(Enum):
    HOMOGENEOUS = "H"
    INHOMOGENEOUS = "I"
    CRACK = "C"

    @property
    def code(self) -> str:
        return self.value

    @classmethod
    def from_code(cls, code: str) -> "RegionLabel":
        for label in cls:
            if label.value == code:
                return label
        raise ParameterError(f"unknown region label code {code!r}")


def classify(
    components: Sequence[Component],
    tau: float,
    boundary_rule_first: bool = True,
) -> RegionLabel:
    """Label one subregion from its facet-graph components.

    With ``boundary_rule_first`` (the default) the homogeneity rule is
    evaluated first: a region whose components all stay clear of the slice
    boundary is homogeneous regardless of component size, reflecting that
    cracks are elongated and reach the boundary. Only non-homogeneous
    regions are then tested against tau (strictly greater). Setting
    ``boundary_rule_first=False`` applies the size rule unconditionally
    for sensitivity analysis; the size rule takes precedence there.
    """
    if tau <= 0:
        raise ParameterError(f"tau must be > 0, got {tau}")
    touches = any(c.touches_boundary for c in components)
    largest = max((c.size for c in components), default=0)
    if boundary_rule_first:
        if not touches:
            return RegionLabel.HOMOGENEOUS
        return RegionLabel.CRACK if largest > tau else RegionLabel.INHOMOGENEOUS
    if largest > tau:
        return RegionLabel.CRACK
    return RegionLabel.HOMOGENEOUS if not touches else RegionLabel.INHOMOGENEOUS


def default_tau(side: int, delta: int) -> float:
    """Component-size threshold side/delta + 1: vertices along one lattice edge.

    Kept real-valued (side/delta is non-integer for e.g. delta=3); the
    comparison against it is strict.
    """
    if side < 1:
        raise ParameterError(f"side must be >= 1, got {side}")
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    return side / delta + 1.0


@dataclass(frozen=True)
class CrackGeometry:
    """Rectangular model of a crack cross-section on a facet.

    ``length`` and ``width`` are in pixels; ``alpha`` is the acceptable
    probability of the cross-section missing the detection lattice.
    """

    length: float
    width: float
    epsilon: float = 0.1
    alpha: float = 0.01

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0:
            raise ParameterError(f"length and width must be > 0, got {self.length} x {self.width}")
        if self.epsilon <= 0:
            raise ParameterError(f"epsilon must be > 0, got {self.epsilon}")
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def area(self) -> float:
        return self.length * self.width

    @property
    def miss_bound_factor(self) -> float:
        """Coefficient of delta^2 in the miss-probability bound: (1+eps)/(4*area)."""
        return (1.0 + self.epsilon) / (4.0 * self.area)


def delta_max(geom: CrackGeometry) -> int:
    """Largest mesh size keeping the miss probability at level alpha.

    Raises :class:`InfeasibleMeshError` when no mesh size >= 1 qualifies
    (alpha or the cross-section area is too small).
    """
    value = math.floor(2.0 * math.sqrt(geom.alpha * geom.area / (1.0 + geom.epsilon)))
    if value < 1:
        raise InfeasibleMeshError(
            f"no mesh size >= 1 reaches miss level alpha={geom.alpha} for area "
            f"{geom.area}; increase alpha or the cross-section area"
        )
    return value


def simulate_miss_probability(
    geom: CrackGeometry,
    delta: int,
    trials: int,
    seed: int = 0,
    batch: int = 4096,
) -> float:
    """Empirical probability that a randomly placed rectangle misses delta*Z^2.

    Each trial places a length x width rectangle under a uniform rotation in
    [0, pi) and a uniform translation of its center over one delta-period
    square (sufficient by lattice periodicity) and tests whether it contains
    no lattice point. Deterministic for a fixed seed.
    """
    delta = int(delta)
    if delta < 1:
        raise ParameterError(f"delta must be >= 1, got {delta}")
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")

    rng = np.random.default_rng(seed)
    half_l = geom.length / 2.0
    half_w = geom.width / 2.0
    reach = math.hypot(half_l, half_w)

    # lattice points that can possibly fall inside the rectangle
    m_lo = math.floor(-reach / delta) - 1
    m_hi = math.ceil((reach + delta) / delta) + 1
    ms = np.arange(m_lo, m_hi + 1) * delta
    px, py = np.meshgrid(ms, ms, indexing="ij")
    points = np.column_stack([px.ravel(), py.ravel()]).astype(np.float64)

    misses = 0
    done = 0
    while done < trials:
        n = min(batch, trials - done)
        theta = rng.uniform(0.0, math.pi, n)
        center = rng.uniform(0.0, delta, (n, 2))
        cos_t = np.cos(theta)[:, None]
        sin_t = np.sin(theta)[:, None]
        rel_x = points[None, :, 0] - center[:, None, 0]
        rel_y = points[None, :, 1] - center[:, None, 1]
        along = rel_x * cos_t + rel_y * sin_t
        across = -rel_x * sin_t + rel_y * cos_t
        inside = (np.abs(along) <= half_l) & (np.abs(across) <= half_w)
        misses += int((~inside.any(axis=1)).sum())
        done += n
    return misses / trials
