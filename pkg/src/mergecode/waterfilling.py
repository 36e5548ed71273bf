"""Water-level characterization of the optimal weights.

The optimal weights can equivalently be written as the scaled source
probabilities clipped from below at a common level, with the level chosen so
the clipped excess sums to alpha:

    sum_x (level - (1 - alpha) * p(x))+  =  alpha

Because the probabilities are sorted, the flooded set is always a suffix and
the level solves in closed form per candidate suffix size, so no tolerance
enters the level itself.  This module deliberately shares no code with the
merging rule; agreement between the two is a cross-check both rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ProbabilityVector
from .errors import AlphaOutOfRange, Infeasible
from .merging import WeightVector

# Levels within this of 1/n count as attainable; beyond it no alpha exists.
LEVEL_SLACK = 1e-12


@dataclass(frozen=True)
class WaterLevel:
    """Common clipped weight and the suffix of symbols it applies to."""

    level: float
    alpha: float
    flooded: frozenset[int]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0) or not np.isfinite(alpha):
        raise AlphaOutOfRange(f"alpha must be in [0, 1), got {alpha}")
    return alpha


def _flood_suffix_size(probs: np.ndarray, alpha: float) -> tuple[int, float]:
    """Largest suffix size m whose closed-form level is admissible.

    level(m) = (alpha + (1 - alpha) * mass of the m smallest) / m, valid when
    it sits between the scaled probabilities just inside and just outside the
    suffix.  Ties flood together because the scan prefers the largest m.
    """
    n = probs.size
    scaled = (1.0 - alpha) * probs
    tail = np.cumsum(probs[::-1])  # tail[m-1] = mass of the m smallest
    for m in range(n, 0, -1):
        level = (alpha + (1.0 - alpha) * float(tail[m - 1])) / m
        if level < float(scaled[n - m]):
            continue
        if m < n and level > float(scaled[n - m - 1]):
            continue
        return m, level
    raise AssertionError("no admissible flood suffix; input violates invariants")


def water_level(p: ProbabilityVector, alpha: float) -> WaterLevel:
    """Solve the clipped-excess equation exactly for one alpha."""
    alpha = _check_alpha(alpha)
    n = p.size
    m, level = _flood_suffix_size(p.probs, alpha)
    return WaterLevel(
        level=level, alpha=alpha, flooded=frozenset(range(n - m, n))
    )


def waterfill_weights(p: ProbabilityVector, alpha: float) -> WeightVector:
    """Weights via clipping: max((1 - alpha) * p, level)."""
    alpha = _check_alpha(alpha)
    n = p.size
    m, level = _flood_suffix_size(p.probs, alpha)
    weights = (1.0 - alpha) * p.probs
    weights[n - m:] = level
    return WeightVector(weights=weights, alpha=alpha, merged_from=n - m)


def alpha_for_level(p: ProbabilityVector, level: float) -> float:
    """Invert the water level: smallest alpha whose level equals ``level``.

    The level grows piecewise linearly from p_min at alpha 0 to 1/n, so any
    target at or below p_min needs no clipping (alpha 0) and any target
    above 1/n is unattainable.
    """
    level = float(level)
    if not np.isfinite(level) or level <= 0:
        raise Infeasible(f"level must be positive, got {level}", 0.0)
    probs = p.probs
    n = probs.size
    if level > 1.0 / n + LEVEL_SLACK:
        raise Infeasible(
            f"level {level} exceeds the uniform weight 1/{n}", 1.0 / n
        )
    level = min(level, 1.0 / n)
    if level <= float(probs[-1]):
        return 0.0

    tail = np.cumsum(probs[::-1])
    candidates = []
    for m in range(1, n):
        tail_m = float(tail[m - 1])
        alpha = (m * level - tail_m) / (1.0 - tail_m)
        if not (0.0 <= alpha < 1.0):
            continue
        scaled_in = (1.0 - alpha) * float(probs[n - m])
        scaled_out = (1.0 - alpha) * float(probs[n - m - 1])
        if scaled_in <= level + LEVEL_SLACK and level <= scaled_out + LEVEL_SLACK:
            candidates.append(alpha)
    if not candidates:
        raise AssertionError("no admissible suffix when inverting the level")
    return min(candidates)
