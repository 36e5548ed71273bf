"""The merging rule: breakpoints, merged sets, and transformed weights.

As the trade-off parameter ``alpha`` grows from 0 to 1, the smallest source
probabilities are progressively absorbed into one shared weight.  The
breakpoints where the merged set grows, together with the per-segment line
coefficients, fully describe the transformed weight vector for every alpha,
so they are computed once and reused for all queries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ProbabilityVector
from .errors import AlphaOutOfRange


@dataclass(frozen=True, eq=False)
class MergeSchedule:
    """Piecewise-linear description of the weight vector over alpha.

    Segment k covers ``[alphas[k], alphas[k+1])`` and merges the k+1 smallest
    symbols into one weight.  Equal adjacent probabilities produce zero-width
    segments (repeated breakpoints), so the merged set can grow by more than
    one symbol at a single alpha.

    Fields, one entry per segment k = 0 .. n-1:

    - ``alphas``: breakpoints, ``alphas[0] == 0`` and ``alphas[-1]`` equals
      ``alpha_max`` (up to roundoff);
    - ``card``: size of the merged set, always k+1;
    - ``wstar_at_breakpoint``: shared weight at the segment's left edge;
    - ``tail_mass``: total probability of the unmerged symbols;
    - ``slope``: growth rate of the shared weight, ``tail_mass / card``.
    """

    alphas: np.ndarray
    alpha_max: float
    card: np.ndarray
    wstar_at_breakpoint: np.ndarray
    tail_mass: np.ndarray
    slope: np.ndarray

    def __post_init__(self):
        for arr in (self.alphas, self.card, self.wstar_at_breakpoint,
                    self.tail_mass, self.slope):
            arr.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.alphas.size)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Transformed weights at one alpha; ``-log`` of these are the lengths.

    ``merged_from`` is the first canonical index of the merged block: entries
    ``weights[merged_from:]`` all share the same value.
    """

    weights: np.ndarray
    alpha: float
    merged_from: int

    def __post_init__(self):
        self.weights.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.weights.size)


def build_schedule(p: ProbabilityVector) -> MergeSchedule:
    """Compute all breakpoints and segment coefficients in O(n).

    The recursion advances one merged symbol per step: with the k+1 smallest
    symbols already merged, the next breakpoint is

        alphas[k+1] = alphas[k] + (1 - alphas[k]) * (p_next - p_cur)
                                  / (slope[k] + p_next)

    where ``p_cur``/``p_next`` are the most recently merged and the next
    candidate probability.  No compression remains possible beyond
    ``alpha_max = 1 - 1/(n * p_max)``.
    """
    probs = p.probs
    n = probs.size
    alpha_max = 1.0 - 1.0 / (n * float(probs[0]))

    # head_mass[i] = sum of the i+1 largest probabilities
    head_mass = np.cumsum(probs)

    alphas = np.zeros(n)
    tail_mass = np.zeros(n)
    wstar = np.zeros(n)
    slope = np.zeros(n)

    tail_mass[0] = 1.0 - float(probs[-1])
    if n >= 2:
        # recompute from the head sum for accuracy when p_min is tiny
        tail_mass[0] = float(head_mass[n - 2])
    slope[0] = tail_mass[0]
    wstar[0] = float(probs[-1])

    a = 0.0
    for k in range(n - 1):
        p_cur = float(probs[n - 1 - k])
        p_next = float(probs[n - 2 - k])
        a = a + (1.0 - a) * (p_next - p_cur) / (slope[k] + p_next)
        alphas[k + 1] = a
        tail_mass[k + 1] = float(head_mass[n - 3 - k]) if k < n - 2 else 0.0
        slope[k + 1] = tail_mass[k + 1] / (k + 2)
        wstar[k + 1] = (1.0 - a) * p_next

    return MergeSchedule(
        alphas=alphas,
        alpha_max=alpha_max,
        card=np.arange(1, n + 1, dtype=np.intp),
        wstar_at_breakpoint=wstar,
        tail_mass=tail_mass,
        slope=slope,
    )


def _segment_index(schedule: MergeSchedule, alpha: float) -> int:
    """Last segment whose left breakpoint is <= alpha.

    With repeated breakpoints this lands past all zero-width segments, which
    is what makes tied probabilities merge together.
    """
    return int(np.searchsorted(schedule.alphas, alpha, side="right")) - 1


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha <= 1.0) or not np.isfinite(alpha):
        raise AlphaOutOfRange(f"alpha must be in [0, 1], got {alpha}")
    return alpha


def weights_at(
    schedule: MergeSchedule, p: ProbabilityVector, alpha: float
) -> WeightVector:
    """Evaluate the transformed weight vector at one alpha.

    Unmerged symbols carry ``(1 - alpha) * p``; the merged block carries the
    shared weight grown linearly from the segment's left breakpoint.  At or
    beyond ``alpha_max`` (including alpha exactly 1) the weights are uniform.
    """
    alpha = _check_alpha(alpha)
    n = p.size
    if alpha >= schedule.alpha_max or n == 1:
        return WeightVector(
            weights=np.full(n, 1.0 / n), alpha=alpha, merged_from=0
        )
    k = _segment_index(schedule, alpha)
    wstar = float(schedule.wstar_at_breakpoint[k]) + (
        alpha - float(schedule.alphas[k])
    ) * float(schedule.slope[k])
    weights = (1.0 - alpha) * p.probs
    weights[n - 1 - k:] = wstar
    return WeightVector(weights=weights, alpha=alpha, merged_from=n - 1 - k)


def merged_cardinality(schedule: MergeSchedule, alpha: float) -> int:
    """Number of symbols sharing the maximal length at this alpha."""
    alpha = _check_alpha(alpha)
    n = schedule.size
    if alpha >= schedule.alpha_max:
        return n
    return _segment_index(schedule, alpha) + 1
