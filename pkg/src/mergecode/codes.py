"""Code lengths and pay-off evaluation.

Optimal real-valued lengths are ``-log`` of the merged weights; this module
turns weight vectors into lengths, rounds them to integers, evaluates the
blended max/average pay-off, sweeps it over a grid of alphas, and provides a
numerical optimizer that knows nothing about the merging structure for use
as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from .distributions import ProbabilityVector
from .errors import NoConvergence, SizeMismatch
from .merging import MergeSchedule, WeightVector, build_schedule, weights_at

# Real lengths within this of an integer are treated as that integer when
# ceiling, so dyadic sources round-trip despite log roundoff.
INT_SNAP = 1e-9


@dataclass(frozen=True, eq=False)
class CodeLengths:
    """Real-valued optimal lengths plus their ceiled integer counterparts."""

    real_lengths: np.ndarray
    int_lengths: np.ndarray
    radix: int
    max_length: float
    kraft_real: float
    kraft_int: float

    def __post_init__(self):
        self.real_lengths.setflags(write=False)
        self.int_lengths.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.real_lengths.size)


@dataclass(frozen=True)
class PayoffReport:
    alpha: float
    payoff: float
    avg_length: float
    max_length: float
    entropy_w: float
    entropy_p: float


def entropy(probs: np.ndarray, radix: int) -> float:
    """Entropy in base ``radix``; zero entries contribute nothing."""
    p = np.asarray(probs, dtype=float)
    nz = p[p > 0]
    return float(-np.dot(nz, np.log(nz)) / np.log(radix))


def snap_ceil(values: np.ndarray) -> np.ndarray:
    """Ceiling that keeps near-integers (within INT_SNAP) unchanged."""
    values = np.asarray(values, dtype=float)
    nearest = np.rint(values)
    out = np.where(np.abs(values - nearest) <= INT_SNAP, nearest, np.ceil(values))
    return out.astype(np.int64)


def lengths_from_weights(w: WeightVector, radix: int) -> CodeLengths:
    """Lengths are ``-log_radix`` of the weights; integers are the ceiling."""
    lnD = np.log(radix)
    real = -np.log(w.weights) / lnD
    ints = snap_ceil(real)
    return CodeLengths(
        real_lengths=real,
        int_lengths=ints,
        radix=int(radix),
        max_length=float(real.max()),
        kraft_real=float(np.exp(logsumexp(-real * lnD))),
        kraft_int=float(np.exp(logsumexp(-ints * lnD))),
    )


def payoff(lengths: CodeLengths, p: ProbabilityVector, alpha: float) -> PayoffReport:
    """Blend of maximum and average length for the real-valued lengths."""
    if lengths.size != p.size:
        raise SizeMismatch(
            f"{lengths.size} lengths vs {p.size} probabilities"
        )
    l = lengths.real_lengths
    avg = float(np.dot(p.probs, l))
    mx = float(l.max())
    w = np.exp(-l * np.log(lengths.radix))
    return PayoffReport(
        alpha=float(alpha),
        payoff=float(alpha) * mx + (1.0 - float(alpha)) * avg,
        avg_length=avg,
        max_length=mx,
        entropy_w=entropy(w, lengths.radix),
        entropy_p=entropy(p.probs, p.radix),
    )


def optimal_code(
    p: ProbabilityVector,
    alpha: float,
    schedule: MergeSchedule | None = None,
) -> tuple[WeightVector, CodeLengths, PayoffReport]:
    """Solve one alpha instance end to end via the merging rule."""
    if schedule is None:
        schedule = build_schedule(p)
    w = weights_at(schedule, p, alpha)
    lengths = lengths_from_weights(w, p.radix)
    return w, lengths, payoff(lengths, p, alpha)


def default_alpha_grid(schedule: MergeSchedule, points: int = 1001) -> np.ndarray:
    """Uniform grid on [0, 1] plus every breakpoint, so kinks are sampled."""
    grid = np.union1d(np.linspace(0.0, 1.0, points), schedule.alphas)
    return grid[(grid >= 0.0) & (grid <= 1.0)]


def payoff_curve(
    p: ProbabilityVector,
    grid: np.ndarray | None = None,
    schedule: MergeSchedule | None = None,
) -> list[PayoffReport]:
    """Evaluate the optimal pay-off at every grid alpha (sorted ascending)."""
    if schedule is None:
        schedule = build_schedule(p)
    if grid is None:
        grid = default_alpha_grid(schedule)
    return [optimal_code(p, float(a), schedule)[2] for a in grid]


def brute_force_optimal(
    p: ProbabilityVector,
    alpha: float,
    iterations: int = 3000,
    tol: float = 1e-6,
) -> CodeLengths:
    """Numerically minimize the pay-off with no structural knowledge.

    Parameterizes candidate codes by a point on the probability simplex
    (so the Kraft sum is exactly 1) through normalized exponents
    ``q = D^-v / sum(D^-v)``, runs projected subgradient descent with
    diminishing steps and tail averaging, then polishes the best iterate
    with a derivative-free local search.  Intended as an independent
    oracle on small alphabets, not a production solver.

    Raises NoConvergence when the polish step fails to move the objective
    below a sanity residual; the exception carries the best iterate.
    """
    alpha = float(alpha)
    probs = p.probs
    n = probs.size
    lnD = np.log(p.radix)

    if n == 1:
        w = WeightVector(weights=np.array([1.0]), alpha=alpha, merged_from=0)
        return lengths_from_weights(w, p.radix)

    def q_of(v: np.ndarray) -> np.ndarray:
        z = -v * lnD
        return np.exp(z - logsumexp(z))

    def objective(v: np.ndarray) -> float:
        l = -np.log(q_of(v)) / lnD
        return alpha * float(l.max()) + (1.0 - alpha) * float(np.dot(probs, l))

    v = -np.log(probs) / lnD
    best_v, best_f = v.copy(), objective(v)
    v_sum = np.zeros(n)
    n_avg = 0
    step0 = 2.0
    for k in range(1, iterations + 1):
        g = (1.0 - alpha) * probs - q_of(v)
        g[int(np.argmax(v))] += alpha
        v = v - step0 / np.sqrt(k) * g
        if 2 * k >= iterations:
            v_sum += v
            n_avg += 1
        if k % 100 == 0:
            f = objective(v)
            if f < best_f:
                best_f, best_v = f, v.copy()
    if n_avg:
        v_avg = v_sum / n_avg
        f_avg = objective(v_avg)
        if f_avg < best_f:
            best_f, best_v = f_avg, v_avg

    # local polish; restarts let the simplex search escape stalls, and we
    # stop once a whole restart no longer moves the objective
    last_improvement = np.inf
    for _ in range(6):
        res = minimize(
            objective,
            best_v,
            method="Nelder-Mead",
            options=dict(
                xatol=1e-11, fatol=1e-13, maxiter=3000 * n, maxfev=3000 * n
            ),
        )
        last_improvement = max(0.0, best_f - float(res.fun))
        if res.fun < best_f:
            best_f, best_v = float(res.fun), res.x
        if last_improvement <= tol:
            break

    q = q_of(best_v)
    real = -np.log(q) / lnD
    lengths = CodeLengths(
        real_lengths=real,
        int_lengths=snap_ceil(real),
        radix=p.radix,
        max_length=float(real.max()),
        kraft_real=float(q.sum()),
        kraft_int=float(np.exp(logsumexp(-snap_ceil(real) * lnD))),
    )
    if not np.isfinite(best_f) or last_improvement > tol:
        raise NoConvergence(
            f"optimizer still moving by {last_improvement:.3e} after polish",
            best=lengths,
            residual=float(last_improvement),
            iterations=iterations,
        )
    return lengths
