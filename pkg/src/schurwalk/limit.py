"""Diagrams as points of the simplex of nonincreasing sequences, and their moments.

A diagram of weight n maps to the point (l_1/n, l_2/n, ...).  The moment
coordinates of a point x are ``q_k(x) = sum_i x_i^(k+1)``; the even ones
(q2, q4, ...) correspond to p3/n^3, p5/n^5, ... on diagrams.

Exact expectations under the multiplicative measures are rational.  Monte
Carlo estimates and point reconstruction use floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath
import numpy as np

from .chains import Trajectory, _step, make_rng, predicted_spectrum, sample_measure
from .diagrams import as_partition
from .errors import DomainError
from .gamma import GammaPoly, evaluate, expand_in_qstar, p
from .measures import Alpha, dimension, falling, multiplicative_measure, parse_alpha

__all__ = [
    "SimplexPoint",
    "MomentVector",
    "MCEstimate",
    "embed",
    "moments",
    "exact_moment",
    "exact_q_moment",
    "limit_q2",
    "stationary_moment_mc",
    "autocorrelation",
    "moment_rows",
    "reconstruct_point",
    "reconstruct_point_with_error",
    "second_eigenvalue",
    "thoma_double_moments",
]


@dataclass(frozen=True)
class SimplexPoint:
    """Nonincreasing nonnegative coordinates with sum at most 1 (zeros implied after the end)."""

    x: tuple

    def __post_init__(self) -> None:
        xs = tuple(self.x)
        while xs and xs[-1] == 0:
            xs = xs[:-1]
        if any(v < 0 for v in xs):
            raise DomainError("coordinates must be nonnegative")
        if any(a < b for a, b in zip(xs, xs[1:])):
            raise DomainError("coordinates must be nonincreasing")
        if sum(xs) > 1 + (0 if all(isinstance(v, (int, Fraction)) for v in xs) else 1e-12):
            raise DomainError("coordinates must sum to at most 1")
        object.__setattr__(self, "x", xs)

    @property
    def gamma(self):
        return 1 - sum(self.x)

    def __getitem__(self, i: int):
        """0-based access with implicit zeros beyond the support."""
        return self.x[i] if i < len(self.x) else 0

    def to_json(self) -> dict[str, object]:
        return {"x": [str(v) for v in self.x], "gamma": str(self.gamma)}


@dataclass(frozen=True)
class MomentVector:
    """Moment coordinates q_k keyed by the index k."""

    values: Mapping[int, object]

    @property
    def depth(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int):
        return self.values[k]

    def indices(self) -> list[int]:
        return sorted(self.values)

    def to_json(self) -> dict[str, str]:
        return {f"q{k}": str(self.values[k]) for k in self.indices()}


def embed(lam: Sequence[int], n: int) -> SimplexPoint:
    lam = as_partition(lam)
    if n < 1 or lam.weight != n:
        raise DomainError(f"{list(lam)} does not have weight {n}")
    return SimplexPoint(tuple(Fraction(v, n) for v in lam))


def _q(point: SimplexPoint | Sequence, k: int):
    xs = point.x if isinstance(point, SimplexPoint) else point
    return sum((v ** (k + 1) for v in xs), Fraction(0) if all(isinstance(v, (int, Fraction)) for v in xs) else 0.0)


def moments(point: SimplexPoint, K: int, indices: Iterable[int] | None = None) -> MomentVector:
    """q2, q4, ..., q_(2K), or the moments at the given indices."""
    if indices is None:
        if K < 1:
            raise DomainError(f"K must be positive, got {K}")
        indices = range(2, 2 * K + 1, 2)
    return MomentVector({k: _q(point, k) for k in indices})


def exact_moment(n: int, alpha: Alpha, f: GammaPoly, method: str = "direct") -> Fraction:
    """Expectation of f under the level-n multiplicative measure.

    ``direct`` sums over all diagrams of weight n; ``qstar`` expands f in factorial
    Q-functions whose expectations are 2^|mu| n^(|mu|, falling) M_|mu|(mu) / h(mu).
    """
    alpha = parse_alpha(alpha)
    if method == "direct":
        measure = multiplicative_measure(n, alpha)
        return sum((w * evaluate(f, lam) for lam, w in measure.items()), Fraction(0))
    if method == "qstar":
        total = Fraction(0)
        for mu, c in expand_in_qstar(f).items():
            k = mu.weight
            if k > n:
                continue
            total += c * 2**k * falling(n, k) * multiplicative_measure(k, alpha)[mu] / dimension(mu)
        return total
    raise DomainError(f"unknown method {method!r}")


def exact_q_moment(n: int, alpha: Alpha, k: int = 1) -> Fraction:
    """E[q_(2k)] of the embedded diagram, i.e. E[p_(2k+1)] / n^(2k+1)."""
    return exact_moment(n, alpha, p(2 * k + 1)) / Fraction(n) ** (2 * k + 1)


def limit_q2(alpha: Alpha) -> Fraction:
    """Limit of E[q2] as n grows: 4 / (alpha + 4)."""
    alpha = parse_alpha(alpha)
    return Fraction(4) / (alpha + 4)


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    n: int
    alpha: Fraction
    steps: int
    batches: int = 0
    seed: int = 0

    def to_json(self) -> dict[str, object]:
        return {"mean": self.mean, "stderr": self.stderr, "n": self.n, "alpha": str(self.alpha), "steps": self.steps}


def _moment_series(n: int, alpha: Fraction, k: int, steps: int, burn_in: int, seed: int, start) -> np.ndarray:
    rng = make_rng(seed)
    lam = sample_measure(n, alpha, rng) if start is None else as_partition(start)
    if lam.weight != n:
        raise DomainError(f"start {list(lam)} does not have weight {n}")
    a = float(alpha)
    cache: dict = {}
    out = np.empty(steps)
    total = burn_in + steps
    block = 1 << 14
    t = 0
    while t < total:
        size = min(block, total - t)
        for u1, u2 in rng.random((size, 2)).tolist():
            lam = _step(lam, a, u1, u2)
            if t >= burn_in:
                val = cache.get(lam)
                if val is None:
                    val = cache[lam] = sum((v / n) ** (2 * k + 1) for v in lam)
                out[t - burn_in] = val
            t += 1
    return out


def _batch_means(series: np.ndarray, batches: int) -> tuple[float, float]:
    size = len(series) // batches
    if size < 1:
        raise DomainError("not enough steps for the requested number of batches")
    means = series[: size * batches].reshape(batches, size).mean(axis=1)
    return float(series.mean()), float(means.std(ddof=1) / math.sqrt(batches))


def stationary_moment_mc(
    n: int,
    alpha: Alpha,
    k: int,
    steps: int,
    burn_in: int,
    seed: int,
    start: Sequence[int] | None = None,
    batches: int = 50,
) -> MCEstimate:
    """Time average of q_(2k) of the embedded state along one chain run.

    The standard error comes from batch means over ``batches`` equal blocks.
    """
    alpha = parse_alpha(alpha)
    if not isinstance(alpha, Fraction):
        raise DomainError("the chain needs a finite alpha")
    if n < 1 or k < 1 or steps < batches:
        raise DomainError("need n >= 1, k >= 1 and at least one step per batch")
    series = _moment_series(n, alpha, k, steps, burn_in, seed, start)
    mean, se = _batch_means(series, batches)
    return MCEstimate(mean, se, n, alpha, steps, batches, seed)


def autocorrelation(
    n: int, alpha: Alpha, lags: Sequence[int], steps: int, burn_in: int, seed: int, k: int = 1
) -> dict[int, float]:
    """Empirical autocorrelation of q_(2k) along a stationary run."""
    alpha = parse_alpha(alpha)
    series = _moment_series(n, alpha, k, steps, burn_in, seed, None)
    centered = series - series.mean()
    var = float(centered @ centered) / len(centered)
    return {
        lag: float(centered[:-lag] @ centered[lag:]) / (len(centered) - lag) / var if lag else 1.0 for lag in lags
    }


def second_eigenvalue(n: int, alpha: Alpha) -> Fraction:
    return predicted_spectrum(n, alpha)[1][0]


def moment_rows(trajectory: Trajectory, K: int) -> Iterable[list[object]]:
    """Rows (step, step / n^2, q2, ..., q_(2K)) along a trajectory."""
    n = trajectory.n
    for i, lam in enumerate(trajectory.states):
        row: list[object] = [i, i / n**2]
        row += [sum((v / n) ** (2 * k + 1) for v in lam) for k in range(1, K + 1)]
        yield row


def _mp(v) -> mpmath.mpf:
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def _floats_in_simplex(xs: list) -> tuple[float, ...]:
    out = [float(x) for x in xs]
    while out and sum(out) > 1:
        # rounding to double can push the total a hair above one
        out = [math.nextafter(v, 0.0) for v in out]
    return tuple(out)


def reconstruct_point_with_error(
    m: MomentVector | Mapping[int, object], depth: int
) -> tuple[SimplexPoint, list[float]]:
    """Recover x_1, ..., x_depth from moments by successive root extraction.

    Coordinate i is read off a single moment index K_i (larger indices for
    earlier coordinates) as (q_K - sum_{j<i} x_j^(K+1))^(1/(K+1)).  The
    estimates at K, K-2, K-4 converge roughly geometrically, so the error of
    coordinate i is taken as twice the geometric tail implied by their
    differences, plus the spread of the root when the subtracted mass
    sum_{j<i} x_j^(K+1) is moved by its own first-order uncertainty, plus any
    amount clipped to stay in the simplex.
    """
    values = dict(m.values if isinstance(m, MomentVector) else m)
    idx = sorted(values)
    if depth < 1:
        raise DomainError("depth must be positive")
    if not idx or idx[0] < 1:
        raise DomainError("moment indices must be positive")
    if len(idx) < depth:
        raise DomainError(f"need at least {depth} moment indices, got {len(idx)}")
    with mpmath.workprec(256):
        q = {k: _mp(values[k]) for k in idx}
        for a, b in zip(idx, idx[1:]):
            if q[b] > q[a] or q[a] < 0 or q[a] > 1:
                raise DomainError(f"moments must be nonincreasing in [0, 1]: q{a}={values[a]}, q{b}={values[b]}")
        picks = [idx[round((len(idx) - 1) * (depth - i) / depth)] for i in range(depth)]
        xs: list[mpmath.mpf] = []
        errors: list[float] = []

        def estimate(k: int) -> mpmath.mpf:
            rest = q[k] - sum(x ** (k + 1) for x in xs)
            return mpmath.root(rest, k + 1) if rest > 0 else mpmath.mpf(0)

        for k in picks:
            pos = idx.index(k)
            x = estimate(k)
            tail = mpmath.mpf(0)
            if pos > 0:
                a1 = estimate(idx[pos - 1])
                d1 = abs(x - a1)
                tail = d1
                if pos > 1:
                    d0 = abs(a1 - estimate(idx[pos - 2]))
                    rho = d1 / d0 if d0 > 0 else mpmath.mpf(0)
                    tail = 2 * d1 * rho / (1 - rho) + d1 if rho < 1 else d1 + d0
            clipped = mpmath.mpf(0)
            cap = min(xs[-1], 1 - sum(xs)) if xs else mpmath.mpf(1)
            if x > cap:
                clipped, x = x - cap, max(cap, mpmath.mpf(0))
            rest = q[k] - sum(xj ** (k + 1) for xj in xs)
            spread = sum((k + 1) * (xj + ej) ** k * ej for xj, ej in zip(xs, errors))
            inherited = mpmath.mpf(0)
            if spread:
                hi = mpmath.root(max(rest + spread, 0), k + 1)
                lo = mpmath.root(max(rest - spread, 0), k + 1)
                inherited = max(hi - x, x - lo, 0)
            xs.append(x)
            errors.append(float(tail + clipped + inherited))
        point = SimplexPoint(_floats_in_simplex(xs))
    return point, errors


def reconstruct_point(
    m: MomentVector | Mapping[int, object], depth: int, tol: float | None = None
) -> SimplexPoint:
    """Coordinates x_1..x_depth from moments; raises if the error estimate exceeds ``tol``."""
    point, errors = reconstruct_point_with_error(m, depth)
    if tol is not None and max(errors, default=0.0) > tol:
        raise ArithmeticError(f"reconstruction error estimate {max(errors)} exceeds tolerance {tol}")
    return point


def thoma_double_moments(point: SimplexPoint, M: int) -> list:
    """Moments q^_1..q^_M of the symmetric Thoma point (x/2; x/2)."""
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    halves = [v / 2 for v in point.x]
    exact = all(isinstance(v, (int, Fraction)) for v in point.x)
    zero = Fraction(0) if exact else 0.0
    out = []
    for m in range(1, M + 1):
        s = sum((h ** (m + 1) for h in halves), zero)
        out.append(s + (-1) ** m * s)
    return out
