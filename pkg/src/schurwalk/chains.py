"""The up/down Markov chains on strict partitions of a fixed weight.

One step from a diagram of weight n adds a box with the up probabilities of
the multiplicative measures and then removes a box with the down
probabilities.  Transition matrices are exact; the sampler works with
double-precision weights computed from the Kerov-coordinate formulas and does
not enumerate any level.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import mpmath
import numpy as np

from .diagrams import (
    EMPTY,
    StrictPartition,
    add_box,
    addable_contents,
    as_partition,
    count_strict,
    enumerate_strict,
    remove_box,
    removable_contents,
)
from .errors import DomainError
from .kerov import theta_down_float, theta_up_float
from .measures import Alpha, down_prob, multiplicative_measure, parse_alpha, up_prob
from .report import Report

__all__ = [
    "TransitionMatrix",
    "Spectrum",
    "Trajectory",
    "transition_matrix",
    "down_up_function_ops",
    "predicted_spectrum",
    "spectrum",
    "numeric_eigenvalues",
    "verify_chain",
    "verify_spectrum",
    "EXACT_SPECTRUM_LIMIT",
    "make_rng",
    "spawn_rngs",
    "step",
    "run",
    "walk",
    "sample_measure",
]

EXACT_SPECTRUM_LIMIT = 12
SPECTRUM_MAX_N = 16


def _alpha(alpha) -> Fraction:
    a = parse_alpha(alpha)
    if not isinstance(a, Fraction):
        raise DomainError("the chain needs a finite alpha")
    return a


@dataclass(frozen=True)
class TransitionMatrix:
    n: int
    alpha: Fraction
    order: tuple[StrictPartition, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def index(self, lam: Sequence[int]) -> int:
        return self.order.index(as_partition(lam))

    def __getitem__(self, pair: tuple[Sequence[int], Sequence[int]]) -> Fraction:
        a, b = pair
        return self.entries[self.index(a)][self.index(b)]

    def apply(self, f: Sequence) -> list[Fraction]:
        """(T f)(lam) = sum over mu of T(lam, mu) f(mu)."""
        return [sum((t * v for t, v in zip(row, f)), Fraction(0)) for row in self.entries]

    def apply_left(self, m: Sequence) -> list[Fraction]:
        """(m T)(mu) = sum over lam of m(lam) T(lam, mu)."""
        size = len(self.order)
        return [sum((m[i] * self.entries[i][j] for i in range(size)), Fraction(0)) for j in range(size)]

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.entries]

    def to_json(self) -> dict[str, object]:
        return {
            "n": self.n,
            "alpha": str(self.alpha),
            "order": [list(lam) for lam in self.order],
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    def to_csv_rows(self) -> list[list[str]]:
        header = ["from\\to"] + ["[" + ",".join(map(str, lam)) + "]" for lam in self.order]
        rows = [header]
        for lam, row in zip(self.order, self.entries):
            rows.append(["[" + ",".join(map(str, lam)) + "]"] + [str(x) for x in row])
        return rows


@lru_cache(maxsize=64)
def _transition_matrix(n: int, alpha: Fraction) -> TransitionMatrix:
    order = enumerate_strict(n)
    pos = {lam: i for i, lam in enumerate(order)}
    rows = []
    for lam in order:
        row = [Fraction(0)] * len(order)
        for x in addable_contents(lam):
            nu = add_box(lam, x)
            pu = up_prob(lam, x, alpha)
            for y in removable_contents(nu):
                mu = remove_box(nu, y)
                row[pos[mu]] += pu * down_prob(nu, mu)
        rows.append(tuple(row))
    return TransitionMatrix(n, alpha, order, tuple(rows))


def transition_matrix(n: int, alpha: Alpha) -> TransitionMatrix:
    """Exact transition matrix of the n-th chain, rows and columns in canonical order."""
    if n < 1:
        raise DomainError(f"the chain is defined for n >= 1, got {n}")
    return _transition_matrix(n, _alpha(alpha))


def down_up_function_ops(n: int, alpha: Alpha) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Matrices of the level operators acting on functions.

    The first maps functions on level n to level n+1 by averaging over down
    moves, the second maps level n+1 to level n by averaging over up moves.
    Rows and columns follow the canonical order of each level.
    """
    alpha = _alpha(alpha)
    lower, upper = enumerate_strict(n), enumerate_strict(n + 1)
    down = [[down_prob(lam, mu) for mu in lower] for lam in upper]
    lpos = {nu: i for i, nu in enumerate(upper)}
    up = []
    for lam in lower:
        row = [Fraction(0)] * len(upper)
        for x in addable_contents(lam):
            row[lpos[add_box(lam, x)]] = up_prob(lam, x, alpha)
        up.append(row)
    return down, up


def verify_chain(n: int, alpha: Alpha) -> Report:
    """Row sums, stationarity and detailed balance of T_n, exactly."""
    alpha = _alpha(alpha)
    tm = transition_matrix(n, alpha)
    measure = multiplicative_measure(n, alpha)
    weights = [measure[lam] for lam in tm.order]
    report = Report("up/down chain", {"n": n, "alpha": alpha})
    report.add("row sums", [Fraction(1)] * len(tm.order), tm.row_sums())
    report.add("stationarity", weights, tm.apply_left(weights))
    size = len(tm.order)
    balanced = all(
        weights[i] * tm.entries[i][j] == weights[j] * tm.entries[j][i] for i in range(size) for j in range(i)
    )
    report.add("detailed balance", True, balanced)
    return report


# spectrum


def predicted_spectrum(n: int, alpha: Alpha) -> list[tuple[Fraction, int]]:
    """Eigenvalues 1 - m(m - 1 + alpha/2) / ((n+1)(n + alpha/2)), with multiplicities.

    Level m contributes with multiplicity #S_m - #S_(m-1); m = 0 gives the eigenvalue 1.
    """
    alpha = _alpha(alpha)
    out = []
    den = (n + 1) * (n + alpha / 2)
    for m in range(n + 1):
        mult = count_strict(m) - count_strict(m - 1)
        if mult > 0:
            out.append((1 - m * (m - 1 + alpha / 2) / den if m else Fraction(1), mult))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class Spectrum:
    n: int
    alpha: Fraction
    eigenvalues: tuple[tuple[object, int], ...]
    exact: bool

    def values(self) -> list[object]:
        return [v for v, _ in self.eigenvalues]

    def multiplicities(self) -> list[int]:
        return [k for _, k in self.eigenvalues]

    def to_json(self) -> dict[str, object]:
        fmt = str if self.exact else (lambda v: mpmath.nstr(v, 30))
        return {
            "eigenvalues": [fmt(v) for v in self.values()],
            "multiplicities": self.multiplicities(),
        }


def _exact_eigenvalues(tm: TransitionMatrix) -> list[tuple[Fraction, int]] | None:
    import sympy

    mat = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in tm.entries])
    t = sympy.Symbol("t")
    poly = sympy.Poly(mat.charpoly(t).as_expr(), t)
    roots = sympy.roots(poly, filter="Q")
    if sum(roots.values()) != len(tm.order):
        return None
    return sorted(((Fraction(int(r.p), int(r.q)), k) for r, k in roots.items()), reverse=True)


def numeric_eigenvalues(n: int, alpha: Alpha, prec: int = 256) -> list[mpmath.mpf]:
    """Eigenvalues of the exact matrix computed with ``prec``-bit floating point, descending."""
    tm = transition_matrix(n, alpha)
    with mpmath.workprec(prec):
        if len(tm.order) == 1:
            x = tm.entries[0][0]
            return [mpmath.mpf(x.numerator) / x.denominator]
        mat = mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in row] for row in tm.entries])
        values = mpmath.eig(mat, left=False, right=False)
        scale = mpmath.mpf(2) ** (-prec // 2)
        for v in values:
            if abs(mpmath.im(v)) > scale:
                raise ArithmeticError(f"unexpected complex eigenvalue {v}")
        return sorted((mpmath.re(v) for v in values), reverse=True)


def _cluster(values: Sequence[mpmath.mpf], tol: float) -> list[tuple[mpmath.mpf, int]]:
    out: list[list] = []
    for v in values:
        if out and abs(out[-1][0] - v) < tol:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, k) for v, k in out]


def spectrum(n: int, alpha: Alpha) -> Spectrum:
    """Distinct eigenvalues of T_n with multiplicities, descending.

    Exact rational roots of the characteristic polynomial when the level has at
    most 12 diagrams, otherwise clustered 256-bit eigenvalues.
    """
    alpha = _alpha(alpha)
    if n < 1 or n > SPECTRUM_MAX_N:
        raise DomainError(f"spectrum is supported for 1 <= n <= {SPECTRUM_MAX_N}")
    tm = transition_matrix(n, alpha)
    if len(tm.order) <= EXACT_SPECTRUM_LIMIT:
        exact = _exact_eigenvalues(tm)
        if exact is not None:
            return Spectrum(n, alpha, tuple(exact), True)
    values = numeric_eigenvalues(n, alpha)
    return Spectrum(n, alpha, tuple(_cluster(values, 1e-30)), False)


def verify_spectrum(n: int, alpha: Alpha, tol: float = 1e-9) -> Report:
    alpha = _alpha(alpha)
    report = Report("spectrum of T_n", {"n": n, "alpha": alpha, "tol": tol})
    predicted = predicted_spectrum(n, alpha)
    found = spectrum(n, alpha)
    if found.exact:
        report.add("exact eigenvalues", predicted, list(found.eigenvalues))
    expanded = [v for v, k in predicted for _ in range(k)]
    numeric = numeric_eigenvalues(n, alpha)
    with mpmath.workprec(256):
        gap = max(abs(mpmath.mpf(v.numerator) / v.denominator - w) for v, w in zip(expanded, numeric))
    report.add(
        "256-bit eigenvalues",
        f"max deviation < {tol}",
        mpmath.nstr(gap, 5),
        len(numeric) == len(expanded) and gap < tol,
    )
    return report


# sampling


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Counter-based generator seeded by a 64-bit integer."""
    if isinstance(seed, int) and not 0 <= seed < 2**64:
        raise DomainError("seed must fit in 64 unsigned bits")
    return np.random.Generator(np.random.Philox(seed))


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators for replicas, derived from one seed."""
    return [np.random.Generator(np.random.Philox(s)) for s in np.random.SeedSequence(seed).spawn(count)]


def _cumulative(weights: Iterable[float]) -> tuple[float, ...]:
    acc, out = 0.0, []
    for w in weights:
        acc += w
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=1 << 17)
def _up_table(lam: StrictPartition, alpha: float) -> tuple[tuple[float, ...], tuple[StrictPartition, ...]]:
    theta = theta_up_float(lam)
    n = lam.weight
    xs = sorted(theta)
    weights = [(x * (x + 1) + alpha) / (2 * n + alpha) * theta[x] for x in xs]
    return _cumulative(weights), tuple(add_box(lam, x) for x in xs)


@lru_cache(maxsize=1 << 17)
def _down_table(nu: StrictPartition) -> tuple[tuple[float, ...], tuple[StrictPartition, ...]]:
    theta = theta_down_float(nu)
    ys = sorted(theta)
    scale = 2 * nu.weight
    return _cumulative(theta[y] / scale for y in ys), tuple(remove_box(nu, y) for y in ys)


def _pick(table: tuple[tuple[float, ...], tuple[StrictPartition, ...]], u: float) -> StrictPartition:
    cum, targets = table
    i = bisect_right(cum, u * cum[-1])
    return targets[min(i, len(targets) - 1)]


def _is_strict(lam: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(lam, lam[1:])) and (not lam or lam[-1] > 0)


def _step(lam: StrictPartition, alpha: float, u1: float, u2: float) -> StrictPartition:
    nu = _pick(_up_table(lam, alpha), u1)
    out = _pick(_down_table(nu), u2)
    if not _is_strict(out):  # pragma: no cover - guarded by construction
        raise AssertionError(f"sampler produced a non-strict partition {out}")
    return out


def step(state: Sequence[int], alpha: Alpha, rng: np.random.Generator) -> StrictPartition:
    """One up move followed by one down move."""
    a = float(_alpha(alpha))
    lam = as_partition(state)
    if not lam:
        raise DomainError("the chain runs on nonempty diagrams")
    u1, u2 = rng.random(2)
    return _step(lam, a, float(u1), float(u2))


def sample_measure(n: int, alpha: Alpha, rng: np.random.Generator) -> StrictPartition:
    """Draw a diagram from the level-n multiplicative measure.

    Inverse-CDF on the exact weights for n <= 16, otherwise n successive up moves
    from the empty diagram (the up moves push the level-k measure to level k+1).
    """
    alpha = _alpha(alpha)
    if n <= 16:
        measure = multiplicative_measure(n, alpha)
        u = Fraction(float(rng.random()))
        acc = Fraction(0)
        last = None
        for lam in enumerate_strict(n):
            acc += measure[lam]
            last = lam
            if u < acc:
                return lam
        return last
    a = float(alpha)
    lam = EMPTY
    for u in rng.random(n):
        lam = _pick(_up_table(lam, a), float(u))
    return lam


@dataclass(frozen=True)
class Trajectory:
    seed: int
    alpha: Fraction
    n: int
    states: tuple[StrictPartition, ...]

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    def to_jsonl(self) -> Iterable[str]:
        for i, lam in enumerate(self.states):
            yield '{"step": %d, "state": [%s]}' % (i, ",".join(map(str, lam)))


def walk(
    n: int,
    alpha: Alpha,
    steps: int,
    seed: int | np.random.SeedSequence,
    start: Sequence[int] | None = None,
) -> Iterator[StrictPartition]:
    """Yield the initial state and then the state after each of ``steps`` steps.

    Without ``start`` the initial state is drawn from the stationary measure
    using the same generator.  Step k consumes the same two uniforms as the
    k-th direct call to :func:`step` on that generator would.
    """
    alpha = _alpha(alpha)
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    rng = make_rng(seed)
    if start is None:
        lam = sample_measure(n, alpha, rng)
    else:
        lam = as_partition(start)
        if lam.weight != n:
            raise DomainError(f"start {list(lam)} does not have weight {n}")
    if not lam:
        raise DomainError("the chain runs on nonempty diagrams")
    yield lam
    a = float(alpha)
    block = 1 << 14
    done = 0
    while done < steps:
        size = min(block, steps - done)
        for u1, u2 in rng.random((size, 2)).tolist():
            lam = _step(lam, a, u1, u2)
            yield lam
        done += size


def run(
    n: int,
    alpha: Alpha,
    steps: int,
    seed: int,
    start: Sequence[int] | None = None,
) -> Trajectory:
    """Run the n-th chain for ``steps`` steps and keep every state (see :func:`walk`)."""
    states = tuple(walk(n, alpha, steps, seed, start))
    return Trajectory(seed, _alpha(alpha), n, states)
