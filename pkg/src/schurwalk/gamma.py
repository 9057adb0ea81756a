"""The algebra of doubly symmetric functions, generated by the odd power sums.

Elements are :class:`GammaPoly` objects in ``p1, p3, p5, ...`` where ``p_k``
has degree ``k``.  A polynomial is evaluated on a strict partition by setting
``p_k`` to the sum of the k-th powers of the parts.

Two constructions of Schur Q-functions live here: the fast one (one-row
functions combined by the Pfaffian expansion) and the defining symmetrization,
kept as an oracle.  Factorial Q-functions and the coordinate families are
obtained by interpolation on a grid of diagrams, which is exact because the
grid of all diagrams of weight at most m pins down every element of degree at
most m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Mapping, Sequence

from .diagrams import (
    StrictPartition,
    as_partition,
    contains,
    count_strict,
    enumerate_up_to,
)
from .errors import DomainError
from .kerov import coordinates
from .linalg import SingularMatrixError, inverse, matvec
from .polynomial import SparsePoly

__all__ = [
    "GammaPoly",
    "QuotientPoly",
    "GPoly",
    "EvaluationGrid",
    "p",
    "q",
    "g",
    "evaluate",
    "power_sum",
    "q_one_row",
    "schur_q",
    "schur_q_symmetrized",
    "schur_q_factorial_eval",
    "schur_q_factorial_symbolic",
    "grid",
    "grid_values",
    "to_monomial_basis",
    "expand_in_qstar",
    "from_qstar",
    "g_symbolic",
    "ghat_symbolic",
    "boldp_symbolic",
    "g_to_gamma",
    "project",
    "lift",
]


class GammaPoly(SparsePoly):
    """Polynomial in p1, p3, p5, ...; generator k is p_(2k-1) of degree 2k-1."""

    __slots__ = ()
    prefix = "p"

    @classmethod
    def weight(cls, k: int) -> int:
        return 2 * k - 1

    @classmethod
    def subscript(cls, k: int) -> int:
        return 2 * k - 1

    def evaluate(self, lam: Sequence[int]) -> Fraction:
        return evaluate(self, lam)

    def __call__(self, lam: Sequence[int]) -> Fraction:
        return evaluate(self, lam)


class QuotientPoly(SparsePoly):
    """Polynomial in q2, q4, q6, ...; generator k is q_(2k) of degree 2k+1."""

    __slots__ = ()
    prefix = "q"

    @classmethod
    def weight(cls, k: int) -> int:
        return 2 * k + 1

    @classmethod
    def subscript(cls, k: int) -> int:
        return 2 * k

    def evaluate(self, x: Sequence) -> object:
        """Evaluate at a point of the simplex given by its coordinates."""
        return self.evaluate_at(lambda k: sum(xi ** (2 * k + 1) for xi in x))


class GPoly(SparsePoly):
    """Polynomial in the coordinates g1, g2, ...; g_k has degree 2k-1."""

    __slots__ = ()
    prefix = "g"

    @classmethod
    def weight(cls, k: int) -> int:
        return 2 * k - 1


def p(odd: int, power: int = 1) -> GammaPoly:
    """The power sum p_odd as a polynomial."""
    if odd < 1 or odd % 2 == 0:
        raise DomainError(f"only odd power sums generate the algebra, got p{odd}")
    return GammaPoly.gen((odd + 1) // 2, power)


def q(even: int, power: int = 1) -> QuotientPoly:
    if even == 0:
        return QuotientPoly.one()
    if even < 0 or even % 2:
        raise DomainError(f"moment coordinates have even positive index, got q{even}")
    return QuotientPoly.gen(even // 2, power)


def g(k: int, power: int = 1) -> GPoly:
    return GPoly.gen(k, power)


def power_sum(lam: Sequence, k: int):
    return sum(x**k for x in lam)


def evaluate(f: GammaPoly, lam: Sequence) -> Fraction:
    """Value of ``f`` on a diagram: p_k becomes the k-th power sum of the parts."""
    value = f.evaluate_at(lambda k: power_sum(lam, 2 * k - 1))
    return value if isinstance(value, Fraction) else Fraction(value)


@lru_cache(maxsize=None)
def q_one_row(r: int) -> GammaPoly:
    """Coefficient of t^r in exp(2 * sum over odd k of p_k t^k / k)."""
    if r < 0:
        raise DomainError(f"index must be nonnegative, got {r}")
    if r == 0:
        return GammaPoly.one()
    # r q_r = sum over odd k <= r of 2 p_k q_(r-k)
    total = GammaPoly.zero()
    for k in range(1, r + 1, 2):
        total = total + p(k) * q_one_row(r - k) * 2
    return total / r


@lru_cache(maxsize=None)
def _q_two_row(a: int, b: int) -> GammaPoly:
    out = q_one_row(a) * q_one_row(b)
    for i in range(1, b + 1):
        out = out + q_one_row(a + i) * q_one_row(b - i) * (2 * (-1) ** i)
    return out


@lru_cache(maxsize=None)
def _pfaffian(parts: tuple[int, ...]) -> GammaPoly:
    if not parts:
        return GammaPoly.one()
    total = GammaPoly.zero()
    for j in range(1, len(parts)):
        rest = parts[1:j] + parts[j + 1 :]
        term = _q_two_row(parts[0], parts[j]) * _pfaffian(rest)
        total = total + (term if j % 2 == 1 else -term)
    return total


def schur_q(lam: Sequence[int]) -> GammaPoly:
    """Schur Q-function, built from one-row functions by the Pfaffian expansion."""
    parts = tuple(as_partition(lam))
    if len(parts) % 2:
        parts = parts + (0,)
    return _pfaffian(parts)


def _falling(y, k: int):
    out = 1
    for i in range(k):
        out *= y - i
    return out


def _symmetrize(lam: Sequence[int], ys: Sequence, power: Callable) -> Fraction:
    ell, n = len(lam), len(ys)
    if n < ell:
        return Fraction(0)
    total = Fraction(0)
    for w in permutations(ys):
        term = Fraction(1)
        for i in range(ell):
            term *= power(w[i], lam[i])
            if not term:
                break
            for j in range(i + 1, n):
                term *= Fraction(w[i] + w[j]) / (w[i] - w[j])
        total += term
    return total * 2**ell / math.factorial(n - ell)


def schur_q_symmetrized(lam: Sequence[int], ys: Sequence) -> Fraction:
    """Q_lam(y_1, ..., y_n) from the defining symmetrization (needs distinct y)."""
    return _symmetrize(tuple(lam), tuple(ys), lambda y, k: y**k)


@lru_cache(maxsize=1 << 16)
def _qstar_eval(mu: tuple[int, ...], lam: tuple[int, ...]) -> Fraction:
    return _symmetrize(mu, lam, _falling)


def schur_q_factorial_eval(mu: Sequence[int], lam: Sequence[int]) -> Fraction:
    """Q*_mu(lam) by symmetrization with falling factorial powers in the parts of lam."""
    return _qstar_eval(tuple(mu), tuple(lam))


@dataclass(frozen=True)
class EvaluationGrid:
    """Diagrams of weight at most m against monomials of degree at most m."""

    max_weight: int
    points: tuple[StrictPartition, ...]
    monomials: tuple[tuple[int, ...], ...]
    monomial_matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]

    def index(self, lam: Sequence[int]) -> int:
        return self.points.index(as_partition(lam))


@lru_cache(maxsize=None)
def grid(m: int) -> EvaluationGrid:
    if m < 0:
        raise DomainError(f"grid weight must be nonnegative, got {m}")
    points = enumerate_up_to(m)
    monomials = tuple(GammaPoly.monomials_up_to(m))
    # Euler: odd-part partitions and strict partitions are equinumerous
    assert len(points) == len(monomials) == sum(count_strict(k) for k in range(m + 1))
    psums = {lam: [power_sum(lam, 2 * k - 1) for k in range(1, m + 2)] for lam in points}

    def mono_value(lam, e):
        out = 1
        for k, r in enumerate(e, start=1):
            out *= psums[lam][k - 1] ** r
        return out

    matrix = tuple(tuple(mono_value(lam, e) for e in monomials) for lam in points)
    try:
        inv = inverse(matrix)
    except SingularMatrixError as exc:  # pragma: no cover - would contradict the dimension count
        raise AssertionError(f"evaluation grid of weight {m} is singular") from exc
    return EvaluationGrid(m, points, monomials, matrix, tuple(tuple(r) for r in inv))


def grid_values(f: GammaPoly, m: int) -> dict[StrictPartition, Fraction]:
    return {lam: evaluate(f, lam) for lam in grid(m).points}


def to_monomial_basis(values: Mapping[Sequence[int], object] | Callable, m: int) -> GammaPoly:
    """The unique element of degree at most m with the given values on the grid.

    ``values`` is a mapping from diagrams to numbers, or a function of a diagram.
    """
    gr = grid(m)
    if callable(values):
        vec = [Fraction(values(lam)) for lam in gr.points]
    else:
        lookup = {tuple(k): v for k, v in values.items()}
        missing = [lam for lam in gr.points if tuple(lam) not in lookup]
        if missing:
            raise DomainError(f"values missing at grid points, e.g. {list(missing[0])}")
        vec = [Fraction(lookup[tuple(lam)]) for lam in gr.points]
    coeffs = matvec(gr.inverse, vec)
    return GammaPoly({e: c for e, c in zip(gr.monomials, coeffs)})


def _check_degree(f: GammaPoly, m: int) -> None:
    if f.degree > m:
        raise DomainError(f"degree {f.degree} exceeds the bound {m}")


def expand_in_qstar(f: GammaPoly, m: int | None = None) -> dict[StrictPartition, Fraction]:
    """Coefficients of ``f`` in the factorial Q-basis.

    Solved by forward substitution: Q*_nu vanishes on diagrams not containing nu.
    """
    if m is None:
        m = max(int(f.degree), 0) if f else 0
    _check_degree(f, m)
    coeffs: dict[StrictPartition, Fraction] = {}
    for lam in enumerate_up_to(m):
        rest = evaluate(f, lam)
        for nu, c in coeffs.items():
            if c and len(nu) <= len(lam) and contains(nu, lam):
                rest -= c * schur_q_factorial_eval(nu, lam)
        coeffs[lam] = rest / schur_q_factorial_eval(lam, lam)
    return {nu: c for nu, c in coeffs.items() if c}


@lru_cache(maxsize=None)
def _qstar_symbolic(mu: tuple[int, ...]) -> GammaPoly:
    return to_monomial_basis(lambda lam: schur_q_factorial_eval(mu, lam), sum(mu))


def schur_q_factorial_symbolic(mu: Sequence[int]) -> GammaPoly:
    """Q*_mu as a polynomial, interpolated from its values on diagrams of weight <= |mu|."""
    return _qstar_symbolic(tuple(as_partition(mu)))


def from_qstar(coeffs: Mapping[Sequence[int], object]) -> GammaPoly:
    out = GammaPoly.zero()
    for mu, c in coeffs.items():
        out = out + schur_q_factorial_symbolic(mu) * Fraction(c)
    return out


def _coordinate_symbolic(kind: str, k: int, degree_bound: int | None) -> GammaPoly:
    if k < 1:
        raise DomainError(f"index must be positive, got {k}")
    bound = 2 * k - 1 if degree_bound is None else degree_bound
    if bound < 2 * k - 1:
        raise DomainError(f"degree bound {bound} is below 2k-1 = {2 * k - 1}")
    return _coordinate_cached(kind, k, bound)


@lru_cache(maxsize=None)
def _coordinate_cached(kind: str, k: int, bound: int) -> GammaPoly:
    return to_monomial_basis(lambda lam: coordinates(lam, kind, k)[k], bound)


def g_symbolic(k: int, degree_bound: int | None = None) -> GammaPoly:
    """The coordinate g_k as an element of the algebra."""
    return _coordinate_symbolic("g", k, degree_bound)


def ghat_symbolic(k: int, degree_bound: int | None = None) -> GammaPoly:
    return _coordinate_symbolic("g_hat", k, degree_bound)


def boldp_symbolic(m: int, degree_bound: int | None = None) -> GammaPoly:
    return _coordinate_symbolic("bold_p", m, degree_bound)


def g_to_gamma(f: GPoly) -> GammaPoly:
    """Substitute the polynomial expressions of g_1, g_2, ... into ``f``."""
    images = {k: g_symbolic(k) for k in f.generators()}
    return f.substitute(images, GammaPoly)


def project(f: GammaPoly) -> QuotientPoly:
    """Set p1 = 1 and rename p_(2k+1) to q_(2k)."""
    return QuotientPoly({e[1:]: c for e, c in f.terms.items()})


def lift(f: QuotientPoly) -> GammaPoly:
    """The preimage under :func:`project` with no p1 factors."""
    return GammaPoly({(0,) + e if e else (): c for e, c in f.terms.items()})
