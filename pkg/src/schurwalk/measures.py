"""Path counts, transition probabilities and coherent measures on strict partitions.

Everything here is exact.  The parameter ``alpha`` is a positive
:class:`~fractions.Fraction`, or :data:`PLANCHEREL` (``math.inf``) for the
Plancherel limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .diagrams import (
    EMPTY,
    StrictPartition,
    add_box,
    addable_contents,
    as_partition,
    box_contents,
    contains,
    edge_multiplicity,
    enumerate_strict,
    remove_box,
    removable_contents,
)
from .errors import DomainError
from .report import Report

PLANCHEREL = math.inf

Alpha = Union[Fraction, float]


def parse_alpha(value: object) -> Alpha:
    """Normalize an alpha given as int, Fraction, float or string ("7/3", "inf")."""
    if isinstance(value, str) and value.strip().lower() in {"inf", "infinity", "plancherel", "∞"}:
        return PLANCHEREL
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return PLANCHEREL
    try:
        alpha = Fraction(value) if not isinstance(value, float) else Fraction(value).limit_denominator(10**12)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot read alpha from {value!r}") from exc
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    return alpha


def is_plancherel(alpha: Alpha) -> bool:
    return alpha == PLANCHEREL


@lru_cache(maxsize=1 << 16)
def _paths(mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    dn = sum(nu) - sum(mu)
    if dn < 0 or not contains(mu, nu):
        return 0
    if dn == 0:
        return 1 if mu == nu else 0
    total = 0
    for y in removable_contents(nu):
        lam = remove_box(nu, y)
        total += _paths(mu, tuple(lam)) * (2 if len(lam) == len(nu) else 1)
    return total


def path_count(mu: Sequence[int], lam: Sequence[int]) -> int:
    """Number of paths from ``mu`` up to ``lam``, counted with edge multiplicities."""
    return _paths(tuple(mu), tuple(lam))


@lru_cache(maxsize=1 << 16)
def _h_closed(lam: tuple[int, ...]) -> int:
    n, ell = sum(lam), len(lam)
    value = Fraction(2 ** (n - ell) * math.factorial(n))
    for p in lam:
        value /= math.factorial(p)
    for i in range(ell):
        for j in range(i + 1, ell):
            value *= Fraction(lam[i] - lam[j], lam[i] + lam[j])
    assert value.denominator == 1
    return int(value)


def h_closed_form(lam: Sequence[int]) -> int:
    """Number of paths from the empty diagram to ``lam`` by the product formula."""
    return _h_closed(tuple(lam))


dimension = h_closed_form


def down_prob(lam: Sequence[int], mu: Sequence[int]) -> Fraction:
    """Probability of the down move lam -> mu."""
    if sum(lam) != sum(mu) + 1:
        raise DomainError(f"down move needs |lam| = |mu| + 1, got {list(lam)} and {list(mu)}")
    k = edge_multiplicity(mu, lam)
    if k == 0:
        return Fraction(0)
    return Fraction(dimension(mu) * k, dimension(lam))


def _check_alpha(alpha: Alpha) -> Alpha:
    if is_plancherel(alpha):
        return alpha
    if not isinstance(alpha, Fraction):
        alpha = parse_alpha(alpha)
    elif alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    return alpha


def up_prob(lam: Sequence[int], x: int, alpha: Alpha) -> Fraction:
    """Probability of the up move adding the box of content ``x`` to ``lam``."""
    alpha = _check_alpha(alpha)
    nu = add_box(lam, x)
    n = sum(lam)
    plancherel_part = Fraction(dimension(nu), dimension(lam) * (n + 1))
    if is_plancherel(alpha):
        return plancherel_part
    return (x * (x + 1) + alpha) / (2 * n + alpha) * plancherel_part


def up_law(lam: Sequence[int], alpha: Alpha) -> dict[StrictPartition, Fraction]:
    return {add_box(lam, x): up_prob(lam, x, alpha) for x in addable_contents(lam)}


def down_law(lam: Sequence[int]) -> dict[StrictPartition, Fraction]:
    return {remove_box(lam, y): down_prob(lam, remove_box(lam, y)) for y in removable_contents(lam)}


@dataclass(frozen=True)
class MeasureOnLevel:
    n: int
    alpha: Alpha | None
    weights: Mapping[StrictPartition, Fraction]

    def __getitem__(self, lam: Sequence[int]) -> Fraction:
        return self.weights.get(as_partition(lam), Fraction(0))

    def items(self):
        return self.weights.items()

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def expectation(self, f) -> Fraction:
        return sum((w * f(lam) for lam, w in self.weights.items()), Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {"[" + ",".join(map(str, lam)) + "]": str(w) for lam, w in self.weights.items()}


@lru_cache(maxsize=None)
def plancherel_measure(n: int) -> MeasureOnLevel:
    if n < 0:
        raise DomainError(f"level must be nonnegative, got {n}")
    weights = {
        lam: Fraction(dimension(lam) ** 2 * 2 ** len(lam), math.factorial(n) * 2**n)
        for lam in enumerate_strict(n)
    }
    return MeasureOnLevel(n, None, weights)


def _box_weight(lam: Sequence[int], alpha: Fraction) -> Fraction:
    out = Fraction(1)
    for c in box_contents(lam):
        out *= c * (c + 1) + alpha
    return out


def normalizer(alpha: Fraction, n: int) -> Fraction:
    """alpha (alpha + 2) ... (alpha + 2n - 2)."""
    out = Fraction(1)
    for k in range(n):
        out *= alpha + 2 * k
    return out


@lru_cache(maxsize=None)
def _multiplicative(n: int, alpha: Fraction) -> MeasureOnLevel:
    pl = plancherel_measure(n)
    z = normalizer(alpha, n)
    weights = {lam: w * _box_weight(lam, alpha) / z for lam, w in pl.weights.items()}
    return MeasureOnLevel(n, alpha, weights)


def multiplicative_measure(n: int, alpha: Alpha) -> MeasureOnLevel:
    """The level-``n`` multiplicative measure; alpha = PLANCHEREL gives Plancherel."""
    alpha = _check_alpha(alpha)
    if n < 0:
        raise DomainError(f"level must be nonnegative, got {n}")
    if is_plancherel(alpha):
        return plancherel_measure(n)
    return _multiplicative(n, alpha)


def verify_coherence(n: int, alpha: Alpha) -> Report:
    """Check down- and up-consistency of the measures between levels n and n + 1."""
    alpha = _check_alpha(alpha)
    report = Report("coherence", {"n": n, "alpha": alpha})
    lower = multiplicative_measure(n, alpha)
    upper = multiplicative_measure(n + 1, alpha)
    report.add("total mass level n", Fraction(1), lower.total())
    report.add("total mass level n+1", Fraction(1), upper.total())
    down_pushed = {mu: Fraction(0) for mu in lower.weights}
    up_pushed = {nu: Fraction(0) for nu in upper.weights}
    for lam, w in upper.items():
        for y in removable_contents(lam):
            mu = remove_box(lam, y)
            down_pushed[mu] += down_prob(lam, mu) * w
    for lam, w in lower.items():
        for x in addable_contents(lam):
            up_pushed[add_box(lam, x)] += up_prob(lam, x, alpha) * w
    for mu, w in lower.items():
        report.add({"down": mu}, w, down_pushed[mu])
    for nu, w in upper.items():
        report.add({"up": nu}, w, up_pushed[nu])
    return report


def falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def ivanov_dimension(mu: Sequence[int], lam: Sequence[int]) -> Fraction:
    """Ratio of path counts predicted by the factorial Q-function formula."""
    from .gamma import schur_q_factorial_eval

    k, n = sum(mu), sum(lam)
    if k > n:
        raise DomainError(f"need |mu| <= |lam|, got {k} > {n}")
    if k == 0:
        return Fraction(1)
    return schur_q_factorial_eval(mu, lam) / (2**k * falling(n, k))


__all__ = [
    "PLANCHEREL",
    "EMPTY",
    "parse_alpha",
    "is_plancherel",
    "path_count",
    "h_closed_form",
    "dimension",
    "down_prob",
    "up_prob",
    "up_law",
    "down_law",
    "MeasureOnLevel",
    "plancherel_measure",
    "multiplicative_measure",
    "normalizer",
    "verify_coherence",
    "falling",
    "ivanov_dimension",
]
