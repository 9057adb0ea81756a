"""Rational functions attached to a diagram through its Kerov coordinates.

Write ``[t] = t(t + 1)`` for a content ``t``.  For a strict partition with
addable contents X, removable contents Y and X' = X without 0:

* ``R_up(v)   = prod_Y (v - [y]) / (v prod_X' (v - [x]))``
* ``R_down(v) = prod_X' (v - [x]) / prod_Y (v - [y])``
* ``Phi(v)    = v R_up(v)``

``R_up = sum_x theta_up[x] / (v - [x])`` and
``R_down = 1 - sum_y theta_down[y] / (v - [y])``.
The expansion of Phi at infinity defines three coordinate families
(``bold_p``, ``g`` and ``g_hat``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diagrams import addable_contents, removable_contents
from .errors import DomainError

__all__ = [
    "RationalFunctionOneVar",
    "CoordinateVector",
    "KINDS",
    "r_up",
    "r_down",
    "phi",
    "phi_from_parts",
    "theta_up",
    "theta_down",
    "theta_up_float",
    "theta_down_float",
    "coordinates",
    "phi_ratio_add",
    "phi_ratio_remove",
]

KINDS = ("bold_p", "g", "g_hat")


def _br(t):
    return t * (t + 1)


# polynomials in v as coefficient lists, constant term first


def _trim(c: list[Fraction]) -> list[Fraction]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _padd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _from_roots(roots: Sequence[int]) -> list[Fraction]:
    out = [Fraction(1)]
    for r in roots:
        out = _pmul(out, [Fraction(-r), Fraction(1)])
    return out


@dataclass(frozen=True)
class RationalFunctionOneVar:
    """num(v) / den(v) with coefficient tuples, constant term first."""

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not any(self.den):
            raise DomainError("denominator must be nonzero")

    @classmethod
    def from_roots(cls, zeros: Sequence[int], poles: Sequence[int]) -> "RationalFunctionOneVar":
        return cls(tuple(_from_roots(zeros)), tuple(_from_roots(poles)))

    @classmethod
    def from_lists(cls, num: Sequence, den: Sequence) -> "RationalFunctionOneVar":
        return cls(tuple(Fraction(c) for c in num), tuple(Fraction(c) for c in den))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunctionOneVar):
            return NotImplemented
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    def __hash__(self) -> int:  # equality is up to common factors
        raise TypeError("rational functions are not hashable")

    def __mul__(self, other: "RationalFunctionOneVar") -> "RationalFunctionOneVar":
        return RationalFunctionOneVar(tuple(_pmul(self.num, other.num)), tuple(_pmul(self.den, other.den)))

    def __truediv__(self, other: "RationalFunctionOneVar") -> "RationalFunctionOneVar":
        return RationalFunctionOneVar(tuple(_pmul(self.num, other.den)), tuple(_pmul(self.den, other.num)))

    def times_v(self) -> "RationalFunctionOneVar":
        return RationalFunctionOneVar((Fraction(0),) + self.num, self.den)

    def __call__(self, v) -> Fraction:
        def ev(c):
            acc = Fraction(0)
            for coef in reversed(c):
                acc = acc * v + coef
            return acc

        return ev(self.num) / ev(self.den)

    def to_json(self) -> dict[str, list[str]]:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    def __repr__(self) -> str:
        return f"RationalFunctionOneVar(num={[str(c) for c in self.num]}, den={[str(c) for c in self.den]})"


def _xp(lam: Sequence[int]) -> tuple[int, ...]:
    return tuple(x for x in addable_contents(lam) if x != 0)


def r_up(lam: Sequence[int]) -> RationalFunctionOneVar:
    ys = [_br(y) for y in removable_contents(lam)]
    xs = [0] + [_br(x) for x in _xp(lam)]
    return RationalFunctionOneVar.from_roots(ys, xs)


def r_down(lam: Sequence[int]) -> RationalFunctionOneVar:
    ys = [_br(y) for y in removable_contents(lam)]
    xs = [_br(x) for x in _xp(lam)]
    return RationalFunctionOneVar.from_roots(xs, ys)


def phi(lam: Sequence[int]) -> RationalFunctionOneVar:
    """Phi(v) as prod_Y (v - [y]) / prod_X' (v - [x])."""
    ys = [_br(y) for y in removable_contents(lam)]
    xs = [_br(x) for x in _xp(lam)]
    return RationalFunctionOneVar.from_roots(ys, xs)


def phi_from_parts(lam: Sequence[int]) -> RationalFunctionOneVar:
    """Phi(v) as prod_i (v - l_i(l_i - 1)) / (v - l_i(l_i + 1))."""
    return RationalFunctionOneVar.from_roots([p * (p - 1) for p in lam], [p * (p + 1) for p in lam])


def _theta_up(lam: Sequence[int], one) -> dict[int, object]:
    ys = [_br(y) for y in removable_contents(lam)]
    xps = _xp(lam)
    out = {}
    for xh in addable_contents(lam):
        if xh == 0:
            num, den = one, one
            for y in ys:
                num *= y
            for x in xps:
                den *= _br(x)
        else:
            b = _br(xh)
            num, den = one, one * b
            for y in ys:
                num *= b - y
            for x in xps:
                if x != xh:
                    den *= b - _br(x)
        out[xh] = num / den
    return out


def theta_up(lam: Sequence[int]) -> dict[int, Fraction]:
    """Partial-fraction coefficients of R_up, keyed by addable content."""
    return _theta_up(lam, Fraction(1))


def theta_up_float(lam: Sequence[int]) -> dict[int, float]:
    return _theta_up(lam, 1.0)


def _theta_down(lam: Sequence[int], one) -> dict[int, object]:
    ycs = removable_contents(lam)
    xs = [_br(x) for x in _xp(lam)]
    out = {}
    for yh in ycs:
        b = _br(yh)
        num, den = one, one
        for x in xs:
            num *= b - x
        for y in ycs:
            if y != yh:
                den *= b - _br(y)
        # R_down = 1 - sum theta / (v - [y]), so theta is minus the residue
        out[yh] = -num / den
    return out


def theta_down(lam: Sequence[int]) -> dict[int, Fraction]:
    """Partial-fraction coefficients of R_down, keyed by removable content."""
    return _theta_down(lam, Fraction(1))


def theta_down_float(lam: Sequence[int]) -> dict[int, float]:
    return _theta_down(lam, 1.0)


@dataclass(frozen=True)
class CoordinateVector:
    kind: str
    values: tuple[Fraction, ...]

    def __getitem__(self, m: int) -> Fraction:
        """1-based access: ``cv[m]`` is the m-th coordinate."""
        if m < 1:
            raise IndexError("coordinates are indexed from 1")
        return self.values[m - 1]

    def __len__(self) -> int:
        return len(self.values)

    def to_json(self) -> dict[str, object]:
        return {"kind": self.kind, "values": [str(v) for v in self.values]}


# truncated power series in w = 1/v, coefficient lists of length order + 1


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        if a[i]:
            for j in range(order + 1 - i):
                out[i + j] += a[i] * b[j]
    return out


def _series_inv(a: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / a[0]
    for k in range(1, order + 1):
        out[k] = -sum((a[j] * out[k - j] for j in range(1, k + 1)), Fraction(0)) / a[0]
    return out


def _series_log(a: list[Fraction], order: int) -> list[Fraction]:
    if a[0] != 1:
        raise DomainError("log needs constant term 1")
    deriv = [(k + 1) * a[k + 1] for k in range(order)] + [Fraction(0)]
    q = _series_mul(deriv, _series_inv(a, order), order)
    return [Fraction(0)] + [q[k - 1] / k for k in range(1, order + 1)]


def _phi_series(lam: Sequence[int], order: int) -> list[Fraction]:
    """Phi at v = infinity as a series in w = 1/v, from the row-length product."""

    def linear(c: int) -> list[Fraction]:
        return ([Fraction(1), Fraction(-c)] + [Fraction(0)] * order)[: order + 1]

    num = linear(0)
    den = linear(0)
    for p in lam:
        num = _series_mul(num, linear(p * (p - 1)), order)
        den = _series_mul(den, linear(p * (p + 1)), order)
    return _series_mul(num, _series_inv(den, order), order)


def _coordinates_series(lam: Sequence[int], kind: str, M: int) -> tuple[Fraction, ...]:
    series = _phi_series(lam, M)
    if kind == "g":
        return tuple(series[1:])
    if kind == "g_hat":
        return tuple(-c for c in _series_inv(series, M)[1:])
    logs = _series_log(series, M)
    return tuple(m * logs[m] for m in range(1, M + 1))


def _coordinates_kerov(lam: Sequence[int], kind: str, M: int) -> tuple[Fraction, ...]:
    if kind == "bold_p":
        xs = [_br(x) for x in addable_contents(lam)]
        ys = [_br(y) for y in removable_contents(lam)]
        return tuple(Fraction(sum(x**m for x in xs) - sum(y**m for y in ys)) for m in range(1, M + 1))
    if kind == "g":
        th = theta_up(lam)
        return tuple(sum((t * _br(x) ** m for x, t in th.items()), Fraction(0)) for m in range(1, M + 1))
    if not lam:
        return (Fraction(0),) * M
    th = theta_down(lam)
    return tuple(sum((t * _br(y) ** (m - 1) for y, t in th.items()), Fraction(0)) for m in range(1, M + 1))


def coordinates(lam: Sequence[int], kind: str, M: int, method: str = "series") -> CoordinateVector:
    """The first ``M`` coordinates of the given kind.

    ``method="series"`` expands Phi at infinity; ``method="kerov"`` uses the
    sums over Kerov coordinates weighted by theta_up and theta_down.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown coordinate kind {kind!r}; expected one of {KINDS}")
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    if method == "series":
        values = _coordinates_series(lam, kind, M)
    elif method == "kerov":
        values = _coordinates_kerov(lam, kind, M)
    else:
        raise DomainError(f"unknown method {method!r}")
    return CoordinateVector(kind, values)


def phi_ratio_add(x: int) -> RationalFunctionOneVar:
    """Closed form of Phi(lam + box(x)) / Phi(lam)."""
    b = _br(x)
    sq = _pmul([Fraction(-b), Fraction(1)], [Fraction(-b), Fraction(1)])
    return RationalFunctionOneVar(tuple(sq), tuple(_padd(sq, [Fraction(-2 * b), Fraction(-2)])))


def phi_ratio_remove(y: int) -> RationalFunctionOneVar:
    """Closed form of Phi(lam - box(y)) / Phi(lam)."""
    r = phi_ratio_add(y)
    return RationalFunctionOneVar(r.den, r.num)
