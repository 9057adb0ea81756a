"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is an exponent tuple ``(r_1, r_2, ...)`` over generators numbered
from 1, stored without trailing zeros.  Subclasses choose how generators are
named and how much each one weighs in the degree filtration.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, ClassVar, Iterable, Iterator, Mapping, TypeVar

P = TypeVar("P", bound="SparsePoly")
Exps = tuple[int, ...]


def _trim(exps: Iterable[int]) -> Exps:
    e = list(exps)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _add_exps(a: Exps, b: Exps) -> Exps:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class SparsePoly:
    """Immutable polynomial: a mapping from exponent tuples to nonzero Fractions."""

    __slots__ = ("terms", "_hash")
    prefix: ClassVar[str] = "x"

    def __init__(self, terms: Mapping[Exps, object] | None = None):
        clean: dict[Exps, Fraction] = {}
        for exps, c in (terms or {}).items():
            c = _as_fraction(c)
            if c:
                key = _trim(exps)
                total = clean.get(key, Fraction(0)) + c
                if total:
                    clean[key] = total
                else:
                    clean.pop(key, None)
        self.terms: dict[Exps, Fraction] = clean
        self._hash = None

    # naming and weights

    @classmethod
    def weight(cls, k: int) -> int:
        return 1

    @classmethod
    def subscript(cls, k: int) -> int:
        return k

    # construction

    @classmethod
    def _raw(cls: type[P], terms: dict[Exps, Fraction]) -> P:
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls: type[P], c) -> P:
        return cls({(): c})

    @classmethod
    def zero(cls: type[P]) -> P:
        return cls._raw({})

    @classmethod
    def one(cls: type[P]) -> P:
        return cls._raw({(): Fraction(1)})

    @classmethod
    def gen(cls: type[P], k: int, power: int = 1) -> P:
        """The generator numbered ``k`` (from 1), raised to ``power``."""
        if k < 1:
            raise ValueError(f"generators are numbered from 1, got {k}")
        return cls._raw({(0,) * (k - 1) + (power,): Fraction(1)}) if power else cls.one()

    @classmethod
    def monomial(cls: type[P], exps: Exps, coeff=1) -> P:
        return cls({exps: coeff})

    @classmethod
    def monomials_up_to(cls, m: int) -> list[Exps]:
        """Exponent tuples of weighted degree at most ``m``, by degree then lexicographically."""
        out: list[Exps] = []

        def rec(k: int, left: int, acc: list[int]) -> None:
            w = cls.weight(k)
            if w > left:
                out.append(_trim(acc))
                return
            for r in range(left // w + 1):
                rec(k + 1, left - r * w, acc + [r])

        rec(1, m, [])
        out = sorted(set(out), key=lambda e: (cls.exps_degree(e), e))
        return out

    @classmethod
    def exps_degree(cls, exps: Exps) -> int:
        return sum(r * cls.weight(k) for k, r in enumerate(exps, start=1))

    # arithmetic

    def _coerce(self: P, other) -> P | None:
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(other)
        return None

    def __add__(self: P, other) -> P:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return type(self)._raw(terms)

    __radd__ = __add__

    def __neg__(self: P) -> P:
        return type(self)._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self: P, other) -> P:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self: P, other) -> P:
        return (-self) + other

    def scale(self: P, c) -> P:
        c = _as_fraction(c)
        if not c:
            return type(self).zero()
        return type(self)._raw({e: v * c for e, v in self.terms.items()})

    def __mul__(self: P, other) -> P:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        terms: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return type(self)._raw({e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self: P, c) -> P:
        return self.scale(1 / _as_fraction(c))

    def __pow__(self: P, n: int) -> P:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = type(self).one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = type(self).constant(other)
        if not isinstance(other, SparsePoly) or type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> float:
        """Weighted degree; the zero polynomial has degree ``-inf``."""
        if not self.terms:
            return -math.inf
        return max(self.exps_degree(e) for e in self.terms)

    def homogeneous(self: P, d: int) -> P:
        return type(self)._raw({e: c for e, c in self.terms.items() if self.exps_degree(e) == d})

    def top(self: P) -> P:
        """The homogeneous component of top degree."""
        if not self.terms:
            return self
        return self.homogeneous(int(self.degree))

    def truncate_below(self: P, d: int) -> P:
        """Terms of degree at least ``d``."""
        return type(self)._raw({e: c for e, c in self.terms.items() if self.exps_degree(e) >= d})

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def generators(self) -> set[int]:
        return {k for e in self.terms for k, r in enumerate(e, start=1) if r}

    def diff(self: P, k: int) -> P:
        """Partial derivative with respect to generator ``k``."""
        terms: dict[Exps, Fraction] = {}
        i = k - 1
        for e, c in self.terms.items():
            if i < len(e) and e[i]:
                ne = list(e)
                ne[i] -= 1
                key = _trim(ne)
                terms[key] = terms.get(key, 0) + c * e[i]
        return type(self)._raw({e: c for e, c in terms.items() if c})

    def items(self) -> Iterator[tuple[Exps, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: (-self.exps_degree(t[0]), t[0])))

    def map_monomials(self, fn: Callable[[Exps], "SparsePoly"], target: type[P]) -> P:
        """Linear extension of ``fn`` from monomials to the whole polynomial."""
        out = target.zero()
        for e, c in self.terms.items():
            out = out + fn(e).scale(c)
        return out

    def substitute(self, images: Mapping[int, "SparsePoly"], target: type[P]) -> P:
        """Replace generator ``k`` by ``images[k]`` (a polynomial of class ``target``)."""
        cache: dict[tuple[int, int], P] = {}

        def power(k: int, r: int) -> P:
            if (k, r) not in cache:
                cache[(k, r)] = images[k] ** r
            return cache[(k, r)]

        def image(e: Exps) -> P:
            out = target.one()
            for k, r in enumerate(e, start=1):
                if r:
                    out = out * power(k, r)
            return out

        return self.map_monomials(image, target)

    def evaluate_at(self, values: Callable[[int], object]):
        """Evaluate with generator ``k`` set to ``values(k)``."""
        cache: dict[int, object] = {}
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for k, r in enumerate(e, start=1):
                if r:
                    if k not in cache:
                        cache[k] = values(k)
                    term = term * cache[k] ** r
            total = total + term
        return total

    # presentation

    def _monomial_str(self, e: Exps) -> str:
        parts = []
        for k, r in enumerate(e, start=1):
            if r:
                name = f"{self.prefix}{self.subscript(k)}"
                parts.append(name if r == 1 else f"{name}^{r}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = self._monomial_str(e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list[dict[str, object]]:
        return [
            {
                "exponents": {str(self.subscript(k)): r for k, r in enumerate(e, start=1) if r},
                "coeff": str(c),
            }
            for e, c in self.items()
        ]
