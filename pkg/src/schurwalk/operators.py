"""Operators on the algebra of doubly symmetric functions and on finitary functions.

* ``D_op`` and ``U_op`` act diagonally-plus-lowering on the factorial
  Q-basis; they are computed by expanding in that basis.
* ``B_op`` (in p1, p3, ...) and ``A_op`` (in q2, q4, ...) are second-order
  differential operators, applied monomial by monomial.
* ``E``, ``F`` and ``H`` act on finitely supported functions on diagrams.

The ``verify_*`` functions check the identities relating all of these and
return :class:`~schurwalk.report.Report` objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .diagrams import (
    StrictPartition,
    add_box,
    addable_contents,
    as_partition,
    enumerate_strict,
    enumerate_up_to,
    remove_box,
    removable_contents,
)
from .errors import DomainError, TruncationError
from .gamma import (
    GammaPoly,
    GPoly,
    QuotientPoly,
    evaluate,
    expand_in_qstar,
    g,
    g_to_gamma,
    p,
    project,
    lift,
    schur_q,
    schur_q_factorial_eval,
    schur_q_factorial_symbolic,
)
from .measures import Alpha, parse_alpha
from .report import Report

__all__ = [
    "LinearOperatorOnGamma",
    "D_op",
    "U_op",
    "B_tilde",
    "B_op",
    "A_op",
    "A_on_Q",
    "Tn_on_qstar",
    "leading_D_in_g",
    "leading_U_in_g",
    "TruncatedFun0",
    "basis_vector",
    "kerov_sl2",
    "E_op",
    "F_op",
    "H_op",
    "ZERO_DEGREE_MAX_DEGREE",
    "LEADING_TERMS_MAX_DEGREE",
    "verify_chain_on_factorial_q",
    "verify_leading_terms_in_g",
    "verify_zero_degree_operator",
    "verify_limit_operator",
    "verify_sl2",
    "verify_down_up_scaling",
]

ZERO_DEGREE_MAX_DEGREE = 10
LEADING_TERMS_MAX_DEGREE = 7


def _alpha(alpha) -> Fraction:
    a = parse_alpha(alpha)
    if not isinstance(a, Fraction):
        raise DomainError("these operators need a finite alpha")
    return a


def _degree_bound(f: GammaPoly, m: int | None) -> int:
    d = max(int(f.degree), 0) if f else 0
    if m is None:
        return d
    if d > m:
        raise DomainError(f"degree {d} exceeds the declared bound {m}")
    return m


def D_op(f: GammaPoly, m: int | None = None) -> GammaPoly:
    """Apply D: Q*_mu goes to (p1 - |mu|) Q*_mu."""
    m = _degree_bound(f, m)
    out = GammaPoly.zero()
    for mu, c in expand_in_qstar(f, m).items():
        out = out + (p(1) - mu.weight) * schur_q_factorial_symbolic(mu) * c
    return out


def U_op(f: GammaPoly, alpha: Alpha, m: int | None = None) -> GammaPoly:
    """Apply U: Q*_mu goes to (p1 + |mu| + alpha/2) Q*_mu + sum_y ([y] + alpha) Q*_(mu - box(y))."""
    alpha = _alpha(alpha)
    m = _degree_bound(f, m)
    out = GammaPoly.zero()
    for mu, c in expand_in_qstar(f, m).items():
        term = (p(1) + (mu.weight + alpha / 2)) * schur_q_factorial_symbolic(mu)
        for y in removable_contents(mu):
            term = term + schur_q_factorial_symbolic(remove_box(mu, y)) * (y * (y + 1) + alpha)
        out = out + term * c
    return out


def B_tilde(f: GammaPoly, alpha: Alpha) -> GammaPoly:
    """UD - (g1 + alpha)(g1 + 2)/4 with g1 = 2 p1."""
    alpha = _alpha(alpha)
    shift = (p(1) * 2 + alpha) * (p(1) * 2 + 2) / 4
    return U_op(D_op(f), alpha) - shift * f


def B_op(f: GammaPoly, alpha: Alpha) -> GammaPoly:
    """The degree-zero differential operator in p1, p3, p5, ...

    Generator k stands for p_(2k-1); indices below are generator numbers.
    """
    alpha = _alpha(alpha)
    out = GammaPoly.zero()
    gens = sorted(k for k in f.generators() if k >= 2)
    first = {k: f.diff(k) for k in gens}
    # second-order part, i, j >= 2
    for i in gens:
        for j in gens:
            dd = first[i].diff(j)
            if dd:
                coef = GammaPoly.gen(1) * GammaPoly.gen(i + j - 1) - GammaPoly.gen(i) * GammaPoly.gen(j)
                out = out + coef * dd * ((2 * i - 1) * (2 * j - 1))
    for k in gens:
        # transport: 2 (2k-1) p1 sum_{i+j=k} p_(2i-1) p_(2j-1) d/dp_(2k-1)
        pairs = GammaPoly.zero()
        for i in range(1, k):
            pairs = pairs + GammaPoly.gen(i) * GammaPoly.gen(k - i)
        out = out + GammaPoly.gen(1) * pairs * first[k] * (2 * (2 * k - 1))
        # drift
        out = out - GammaPoly.gen(k) * first[k] * ((2 * k - 1) * (2 * k - 2 + alpha / 2))
    return out


def A_op(f: QuotientPoly, alpha: Alpha) -> QuotientPoly:
    """The differential operator in q2, q4, ... with q0 = 1.

    Generator k stands for q_(2k).
    """
    alpha = _alpha(alpha)

    def qq(k: int) -> QuotientPoly:
        return QuotientPoly.one() if k == 0 else QuotientPoly.gen(k)

    out = QuotientPoly.zero()
    gens = sorted(f.generators())
    first = {k: f.diff(k) for k in gens}
    for i in gens:
        for j in gens:
            dd = first[i].diff(j)
            if dd:
                out = out + (qq(i + j) - qq(i) * qq(j)) * dd * ((2 * i + 1) * (2 * j + 1))
    for k in gens:
        pairs = QuotientPoly.zero()
        for i in range(0, k):
            pairs = pairs + qq(i) * qq(k - 1 - i)
        out = out + pairs * first[k] * (2 * (2 * k + 1))
        out = out - qq(k) * first[k] * ((2 * k + 1) * (2 * k + alpha / 2))
    return out


def _qcirc(mu: Sequence[int]) -> QuotientPoly:
    return project(schur_q(mu))


def A_on_Q(mu: Sequence[int], alpha: Alpha) -> QuotientPoly:
    """A applied to the projected Schur Q-function, by its action on that basis."""
    alpha = _alpha(alpha)
    mu = as_partition(mu)
    n = mu.weight
    out = _qcirc(mu) * (-n * (n + alpha / 2 - 1))
    for y in removable_contents(mu):
        out = out + _qcirc(remove_box(mu, y)) * (y * (y + 1) + alpha)
    return out


def Tn_on_qstar(mu: Sequence[int], n: int, alpha: Alpha) -> dict[StrictPartition, Fraction]:
    """(T_n - 1) applied to Q*_mu restricted to level n, as a combination of Q*'s."""
    alpha = _alpha(alpha)
    mu = as_partition(mu)
    k = mu.weight
    if k > n:
        raise DomainError(f"|mu| = {k} exceeds the level n = {n}")
    den = (n + 1) * (n + alpha / 2)
    out = {mu: -k * (k + alpha / 2 - 1) / den}
    for y in removable_contents(mu):
        out[remove_box(mu, y)] = (n - k + 1) * (y * (y + 1) + alpha) / den
    return out


@dataclass(frozen=True)
class LinearOperatorOnGamma:
    """A linear map on the algebra with a declared degree shift."""

    name: str
    action: Callable[[GammaPoly], GammaPoly]
    degree_bound: int
    shift: int

    def __call__(self, f: GammaPoly) -> GammaPoly:
        if f.degree > self.degree_bound:
            raise DomainError(f"{self.name} is exact only up to degree {self.degree_bound}")
        return self.action(f)

    def matrix(self, m: int) -> tuple[tuple[tuple[int, ...], ...], list[list[Fraction]]]:
        """Matrix on monomials of degree <= m; columns are images of monomials."""
        src = GammaPoly.monomials_up_to(m)
        dst = GammaPoly.monomials_up_to(m + max(self.shift, 0))
        cols = [self(GammaPoly.monomial(e)) for e in src]
        return tuple(dst), [[c.terms.get(e, Fraction(0)) for c in cols] for e in dst]

    def respects_shift(self, f: GammaPoly) -> bool:
        return self(f).degree <= f.degree + self.shift if f else True


def D_operator(degree_bound: int = 12) -> LinearOperatorOnGamma:
    return LinearOperatorOnGamma("D", lambda f: D_op(f), degree_bound, 1)


def U_operator(alpha: Alpha, degree_bound: int = 12) -> LinearOperatorOnGamma:
    return LinearOperatorOnGamma("U", lambda f: U_op(f, alpha), degree_bound, 1)


def B_operator(alpha: Alpha, degree_bound: int = 12) -> LinearOperatorOnGamma:
    return LinearOperatorOnGamma("B", lambda f: B_op(f, alpha), degree_bound, 0)


# leading terms of D and U written in the g-coordinates


def _g_second_order(f: GPoly) -> GPoly:
    out = GPoly.zero()
    gens = sorted(f.generators())
    for r in gens:
        dr = f.diff(r)
        for s in gens:
            dd = dr.diff(s)
            if dd:
                out = out + g(r + s - 1) * dd * ((2 * r - 1) * (2 * s - 1))
    return out


def _g_euler(f: GPoly) -> GPoly:
    out = GPoly.zero()
    for r in f.generators():
        out = out + g(r) * f.diff(r) * (2 * r - 1)
    return out


def _g_transport(f: GPoly, offset: int) -> GPoly:
    out = GPoly.zero()
    for k in f.generators():
        if k < 2:
            continue
        pairs = GPoly.zero()
        for r in range(1, k):
            pairs = pairs + g(r) * g(k - r) * (k - offset)
        out = out + pairs * f.diff(k)
    return out


def leading_D_in_g(f: GPoly) -> GPoly:
    return g(1) * f / 2 + _g_second_order(f) - _g_euler(f) + _g_transport(f, 0)


def leading_U_in_g(f: GPoly, alpha: Alpha) -> GPoly:
    alpha = _alpha(alpha)
    return (
        g(1) * f / 2
        + f * (alpha / 2)
        + f.diff(1) * alpha
        + _g_second_order(f)
        + _g_euler(f)
        + _g_transport(f, 1)
    )


# finitely supported functions and the sl(2) triple


@dataclass(frozen=True)
class TruncatedFun0:
    """Finite combination of indicator functions of diagrams of weight <= cutoff."""

    cutoff: int
    coeffs: Mapping[StrictPartition, Fraction] = field(default_factory=dict)
    alpha: Fraction = Fraction(2)

    def __post_init__(self) -> None:
        clean = {}
        for lam, c in self.coeffs.items():
            lam = as_partition(lam)
            if lam.weight > self.cutoff:
                raise TruncationError(f"{list(lam)} lies beyond the cutoff {self.cutoff}")
            if c:
                clean[lam] = Fraction(c)
        object.__setattr__(self, "coeffs", clean)

    def _like(self, coeffs: Mapping[StrictPartition, Fraction]) -> "TruncatedFun0":
        return TruncatedFun0(self.cutoff, coeffs, self.alpha)

    def __add__(self, other: "TruncatedFun0") -> "TruncatedFun0":
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return self._like(out)

    def __sub__(self, other: "TruncatedFun0") -> "TruncatedFun0":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedFun0":
        return self._like({lam: v * c for lam, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedFun0):
            return NotImplemented
        return self.coeffs == other.coeffs

    def to_json(self) -> dict[str, str]:
        return {"[" + ",".join(map(str, lam)) + "]": str(c) for lam, c in self.coeffs.items()}


def basis_vector(lam: Sequence[int], cutoff: int, alpha: Alpha) -> TruncatedFun0:
    return TruncatedFun0(cutoff, {as_partition(lam): Fraction(1)}, _alpha(alpha))


def E_op(v: TruncatedFun0) -> TruncatedFun0:
    out: dict[StrictPartition, Fraction] = {}
    for lam, c in v.coeffs.items():
        for x in addable_contents(lam):
            nu = add_box(lam, x)
            if nu.weight > v.cutoff:
                raise TruncationError(f"E maps {list(lam)} beyond the cutoff {v.cutoff}")
            w = (x * (x + 1) + v.alpha) * (Fraction(1, 2) if x == 0 else 1)
            out[nu] = out.get(nu, Fraction(0)) + c * w
    return v._like(out)


def F_op(v: TruncatedFun0) -> TruncatedFun0:
    out: dict[StrictPartition, Fraction] = {}
    for lam, c in v.coeffs.items():
        for y in removable_contents(lam):
            mu = remove_box(lam, y)
            out[mu] = out.get(mu, Fraction(0)) - c
    return v._like(out)


def H_op(v: TruncatedFun0) -> TruncatedFun0:
    return v._like({lam: c * (v.alpha / 2 + 2 * lam.weight) for lam, c in v.coeffs.items()})


_SL2 = {"E": E_op, "F": F_op, "H": H_op}


def kerov_sl2(which: str, v: TruncatedFun0) -> TruncatedFun0:
    try:
        return _SL2[which](v)
    except KeyError:
        raise DomainError(f"unknown operator {which!r}; expected E, F or H") from None


# verification routines


def verify_sl2(alpha: Alpha, max_weight: int = 9) -> Report:
    """[E,H] = -2E, [F,H] = 2F and [E,F] = H on every basis vector of weight <= max_weight."""
    alpha = _alpha(alpha)
    report = Report("sl2 commutation relations", {"alpha": alpha, "max_weight": max_weight})
    for lam in enumerate_up_to(max_weight):
        v = basis_vector(lam, max_weight + 1, alpha)
        eh = E_op(H_op(v)) - H_op(E_op(v))
        report.add({"relation": "[E,H]=-2E", "lambda": lam}, E_op(v).scale(-2), eh)
        fh = F_op(H_op(v)) - H_op(F_op(v))
        report.add({"relation": "[F,H]=2F", "lambda": lam}, F_op(v).scale(2), fh)
        ef = E_op(F_op(v)) - F_op(E_op(v))
        report.add({"relation": "[E,F]=H", "lambda": lam}, H_op(v), ef)
    return report


def verify_chain_on_factorial_q(alpha: Alpha, max_mu: int = 5, max_n: int = 8) -> Report:
    """Exact action of T_n on factorial Q-functions against the transition matrix."""
    from .chains import transition_matrix

    alpha = _alpha(alpha)
    report = Report("T_n on factorial Q-functions", {"alpha": alpha, "max_mu": max_mu, "max_n": max_n})
    for n in range(1, max_n + 1):
        tm = transition_matrix(n, alpha)
        for mu in enumerate_up_to(min(max_mu, n)):
            vec = [schur_q_factorial_eval(mu, lam) for lam in tm.order]
            got = [a - b for a, b in zip(tm.apply(vec), vec)]
            combo = Tn_on_qstar(mu, n, alpha)
            expected = [
                sum((c * schur_q_factorial_eval(nu, lam) for nu, c in combo.items()), Fraction(0))
                for lam in tm.order
            ]
            report.add({"mu": mu, "n": n}, expected, got)
    return report


def _check_degree(report: Report, label: object, poly, bound) -> None:
    report.add(label, f"degree <= {bound}", f"degree {poly.degree}", poly.degree <= bound)


def verify_zero_degree_operator(alpha: Alpha, max_deg: int = 8) -> Report:
    """UD - (g1+alpha)(g1+2)/4 has degree 0 and leading part B on monomials."""
    alpha = _alpha(alpha)
    if max_deg > ZERO_DEGREE_MAX_DEGREE:
        raise DomainError(f"max_deg is limited to {ZERO_DEGREE_MAX_DEGREE}")
    report = Report("zero-degree operator B", {"alpha": alpha, "max_deg": max_deg})
    for e in GammaPoly.monomials_up_to(max_deg):
        f = GammaPoly.monomial(e)
        d = f.degree
        bt = B_tilde(f, alpha)
        bf = B_op(f, alpha)
        _check_degree(report, {"f": str(f), "claim": "deg(B~f) <= deg f"}, bt, d)
        _check_degree(report, {"f": str(f), "claim": "deg(B~f - Bf) <= deg f - 1"}, bt - bf, d - 1)
        report.add({"f": str(f), "claim": "B(p1 f) = p1 B(f)"}, str(p(1) * bf), str(B_op(p(1) * f, alpha)))
    return report


def _g_monomials(max_deg: int) -> list[GPoly]:
    return [GPoly.monomial(e) for e in GPoly.monomials_up_to(max_deg)]


def verify_leading_terms_in_g(alpha: Alpha, max_deg: int = 5) -> Report:
    """Leading terms of D and U in the g-coordinates, remainder of degree <= -2."""
    alpha = _alpha(alpha)
    if max_deg > LEADING_TERMS_MAX_DEGREE:
        raise DomainError(f"max_deg is limited to {LEADING_TERMS_MAX_DEGREE}")
    report = Report("D and U in g-coordinates", {"alpha": alpha, "max_deg": max_deg})
    one = GammaPoly.one()
    report.add("D(1) = g1/2", g_to_gamma(g(1) / 2), D_op(one))
    g1 = g_to_gamma(g(1))
    u_g1 = U_op(g1, alpha) - g_to_gamma(g(1, 2) / 2 + g(1) * (1 + alpha / 2))
    report.add("coefficient of d/dg1 in U", GammaPoly.constant(alpha), u_g1)
    for mono in _g_monomials(max_deg):
        f = g_to_gamma(mono)
        d = mono.degree
        df, uf = D_op(f), U_op(f, alpha)
        _check_degree(report, {"f": str(mono), "op": "D", "claim": "degree 1"}, df, d + 1)
        _check_degree(report, {"f": str(mono), "op": "U", "claim": "degree 1"}, uf, d + 1)
        rd = df - g_to_gamma(leading_D_in_g(mono))
        ru = uf - g_to_gamma(leading_U_in_g(mono, alpha))
        _check_degree(report, {"f": str(mono), "op": "D", "claim": "remainder"}, rd, d - 2)
        _check_degree(report, {"f": str(mono), "op": "U", "claim": "remainder"}, ru, d - 2)
    return report


def verify_limit_operator(alpha: Alpha, max_mu: int = 6, max_deg: int = 8) -> Report:
    """A agrees with the projection of B and with its action on projected Q-functions."""
    alpha = _alpha(alpha)
    report = Report("operator A", {"alpha": alpha, "max_mu": max_mu, "max_deg": max_deg})
    for mu in enumerate_up_to(max_mu):
        qmu = schur_q(mu)
        direct = A_op(project(qmu), alpha)
        report.add({"mu": mu, "claim": "A(Q°) = project(B(Q))"}, project(B_op(qmu, alpha)), direct)
        report.add({"mu": mu, "claim": "A(Q°) by the Q°-basis action"}, A_on_Q(mu, alpha), direct)
    for e in QuotientPoly.monomials_up_to(max_deg):
        f = QuotientPoly.monomial(e)
        m = int(f.degree)
        af = A_op(f, alpha)
        report.add({"f": str(f), "claim": "A = project B lift"}, project(B_op(lift(f), alpha)), af)
        rest = af + f * (m * (m - 1 + alpha / 2))
        _check_degree(report, {"f": str(f), "claim": "Af + m(m-1+alpha/2)f"}, rest, m - 1)
    return report


def verify_down_up_scaling(alpha: Alpha, max_mu: int = 4, max_n: int = 6) -> Report:
    """(Df)_(n+1) = (n+1) D_(n+1,n) f_n and (Uf)_n = (n + alpha/2) U_(n,n+1) f_(n+1)."""
    from .chains import down_up_function_ops

    alpha = _alpha(alpha)
    report = Report("D and U against the level operators", {"alpha": alpha})
    for n in range(max_n + 1):
        down, up = down_up_function_ops(n, alpha)
        lower, upper = enumerate_strict(n), enumerate_strict(n + 1)
        for mu in enumerate_up_to(max_mu):
            f = schur_q_factorial_symbolic(mu)
            f_low = [evaluate(f, lam) for lam in lower]
            f_up = [evaluate(f, lam) for lam in upper]
            df, uf = D_op(f), U_op(f, alpha)
            got_d = [(n + 1) * sum((a * b for a, b in zip(row, f_low)), Fraction(0)) for row in down]
            report.add({"op": "D", "mu": mu, "n": n}, [evaluate(df, lam) for lam in upper], got_d)
            got_u = [(n + alpha / 2) * sum((a * b for a, b in zip(row, f_up)), Fraction(0)) for row in up]
            report.add({"op": "U", "mu": mu, "n": n}, [evaluate(uf, lam) for lam in lower], got_u)
    return report
