"""Named verification suites, each returning a Report."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .diagrams import (
    enumerate_strict,
    enumerate_up_to,
    add_box,
    addable_contents,
    from_kerov,
    interlacing_case,
    kerov_coordinates,
    remove_box,
    removable_contents,
)
from .chains import verify_chain, verify_spectrum
from .kerov import (
    coordinates,
    phi,
    phi_from_parts,
    phi_ratio_add,
    phi_ratio_remove,
    r_up,
    theta_down,
    theta_up,
)
from .measures import (
    PLANCHEREL,
    Alpha,
    down_prob,
    h_closed_form,
    ivanov_dimension,
    parse_alpha,
    path_count,
    up_prob,
    verify_coherence,
)
from .operators import (
    LEADING_TERMS_MAX_DEGREE,
    ZERO_DEGREE_MAX_DEGREE,
    verify_down_up_scaling,
    verify_limit_operator,
    verify_sl2,
    verify_chain_on_factorial_q,
    verify_leading_terms_in_g,
    verify_zero_degree_operator,
)
from .report import Report

__all__ = ["SUITES", "run_suite", "verify_kerov", "verify_dimensions", "verify_ivanov", "verify_coherence_suite"]


def verify_dimensions(max_weight: int = 12) -> Report:
    report = Report("path counts and the product formula", {"max_weight": max_weight})
    for lam in enumerate_up_to(max_weight):
        report.add({"lambda": lam}, path_count((), lam), h_closed_form(lam))
    return report


def verify_ivanov(max_weight: int = 8) -> Report:
    report = Report("dimension ratios via factorial Q-functions", {"max_weight": max_weight})
    for lam in enumerate_up_to(max_weight):
        h = h_closed_form(lam)
        for n in range(lam.weight + 1):
            for mu in enumerate_strict(n):
                report.add({"mu": mu, "lambda": lam}, Fraction(path_count(mu, lam), h), ivanov_dimension(mu, lam))
    return report


def _newton_ok(gs, ps, hs) -> bool:
    # k g_k = bp_k + bp_(k-1) g_1 + ... + bp_1 g_(k-1);  gh_k = g_k - g_(k-1) gh_1 - ... - g_1 gh_(k-1)
    for k in range(1, len(gs) + 1):
        rhs = ps[k - 1] + sum(ps[k - 1 - j] * gs[j - 1] for j in range(1, k))
        if k * gs[k - 1] != rhs:
            return False
        if hs[k - 1] != gs[k - 1] - sum(gs[k - 1 - j] * hs[j - 1] for j in range(1, k)):
            return False
    return True


def verify_kerov(max_weight: int = 10, M: int = 8, ratio_weight: int | None = None) -> Report:
    """Interlacing, the weight identity, the theta coefficients against transition
    probabilities, the Newton-type recurrences, both forms of Phi, both routes to
    the coordinates, and the one-box ratios of Phi."""
    ratio_weight = min(max_weight, 8) if ratio_weight is None else ratio_weight
    report = Report("Kerov coordinates", {"max_weight": max_weight, "M": M})
    for lam in enumerate_up_to(max_weight):
        n = lam.weight
        k = kerov_coordinates(lam)
        xp = k.x_prime
        case = interlacing_case(k)
        ok = len(xp) == len(k.Y) and ((case == "a") == (0 in k.Y)) and ((case == "b") == (0 in k.X))
        report.add({"lambda": lam, "claim": "interlacing"}, True, ok and from_kerov(k) == lam)
        report.add(
            {"lambda": lam, "claim": "weight identity"},
            2 * n,
            sum(x * (x + 1) for x in k.X) - sum(y * (y + 1) for y in k.Y),
        )
        tu = theta_up(lam)
        report.add({"lambda": lam, "claim": "sum theta_up = 1"}, Fraction(1), sum(tu.values(), Fraction(0)))
        report.add(
            {"lambda": lam, "claim": "theta_up = Plancherel up"},
            {x: up_prob(lam, x, PLANCHEREL) for x in addable_contents(lam)},
            tu,
        )
        if n:
            report.add(
                {"lambda": lam, "claim": "theta_down = 2|lambda| p_down"},
                {y: 2 * n * down_prob(lam, remove_box(lam, y)) for y in removable_contents(lam)},
                theta_down(lam),
            )
        report.add({"lambda": lam, "claim": "Phi from rows = Phi from X', Y = v R_up"}, True,
                   phi(lam) == phi_from_parts(lam) and phi(lam) == r_up(lam).times_v())
        series = {kind: coordinates(lam, kind, M).values for kind in ("bold_p", "g", "g_hat")}
        sums = {kind: coordinates(lam, kind, M, method="kerov").values for kind in ("bold_p", "g", "g_hat")}
        report.add({"lambda": lam, "claim": "series = Kerov sums"}, series, sums)
        report.add({"lambda": lam, "claim": "first coordinates = 2|lambda|"}, [2 * n] * 3,
                   [series[kind][0] for kind in ("bold_p", "g", "g_hat")])
        report.add({"lambda": lam, "claim": "Newton recurrences"}, True,
                   _newton_ok(series["g"], series["bold_p"], series["g_hat"]))
        if n <= ratio_weight:
            base = phi(lam)
            for x in addable_contents(lam):
                report.add({"lambda": lam, "add": x}, True, phi(add_box(lam, x)) / base == phi_ratio_add(x))
            for y in removable_contents(lam):
                report.add({"lambda": lam, "remove": y}, True, phi(remove_box(lam, y)) / base == phi_ratio_remove(y))
    return report


def verify_coherence_suite(alpha: Alpha, max_n: int) -> Report:
    report = Report("coherence and the up/down chain", {"alpha": alpha, "max_n": max_n})
    for n in range(max_n + 1):
        report.extend(verify_coherence(n, alpha))
        if n >= 1 and alpha != PLANCHEREL:
            report.extend(verify_chain(n, alpha))
    return report


def _spectrum_suite(alpha: Alpha, max_n: int) -> Report:
    report = Report("spectrum of T_n", {"alpha": alpha, "max_n": max_n})
    for n in range(1, max_n + 1):
        report.extend(verify_spectrum(n, alpha))
    return report


def _chain_on_factorial_q_suite(alpha: Alpha, w: int) -> Report:
    report = verify_chain_on_factorial_q(alpha, max_mu=min(w, 5), max_n=w)
    report.extend(verify_down_up_scaling(alpha, max_mu=min(w, 4), max_n=min(w, 6)))
    return report


SUITES: dict[str, Callable[[Alpha, int], Report]] = {
    "coherence": lambda a, w: verify_coherence_suite(a, w),
    "kerov": lambda a, w: verify_kerov(w),
    "ivanov": lambda a, w: verify_ivanov(w),
    "thm27": _chain_on_factorial_q_suite,
    "thm42": lambda a, w: verify_leading_terms_in_g(a, min(w, LEADING_TERMS_MAX_DEGREE)),
    "thm51": lambda a, w: verify_zero_degree_operator(a, min(w, ZERO_DEGREE_MAX_DEGREE)),
    "prop68": lambda a, w: verify_limit_operator(a, max_mu=min(w, 6), max_deg=w),
    "sl2": lambda a, w: verify_sl2(a, w),
    "spectrum": lambda a, w: _spectrum_suite(a, w),
}


def run_suite(name: str, alpha: Alpha = Fraction(2), max_weight: int = 8) -> Report:
    if name not in SUITES:
        raise KeyError(name)
    report = SUITES[name](parse_alpha(alpha), max_weight)
    report.parameters.setdefault("suite", name)
    return report
