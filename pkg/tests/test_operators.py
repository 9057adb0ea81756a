from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import schurwalk.operators as ops
from schurwalk.diagrams import enumerate_strict
from schurwalk.errors import DomainError, TruncationError
from schurwalk.gamma import GammaPoly, QuotientPoly, evaluate, g, g_to_gamma, p, q, schur_q_factorial_symbolic
from schurwalk.operators import (
    A_on_Q,
    A_op,
    B_op,
    B_operator,
    B_tilde,
    D_op,
    D_operator,
    E_op,
    F_op,
    H_op,
    Tn_on_qstar,
    U_op,
    basis_vector,
    kerov_sl2,
    verify_down_up_scaling,
    verify_limit_operator,
    verify_sl2,
    verify_chain_on_factorial_q,
    verify_leading_terms_in_g,
    verify_zero_degree_operator,
)

ALPHAS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7)]


def test_down_up_examples():
    assert D_op(schur_q_factorial_symbolic((1,))) == p(1, 2) * 2 - p(1) * 2
    assert D_op(GammaPoly.one()) == p(1)
    for alpha in ALPHAS:
        assert U_op(GammaPoly.one(), alpha) == p(1) + alpha / 2


@pytest.mark.parametrize("alpha", ALPHAS)
def test_b_tilde_kills_constants(alpha):
    assert B_tilde(GammaPoly.one(), alpha) == GammaPoly.zero()


@given(st.sampled_from(ALPHAS), st.lists(st.sampled_from(GammaPoly.monomials_up_to(5)), min_size=1, max_size=3))
def test_down_up_are_linear(alpha, mons):
    fs = [GammaPoly.monomial(e) for e in mons]
    total = sum(fs[1:], fs[0]) * 3
    assert D_op(total) == sum((D_op(f) for f in fs[1:]), D_op(fs[0])) * 3
    assert U_op(total, alpha) == sum((U_op(f, alpha) for f in fs[1:]), U_op(fs[0], alpha)) * 3


def test_chain_on_factorial_examples():
    for n in range(1, 7):
        for alpha in ALPHAS:
            combo = Tn_on_qstar((1,), n, alpha)
            values = [sum(c * evaluate(schur_q_factorial_symbolic(mu), lam) for mu, c in combo.items()) for lam in enumerate_strict(n)]
            assert values == [0] * len(values)
    combo = Tn_on_qstar((2,), 3, 2)
    assert all(
        sum(c * evaluate(schur_q_factorial_symbolic(mu), lam) for mu, c in combo.items()) == 0 for lam in enumerate_strict(3)
    )
    with pytest.raises(DomainError):
        Tn_on_qstar((3, 1), 3, 2)


def test_b_examples():
    for alpha in ALPHAS:
        assert B_op(p(3), alpha) == p(1, 3) * 6 - p(3) * (3 * (2 + alpha / 2))
        assert B_op(p(1), alpha) == GammaPoly.zero()
        assert B_op(p(1) * p(3), alpha) == p(1) * B_op(p(3), alpha)


def test_b_tilde_leading_part_on_p3():
    alpha = Fraction(2)
    bt = B_tilde(p(3), alpha)
    assert bt.homogeneous(3) == p(1, 3) * 6 - p(3) * (3 * (2 + alpha / 2))


def test_a_examples():
    for alpha in ALPHAS:
        assert A_op(q(2), alpha) == QuotientPoly.constant(6) - q(2) * (3 * (2 + alpha / 2))
        assert A_op(QuotientPoly.one(), alpha) == QuotientPoly.zero()
        assert A_op(QuotientPoly.constant(2), alpha) == QuotientPoly.zero()
        assert A_on_Q((2,), alpha) == QuotientPoly.zero()
        assert A_on_Q((1,), alpha) == QuotientPoly.zero()
        expected = (q(2) * Fraction(2, 3) + Fraction(4, 3)) * (-3 * (2 + alpha / 2)) + (6 + alpha) * 2
        assert A_on_Q((3,), alpha) == expected


def test_sl2_examples():
    alpha = Fraction(3)
    empty = basis_vector((), 4, alpha)
    assert H_op(empty) == empty.scale(alpha / 2)
    assert F_op(basis_vector((1,), 4, alpha)) == empty.scale(-1)
    v = basis_vector((2,), 4, alpha)
    assert E_op(F_op(v)) - F_op(E_op(v)) == v.scale(alpha / 2 + 4)
    assert kerov_sl2("H", v) == H_op(v)
    with pytest.raises(DomainError):
        kerov_sl2("X", v)


def test_truncation_is_reported():
    v = basis_vector((3,), 3, 2)
    with pytest.raises(TruncationError):
        E_op(v)
    with pytest.raises(TruncationError):
        basis_vector((3, 1), 3, 2)


def test_linear_operator_wrapper():
    d = D_operator(6)
    assert d.respects_shift(p(3))
    rows, matrix = d.matrix(2)
    assert len(matrix) == len(rows) and len(matrix[0]) == len(GammaPoly.monomials_up_to(2))
    b = B_operator(2, 6)
    assert b(p(3)) == B_op(p(3), 2)
    with pytest.raises(DomainError):
        B_operator(2, 2)(p(3))


@pytest.mark.parametrize("alpha", [Fraction(1), Fraction(2), Fraction(1, 3)])
def test_verifiers_pass(alpha):
    assert verify_chain_on_factorial_q(alpha, max_mu=4, max_n=6).ok
    assert verify_zero_degree_operator(alpha, max_deg=6).ok
    assert verify_leading_terms_in_g(alpha, max_deg=4).ok
    assert verify_limit_operator(alpha, max_mu=5, max_deg=6).ok
    assert verify_sl2(alpha, max_weight=6).ok
    assert verify_down_up_scaling(alpha, max_mu=3, max_n=5).ok


def test_leading_terms_constant_parts():
    report = verify_leading_terms_in_g(1, max_deg=3)
    labels = [c.input for c in report.checks]
    assert "D(1) = g1/2" in labels and "coefficient of d/dg1 in U" in labels
    assert g_to_gamma(g(1)) == p(1) * 2


def test_degree_limits():
    with pytest.raises(DomainError):
        verify_zero_degree_operator(2, max_deg=ops.ZERO_DEGREE_MAX_DEGREE + 1)
    with pytest.raises(DomainError):
        verify_leading_terms_in_g(2, max_deg=ops.LEADING_TERMS_MAX_DEGREE + 1)


# the checks must notice when an operator is perturbed


def test_chain_check_detects_wrong_coefficients(monkeypatch):
    real = ops.Tn_on_qstar

    def skewed(mu, n, alpha):
        out = real(mu, n, alpha)
        return {k: v * Fraction(101, 100) for k, v in out.items()}

    monkeypatch.setattr(ops, "Tn_on_qstar", skewed)
    assert not verify_chain_on_factorial_q(2, max_mu=3, max_n=4).ok


def test_b_check_detects_wrong_drift(monkeypatch):
    real = ops.B_op
    monkeypatch.setattr(ops, "B_op", lambda f, alpha: real(f, alpha + 1))
    assert not verify_zero_degree_operator(2, max_deg=4).ok


def test_a_check_detects_wrong_operator(monkeypatch):
    real = ops.A_op
    monkeypatch.setattr(ops, "A_op", lambda f, alpha: real(f, alpha) + f.diff(1) if f.generators() else real(f, alpha))
    assert not verify_limit_operator(2, max_mu=4, max_deg=4).ok


def test_sl2_check_detects_wrong_weight(monkeypatch):
    real = ops.H_op
    monkeypatch.setattr(ops, "H_op", lambda v: real(v).scale(Fraction(1, 2)) if v.coeffs else real(v))
    assert not verify_sl2(2, max_weight=4).ok


def test_leading_term_check_detects_wrong_formula(monkeypatch):
    real = ops.leading_U_in_g
    monkeypatch.setattr(ops, "leading_U_in_g", lambda f, alpha: real(f, alpha) + f * 2)
    assert not verify_leading_terms_in_g(1, max_deg=3).ok


def test_scaling_check_detects_wrong_up_operator(monkeypatch):
    real = ops.U_op
    monkeypatch.setattr(ops, "U_op", lambda f, alpha, m=None: real(f, alpha, m) + 1)
    assert not verify_down_up_scaling(2, max_mu=2, max_n=3).ok
