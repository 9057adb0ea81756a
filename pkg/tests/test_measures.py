import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from schurwalk.diagrams import add_box, addable_contents, enumerate_strict, enumerate_up_to, remove_box
from schurwalk.errors import DomainError
from schurwalk.measures import (
    PLANCHEREL,
    dimension,
    down_law,
    down_prob,
    falling,
    h_closed_form,
    ivanov_dimension,
    multiplicative_measure,
    normalizer,
    parse_alpha,
    path_count,
    plancherel_measure,
    up_law,
    up_prob,
    verify_coherence,
)

ALPHAS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7), Fraction(7, 3)]


def test_parse_alpha():
    assert parse_alpha("2") == 2 and isinstance(parse_alpha("2"), Fraction)
    assert parse_alpha("1/2") == Fraction(1, 2)
    assert parse_alpha(0.5) == Fraction(1, 2)
    assert parse_alpha("inf") == PLANCHEREL
    for bad in ("0", "-1", 0, "x"):
        with pytest.raises((DomainError, ValueError)):
            parse_alpha(bad)


def test_path_count_examples():
    assert path_count((), (2, 1)) == 2
    assert path_count((), (3, 1)) == 8
    assert path_count((2,), (3,)) == 2
    assert path_count((2,), (2, 1)) == 1
    assert path_count((3,), (2, 1)) == 0


def test_closed_form_examples():
    assert h_closed_form((2, 1)) == 2
    assert h_closed_form((3,)) == 4
    assert h_closed_form((1,)) == 1
    assert h_closed_form(()) == 1


@pytest.mark.parametrize("lam", enumerate_up_to(10))
def test_closed_form_matches_box_removal_oracle(lam):
    assert h_closed_form(lam) == oracles.path_count(tuple(lam)) == path_count((), lam)


def test_down_prob_examples():
    assert down_prob((2, 1), (2,)) == 1
    assert down_prob((3, 1), (3,)) == Fraction(1, 2)
    assert down_prob((3, 1), (2, 1)) == Fraction(1, 2)
    assert down_prob((5, 1), (3, 2)) == 0
    with pytest.raises(DomainError):
        down_prob((3, 1), (1,))


def test_up_prob_examples():
    assert up_prob((2,), 2, PLANCHEREL) == Fraction(2, 3)
    assert up_prob((2,), 0, PLANCHEREL) == Fraction(1, 3)
    assert up_prob((3,), 3, 2) == Fraction(7, 8)


@pytest.mark.parametrize("alpha", ALPHAS + [PLANCHEREL])
@pytest.mark.parametrize("n", range(0, 8))
def test_laws_are_probability_vectors(n, alpha):
    for lam in enumerate_strict(n):
        assert sum(up_law(lam, alpha).values()) == 1
        if n:
            assert sum(down_law(lam).values()) == 1


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(2), Fraction(7)])
@pytest.mark.parametrize("n", range(0, 7))
def test_up_prob_matches_coherence_oracle(n, alpha):
    for lam in enumerate_strict(n):
        for x in addable_contents(lam):
            nu = add_box(lam, x)
            assert up_prob(lam, x, alpha) == oracles.up(tuple(lam), tuple(nu), alpha)
            assert down_prob(nu, lam) == oracles.down(tuple(nu), tuple(lam))


def test_measure_examples():
    m = multiplicative_measure(3, 2)
    assert m[(3,)] == Fraction(8, 9) and m[(2, 1)] == Fraction(1, 9)
    pl = plancherel_measure(3)
    assert pl[(3,)] == Fraction(2, 3) and pl[(2, 1)] == Fraction(1, 3)
    assert multiplicative_measure(1, Fraction(5, 3))[(1,)] == 1
    assert dict(multiplicative_measure(3, PLANCHEREL).items()) == dict(pl.items())
    assert m.to_json() == {"[3]": "8/9", "[2,1]": "1/9"}


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("n", range(0, 9))
def test_measure_matches_oracle(n, alpha):
    m = multiplicative_measure(n, alpha)
    for lam in enumerate_strict(n):
        assert m[lam] == oracles.multiplicative(tuple(lam), alpha)
    assert m.total() == 1


def test_normalizer_is_rising_product():
    for alpha in ALPHAS:
        for n in range(6):
            assert normalizer(alpha, n) == math.prod((alpha + 2 * k for k in range(n)), start=Fraction(1))


@pytest.mark.parametrize("alpha", ALPHAS + [PLANCHEREL])
def test_verify_coherence_passes(alpha):
    for n in range(0, 9):
        assert verify_coherence(n, alpha).ok


def test_verify_coherence_examples():
    assert verify_coherence(3, 2).ok
    assert verify_coherence(0, 1).ok
    assert verify_coherence(8, Fraction(7, 3)).ok


@given(st.integers(0, 12), st.integers(0, 12))
def test_falling(n, k):
    expected = math.prod(range(n - k + 1, n + 1)) if k <= n else 0
    assert falling(n, k) == expected


def test_ivanov_examples():
    assert ivanov_dimension((2,), (3,)) == Fraction(1, 2)
    for lam in enumerate_up_to(7):
        if lam:
            assert ivanov_dimension((1,), lam) == 1
        assert ivanov_dimension((), lam) == 1


@pytest.mark.parametrize("lam", enumerate_up_to(7))
def test_ivanov_ratio_matches_path_counts(lam):
    for k in range(lam.weight + 1):
        for mu in enumerate_strict(k):
            assert ivanov_dimension(mu, lam) == Fraction(path_count(mu, lam), dimension(lam))


@given(st.integers(1, 9), st.data())
def test_down_then_up_preserves_measure(n, data):
    # one down step maps M_n to M_(n-1); one up step maps M_(n-1) back to M_n
    alpha = data.draw(st.sampled_from(ALPHAS))
    upper, lower = multiplicative_measure(n, alpha), multiplicative_measure(n - 1, alpha)
    pushed = {}
    for lam, w in upper.items():
        for mu, pr in down_law(lam).items():
            pushed[mu] = pushed.get(mu, 0) + w * pr
    assert pushed == {mu: w for mu, w in lower.items()}
    lifted = {}
    for mu, w in lower.items():
        for nu, pr in up_law(mu, alpha).items():
            lifted[nu] = lifted.get(nu, 0) + w * pr
    assert lifted == {lam: w for lam, w in upper.items()}


def test_remove_box_consistent_with_down_law():
    for lam in enumerate_up_to(7):
        if lam:
            assert set(down_law(lam)) == {remove_box(lam, y) for y in oracles_removable(lam)}


def oracles_removable(lam):
    return [c for c, _ in oracles.corners_to_remove(tuple(lam))]
