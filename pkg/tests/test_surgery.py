import random
from fractions import Fraction as F

import pytest

from heegaard import surgery as s
from heegaard.errors import ParseError, SymplecticViolation


def test_named_knots():
    assert s.lambda_prime(s.TREFOIL) == 1
    assert s.lambda_prime(s.FIGURE_EIGHT) == -1
    assert s.lambda_prime(s.UNKNOT) == 0
    assert s.alexander(s.TREFOIL).as_dict() == {-1: 1, 0: -1, 1: 1}
    assert s.alexander(s.FIGURE_EIGHT).as_dict() == {-1: -1, 0: 3, 1: -1}
    assert s.alexander(s.UNKNOT).as_dict() == {0: 1}
    assert s.lambda_prime_plus(s.UNKNOT) == -1
    assert s.lambda_prime_plus(s.TREFOIL) == 1
    assert s.delta_second_derivative_at_one(s.TREFOIL) == 1
    assert s.delta_second_derivative_at_one(s.UNKNOT) == 0


def test_surgery_delta():
    assert s.casson_surgery_delta(s.TREFOIL, 1) == 1
    assert s.casson_surgery_delta(s.TREFOIL, -1) == -1
    assert s.casson_surgery_delta(s.FIGURE_EIGHT, 3) == -3
    with pytest.raises(ValueError):
        s.casson_surgery_delta(s.TREFOIL, 0)


def test_genus_constant():
    assert [s.p1_genus_constant(g) for g in range(4)] == [0, 0, 8, 24]


def test_symplectic_constraint():
    with pytest.raises(SymplecticViolation):
        s.SeifertData([[1, 1], [1, 1]])
    with pytest.raises(SymplecticViolation):
        s.SeifertData([[1, 2, 3]])


def test_identities_on_random_matrices():
    rng = random.Random(3)
    for _ in range(100):
        g = rng.randint(1, 4)
        S = s.random_seifert(rng, g)
        lam = s.lambda_prime(S)
        assert s.twice_lambda_prime_symmetric(S) == 2 * lam
        assert s.lambda_prime_plus(S) == 2 * lam - g
        assert s.delta_second_derivative_at_one(S) == lam
        perm = list(range(g))
        rng.shuffle(perm)
        assert s.lambda_prime(s.permute_blocks(S, perm)) == lam


def test_laurent_polynomial():
    p = s.LaurentPolynomial.from_dict({-1: 1, 0: -1, 1: 1, 2: 0})
    assert p.as_dict() == {-1: 1, 0: -1, 1: 1}
    assert p(2) == F(3, 2)
    assert p.derivative().as_dict() == {-2: -1, 0: 1}
    assert str(p) == "t - 1 + t^-1"
    assert str(s.LaurentPolynomial.from_dict({})) == "0"
    assert str(s.LaurentPolynomial.from_dict({2: -3, 0: 1})) == "-3*t^2 + 1"


def test_parse_linking_matrix():
    assert s.parse_linking_matrix("-1 1\n0 -1\n") == s.TREFOIL
    with pytest.raises(ParseError) as info:
        s.parse_linking_matrix("0 1\n0 x\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        s.parse_linking_matrix("\n")
