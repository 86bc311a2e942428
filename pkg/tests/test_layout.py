from fractions import Fraction as F

import pytest
from helpers import D1, D2, S3, fuzzed

from heegaard.errors import InvalidMatching, LayoutError
from heegaard.layout import (
    apply_full_twist,
    de_beta,
    de_crossing,
    de_subarc,
    euler_term,
    relayout_for_matching,
    validate_layout,
)
from heegaard.planar import PlanarModel


def test_example_degrees():
    assert de_beta(D1, 0) == 2
    assert de_crossing(D1, "d") == F(-1, 2)
    assert (de_beta(D2, 0), de_beta(D2, 1)) == (0, 0)
    assert de_crossing(D2, "d") == de_crossing(D2, "f") == F(1, 2)
    assert de_subarc(D1, "c") == 0


def test_euler_terms():
    assert euler_term(D1) == F(-1, 4)
    assert euler_term(D2) == F(1, 4)
    assert euler_term(S3) == 0


def test_twist_on_d1():
    twisted = apply_full_twist(D1, (0, 1), 1)
    validate_layout(twisted)
    assert euler_term(twisted) == F(-1, 4)
    assert de_beta(twisted, 0) == 0
    assert apply_full_twist(twisted, (0, 1), -1) == D1


@pytest.mark.parametrize("side", [0, 1])
@pytest.mark.parametrize("sense", [1, -1])
def test_twist_crossing_law(side, sense):
    D = fuzzed(21)
    for i in range(D.genus):
        after = apply_full_twist(D, (i, side), sense)
        validate_layout(after)
        rho = D.rho[i]
        for c in D.crossings:
            w = D.loc[c]
            law = sense * (F(int(w.alpha == i), 2) - F(int(w.beta == rho), 2))
            assert de_crossing(after, c) - de_crossing(D, c) == law
        assert euler_term(after) == euler_term(D)


def test_twist_rejects_bad_arguments():
    with pytest.raises(ValueError):
        apply_full_twist(D1, (0, 2), 1)
    with pytest.raises(ValueError):
        apply_full_twist(D1, (0, 0), 2)


def test_relayout_for_matching():
    after = relayout_for_matching(D1, ("d",))
    validate_layout(after)
    assert after.matching == ("d",)
    assert euler_term(after) == F(1, 4)
    back = relayout_for_matching(after, ("c",))
    assert euler_term(back) == euler_term(D1)
    assert relayout_for_matching(D2, ("d", "e")).matching == ("d", "e")
    with pytest.raises(InvalidMatching):
        relayout_for_matching(D2, ("d", "f"))


def test_validator_faces():
    model = PlanarModel(D1)
    model.validate()
    outer = [f for f in model.faces if f.total == -4]
    assert len(outer) == 1 == model.n_components
    assert all(f.total == 4 for f in model.faces if f.total != -4)


def test_validator_rejects_bad_turnings():
    bad = D1.with_beta_turns([[1, 5]])
    with pytest.raises(LayoutError):
        validate_layout(bad)
    odd = D1.with_beta_turns([[0, 3]])
    with pytest.raises(LayoutError):
        validate_layout(odd)
