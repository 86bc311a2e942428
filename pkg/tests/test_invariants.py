from fractions import Fraction as F

import numpy as np
import pytest
from helpers import D1, D2, S3, fuzzed

from heegaard.errors import NotACycle
from heegaard.invariants import (
    Basepoints,
    FlowCycle,
    L_cycle,
    PairingTable,
    TwoCycle,
    canonical_two_cycle,
    ell,
    ell2,
    ell2_of_2cycle,
    ell_tilde,
    exact_matmul,
    exact_weighted_sum,
    lk_parallel,
    quantities,
    s_ell,
    theta_tilde,
)


def test_example_values():
    assert quantities(D1).theta == F(1, 4)
    assert theta_tilde(D2) == F(-1, 4)
    assert (ell2(S3), s_ell(S3), theta_tilde(S3)) == (0, 0, 0)


def test_d1_table():
    bp = Basepoints.from_matching(D1)
    assert [ell_tilde(D1, bp, c, d) for c in "cd" for d in "cd"] == [0, 0, 0, 0]


def test_d2_listed_entries():
    bp = Basepoints.from_matching(D2)
    for c, d in [("f", "f"), ("d", "f"), ("f", "d"), ("d", "d")]:
        assert ell_tilde(D2, bp, c, d) == 0
    for x in D2.crossings:
        for m in "ce":
            assert ell_tilde(D2, bp, m, x) == ell_tilde(D2, bp, x, m) == 0


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_table_matches_reference(seed):
    D = fuzzed(seed)
    bp = Basepoints(
        tuple(curve[-1] for curve in D.alpha),
        tuple(curve[-1].crossing for curve in D.beta),
    )
    for closed, ref in ((False, ell_tilde), (True, ell)):
        table = PairingTable(D, bp, closed=closed)
        for c in D.crossings:
            for d in D.crossings:
                assert table.value(c, d) == ref(D, bp, c, d)


def test_basepoint_checks():
    with pytest.raises(ValueError):
        Basepoints(("e", "c"), ("c", "e")).check(D2)


def test_two_cycle_checks():
    G = canonical_two_cycle(D2)
    G.check(D2)
    with pytest.raises(NotACycle):
        TwoCycle({("c", "c"): F(1)}).check(D2)
    bp = Basepoints(("d", "f"), ("f", "e"))
    assert ell2_of_2cycle(D2, bp, G) == ell2(D2)


def test_flow_cycles():
    L = L_cycle(D1)
    L.check(D1)
    assert lk_parallel(D1, L, L) == s_ell(D1) == 0
    with pytest.raises(NotACycle):
        FlowCycle({"c": F(1)}).check(D1)
    assert (L - L).coefficients == {}
    D = fuzzed(8)
    L = L_cycle(D)
    assert lk_parallel(D, L, L) == s_ell(D)


def test_exact_products_switch_to_objects():
    big = np.array([[2**40, 1], [1, 2**40]], dtype=np.int64)
    prod = exact_matmul(big, big)
    assert prod.dtype == object
    assert int(prod[0, 0]) == 2**80 + 1
    assert exact_weighted_sum(big, big) == 2 * 2**80 + 2
    small = np.array([[1, 2], [3, 4]])
    assert exact_matmul(small, small).dtype != object
