"""Property tests over generated diagrams and Seifert matrices."""

import random

from helpers import STARTS
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from heegaard import surgery as s
from heegaard.checks import CHECKS, FAIL
from heegaard.diagram import reverse_orientation
from heegaard.hdg import format_hdg, parse_hdg
from heegaard.invariants import quantities
from heegaard.moves import random_diagram

diagrams = st.builds(
    lambda seed, steps, start: random_diagram(seed, steps, 3, start=STARTS[start]),
    st.integers(0, 2**32 - 1),
    st.integers(0, 15),
    st.integers(0, len(STARTS) - 1),
)

common = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(diagrams, st.integers(0, 2**16), st.sampled_from(sorted(CHECKS)))
def test_checks_never_fail(D, seed, name):
    outcome = CHECKS[name](D, random.Random(seed))
    assert outcome.status != FAIL, outcome.detail


@common
@given(diagrams)
def test_hdg_round_trip(D):
    assert parse_hdg(format_hdg(D)) == D


@common
@given(diagrams)
def test_mirror_negates(D):
    q, r = quantities(D), quantities(reverse_orientation(D))
    assert r.theta == -q.theta


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_seifert_identities(g, rng):
    S = s.random_seifert(rng, g)
    lam = s.lambda_prime(S)
    poly = s.alexander(S)
    assert poly(1) == 1 and poly == poly.inverted()
    assert s.delta_second_derivative_at_one(S) == lam
    assert s.lambda_prime_plus(S) == 2 * lam - g
