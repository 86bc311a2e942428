"""Randomized property checks shared by the ``verify`` and ``fuzz`` commands.

Each check takes a diagram and a seeded ``random.Random`` and returns an
:class:`Outcome`; a failing outcome carries enough detail to replay it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import Diagram
from .errors import InvalidMatching
from .invariants import L_cycle, lk_parallel, quantities, s_ell
from .layout import apply_full_twist, de_crossing, euler_term, relayout_for_matching, validate_layout
from .moves import (
    bigon_birth,
    bigon_predicted_delta,
    bigon_sites,
    handle_slide_beta,
    slide_predicted_deltas,
    slide_sites,
)
from .variations import (
    elementary_arcs,
    lk_with_L_w,
    p1_delta_matching,
    p1_prime_w,
    square_terms,
    theta_delta_by_relayout,
    theta_delta_w,
    w_step,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Outcome:
    check: str
    status: str
    detail: dict = field(default_factory=dict)


def _ok(name, cond, **detail) -> Outcome:
    return Outcome(name, PASS if cond else FAIL, detail)


def random_matching(D: Diagram, rng: random.Random) -> tuple[str, ...]:
    """A perfect matching found by augmenting paths in a shuffled order."""
    owner = {}
    options = []
    for curve in D.beta:
        entries = [e.crossing for e in curve]
        rng.shuffle(entries)
        options.append(entries)

    def augment(j, visited):
        for c in options[j]:
            i = D.loc[c].alpha
            if i in visited:
                continue
            visited.add(i)
            if i not in owner or augment(owner[i][0], visited):
                owner[i] = (j, c)
                return True
        return False

    order = list(range(D.genus))
    rng.shuffle(order)
    for j in order:
        if not augment(j, set()):
            raise InvalidMatching("no perfect matching")
    result = [None] * D.genus
    for j, c in owner.values():
        result[j] = c
    return tuple(result)


def check_twist(D: Diagram, rng: random.Random) -> Outcome:
    i = rng.randrange(D.genus)
    side = rng.randrange(2)
    sense = rng.choice((1, -1))
    after = apply_full_twist(D, (i, side), sense)
    validate_layout(after)
    rho = D.rho[i]
    bad = []
    for c in D.crossings:
        where = D.loc[c]
        law = sense * (Fraction(int(where.alpha == i), 2) - Fraction(int(where.beta == rho), 2))
        if de_crossing(after, c) - de_crossing(D, c) != law:
            bad.append(c)
    same = euler_term(after) == euler_term(D)
    return _ok("twist", same and not bad, handle=[i + 1, side], sense=sense, crossings=bad)


def check_w_change(D: Diagram, rng: random.Random) -> Outcome:
    arcs = elementary_arcs(D)
    if not arcs:
        return Outcome("w-change", SKIPPED, {"reason": "no elementary arc"})
    arc = rng.choice(arcs)
    step = w_step(D, arc)
    validate_layout(step.after)
    p1 = p1_prime_w(D, step.path)
    by_layout = 4 * theta_delta_by_relayout(step, D)
    by_formula = 4 * theta_delta_w(D, step.path)
    by_linking = 8 * lk_with_L_w(D, L_cycle(D), step.path)
    return _ok(
        "w-change",
        p1 == by_layout == by_formula == by_linking,
        arc=[arc[0] + 1, arc[1] + 1],
        p1=p1,
        four_delta_theta=by_layout,
        eight_lk=by_linking,
    )


def check_m_change(D: Diagram, rng: random.Random) -> Outcome:
    new = random_matching(D, rng)
    if new == D.matching:
        return Outcome("m-change", SKIPPED, {"reason": "drew the current matching"})
    after = relayout_for_matching(D, new)
    validate_layout(after)
    delta = quantities(after).theta - quantities(D).theta
    p1 = p1_delta_matching(D, new)
    return _ok("m-change", p1 == 4 * delta, matching=list(new), p1=p1, four_delta_theta=4 * delta)


def check_square(D: Diagram, rng: random.Random) -> Outcome:
    free = [c for c in D.crossings if c not in D.matching]
    if not free:
        return Outcome("square", SKIPPED, {"reason": "every crossing is matched"})
    d = rng.choice(free)
    lhs, rhs = square_terms(D, d)
    where = D.loc[d]
    expected = -8 * where.sign * D.J[where.beta][where.alpha]
    return _ok("square", lhs == rhs == expected, crossing=d, p1_sum=lhs, lk_sum=rhs, expected=expected)


def check_slide(D: Diagram, rng: random.Random) -> Outcome:
    sites = slide_sites(D)
    if not sites:
        return Outcome("slide", SKIPPED, {"reason": "no slide site"})
    site = rng.choice(sites)
    after = handle_slide_beta(D, site)
    validate_layout(after)
    q0, q1 = quantities(D), quantities(after)
    want = slide_predicted_deltas(D, site)
    got = (q1.ell2 - q0.ell2, q1.s_ell - q0.s_ell, q1.e - q0.e)
    return _ok(
        "slide",
        got == (want.ell2, want.s_ell, want.e) and q1.theta == q0.theta,
        arc1=[site.arc1[0] + 1, site.arc1[1] + 1],
        arc2=[site.arc2[0] + 1, site.arc2[1] + 1],
        delta=list(got),
        predicted=[want.ell2, want.s_ell, want.e],
    )


def check_bigon(D: Diagram, rng: random.Random) -> Outcome:
    site = rng.choice(bigon_sites(D))
    after = bigon_birth(D, site)
    validate_layout(after)
    q0, q1 = quantities(D), quantities(after)
    want = bigon_predicted_delta(D, site)
    got = (q1.ell2 - q0.ell2, q1.s_ell - q0.s_ell, q1.e - q0.e)
    return _ok("bigon", got == (want, 0, want), delta=list(got), predicted=want)


def check_linking(D: Diagram, rng: random.Random) -> Outcome:
    L = L_cycle(D)
    return _ok("linking", lk_parallel(D, L, L) == s_ell(D))


CHECKS = {
    "twist": check_twist,
    "w-change": check_w_change,
    "m-change": check_m_change,
    "square": check_square,
    "slide": check_slide,
    "bigon": check_bigon,
    "linking": check_linking,
}
