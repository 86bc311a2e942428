"""Acceptance suite: one recorded pass/fail line per criterion.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from helpers import D1, D2, fuzzed  # noqa: E402

from heegaard.checks import random_matching  # noqa: E402
from heegaard.diagram import ALPHA, BETA, CLOSED, HALF, pair, reverse_orientation, subarc, swap_roles, whole_curve  # noqa: E402
from heegaard.hdg import parse_hdg  # noqa: E402
from heegaard.invariants import (  # noqa: E402
    Basepoints,
    L_cycle,
    PairingTable,
    canonical_two_cycle,
    ell2,
    ell2_of_2cycle,
    ell_tilde,
    lk_parallel,
    quantities,
    s_ell,
)
from heegaard.layout import apply_full_twist, de_crossing, euler_term, relayout_for_matching, validate_layout  # noqa: E402
from heegaard.moves import (  # noqa: E402
    bigon_birth,
    bigon_predicted_delta,
    bigon_sites,
    connected_sum,
    handle_slide_beta,
    slide_predicted_deltas,
    slide_sites,
    stabilize,
)
from heegaard import surgery as surg  # noqa: E402
from heegaard.variations import (  # noqa: E402
    elementary_arcs,
    lk_with_L_w,
    p1_delta_matching,
    p1_prime_w,
    square_terms,
    theta_delta_by_relayout,
    theta_delta_w,
    w_step,
)

F = Fraction
DATA = Path(__file__).parent / "data"


def _triple(D):
    q = quantities(D)
    return q.ell2, q.s_ell, q.e, q.theta


def criterion_1():
    start = time.perf_counter()
    d1 = parse_hdg((DATA / "d1.hdg").read_text())
    d2 = parse_hdg((DATA / "d2.hdg").read_text())
    s3 = parse_hdg((DATA / "s3.hdg").read_text())
    got = [_triple(d) for d in (d1, d2, s3)]
    elapsed = time.perf_counter() - start
    ok = (
        d1.J == ((F(1, 2),),)
        and d2.J == ((F(1, 2), F(0)), (F(-1, 2), F(1)))
        and got[0] == (0, 0, F(-1, 4), F(1, 4))
        and got[1] == (0, 0, F(1, 4), F(-1, 4))
        and got[2] == (0, 0, 0, 0)
        and elapsed < 1.0
    )
    return ok, f"D1/D2/S3 examples exact in {elapsed:.3f} s (limit 1 s)"


def criterion_2():
    a = lambda s, e: subarc(D1, (ALPHA, 0), s, e, CLOSED, HALF)  # noqa: E731
    b = lambda s, e: subarc(D1, (BETA, 0), s, e, CLOSED, HALF)  # noqa: E731
    beta1 = whole_curve(D1, (BETA, 0))
    values = [
        pair(D1, a("c", "c"), b("c", "c")),
        pair(D1, a("c", "c"), b("c", "d")),
        pair(D1, a("c", "d"), b("c", "c")),
        pair(D1, a("c", "d"), b("c", "d")),
        pair(D1, a("c", "c"), beta1),
        pair(D1, a("c", "d"), beta1),
    ]
    want = [F(1, 4), F(1, 2), F(1, 2), F(5, 4), F(1, 2), F(3, 2)]
    return values == want, "pairings " + ", ".join(str(v) for v in values)


def criterion_3():
    bad = []
    for D in (D1, D2):
        bp = Basepoints.from_matching(D)
        table = PairingTable(D)
        for c in D.crossings:
            for d in D.crossings:
                if ell_tilde(D, bp, c, d) != 0 or table.value(c, d) != 0:
                    bad.append((c, d))
    return not bad, f"all ell~ entries of D1, D2 zero by both routes (nonzero: {bad})"


def criterion_4():
    start = time.perf_counter()
    bad = 0
    cases = 0
    for k in range(200):
        D = fuzzed(k)
        rng = random.Random(k)
        before_e = euler_term(D)
        before = {c: de_crossing(D, c) for c in D.crossings}
        for _ in range(5):
            i, side, sense = rng.randrange(D.genus), rng.randrange(2), rng.choice((1, -1))
            after = apply_full_twist(D, (i, side), sense)
            validate_layout(after)
            cases += 1
            if euler_term(after) != before_e:
                bad += 1
                continue
            rho = D.rho[i]
            for c in D.crossings:
                w = D.loc[c]
                law = sense * (F(int(w.alpha == i), 2) - F(int(w.beta == rho), 2))
                if de_crossing(after, c) - before[c] != law:
                    bad += 1
                    break
    elapsed = time.perf_counter() - start
    return bad == 0 and cases == 1000 and elapsed < 30, (
        f"{cases} twists, {bad} failures, {elapsed:.1f} s (limit 30 s)"
    )


def criterion_5():
    bad = 0
    for k in range(500):
        D = fuzzed(k)
        bp = Basepoints.from_matching(D)
        L = L_cycle(D)
        by_reference = sum(
            (kc * kd * ell_tilde(D, bp, c, d)
             for c, kc in L.coefficients.items()
             for d, kd in L.coefficients.items()),
            F(0),
        )
        if not (s_ell(D) == by_reference == lk_parallel(D, L, L)):
            bad += 1
    return bad == 0, f"s_ell = lk(L, L||) on 500 diagrams, {bad} failures"


def criterion_6():
    bad = 0
    for k in range(200):
        D = fuzzed(k)
        rng = random.Random(k)
        G = canonical_two_cycle(D)
        G.check(D)
        target = ell2(D)
        for _ in range(5):
            bp = Basepoints(
                tuple(rng.choice(curve) for curve in D.alpha),
                tuple(rng.choice(curve).crossing for curve in D.beta),
            )
            if ell2_of_2cycle(D, bp, G) != target:
                bad += 1
    return bad == 0, f"ell2 on G(D) for 200 diagrams x 5 basepoint systems, {bad} failures"


def criterion_7():
    bad = 0
    for k in range(500):
        D = fuzzed(k % 250)
        rng = random.Random(1000 + k)
        site = rng.choice(bigon_sites(D))
        after = bigon_birth(D, site)
        validate_layout(after)
        q0, q1 = quantities(D), quantities(after)
        want = bigon_predicted_delta(D, site)
        if not (
            abs(want) == abs(D.J[site.arc[0]][site.segment[0]]) / 2
            and q1.ell2 - q0.ell2 == want
            and q1.e - q0.e == want
            and q1.s_ell == q0.s_ell
            and q1.theta == q0.theta
        ):
            bad += 1
    return bad == 0, f"500 bigon births, {bad} failures"


def criterion_8():
    bad = 0
    done = 0
    k = 0
    while done < 200 and k < 5000:
        D = fuzzed(k, 20)
        rng = random.Random(k)
        k += 1
        sites = slide_sites(D)
        if not sites:
            continue
        site = rng.choice(sites)
        after = handle_slide_beta(D, site)
        validate_layout(after)
        q0, q1 = quantities(D), quantities(after)
        want = slide_predicted_deltas(D, site)
        d_ell2, d_s, d_e = q1.ell2 - q0.ell2, q1.s_ell - q0.s_ell, q1.e - q0.e
        if not (
            d_ell2 == want.ell2
            and d_s == want.s_ell
            and d_e == want.e
            and 4 * (d_ell2 + d_s - d_e) == 0
        ):
            bad += 1
        done += 1
    return bad == 0 and done == 200, f"{done} slides, {bad} failures"


def criterion_9():
    bad = 0
    cases = 0
    k = 0
    while cases < 500:
        D = fuzzed(k)
        rng = random.Random(k)
        k += 1
        arcs = elementary_arcs(D)
        if not arcs:
            continue
        step = w_step(D, rng.choice(arcs))
        validate_layout(step.after)
        p1 = p1_prime_w(D, step.path)
        cases += 1
        if not (
            p1 == 4 * theta_delta_by_relayout(step, D)
            == 4 * theta_delta_w(D, step.path)
            == 8 * lk_with_L_w(D, L_cycle(D), step.path)
        ):
            bad += 1
    square_bad = 0
    squares = 0
    for D in [D1, D2] + [fuzzed(k) for k in range(100)]:
        for d in D.crossings:
            if d in D.matching:
                continue
            lhs, rhs = square_terms(D, d)
            w = D.loc[d]
            squares += 1
            if not lhs == rhs == -8 * w.sign * D.J[w.beta][w.alpha]:
                square_bad += 1
    return bad == 0 and square_bad == 0, (
        f"{cases} w-steps ({bad} failures), square relation at {squares} crossings "
        f"({square_bad} failures)"
    )


def criterion_10():
    bad = 0
    cases = 0
    k = 0
    while cases < 300:
        D = fuzzed(k)
        rng = random.Random(k)
        k += 1
        new = random_matching(D, rng)
        if new == D.matching:
            continue
        after = relayout_for_matching(D, new)
        validate_layout(after)
        cases += 1
        if p1_delta_matching(D, new) != 4 * (quantities(after).theta - quantities(D).theta):
            bad += 1
    return bad == 0, f"{cases} matching changes, {bad} failures"


def criterion_11():
    failures = []
    for k in range(100):
        A, B = fuzzed(2 * k), fuzzed(2 * k + 1)
        qa, qb, qs = _triple(A), _triple(B), _triple(connected_sum(A, B))
        if qs != tuple(x + y for x, y in zip(qa, qb)):
            failures.append(f"sum {k}")
    for k in range(50):
        D = fuzzed(k)
        q = _triple(D)
        if _triple(stabilize(D)) != q:
            failures.append(f"stabilize {k}")
        if _triple(reverse_orientation(D)) != tuple(-x for x in q):
            failures.append(f"reverse {k}")
        if _triple(swap_roles(D))[:3] != q[:3]:
            failures.append(f"swap {k}")
    return not failures, f"sum/stabilize/reverse/swap laws, failures: {failures[:5]}"


def criterion_12():
    start = time.perf_counter()
    named = [
        surg.lambda_prime(surg.TREFOIL),
        surg.lambda_prime(surg.FIGURE_EIGHT),
        surg.lambda_prime(surg.UNKNOT),
    ]
    ok = named == [1, -1, 0] and surg.p1_genus_constant(2) == 8
    rng = random.Random(12)
    bad = 0
    for _ in range(500):
        g = rng.randint(1, 6)
        S = surg.random_seifert(rng, g)
        lam = surg.lambda_prime(S)
        poly = surg.alexander(S)
        if not (
            surg.delta_second_derivative_at_one(S) == lam
            and surg.lambda_prime_plus(S) == 2 * lam - g
            and poly(1) == 1
            and poly == poly.inverted()
        ):
            bad += 1
    elapsed = time.perf_counter() - start
    return ok and bad == 0 and elapsed < 10, (
        f"named knots {named}, 500 matrices with {bad} failures, {elapsed:.2f} s (limit 10 s)"
    )


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
]


def test_criterion_01(acceptance):
    acceptance.record(1, *criterion_1())


def test_criterion_02(acceptance):
    acceptance.record(2, *criterion_2())


def test_criterion_03(acceptance):
    acceptance.record(3, *criterion_3())


def test_criterion_04(acceptance):
    acceptance.record(4, *criterion_4())


def test_criterion_05(acceptance):
    acceptance.record(5, *criterion_5())


def test_criterion_06(acceptance):
    acceptance.record(6, *criterion_6())


def test_criterion_07(acceptance):
    acceptance.record(7, *criterion_7())


def test_criterion_08(acceptance):
    acceptance.record(8, *criterion_8())


def test_criterion_09(acceptance):
    acceptance.record(9, *criterion_9())


def test_criterion_10(acceptance):
    acceptance.record(10, *criterion_10())


def test_criterion_11(acceptance):
    acceptance.record(11, *criterion_11())


def test_criterion_12(acceptance):
    acceptance.record(12, *criterion_12())


if __name__ == "__main__":
    failed = 0
    for number, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}")
    sys.exit(1 if failed else 0)
