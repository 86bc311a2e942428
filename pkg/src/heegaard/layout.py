"""Degrees of beta arcs in the planar model, the Euler term, and relayouts.

Turnings are stored in half turns; every degree returned here is in full
turns as an exact Fraction.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from .diagram import BETA, BetaEntry, Diagram, subarc
from .errors import LayoutError
from .planar import PlanarModel


def validate_layout(D: Diagram) -> PlanarModel:
    model = PlanarModel(D)
    model.validate()
    return model


def de_beta(D: Diagram, j: int) -> Fraction:
    """Total degree of beta j."""
    return Fraction(sum(e.turn for e in D.beta[j]), 2)


def de_subarc(D: Diagram, c: str) -> Fraction:
    """Degree of beta(c) from its matched crossing up to c."""
    where = D.loc[c]
    curve = D.beta[where.beta]
    k = D.loc[D.matching[where.beta]].beta_pos
    total = 0
    while k != where.beta_pos:
        total += curve[k].turn
        k = (k + 1) % len(curve)
    return Fraction(total, 2)


def alpha_pairings(D: Diagram, c: str) -> list[Fraction]:
    """``<alpha_r, |m, c|_beta>`` for every r, m the matched crossing of beta(c)."""
    where = D.loc[c]
    arc = subarc(D, (BETA, where.beta), D.matching[where.beta], c)
    out = [Fraction(0)] * D.genus
    for x, w in arc.weights.items():
        out[D.loc[x].alpha] += D.sign(x) * w
    return out


def de_crossing(D: Diagram, c: str) -> Fraction:
    J = D.J
    hits = alpha_pairings(D, c)
    correction = sum(
        J[s][r] * hits[r] * de_beta(D, s)
        for s in range(D.genus)
        for r in range(D.genus)
        if hits[r]
    )
    return de_subarc(D, c) - correction


def euler_term(D: Diagram) -> Fraction:
    J = D.J
    total = Fraction(0)
    for c in D.crossings:
        where = D.loc[c]
        coef = J[where.beta][where.alpha]
        if coef:
            total += coef * where.sign * de_crossing(D, c)
    return total


# -- relayouts -------------------------------------------------------------


def _turn_table(D: Diagram) -> list[list[int]]:
    return [list(D.beta_turns(j)) for j in range(D.genus)]


def _arc_in(D: Diagram, c: str):
    where = D.loc[c]
    return where.beta, (where.beta_pos - 1) % len(D.beta[where.beta])


def _arc_out(D: Diagram, c: str):
    where = D.loc[c]
    return where.beta, where.beta_pos


def apply_full_twist(D: Diagram, handle, sense: int) -> Diagram:
    """Twist the boundary circle ``handle = (i, side)`` by a full turn.

    Side 0 is the counter-clockwise circle on the right of alpha_i, side 1 the
    clockwise one.  Every beta arc ending on the circle gains ``2 * sense``
    half turns and every arc starting on it loses as many, which changes
    ``d_e(beta_s)`` by ``+-sense * <alpha_i, beta_s>`` (plus on side 0).
    """
    i, side = handle
    if sense not in (1, -1) or side not in (0, 1):
        raise ValueError("sense must be +-1 and side 0 or 1")
    turns = _turn_table(D)
    for c in D.alpha[i]:
        sign = D.sign(c)
        entry_side = 0 if sign > 0 else 1
        if side == entry_side:
            j, k = _arc_in(D, c)
            turns[j][k] += 2 * sense
        else:
            j, k = _arc_out(D, c)
            turns[j][k] -= 2 * sense
    return D.with_beta_turns(turns)


def relayout_for_matching(D: Diagram, new_matching) -> Diagram:
    """Same drawing with a new matching, crossings moved onto the new slots.

    On each alpha_i whose matched crossing changes from m_i to d_i, the
    crossings of ``|m_i, d_i|_alpha`` are carried around the top of the
    circles.  Each beta arc end at an interior crossing x gains ``-2 sigma(x)``
    half turns, each arc end at m_i or d_i gains ``-sigma``.
    """
    new_matching = tuple(new_matching)
    target = D.with_matching(new_matching)
    turns = _turn_table(D)
    new_alpha = target.alpha_matched
    for i, curve in enumerate(D.alpha):
        m, d = D.alpha_matched[i], new_alpha[i]
        if m == d:
            continue
        n = len(curve)
        k = curve.index(m)
        while True:
            x = curve[k]
            step = -D.sign(x) * (1 if x in (m, d) else 2)
            for j, a in (_arc_in(D, x), _arc_out(D, x)):
                turns[j][a] += step
            if x == d:
                break
            k = (k + 1) % n
    return target.with_beta_turns(turns)


# -- layout synthesis ----------------------------------------------------------


def solve_turnings(model: PlanarModel, outer: set[int]) -> list[list[int]]:
    """Beta turnings making every face +1 turn except the faces in ``outer``.

    The structure of ``model`` (its faces) does not depend on the current
    turnings; only the constant part of each face total is read from it.
    """
    D = model.D
    faces = model.faces
    arc_faces = {}  # arc -> (face traversing it forward, face traversing it backward)
    const = []
    for fi, f in enumerate(faces):
        base = f.total
        for d in f.darts:
            if d[0] == "b":
                j, k = d[1]
                t = D.beta[j][k].turn
                base -= 2 * (t if d[2] else -t)
                pair_ = arc_faces.setdefault(d[1], [None, None])
                pair_[0 if d[2] else 1] = fi
        const.append(base)

    rhs = {}
    for fi, f in enumerate(faces):
        if f.hole:
            continue
        target = -4 if fi in outer else 4
        diff = target - const[fi]
        if diff % 2:
            raise LayoutError("no layout: face turning parity mismatch")
        rhs[fi] = diff // 2  # sum of +-t over the face's beta darts

    parity = {}
    for arc in arc_faces:
        _, _, s, e, _ = model.dart_data(("b", arc, True))
        parity[arc] = ((e - s) % 4) // 2

    incident = {fi: [] for fi in rhs}
    for arc, (ff, fb) in arc_faces.items():
        if ff != fb:
            incident[ff].append(arc)
            incident[fb].append(arc)

    value = {}
    tree_parent = {}
    order = []
    visited = set()
    for root in rhs:
        if root in visited:
            continue
        visited.add(root)
        queue = deque([root])
        while queue:
            fi = queue.popleft()
            order.append(fi)
            for arc in incident[fi]:
                ff, fb = arc_faces[arc]
                other = fb if ff == fi else ff
                if other not in visited:
                    visited.add(other)
                    tree_parent[other] = arc
                    queue.append(other)
    tree_arcs = set(tree_parent.values())
    for arc in arc_faces:
        if arc not in tree_arcs:
            value[arc] = parity[arc]
    for fi in reversed(order):
        arc = tree_parent.get(fi)
        if arc is None:
            continue
        known = 0
        for a in incident[fi]:
            if a == arc:
                continue
            ff, _ = arc_faces[a]
            known += value[a] if ff == fi else -value[a]
        ff, _ = arc_faces[arc]
        coef = 1 if ff == fi else -1
        value[arc] = coef * (rhs[fi] - known)
    return [[value[(j, k)] for k in range(len(curve))] for j, curve in enumerate(D.beta)]


def synthesize_swapped_turns(D: Diagram) -> tuple[tuple[int, ...], ...]:
    """Turnings for the alpha curves drawn in the model cut along beta.

    The swap is first drawn on the same oriented surface (signs negated),
    keeping the outer region of every component, which is identified through
    the surface quadrants its corners occupy.  Mirroring then negates the
    turnings.
    """
    model = validate_layout(D)
    outer_quadrants = set()
    for fi in model.outer_faces.values():
        outer_quadrants.update(model.corner_quadrants(fi))

    beta = tuple(
        tuple(BetaEntry(c, -D.sign(c), 0) for c in curve) for curve in D.alpha
    )
    alpha = tuple(tuple(e.crossing for e in curve) for curve in D.beta)
    same_surface = Diagram(D.genus, alpha, beta, D.alpha_matched)
    smodel = PlanarModel(same_surface)
    outer = set()
    for fi, f in enumerate(smodel.faces):
        if f.hole:
            continue
        # a quadrant right of alpha and left of beta becomes left of the new
        # alpha and right of the new beta
        if any(
            (c, 1 - b_side, 1 - a_side) in outer_quadrants
            for c, a_side, b_side in smodel.corner_quadrants(fi)
        ):
            outer.add(fi)
    turns = solve_turnings(smodel, outer)
    PlanarModel(same_surface.with_beta_turns(turns)).validate()
    return tuple(tuple(-t for t in row) for row in turns)
