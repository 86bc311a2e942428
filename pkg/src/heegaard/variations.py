"""Variations of Theta~ and of the p1 correction term under decoration changes.

Changing the exterior point w is described by a :class:`WPath`: a path
avoiding the alpha curves (recorded by the beta arcs it crosses) and a path
avoiding the beta curves (recorded by the alpha curves it crosses), plus the
degrees of both paths in the planar model.  Elementary steps move w across a
single beta arc; :func:`w_step` builds the path data and the relayout of the
diagram for the new outer region, so every formula can be checked against a
direct recomputation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import BETA, CLOSED, HALF, Diagram, subarc
from .errors import InconsistentPath, InvalidSite
from .invariants import FlowCycle, L_cycle, lk_parallel
from .layout import de_beta, de_crossing, euler_term
from .planar import PlanarModel


@dataclass(frozen=True)
class WPath:
    """Path data from w to w'.

    ``alpha_hits`` lists ``(j, k, sign)`` for each crossing of the alpha-avoiding
    path with arc k of beta j, sign being the local intersection number of the
    path with beta.  ``beta_hits`` lists ``(i, sign)`` for the beta-avoiding
    path crossing alpha i, sign being ``<alpha_i, path>``.
    """

    alpha_hits: tuple = ()
    beta_hits: tuple = ()
    de_alpha: Fraction = Fraction(0)
    de_beta: Fraction = Fraction(0)
    mutual: int = 0

    def check(self, D: Diagram) -> None:
        for hit in self.alpha_hits:
            j, k, s = hit
            if not (0 <= j < D.genus and 0 <= k < len(D.beta[j]) and s in (1, -1)):
                raise InconsistentPath(f"bad alpha-path hit {hit}")
        for hit in self.beta_hits:
            i, s = hit
            if not (0 <= i < D.genus and s in (1, -1)):
                raise InconsistentPath(f"bad beta-path hit {hit}")

    def __add__(self, other: "WPath") -> "WPath":
        return WPath(
            self.alpha_hits + other.alpha_hits,
            self.beta_hits + other.beta_hits,
            self.de_alpha + other.de_alpha,
            self.de_beta + other.de_beta,
            self.mutual + other.mutual,
        )


def _path_beta_totals(D: Diagram, path: WPath) -> list[int]:
    """``<P_alpha, beta_j>`` for every j."""
    out = [0] * D.genus
    for j, _, s in path.alpha_hits:
        out[j] += s
    return out


def _path_alpha_totals(D: Diagram, path: WPath) -> list[int]:
    """``<alpha_i, P_beta>`` for every i."""
    out = [0] * D.genus
    for i, s in path.beta_hits:
        out[i] += s
    return out


def _path_arc_pairing(D: Diagram, path: WPath, c: str) -> int:
    """``<P_alpha, [m, c|_beta>``: hits on the arcs from the matched crossing to c."""
    where = D.loc[c]
    j = where.beta
    n = len(D.beta[j])
    start = D.loc[D.matching[j]].beta_pos
    span = (where.beta_pos - start) % n
    return sum(s for jj, k, s in path.alpha_hits if jj == j and (k - start) % n < span)


def _alpha_pairings(D: Diagram, c: str, start_mode) -> list[Fraction]:
    where = D.loc[c]
    arc = subarc(D, (BETA, where.beta), D.matching[where.beta], c, start_mode, HALF)
    out = [Fraction(0)] * D.genus
    for x, w in arc.weights.items():
        out[D.loc[x].alpha] += D.sign(x) * w
    return out


def p1_prime_w(D: Diagram, path: WPath) -> Fraction:
    """Variation of p1 when w moves along ``path``."""
    path.check(D)
    J = D.J
    g = D.genus
    a_tot = _path_alpha_totals(D, path)
    b_tot = _path_beta_totals(D, path)
    value = 4 * path.de_alpha - 4 * path.de_beta - 4 * path.mutual
    for j in range(g):
        for i in range(g):
            if a_tot[i]:
                value += 4 * J[j][i] * a_tot[i] * (de_beta(D, j) + b_tot[j])
    return Fraction(value)


def lk_with_L_w(D: Diagram, K: FlowCycle, path: WPath) -> Fraction:
    """Linking number of K with the flow lines through w' and w."""
    K.check(D)
    path.check(D)
    J = D.J
    b_tot = _path_beta_totals(D, path)
    total = Fraction(0)
    for c, k in K.coefficients.items():
        term = Fraction(_path_arc_pairing(D, path, c))
        hits = _alpha_pairings(D, c, CLOSED)
        for j in range(D.genus):
            if b_tot[j]:
                for i in range(D.genus):
                    term -= J[j][i] * hits[i] * b_tot[j]
        total += k * term
    return total


def theta_delta_w(D: Diagram, path: WPath) -> Fraction:
    """Theta~(w') - Theta~(w), which is also e(w) - e(w')."""
    path.check(D)
    J = D.J
    g = D.genus
    b_tot = _path_beta_totals(D, path)
    total = Fraction(0)
    for c in D.crossings:
        where = D.loc[c]
        coef = J[where.beta][where.alpha]
        if not coef:
            continue
        hits = _alpha_pairings(D, c, HALF)
        inner = Fraction(0)
        for s in range(g):
            if b_tot[s]:
                for r in range(g):
                    inner += J[s][r] * hits[r] * b_tot[s]
        inner -= _path_arc_pairing(D, path, c)
        total += coef * where.sign * inner
    return 2 * total


def p1_delta_matching(D: Diagram, new_matching) -> Fraction:
    """Variation of p1 when the matching changes, in the original layout."""
    new_matching = tuple(new_matching)
    D.with_matching(new_matching)  # validates
    old = set(D.matching)
    added = [c for c in new_matching if c not in old]
    removed = [c for c in D.matching if c not in set(new_matching)]
    degrees = sum((de_crossing(D, c) for c in added), Fraction(0))
    delta = FlowCycle({c: Fraction(1) for c in added}) - FlowCycle(
        {c: Fraction(1) for c in removed}
    )
    return 4 * degrees - 4 * lk_parallel(D, delta, delta)


# -- elementary changes of w -----------------------------------------------


def _port_offsets(model: PlanarModel, i: int, k: int) -> tuple[int, int]:
    """Quarter turns of the side-0 segment k of alpha_i before and after its port.

    The port is on the vertical side opposite the matched crossing.
    """
    n = len(model.slots[i])
    if n == 1:
        return 2, 2
    if k == 0:
        return 2, 0
    if k == n - 1:
        return 0, 2
    return 0, 0


@dataclass
class WStep:
    """Moving w across beta arc ``arc`` from the outer face into ``target``."""

    arc: tuple
    source: int
    target: int
    path: WPath
    after: Diagram = field(repr=False)


def _hop_graph(model: PlanarModel):
    """Face -> list of (other face, alpha index, segment, direction)."""
    pos = model.dart_position
    hops = {}
    for i, order in enumerate(model.slots):
        for k in range(len(order)):
            x = pos[("c", (i, 0, k), False)][0]
            y = pos[("c", (i, 1, k), True)][0]
            hops.setdefault(x, []).append((y, i, k, +1))
            hops.setdefault(y, []).append((x, i, k, -1))
    return hops


def _face_route(model: PlanarModel, start: int, goal: int):
    hops = _hop_graph(model)
    prev = {start: None}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        if f == goal:
            break
        for g_, i, k, s in hops.get(f, ()):
            if g_ not in prev:
                prev[g_] = (f, i, k, s)
                queue.append(g_)
    if goal not in prev:
        raise InvalidSite("no route between the faces avoiding beta")
    route = []
    f = goal
    while prev[f] is not None:
        pf, i, k, s = prev[f]
        route.append((pf, f, i, k, s))
        f = pf
    return route[::-1]


def _ports(model: PlanarModel, i: int, k: int, s: int):
    """Walk positions (face, index, offset) of the exit and entry ports of a hop."""
    pos = model.dart_position
    a, b = _port_offsets(model, i, k)
    on_side0 = pos[("c", (i, 0, k), False)]
    on_side1 = pos[("c", (i, 1, k), True)]
    p0 = (on_side0[0], on_side0[1], -b)
    p1 = (on_side1[0], on_side1[1], -a)
    return (p0, p1) if s > 0 else (p1, p0)


def _arc_point(model: PlanarModel, arc, fi: int, forward: bool | None = None) -> tuple[int, int]:
    """Walk position, in face ``fi``, of the point where ``arc`` leaves its start.

    ``forward`` picks the side of the arc when the face runs along both.
    """
    pos = model.dart_position
    fwd = pos.get(("b", arc, True))
    if forward is not False and fwd is not None and fwd[0] == fi:
        return fwd[1], 0
    bwd = pos[("b", arc, False)]
    j, k = arc
    return bwd[1], -2 * model.D.beta[j][k].turn


def beta_path_degree(model: PlanarModel, arc, source: int, target: int):
    """Hits and degree of the beta-avoiding path from w (in source) to w' (in target).

    w and w' sit on either side of ``arc`` at its start; the alpha-avoiding
    path is the short straight segment between them.
    """
    route = _face_route(model, source, target)
    total = 0
    hits = []
    here = (source,) + _arc_point(model, arc, source)
    first = True
    for face, nxt, i, k, s in route:
        exit_port, entry_port = _ports(model, i, k, s)
        assert exit_port[0] == face and entry_port[0] == nxt
        w = model.walk_turning(face, here[1:], exit_port[1:])
        total += w if first else w - 2
        first = False
        hits.append((i, s))
        here = entry_port
    end = _arc_point(model, arc, target)
    total += model.walk_turning(target, here[1:], end)
    return tuple(hits), Fraction(total, 4)


def w_step(D: Diagram, arc, model: PlanarModel | None = None) -> WStep:
    """Move w across ``arc`` out of the outer face of its component."""
    model = model or PlanarModel(D)
    pos = model.dart_position
    j, k = arc
    ff = pos[("b", arc, True)][0]
    fb = pos[("b", arc, False)][0]
    comp = model.faces[ff].component
    outer = model.outer_faces[comp]
    if ff == fb or outer not in (ff, fb):
        raise InvalidSite("arc does not separate the outer face from another face")
    s = 1 if ff == outer else -1
    target = fb if s > 0 else ff
    hits, degree = beta_path_degree(model, arc, outer, target)
    path = WPath(((j, k, s),), hits, Fraction(0), degree, 0)
    turns = [list(D.beta_turns(x)) for x in range(D.genus)]
    turns[j][k] += 4 * s
    return WStep(arc, outer, target, path, D.with_beta_turns(turns))


def elementary_arcs(D: Diagram, model: PlanarModel | None = None) -> list:
    """Arcs across which w can move out of an outer face, in a fixed order."""
    model = model or PlanarModel(D)
    pos = model.dart_position
    out = []
    outer = set(model.outer_faces.values())
    for j, curve in enumerate(D.beta):
        for k in range(len(curve)):
            ff = pos[("b", (j, k), True)][0]
            fb = pos[("b", (j, k), False)][0]
            if ff != fb and (ff in outer or fb in outer):
                out.append((j, k))
    return out


def theta_delta_by_relayout(step: WStep, before: Diagram) -> Fraction:
    """Theta~ after minus before; only e depends on w."""
    return euler_term(before) - euler_term(step.after)


# -- the square relation around a crossing --------------------------------


def _route_to_face(D: Diagram, face_quadrant, max_steps: int = 10_000):
    """Elementary steps moving w from its outer face to the face holding a quadrant.

    Returns the composed path, the final diagram and the list of steps.
    """
    model = PlanarModel(D)
    target = _face_with_quadrant(model, face_quadrant)
    comp = model.faces[target].component
    start = model.outer_faces[comp]
    if start == target:
        return WPath(), D, []
    # shortest route across beta arcs in the face graph
    pos = model.dart_position
    adjacency = {}
    for j, curve in enumerate(D.beta):
        for k in range(len(curve)):
            ff = pos[("b", (j, k), True)][0]
            fb = pos[("b", (j, k), False)][0]
            if ff != fb:
                adjacency.setdefault(ff, []).append(((j, k), fb))
                adjacency.setdefault(fb, []).append(((j, k), ff))
    prev = {start: None}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for arc, g_ in adjacency.get(f, ()):
            if g_ not in prev:
                prev[g_] = (f, arc)
                queue.append(g_)
    arcs = []
    f = target
    while prev[f] is not None:
        f, arc = prev[f]
        arcs.append(arc)
    arcs.reverse()
    path = WPath()
    steps = []
    current = D
    for arc in arcs:
        step = w_step(current, arc)
        steps.append((current, step))
        path = path + step.path
        current = step.after
    return path, current, steps


def _face_with_quadrant(model: PlanarModel, quadrant) -> int:
    for fi, f in enumerate(model.faces):
        if not f.hole and quadrant in model.corner_quadrants(fi):
            return fi
    raise InvalidSite(f"no face holds quadrant {quadrant}")


def p1_along_route(D: Diagram, steps) -> Fraction:
    """Sum of elementary p1 variations, each evaluated in its own layout."""
    return sum((p1_prime_w(before, step.path) for before, step in steps), Fraction(0))


def square_terms(D: Diagram, d: str) -> tuple[Fraction, Fraction]:
    """The two sides of the square relation at a non-matched crossing d.

    The four quadrants around d are placed relative to alpha: N and W lie on
    the side of beta that alpha arrives from, N and E on the left of alpha, S
    is opposite N.  Returns the alternating sum of p1 variations from w to the
    four quadrants and the alternating sum of 8 lk(L, L(x, w)).
    """
    if d in D.matching:
        raise InvalidSite("the square relation is stated at non-matched crossings")
    L = L_cycle(D)
    before = 0 if D.sign(d) > 0 else 1  # beta side (0 = left) that alpha comes from
    after = 1 - before
    quadrants = {
        "N": (d, 1, before),
        "S": (d, 0, after),
        "E": (d, 1, after),
        "W": (d, 0, before),
    }
    p1 = {}
    lk = {}
    for name, quad in quadrants.items():
        path, _, steps = _route_to_face(D, quad)
        p1[name] = p1_along_route(D, steps)
        lk[name] = lk_with_L_w(D, L, path)
    d1 = p1["N"] + p1["S"] - p1["E"] - p1["W"]
    d2 = lk["N"] + lk["S"] - lk["E"] - lk["W"]
    return d1, 8 * d2


def square_relation_check(D: Diagram, d: str) -> bool:
    """True when both sides agree and equal ``-8 sigma(d) J[j(d)][i(d)]``."""
    d1, d2 = square_terms(D, d)
    where = D.loc[d]
    expected = -8 * where.sign * D.J[where.beta][where.alpha]
    return d1 == d2 == expected
