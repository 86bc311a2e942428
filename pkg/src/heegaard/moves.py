"""Diagram moves with their layouts, and the random diagram generator.

Every move returns a new diagram whose turnings describe a planar drawing of
the modified curves with the same exterior region.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .diagram import BETA, CLOSED, HALF, BetaEntry, Diagram, subarc, whole_curve
from .errors import InvalidSite, LayoutError
from .layout import apply_full_twist, solve_turnings
from .planar import PlanarModel
from .variations import _arc_point, _port_offsets

MAX_CROSSINGS = 200


def genus_one_sphere() -> Diagram:
    """One alpha and one beta curve meeting once."""
    return Diagram(1, (("c",),), ((BetaEntry("c", 1, 0),),), ("c",))


def _fresh_names(D: Diagram, count: int, prefix: str = "x") -> list[str]:
    used = set(D.loc)
    out = []
    n = len(used)
    while len(out) < count:
        n += 1
        name = f"{prefix}{n}"
        if name not in used:
            used.add(name)
            out.append(name)
    return out


# -- bigons --------------------------------------------------------------------


@dataclass(frozen=True)
class BigonSite:
    """A finger pushed from beta arc ``arc`` across circle segment ``segment``.

    ``arc = (j, k)``; ``forward`` tells which side of the arc the finger starts
    from (the face traversing the arc forward, or backward).  ``segment`` is
    ``(i, side, k)``, a segment of a boundary circle met by the same face.
    """

    arc: tuple
    forward: bool
    segment: tuple


def bigon_sites(D: Diagram, model: PlanarModel | None = None) -> list[BigonSite]:
    model = model or PlanarModel(D)
    out = []
    for f in model.faces:
        if f.hole:
            continue
        arcs = [d for d in f.darts if d[0] == "b"]
        segs = [d for d in f.darts if d[0] == "c"]
        for a in arcs:
            for s in segs:
                out.append(BigonSite(a[1], a[2], s[1]))
    return out


def bigon_configuration(site: BigonSite) -> str:
    """``"same-start"`` or ``"opposite-start"`` for the created pair."""
    _, side, _ = site.segment
    return "same-start" if (side == 0) == site.forward else "opposite-start"


def bigon_birth(D: Diagram, site: BigonSite, names=None) -> Diagram:
    """Create two crossings e, f by pushing a beta arc across an alpha circle.

    e comes first along beta; sigma(e) is +1 when the finger hits the circle on
    the right of alpha.
    """
    model = PlanarModel(D)
    pos = model.dart_position
    j, k = site.arc
    i, side, seg = site.segment
    if not (0 <= j < D.genus and 0 <= k < len(D.beta[j])):
        raise InvalidSite("no such beta arc")
    if not (0 <= i < D.genus and side in (0, 1) and 0 <= seg < len(D.alpha[i])):
        raise InvalidSite("no such circle segment")
    fi, _ = pos[("b", site.arc, site.forward)]
    circle_dart = ("c", site.segment, side == 1)
    if pos[circle_dart][0] != fi or model.faces[fi].hole:
        raise InvalidSite("arc and circle segment do not share a face")
    d = 1 if site.forward else -1
    x = _arc_point(model, site.arc, fi, site.forward)
    a, b = _port_offsets(model, i, seg)
    y = (pos[circle_dart][1], -b if side == 0 else -a)
    w = model.walk_turning(fi, x, y)
    if (w + d) % 2:
        raise LayoutError("finger turning has the wrong parity")
    t_old = D.beta[j][k].turn
    t1 = (w + d) // 2 - 1
    t_ef = -d
    t2 = (d - w) // 2 + 1 + t_old
    e, f = names or _fresh_names(D, 2)
    sigma_e = 1 if side == 0 else -1
    pair = (e, f) if (side == 0) == (d == 1) else (f, e)

    u = model.slots[i][seg]
    alpha = [list(c) for c in D.alpha]
    at = alpha[i].index(u) + 1
    alpha[i][at:at] = list(pair)

    beta = [list(c) for c in D.beta]
    x_entry = beta[j][k]
    beta[j][k] = replace(x_entry, turn=t1)
    beta[j][k + 1 : k + 1] = [BetaEntry(e, sigma_e, t_ef), BetaEntry(f, -sigma_e, t2)]
    return Diagram(D.genus, alpha, beta, D.matching)


def bigon_faces(D: Diagram, model: PlanarModel | None = None) -> list[str]:
    """First crossings (along beta) of bigons that can be removed."""
    model = model or PlanarModel(D)
    outer = set(model.outer_faces.values())
    matched = set(D.matching)
    out = []
    for fi, f in enumerate(model.faces):
        if f.hole or fi in outer or len(f.darts) != 2:
            continue
        beta_darts = [d for d in f.darts if d[0] == "b"]
        if len(beta_darts) != 1:
            continue
        j, k = beta_darts[0][1]
        curve = D.beta[j]
        e, fc = curve[k].crossing, curve[(k + 1) % len(curve)].crossing
        i = D.loc[e].alpha
        if e in matched or fc in matched or e == fc:
            continue
        if len(curve) < 3 or len(D.alpha[i]) < 3:
            continue
        out.append(e)
    return out


def bigon_death(D: Diagram, e: str) -> Diagram:
    """Remove the bigon whose beta side runs from e to the next crossing."""
    if e not in bigon_faces(D):
        raise InvalidSite(f"no removable bigon starts at {e}")
    where = D.loc[e]
    j = where.beta
    curve = list(D.beta[j])
    n = len(curve)
    k = where.beta_pos
    f = curve[(k + 1) % n].crossing
    before = (k - 1) % n
    merged = curve[before].turn + curve[k].turn + curve[(k + 1) % n].turn
    curve[before] = replace(curve[before], turn=merged)
    curve = [x for x in curve if x.crossing not in (e, f)]
    beta = list(D.beta)
    beta[j] = tuple(curve)
    alpha = [tuple(c for c in a if c not in (e, f)) for a in D.alpha]
    return Diagram(D.genus, alpha, beta, D.matching)


# -- handle slides ---------------------------------------------------------------


@dataclass(frozen=True)
class SlideSite:
    """Slide beta ``arc1[0]`` over beta ``arc2[0]`` along a band.

    Both arcs are traversed backward by the faces the band runs through, which
    therefore lie on the right of both.  The band leaves each arc at its start
    point.  Either both arcs border the same inner face, or they lie in
    different components and the band crosses the exterior between them.
    """

    arc1: tuple
    arc2: tuple


def slide_sites(D: Diagram, model: PlanarModel | None = None) -> list[SlideSite]:
    model = model or PlanarModel(D)
    outer = model.outer_faces
    out = []
    for fi, f in enumerate(model.faces):
        if f.hole or fi in outer.values():
            continue
        back = [d[1] for d in f.darts if d[0] == "b" and not d[2]]
        out.extend(SlideSite(a1, a2) for a1 in back for a2 in back if a1[0] != a2[0])
    exterior = {
        comp: [d[1] for d in model.faces[fi].darts if d[0] == "b" and not d[2]]
        for comp, fi in outer.items()
    }
    for c1, arcs1 in exterior.items():
        for c2, arcs2 in exterior.items():
            if c1 != c2:
                out.extend(SlideSite(a1, a2) for a1 in arcs1 for a2 in arcs2)
    return out


def _band_turning(model: PlanarModel, site: SlideSite) -> int | None:
    """Quarter turns along the band in a common inner face, or None for an
    exterior band between two components."""
    pos = model.dart_position
    try:
        f1 = pos[("b", site.arc1, False)][0]
        f2 = pos[("b", site.arc2, False)][0]
    except KeyError:
        raise InvalidSite("no such arc") from None
    outer = model.outer_faces
    if f1 == f2 and not model.faces[f1].hole and f1 not in outer.values():
        w = model.walk_turning(
            f1,
            _arc_point(model, site.arc1, f1, False),
            _arc_point(model, site.arc2, f1, False),
        )
        if w % 2:
            raise LayoutError("band turning has the wrong parity")
        return w
    c1, c2 = model.faces[f1].component, model.faces[f2].component
    if c1 != c2 and outer[c1] == f1 and outer[c2] == f2:
        return None
    raise InvalidSite("arcs do not border a common inner face on their right")


def handle_slide_beta(D: Diagram, site: SlideSite, names=None) -> Diagram:
    """Replace beta j1 by its band sum with a parallel copy of beta j2.

    Each crossing c of beta j2 gets a copy with the same sign, next to c on
    its alpha curve (after c when c is positive, before otherwise).  The new
    beta j1 starts at the end of the cut arc of beta j1; the first crossing of
    the copied part is the copy of the end of the cut arc of beta j2.
    """
    (j1, k1), (j2, k2) = site.arc1, site.arc2
    if j1 == j2:
        raise InvalidSite("a curve cannot slide over itself")
    model = PlanarModel(D)
    w = _band_turning(model, site)
    half_w = 0 if w is None else w // 2

    b1, b2 = D.beta[j1], D.beta[j2]
    n1, n2 = len(b1), len(b2)
    u1 = b1[k1]
    u2, v2 = b2[k2], b2[(k2 + 1) % n2]
    m2 = D.matching[j2]
    copies = dict(zip((x.crossing for x in b2), names or _fresh_names(D, n2)))

    new_b1 = []
    for s in range(n1):
        x = b1[(k1 + 1 + s) % n1]
        if x.crossing == u1.crossing:
            x = replace(x, turn=half_w - 2 + u2.turn + (v2.crossing == m2))
        new_b1.append(x)
    for s in range(n2):
        c = b2[(k2 + 1 + s) % n2]
        nxt = b2[(k2 + 2 + s) % n2]
        if c.crossing == u2.crossing:
            turn = (u2.crossing == m2) - half_w + u1.turn
        else:
            turn = c.turn + (c.crossing == m2) + (nxt.crossing == m2)
        new_b1.append(BetaEntry(copies[c.crossing], c.sign, turn))

    alpha = [list(a) for a in D.alpha]
    for c, cp in copies.items():
        i = D.loc[c].alpha
        at = alpha[i].index(c)
        alpha[i].insert(at + 1 if D.sign(c) > 0 else at, cp)
    beta = list(D.beta)
    beta[j1] = tuple(new_b1)
    result = Diagram(D.genus, alpha, beta, D.matching)
    if w is None:
        result = _relayout_exterior_band(D, model, result, j2)
    return result


def _relayout_exterior_band(D: Diagram, model: PlanarModel, result: Diagram, j2: int) -> Diagram:
    """Turnings for a band through the exterior, merging two components.

    The merged exterior is recognised by the corners it keeps from the old
    exteriors; corners along beta j2 are skipped because the parallel copy
    cuts them off.
    """
    on_b2 = {x.crossing for x in D.beta[j2]}
    keep = set()
    for fi in model.outer_faces.values():
        keep.update(q for q in model.corner_quadrants(fi) if q[0] not in on_b2)
    rmodel = PlanarModel(result)
    outer = {
        fi
        for fi, f in enumerate(rmodel.faces)
        if not f.hole and keep.intersection(rmodel.corner_quadrants(fi))
    }
    result = result.with_beta_turns(solve_turnings(rmodel, outer))
    PlanarModel(result).validate()
    return result


# -- sums and stabilization --------------------------------------------------------


def connected_sum(D1: Diagram, D2: Diagram) -> Diagram:
    """Juxtapose two diagrams; crossings of D2 are renamed when they clash."""
    used = set(D1.loc)
    rename = {}
    for c in D2.crossings:
        name = c
        n = 0
        while name in used:
            n += 1
            name = f"{c}_{n}"
        used.add(name)
        rename[c] = name
    alpha = D1.alpha + tuple(tuple(rename[c] for c in a) for a in D2.alpha)
    beta = D1.beta + tuple(
        tuple(replace(e, crossing=rename[e.crossing]) for e in b) for b in D2.beta
    )
    matching = D1.require_matching() + tuple(rename[c] for c in D2.require_matching())
    return Diagram(D1.genus + D2.genus, alpha, beta, matching)


def stabilize(D: Diagram) -> Diagram:
    return connected_sum(D, genus_one_sphere())


# -- relabelings ------------------------------------------------------------------


def permute_alpha(D: Diagram, perm) -> Diagram:
    """New alpha k is old alpha ``perm[k]``."""
    return Diagram(D.genus, tuple(D.alpha[p] for p in perm), D.beta, D.matching)


def permute_beta(D: Diagram, perm) -> Diagram:
    """New beta k is old beta ``perm[k]``."""
    return Diagram(
        D.genus,
        D.alpha,
        tuple(D.beta[p] for p in perm),
        tuple(D.matching[p] for p in perm),
    )


def reverse_beta(D: Diagram, j: int) -> Diagram:
    """Reverse the orientation of beta j; its crossings change sign."""
    curve = D.beta[j]
    n = len(curve)
    new = []
    for s in range(n):
        c = curve[(-s) % n]
        prev = curve[(-s - 1) % n]
        new.append(BetaEntry(c.crossing, -c.sign, -prev.turn))
    beta = list(D.beta)
    beta[j] = tuple(new)
    return Diagram(D.genus, D.alpha, beta, D.matching)


def reverse_alpha(D: Diagram, i: int) -> Diagram:
    """Reverse the orientation of alpha i; its crossings change sign.

    The two boundary circles of alpha i exchange their roles, so the layout is
    synthesized again with the same outer region.
    """
    model = PlanarModel(D)
    model.validate()
    on_curve = set(D.alpha[i])
    outer_quadrants = set()
    for fi in model.outer_faces.values():
        outer_quadrants.update(model.corner_quadrants(fi))
    beta = tuple(
        tuple(replace(e, sign=-e.sign) if e.crossing in on_curve else e for e in b)
        for b in D.beta
    )
    alpha = list(D.alpha)
    alpha[i] = tuple(reversed(D.alpha[i]))
    flipped = Diagram(D.genus, alpha, beta, D.matching)
    fmodel = PlanarModel(flipped)
    outer = set()
    for fi, f in enumerate(fmodel.faces):
        if f.hole:
            continue
        for c, a_side, b_side in fmodel.corner_quadrants(fi):
            old = (c, 1 - a_side if c in on_curve else a_side, b_side)
            if old in outer_quadrants:
                outer.add(fi)
                break
    result = flipped.with_beta_turns(solve_turnings(fmodel, outer))
    PlanarModel(result).validate()
    return result


# -- random diagrams ------------------------------------------------------------------

MOVE_WEIGHTS = (
    ("bigon_birth", 40),
    ("twist", 25),
    ("slide", 20),
    ("bigon_death", 10),
    ("stabilize", 5),
    ("relabel", 10),
)


def random_move(D: Diagram, rng: random.Random, genus_max: int) -> tuple[str, Diagram]:
    """Apply one random move; returns its name and the result (``D`` if skipped)."""
    names, weights = zip(*MOVE_WEIGHTS)
    kind = rng.choices(names, weights)[0]
    n = len(D.loc)
    if kind == "bigon_birth":
        if n + 2 > MAX_CROSSINGS:
            return "skip", D
        sites = bigon_sites(D)
        return kind, bigon_birth(D, rng.choice(sites))
    if kind == "twist":
        i = rng.randrange(D.genus)
        return kind, apply_full_twist(D, (i, rng.randrange(2)), rng.choice((1, -1)))
    if kind == "slide":
        sites = slide_sites(D)
        if not sites:
            return "skip", D
        site = rng.choice(sites)
        if n + len(D.beta[site.arc2[0]]) > MAX_CROSSINGS:
            return "skip", D
        return kind, handle_slide_beta(D, site)
    if kind == "bigon_death":
        cands = bigon_faces(D)
        if not cands:
            return "skip", D
        return kind, bigon_death(D, rng.choice(cands))
    if kind == "stabilize":
        if D.genus >= genus_max or n + 1 > MAX_CROSSINGS:
            return "skip", D
        return kind, stabilize(D)
    return "relabel", random_relabel(D, rng)


def random_relabel(D: Diagram, rng: random.Random) -> Diagram:
    choice = rng.randrange(4)
    g = D.genus
    if choice == 0:
        perm = list(range(g))
        rng.shuffle(perm)
        return permute_alpha(D, perm)
    if choice == 1:
        perm = list(range(g))
        rng.shuffle(perm)
        return permute_beta(D, perm)
    if choice == 2:
        return reverse_beta(D, rng.randrange(g))
    return reverse_alpha(D, rng.randrange(g))


def random_diagram(seed: int, steps: int, genus_max: int = 3, start: Diagram | None = None) -> Diagram:
    """Apply ``steps`` random moves to ``start`` (default: the genus-one sphere)."""
    rng = random.Random(seed)
    D = start if start is not None else genus_one_sphere()
    for _ in range(steps):
        _, D = random_move(D, rng, genus_max)
    return D


# -- predicted changes ---------------------------------------------------------------


def bigon_predicted_delta(D: Diagram, site: BigonSite) -> Fraction:
    """Change of ell2 and of e under :func:`bigon_birth`; s_ell does not change."""
    J = D.J[site.arc[0]][site.segment[0]]
    return J / 2 if bigon_configuration(site) == "same-start" else -J / 2


@dataclass(frozen=True)
class SlideDeltas:
    ell2: Fraction
    s_ell: Fraction
    e: Fraction


def slide_predicted_deltas(D: Diagram, site: SlideSite) -> SlideDeltas:
    """Changes of ell2, s_ell and e under :func:`handle_slide_beta`.

    Sums run over beta j2 starting at the crossing where the copied part
    begins; J is the inverse intersection matrix of ``D``.
    """
    (j1, _), (j2, k2) = site.arc1, site.arc2
    curve = (BETA, j2)
    b2 = D.beta[j2]
    start = b2[(k2 + 1) % len(b2)].crossing
    m2 = D.matching[j2]
    J = D.J

    def weight(c, row):
        return D.sign(c) * J[row][D.loc[c].alpha]

    def total(arc, row):
        return sum((w * weight(c, row) for c, w in arc.weights.items()), Fraction(0))

    d_ell2 = Fraction(0)
    d_s = Fraction(0)
    for x in b2:
        c = x.crossing
        upto = subarc(D, curve, start, c, CLOSED, HALF)
        d_ell2 += weight(c, j1) * total(upto, j2)
        d_s += weight(c, j2) * total(upto, j1)
    tail = total(subarc(D, curve, start, m2, CLOSED, HALF), j1)
    d_s -= tail
    d_e = total(whole_curve(D, curve), j1) - tail
    return SlideDeltas(d_ell2, d_s, d_e)
