"""Decorated Heegaard diagrams: storage, intersection data, subarcs and pairings.

Curves are indexed from 0 internally; the text format uses 1-based indices.
A crossing lies on exactly one alpha curve and one beta curve.  Its sign is
stored on the beta listing together with the turning (in half-turns) of the
beta arc that leaves it toward the next crossing of the same beta curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from .errors import (
    CrossingNotOnCurve,
    DuplicateCrossing,
    EulerCheckFailed,
    HeegaardError,
    InvalidMatching,
    MissingCrossing,
    NoPerfectMatching,
    SingularIntersection,
)

ALPHA = "alpha"
BETA = "beta"
CLOSED = "closed"
HALF = "half"

ONE = Fraction(1)
HALF_WEIGHT = Fraction(1, 2)


@dataclass(frozen=True)
class BetaEntry:
    crossing: str
    sign: int
    turn: int


@dataclass(frozen=True)
class Location:
    alpha: int
    alpha_pos: int
    beta: int
    beta_pos: int
    sign: int


@dataclass(frozen=True)
class Diagram:
    """A Heegaard diagram with an optional matching and a beta layout.

    ``alpha_turns`` optionally records a layout for the alpha curves.  It is
    only used to make :func:`swap_roles` an exact involution and is ignored
    by equality.
    """

    genus: int
    alpha: tuple[tuple[str, ...], ...]
    beta: tuple[tuple[BetaEntry, ...], ...]
    matching: tuple[str, ...] | None = None
    alpha_turns: tuple[tuple[int, ...], ...] | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "alpha", tuple(tuple(a) for a in self.alpha))
        set_(self, "beta", tuple(tuple(b) for b in self.beta))
        if self.matching is not None:
            set_(self, "matching", tuple(self.matching))
        if self.alpha_turns is not None:
            set_(self, "alpha_turns", tuple(tuple(t) for t in self.alpha_turns))
        self._check_structure()

    def _check_structure(self):
        g = self.genus
        if g < 1:
            raise HeegaardError("genus must be positive")
        if len(self.alpha) != g or len(self.beta) != g:
            raise MissingCrossing(f"expected {g} alpha and {g} beta curves")
        seen_alpha = set()
        for i, curve in enumerate(self.alpha):
            if not curve:
                raise MissingCrossing(f"alpha {i + 1} has no crossings")
            for c in curve:
                if c in seen_alpha:
                    raise DuplicateCrossing(f"crossing {c!r} listed twice on alpha curves")
                seen_alpha.add(c)
        seen_beta = set()
        for j, curve in enumerate(self.beta):
            if not curve:
                raise MissingCrossing(f"beta {j + 1} has no crossings")
            for entry in curve:
                if entry.crossing in seen_beta:
                    raise DuplicateCrossing(
                        f"crossing {entry.crossing!r} listed twice on beta curves"
                    )
                if entry.sign not in (1, -1):
                    raise HeegaardError(f"sign of {entry.crossing!r} must be +1 or -1")
                seen_beta.add(entry.crossing)
        if seen_alpha != seen_beta:
            missing = sorted(seen_alpha ^ seen_beta)
            raise MissingCrossing(f"crossings not on both curve families: {missing}")
        if self.matching is not None:
            self._check_matching(self.matching)
        if self.alpha_turns is not None:
            if [len(t) for t in self.alpha_turns] != [len(a) for a in self.alpha]:
                raise HeegaardError("alpha_turns shape does not match alpha listings")

    def _check_matching(self, matching):
        if len(matching) != self.genus:
            raise InvalidMatching(f"matching needs {self.genus} crossings")
        used_alpha = set()
        for j, c in enumerate(matching):
            where = self.loc.get(c)
            if where is None:
                raise InvalidMatching(f"unknown matching crossing {c!r}")
            if where.beta != j:
                raise InvalidMatching(f"matching entry {j + 1} ({c}) is not on beta {j + 1}")
            if where.alpha in used_alpha:
                raise InvalidMatching(f"two matching crossings lie on alpha {where.alpha + 1}")
            used_alpha.add(where.alpha)

    # -- indexing -------------------------------------------------------

    @cached_property
    def loc(self) -> dict[str, Location]:
        apos = {}
        for i, curve in enumerate(self.alpha):
            for p, c in enumerate(curve):
                apos[c] = (i, p)
        out = {}
        for j, curve in enumerate(self.beta):
            for p, entry in enumerate(curve):
                i, ap = apos.get(entry.crossing, (-1, -1))
                out[entry.crossing] = Location(i, ap, j, p, entry.sign)
        return out

    @cached_property
    def crossings(self) -> tuple[str, ...]:
        """All crossings, in beta listing order."""
        return tuple(e.crossing for curve in self.beta for e in curve)

    def sign(self, c: str) -> int:
        return self.loc[c].sign

    @cached_property
    def rho(self) -> tuple[int, ...]:
        """rho[i] is the beta index of the matched crossing on alpha i."""
        out = [0] * self.genus
        for j, c in enumerate(self.require_matching()):
            out[self.loc[c].alpha] = j
        return tuple(out)

    @cached_property
    def alpha_matched(self) -> tuple[str, ...]:
        m = self.require_matching()
        return tuple(m[j] for j in self.rho)

    def require_matching(self) -> tuple[str, ...]:
        if self.matching is None:
            raise InvalidMatching("diagram has no matching")
        return self.matching

    def beta_turns(self, j: int) -> tuple[int, ...]:
        return tuple(e.turn for e in self.beta[j])

    def with_matching(self, matching) -> "Diagram":
        return replace(self, matching=tuple(matching), alpha_turns=None)

    def with_beta_turns(self, turns) -> "Diagram":
        """Replace every beta turning; ``turns[j][k]`` is the arc leaving beta[j][k]."""
        beta = tuple(
            tuple(replace(e, turn=int(t)) for e, t in zip(curve, row))
            for curve, row in zip(self.beta, turns)
        )
        return replace(self, beta=beta, alpha_turns=None)

    # -- cached algebra -------------------------------------------------

    @cached_property
    def A(self) -> tuple[tuple[int, ...], ...]:
        g = self.genus
        rows = [[0] * g for _ in range(g)]
        for c, where in self.loc.items():
            rows[where.alpha][where.beta] += where.sign
        return tuple(tuple(r) for r in rows)

    @cached_property
    def det(self) -> int:
        return integer_determinant(self.A)

    @cached_property
    def J(self) -> tuple[tuple[Fraction, ...], ...]:
        return exact_inverse(self.A)


# -- exact linear algebra ----------------------------------------------------


def integer_determinant(matrix) -> int:
    """Bareiss fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for r in range(k + 1, n):
            for s in range(k + 1, n):
                m[r][s] = (m[r][s] * m[k][k] - m[r][k] * m[k][s]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def exact_inverse(matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(n)]
        for r, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularIntersection("intersection matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def intersection_matrix(D: Diagram) -> list[list[int]]:
    """``A[i][j]`` is the algebraic intersection of alpha i with beta j."""
    return [list(row) for row in D.A]


def inverse_intersection(D: Diagram) -> list[list[Fraction]]:
    """``J[j][i]``, with ``sum_i J[j][i] * A[i][k] == (j == k)``."""
    return [list(row) for row in D.J]


# -- subarcs and pairings ------------------------------------------------------


@dataclass(frozen=True)
class WeightedArcSet:
    """Crossings of a subarc of one curve with weights in {1/2, 1}."""

    curve: tuple[str, int]
    weights: dict = field(hash=False)

    def __add__(self, other):
        if other.curve != self.curve:
            raise ValueError("arc sets live on different curves")
        out = dict(self.weights)
        for c, w in other.weights.items():
            out[c] = out.get(c, 0) + w
        return WeightedArcSet(self.curve, {c: w for c, w in out.items() if w})


def curve_crossings(D: Diagram, curve) -> tuple[str, ...]:
    side, idx = curve
    if side == ALPHA:
        return D.alpha[idx]
    return tuple(e.crossing for e in D.beta[idx])


def _position(D: Diagram, curve, c) -> int:
    where = D.loc.get(c)
    side, idx = curve
    if where is None:
        raise CrossingNotOnCurve(f"unknown crossing {c!r}")
    if side == ALPHA and where.alpha == idx:
        return where.alpha_pos
    if side == BETA and where.beta == idx:
        return where.beta_pos
    raise CrossingNotOnCurve(f"{c!r} is not on {side} {idx + 1}")


def subarc(D: Diagram, curve, start: str, end: str, start_mode=HALF, end_mode=HALF):
    """Weighted crossings from ``start`` to ``end`` along the curve orientation.

    A closed end has weight 1, a half end weight 1/2.  When ``start == end``
    the weights multiply: both half gives the empty set, one half gives 1/2.
    """
    order = curve_crossings(D, curve)
    a = _position(D, curve, start)
    b = _position(D, curve, end)
    w_start = ONE if start_mode == CLOSED else HALF_WEIGHT
    w_end = ONE if end_mode == CLOSED else HALF_WEIGHT
    if a == b:
        w = w_start * w_end
        weights = {} if start_mode == HALF and end_mode == HALF else {start: w}
        return WeightedArcSet(curve, weights)
    n = len(order)
    weights = {start: w_start}
    k = (a + 1) % n
    while k != b:
        weights[order[k]] = ONE
        k = (k + 1) % n
    weights[end] = w_end
    return WeightedArcSet(curve, weights)


def whole_curve(D: Diagram, curve) -> WeightedArcSet:
    return WeightedArcSet(curve, {c: ONE for c in curve_crossings(D, curve)})


def pair(D: Diagram, I: WeightedArcSet, J: WeightedArcSet) -> Fraction:
    """Signed pairing of an alpha-side arc set with a beta-side arc set."""
    if I.curve[0] != ALPHA or J.curve[0] != BETA:
        raise ValueError("pair expects an alpha arc set and a beta arc set")
    total = Fraction(0)
    small, large = (I.weights, J.weights) if len(I.weights) < len(J.weights) else (J.weights, I.weights)
    for c, w in small.items():
        other = large.get(c)
        if other:
            total += D.sign(c) * w * other
    return total


# -- matchings ---------------------------------------------------------------


def find_matching(D: Diagram) -> tuple[str, ...]:
    """A perfect matching chosen by augmenting paths in input order.

    Beta curves are processed in index order; for each, crossings are tried
    in their beta listing order.  Entry j of the result lies on beta j.
    """
    g = D.genus
    owner = {}  # alpha index -> (beta index, crossing)

    def augment(j, visited):
        for entry in D.beta[j]:
            i = D.loc[entry.crossing].alpha
            if i in visited:
                continue
            visited.add(i)
            if i not in owner or augment(owner[i][0], visited):
                owner[i] = (j, entry.crossing)
                return True
        return False

    for j in range(g):
        if not augment(j, set()):
            raise NoPerfectMatching(f"beta {j + 1} cannot be matched")
    result = [None] * g
    for j, c in owner.values():
        result[j] = c
    return tuple(result)


# -- surface faces -------------------------------------------------------------


def curve_graph_components(D: Diagram) -> list[set[int]]:
    """Groups of alpha indices whose curves are connected through alpha u beta."""
    parent = list(range(2 * D.genus))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for where in D.loc.values():
        a, b = find(where.alpha), find(D.genus + where.beta)
        parent[a] = b
    groups: dict[int, set[int]] = {}
    for i in range(D.genus):
        groups.setdefault(find(i), set()).add(i)
    return sorted(groups.values(), key=min)


def surface_faces(D: Diagram) -> list[list[tuple]]:
    """Faces of alpha u beta on the surface, from the rotation system.

    The cyclic order at a positive crossing is (alpha in, beta in, alpha out,
    beta out) counter-clockwise, mirrored for a negative one.  Half-edges are
    ``(family, curve, segment, end)`` with end 0 the tail.
    """
    rotation = {}
    for c, w in D.loc.items():
        na, nb = len(D.alpha[w.alpha]), len(D.beta[w.beta])
        a_out = ("a", w.alpha, w.alpha_pos, 0)
        a_in = ("a", w.alpha, (w.alpha_pos - 1) % na, 1)
        b_out = ("b", w.beta, w.beta_pos, 0)
        b_in = ("b", w.beta, (w.beta_pos - 1) % nb, 1)
        ring = [a_in, b_in, a_out, b_out] if w.sign > 0 else [a_in, b_out, a_out, b_in]
        for k, h in enumerate(ring):
            rotation[h] = ring[(k + 1) % 4]
    faces, seen = [], set()
    for start in rotation:
        if start in seen:
            continue
        face, h = [], start
        while h not in seen:
            seen.add(h)
            face.append(h)
            h = rotation[h[:3] + (1 - h[3],)]
        faces.append(face)
    return faces


def euler_check(D: Diagram) -> None:
    """Raise unless V - E + F = 2k - 2g, k the number of curve-graph components."""
    V = len(D.loc)
    E = 2 * V
    F = len(surface_faces(D))
    k = len(curve_graph_components(D))
    if V - E + F != 2 * k - 2 * D.genus:
        raise EulerCheckFailed(
            f"V - E + F = {V - E + F}, expected {2 * k - 2 * D.genus}"
        )


# -- global symmetries ---------------------------------------------------------


def reverse_orientation(D: Diagram) -> Diagram:
    """Mirror image: every sign and every turning negated."""
    beta = tuple(
        tuple(BetaEntry(e.crossing, -e.sign, -e.turn) for e in curve) for curve in D.beta
    )
    alpha_turns = None
    if D.alpha_turns is not None:
        alpha_turns = tuple(tuple(-t for t in row) for row in D.alpha_turns)
    return Diagram(D.genus, D.alpha, beta, D.matching, alpha_turns)


def swap_roles(D: Diagram) -> Diagram:
    """Exchange the alpha and beta families, reversing the surface orientation.

    Reading the surface from the other handlebody keeps every crossing sign,
    transposes the intersection matrix and mirrors the planar drawing.  The
    new beta curves need a layout in the model cut along the old beta curves:
    a stored ``alpha_turns`` is used when present, otherwise one is synthesized
    with the same outer region.  The old beta layout is stored in return, so
    applying the swap twice gives back ``D`` exactly.
    """
    from .layout import synthesize_swapped_turns

    turns = D.alpha_turns
    if turns is None:
        turns = synthesize_swapped_turns(D)
    beta = tuple(
        tuple(BetaEntry(c, D.sign(c), t) for c, t in zip(curve, row))
        for curve, row in zip(D.alpha, turns)
    )
    alpha = tuple(tuple(e.crossing for e in curve) for curve in D.beta)
    matching = None
    if D.matching is not None:
        matching = D.alpha_matched
    stored = tuple(D.beta_turns(j) for j in range(D.genus))
    return Diagram(D.genus, alpha, beta, matching, stored)
