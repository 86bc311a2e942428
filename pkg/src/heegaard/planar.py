"""The planar model of the surface cut open along the alpha curves.

Cutting along alpha_i leaves two boundary circles: ``side 0`` (drawn
counter-clockwise, on the right of alpha_i) and ``side 1`` (clockwise, on the
left).  Every crossing c gives one vertex on each circle, ``(c, 0)`` and
``(c, 1)``.  On each circle the matched crossing sits at the extreme point
with an upward tangent (angle 0 on side 0, angle pi on side 1) and the other
crossings of alpha_i lie on the opposite vertical side, running downward.

Beta arcs run between circles and meet them perpendicularly.  A positive
crossing is entered on side 0 and left on side 1, a negative one the other way
round.  Directions are measured in quarter turns: 0 is +x, 1 is +y, 2 is -x,
3 is -y.  Turnings of beta arcs are stored in half turns; internally every
angle below is in quarter turns.

A dart is ``(kind, key, forward)``.  Kind ``"c"`` is a circle segment with key
``(i, side, k)`` running from slot k to slot k+1 of alpha_i (slot 0 is the
matched crossing).  Kind ``"b"`` is the beta arc ``(j, k)`` leaving
``beta[j][k]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diagram import Diagram
from .errors import LayoutError

UP, DOWN = 1, 3


@dataclass
class Face:
    darts: list
    corners: list  # corners[l] is the quarter turn between darts l and l+1
    prefix: list  # prefix[l] is the turning accumulated before dart l
    total: int
    hole: bool
    component: int = -1

    def __len__(self):
        return len(self.darts)


class PlanarModel:
    """Faces, turnings and walk coordinates of the cut-open planar graph."""

    def __init__(self, D: Diagram):
        self.D = D
        self.slot = {}
        self.slots = []
        for i, curve in enumerate(D.alpha):
            m = D.alpha_matched[i]
            start = curve.index(m)
            order = curve[start:] + curve[:start]
            self.slots.append(order)
            for k, c in enumerate(order):
                self.slot[c] = k

    # -- local geometry ----------------------------------------------------

    def tangent(self, v) -> int:
        return UP if self.slot[v[0]] == 0 else DOWN

    def normal(self, v) -> int:
        """Outward normal, the direction of the beta half-edge at ``v``."""
        c, side = v
        top = self.slot[c] == 0
        if side == 0:
            return 0 if top else 2
        return 2 if top else 0

    def segment_turn(self, i: int, side: int, k: int) -> int:
        """Turning of a circle segment in half turns."""
        n = len(self.slots[i])
        if n == 1:
            base = 2
        elif k == 0 or k == n - 1:
            base = 1
        else:
            base = 0
        return base if side == 0 else -base

    def arc_ends(self, j: int, k: int):
        """Start and end vertices of beta arc (j, k)."""
        curve = self.D.beta[j]
        x, y = curve[k], curve[(k + 1) % len(curve)]
        return (x.crossing, 1 if x.sign > 0 else 0), (y.crossing, 0 if y.sign > 0 else 1)

    def dart_data(self, dart):
        """(tail, head, start direction, end direction, turning in half turns)."""
        kind, key, fwd = dart
        if kind == "c":
            i, side, k = key
            order = self.slots[i]
            u = (order[k], side)
            v = (order[(k + 1) % len(order)], side)
            t = self.segment_turn(i, side, k)
            if fwd:
                return u, v, self.tangent(u), self.tangent(v), t
            return v, u, (self.tangent(v) + 2) % 4, (self.tangent(u) + 2) % 4, -t
        j, k = key
        u, v = self.arc_ends(j, k)
        t = self.D.beta[j][k].turn
        if fwd:
            return u, v, self.normal(u), (self.normal(v) + 2) % 4, t
        return v, u, self.normal(v), (self.normal(u) + 2) % 4, -t

    def outgoing(self, v):
        """The three darts leaving vertex ``v``."""
        c, side = v
        i = self.D.loc[c].alpha
        n = len(self.slots[i])
        k = self.slot[c]
        where = self.D.loc[c]
        exit_side = 1 if where.sign > 0 else 0
        if side == exit_side:
            beta = ("b", (where.beta, where.beta_pos), True)
        else:
            nb = len(self.D.beta[where.beta])
            beta = ("b", (where.beta, (where.beta_pos - 1) % nb), False)
        return [("c", (i, side, k), True), ("c", (i, side, (k - 1) % n), False), beta]

    def next_dart(self, dart):
        """Next dart of the face lying on the left of ``dart``, and the corner."""
        _, head, _, arrive, _ = self.dart_data(dart)
        back = (arrive + 2) % 4
        best, best_gap = None, 5
        for d in self.outgoing(head):
            start = self.dart_data(d)[2]
            gap = (back - start) % 4
            if gap and gap < best_gap:
                best, best_gap = d, gap
        start = self.dart_data(best)[2]
        corner = {0: 0, 1: 1, 3: -1}.get((start - arrive) % 4)
        if corner is None:
            raise LayoutError("face walk makes a U-turn")
        return best, corner

    # -- faces -----------------------------------------------------------

    @cached_property
    def all_darts(self):
        D = self.D
        out = []
        for i, order in enumerate(self.slots):
            for side in (0, 1):
                for k in range(len(order)):
                    out.append(("c", (i, side, k), True))
                    out.append(("c", (i, side, k), False))
        for j, curve in enumerate(D.beta):
            for k in range(len(curve)):
                out.append(("b", (j, k), True))
                out.append(("b", (j, k), False))
        return out

    @cached_property
    def faces(self) -> list[Face]:
        seen = set()
        faces = []
        for start in self.all_darts:
            if start in seen:
                continue
            darts, corners = [], []
            d = start
            while d not in seen:
                seen.add(d)
                darts.append(d)
                d, corner = self.next_dart(d)
                corners.append(corner)
            prefix, acc = [], 0
            for dart, corner in zip(darts, corners):
                prefix.append(acc)
                acc += 2 * self.dart_data(dart)[4] + corner
            hole = all(d[0] == "c" for d in darts)
            faces.append(Face(darts, corners, prefix, acc, hole))
        comp = self.vertex_component
        for f in faces:
            f.component = comp[self.dart_data(f.darts[0])[0]]
        return faces

    @cached_property
    def dart_position(self) -> dict:
        """Map dart -> (face index, index in that face's walk)."""
        out = {}
        for fi, f in enumerate(self.faces):
            for l, d in enumerate(f.darts):
                out[d] = (fi, l)
        return out

    @cached_property
    def vertex_component(self) -> dict:
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in self.all_darts:
            if d[2]:
                u, v = self.dart_data(d)[:2]
                parent[find(u)] = find(v)
        roots = {}
        out = {}
        for c in self.D.crossings:
            for side in (0, 1):
                r = find((c, side))
                out[(c, side)] = roots.setdefault(r, len(roots))
        return out

    @cached_property
    def n_components(self) -> int:
        return len(set(self.vertex_component.values()))

    # -- validation ------------------------------------------------------

    def parity_errors(self):
        bad = []
        for j, curve in enumerate(self.D.beta):
            for k in range(len(curve)):
                _, _, s, e, t = self.dart_data(("b", (j, k), True))
                if (s + 2 * t - e) % 4:
                    bad.append((j, k))
        return bad

    def validate(self) -> None:
        """Raise LayoutError unless the turnings describe a planar drawing."""
        bad = self.parity_errors()
        if bad:
            j, k = bad[0]
            raise LayoutError(
                f"beta {j + 1} arc {k + 1}: turning has the wrong parity"
            )
        V = 2 * len(self.D.loc)
        E = 3 * len(self.D.loc)
        F = len(self.faces)
        if V - E + F != 2 * self.n_components:
            raise LayoutError("the cut-open graph is not planar")
        outer_count = {}
        for f in self.faces:
            if f.hole:
                if f.total != 4:
                    raise LayoutError("alpha circle interior has the wrong turning")
                continue
            if f.total == -4:
                outer_count[f.component] = outer_count.get(f.component, 0) + 1
            elif f.total != 4:
                raise LayoutError(f"a face has total turning {f.total}/4 turns")
        for comp in range(self.n_components):
            if outer_count.get(comp, 0) != 1:
                raise LayoutError("each component needs exactly one outer face")

    @cached_property
    def outer_faces(self) -> dict:
        """Component index -> index of its outer face (total turning -1)."""
        return {
            f.component: fi
            for fi, f in enumerate(self.faces)
            if not f.hole and f.total == -4
        }

    # -- walk coordinates ------------------------------------------------

    def walk_value(self, fi: int, l: int, offset: int) -> int:
        return self.faces[fi].prefix[l] + offset

    def walk_turning(self, fi: int, p, q) -> int:
        """Turning (quarter turns) along face ``fi`` from position p to q.

        Positions are ``(walk index, offset into that dart)``; p and q must lie
        on different darts.
        """
        f = self.faces[fi]
        (lp, op), (lq, oq) = p, q
        if lp == lq:
            raise ValueError("positions on the same dart are not ordered")
        w = f.prefix[lq] + oq - f.prefix[lp] - op
        if lq < lp:
            w += f.total
        return w

    # -- surface quadrants -----------------------------------------------

    def corner_quadrants(self, fi: int):
        """Surface quadrants met by a non-hole face, as ``(c, alpha side, beta side)``.

        Alpha side 0 is the right of alpha; beta side 0 is the left of beta.
        """
        f = self.faces[fi]
        out = []
        n = len(f.darts)
        for l in range(n):
            d_in, d_out = f.darts[l], f.darts[(l + 1) % n]
            head = self.dart_data(d_in)[1]
            if d_in[0] == "b" and d_out[0] == "c":
                circle_dir = self.dart_data(d_out)[2]
            elif d_in[0] == "c" and d_out[0] == "b":
                circle_dir = (self.dart_data(d_in)[3] + 2) % 4
            else:
                continue
            c, side = head
            exit_side = 1 if self.D.sign(c) > 0 else 0
            travel = self.normal(head) if side == exit_side else (self.normal(head) + 2) % 4
            beta_left = (circle_dir - travel) % 4 == 1
            out.append((c, side, 0 if beta_left else 1))
        return out
