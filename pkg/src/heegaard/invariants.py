"""The quadratic invariants l2 and s_l, flow cycles and their linking.

Two routes compute the pairing matrix ``ell_tilde(c, d)``.  The reference
route (:func:`ell_tilde`, :func:`ell`) evaluates one entry from weighted
subarcs with Fractions.  The table route (:class:`PairingTable`) computes the
whole matrix as exact integer matrix products, scaled by ``4 * det``; the
public invariants use it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .diagram import ALPHA, BETA, CLOSED, HALF, Diagram, pair, subarc, whole_curve
from .errors import NotACycle
from .layout import euler_term

_SAFE = 2**62


# -- exact integer matrix helpers ------------------------------------------


def _bound(a) -> int:
    return int(np.max(np.abs(a))) if a.size else 0


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product, in int64 when no overflow is possible."""
    if a.dtype != object and b.dtype != object:
        if _bound(a) * _bound(b) * max(a.shape[-1], 1) < _SAFE:
            return a @ b
    return np.dot(a.astype(object), b.astype(object))


def exact_weighted_sum(a: np.ndarray, b: np.ndarray) -> int:
    """``sum(a * b)`` as a Python integer."""
    if a.dtype != object and b.dtype != object:
        if _bound(a) * _bound(b) * max(a.size, 1) < _SAFE:
            return int(np.sum(a * b))
    return int(np.sum(a.astype(object) * b.astype(object)))


# -- basepoints --------------------------------------------------------------


@dataclass(frozen=True)
class Basepoints:
    p_alpha: tuple[str, ...]
    p_beta: tuple[str, ...]

    @classmethod
    def from_matching(cls, D: Diagram) -> "Basepoints":
        return cls(D.alpha_matched, D.require_matching())

    def check(self, D: Diagram) -> None:
        for i, c in enumerate(self.p_alpha):
            if D.loc[c].alpha != i:
                raise ValueError(f"basepoint {c} is not on alpha {i + 1}")
        for j, c in enumerate(self.p_beta):
            if D.loc[c].beta != j:
                raise ValueError(f"basepoint {c} is not on beta {j + 1}")


# -- reference route -----------------------------------------------------------


def _ell_generic(D: Diagram, bp: Basepoints, c: str, d: str, start_mode) -> Fraction:
    wc, wd = D.loc[c], D.loc[d]
    arc_a = subarc(D, (ALPHA, wc.alpha), bp.p_alpha[wc.alpha], c, start_mode, HALF)
    arc_b = subarc(D, (BETA, wd.beta), bp.p_beta[wd.beta], d, start_mode, HALF)
    value = pair(D, arc_a, arc_b)
    J = D.J
    g = D.genus
    left = [pair(D, arc_a, whole_curve(D, (BETA, j))) for j in range(g)]
    right = [pair(D, whole_curve(D, (ALPHA, i)), arc_b) for i in range(g)]
    for j in range(g):
        if left[j]:
            for i in range(g):
                value -= J[j][i] * left[j] * right[i]
    return value


def ell_tilde(D: Diagram, bp: Basepoints, c: str, d: str) -> Fraction:
    """Pairing with both basepoint ends counted with weight 1/2."""
    return _ell_generic(D, bp, c, d, HALF)


def ell(D: Diagram, bp: Basepoints, c: str, d: str) -> Fraction:
    """Pairing with closed-start arcs ``[p, c|``."""
    return _ell_generic(D, bp, c, d, CLOSED)


# -- table route -------------------------------------------------------------


class PairingTable:
    """All pairings ``ell_tilde(c, d)`` (or ``ell`` with ``closed=True``).

    ``scaled[c, d] == 4 * det * value`` with crossings indexed as in
    ``D.crossings``.
    """

    def __init__(self, D: Diagram, bp: Basepoints | None = None, closed: bool = False):
        self.D = D
        self.bp = bp or Basepoints.from_matching(D)
        self.closed = closed
        self.index = {c: k for k, c in enumerate(D.crossings)}
        n, g = len(self.index), D.genus
        self.n = n
        self.sign = np.array([D.sign(c) for c in D.crossings], dtype=np.int64)
        self.i_of = np.array([D.loc[c].alpha for c in D.crossings], dtype=np.int64)
        self.j_of = np.array([D.loc[c].beta for c in D.crossings], dtype=np.int64)
        self.det = D.det
        # adjugate-scaled inverse: Jint[j][i] = det * J[j][i]
        self.Jint = np.array(
            [[int(x * self.det) for x in row] for row in D.J], dtype=np.int64
        )
        wa = self._weights([list(curve) for curve in D.alpha], self.bp.p_alpha)
        wb = self._weights(
            [[e.crossing for e in curve] for curve in D.beta], self.bp.p_beta
        )
        sw_b = wb * self.sign[None, :]
        x4 = exact_matmul(wa, sw_b.T)  # 4 * <arc_a(c), arc_b(d)>
        onehot_beta = np.zeros((n, g), dtype=np.int64)
        onehot_beta[np.arange(n), self.j_of] = 1
        onehot_alpha = np.zeros((n, g), dtype=np.int64)
        onehot_alpha[np.arange(n), self.i_of] = 1
        a2 = exact_matmul(wa * self.sign[None, :], onehot_beta)  # 2 <arc_a(c), beta_j>
        b2 = exact_matmul(sw_b, onehot_alpha)  # 2 <alpha_i, arc_b(d)>
        corr = exact_matmul(exact_matmul(a2, self.Jint), b2.T)
        if x4.dtype == object or corr.dtype == object or abs(self.det) * _bound(x4) >= _SAFE:
            self.scaled = x4.astype(object) * self.det - corr.astype(object)
        else:
            self.scaled = x4 * self.det - corr
        self.scale = 4 * self.det

    def _weights(self, orders, basepoints) -> np.ndarray:
        """Row c holds doubled weights of the arc from the basepoint to c."""
        n = self.n
        w = np.zeros((n, n), dtype=np.int64)
        start_w = 2 if self.closed else 1
        for order, p in zip(orders, basepoints):
            m = len(order)
            s = order.index(p)
            seq = [self.index[order[(s + k) % m]] for k in range(m)]
            for k, row in enumerate(seq):
                if k == 0:
                    if self.closed:
                        w[row, row] = 1
                    continue
                w[row, seq[0]] = start_w
                for mid in seq[1:k]:
                    w[row, mid] = 2
                w[row, row] = 1
        return w

    def value(self, c: str, d: str) -> Fraction:
        return Fraction(int(self.scaled[self.index[c], self.index[d]]), self.scale)

    def contract(self, coef: np.ndarray, coef_scale: int) -> Fraction:
        """``sum_{c,d} coef[c, d] * value(c, d) / coef_scale``."""
        return Fraction(exact_weighted_sum(coef, self.scaled), coef_scale * self.scale)

    @cached_property
    def diag_coef(self) -> np.ndarray:
        """``det * J[j(c)][i(c)] * sigma(c)`` per crossing."""
        return self.Jint[self.j_of, self.i_of] * self.sign

    @cached_property
    def cross_coef(self) -> np.ndarray:
        """``det^2 * J[j(c)][i(d)] * J[j(d)][i(c)] * sigma(c) sigma(d)``."""
        a = self.Jint[self.j_of[:, None], self.i_of[None, :]]
        b = self.Jint[self.j_of[None, :], self.i_of[:, None]]
        s = self.sign[:, None] * self.sign[None, :]
        if _bound(self.Jint) ** 2 < _SAFE:
            return a * b * s
        return a.astype(object) * b.astype(object) * s


def two_cycle_matrix(D: Diagram, table: PairingTable) -> tuple[np.ndarray, int]:
    """The cycle G(D) as an integer matrix with its denominator ``det^2``."""
    G = table.cross_coef.copy()
    diag = table.diag_coef * table.det
    G[np.arange(table.n), np.arange(table.n)] -= diag
    return G, table.det**2


def ell2(D: Diagram) -> Fraction:
    table = PairingTable(D)
    G, scale = two_cycle_matrix(D, table)
    return table.contract(G, scale)


def s_ell(D: Diagram) -> Fraction:
    table = PairingTable(D)
    u = table.diag_coef
    return table.contract(np.outer(u.astype(object), u.astype(object)), table.det**2)


def theta_tilde(D: Diagram) -> Fraction:
    return ell2(D) + s_ell(D) - euler_term(D)


@dataclass(frozen=True)
class Quantities:
    ell2: Fraction
    s_ell: Fraction
    e: Fraction

    @property
    def theta(self) -> Fraction:
        return self.ell2 + self.s_ell - self.e


def quantities(D: Diagram) -> Quantities:
    """l2, s_l and e from one pairing table."""
    table = PairingTable(D)
    G, scale = two_cycle_matrix(D, table)
    u = table.diag_coef.astype(object)
    return Quantities(
        table.contract(G, scale),
        table.contract(np.outer(u, u), table.det**2),
        euler_term(D),
    )


# -- two-cycles ----------------------------------------------------------------


@dataclass(frozen=True)
class TwoCycle:
    """Rational coefficients g[(c, d)] of a chain sum g_cd gamma(c) x gamma(d)."""

    coefficients: dict

    def check(self, D: Diagram) -> None:
        """Raise NotACycle unless every row and column sums to zero on each curve."""
        sums = {}
        for (c, d), g in self.coefficients.items():
            wc, wd = D.loc[c], D.loc[d]
            for key in (
                ("a", wc.alpha, "col", d),
                ("b", wc.beta, "col", d),
                ("a", wd.alpha, "row", c),
                ("b", wd.beta, "row", c),
            ):
                sums[key] = sums.get(key, 0) + g
        bad = [k for k, v in sums.items() if v]
        if bad:
            raise NotACycle(f"boundary does not vanish at {bad[0]}")


def canonical_two_cycle(D: Diagram) -> TwoCycle:
    J = D.J
    coef = {}
    for c in D.crossings:
        wc = D.loc[c]
        for d in D.crossings:
            wd = D.loc[d]
            g = J[wc.beta][wd.alpha] * J[wd.beta][wc.alpha] * wc.sign * wd.sign
            if c == d:
                g -= J[wc.beta][wc.alpha] * wc.sign
            if g:
                coef[(c, d)] = g
    return TwoCycle(coef)


def ell2_of_2cycle(D: Diagram, bp: Basepoints, G: TwoCycle, closed: bool = True) -> Fraction:
    """``sum g_cd ell(c, d)`` (or ``ell_tilde`` with ``closed=False``)."""
    G.check(D)
    table = PairingTable(D, bp, closed=closed)
    total = Fraction(0)
    for (c, d), g in G.coefficients.items():
        total += g * table.value(c, d)
    return total


# -- flow cycles ---------------------------------------------------------------


@dataclass(frozen=True)
class FlowCycle:
    """Rational coefficients k[c] of a sum of flow lines k_c gamma(c)."""

    coefficients: dict

    def check(self, D: Diagram) -> None:
        sums = {}
        for c, k in self.coefficients.items():
            w = D.loc[c]
            sums[("a", w.alpha)] = sums.get(("a", w.alpha), 0) + k
            sums[("b", w.beta)] = sums.get(("b", w.beta), 0) + k
        bad = [key for key, v in sums.items() if v]
        if bad:
            raise NotACycle(f"flow cycle has boundary at {bad[0]}")

    def __add__(self, other):
        out = dict(self.coefficients)
        for c, k in other.coefficients.items():
            out[c] = out.get(c, 0) + k
        return FlowCycle({c: k for c, k in out.items() if k})

    def __neg__(self):
        return FlowCycle({c: -k for c, k in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)


def L_cycle(D: Diagram) -> FlowCycle:
    """Sum of the matched flow lines minus the J-weighted sum of all of them."""
    J = D.J
    matched = set(D.require_matching())
    coef = {}
    for c in D.crossings:
        w = D.loc[c]
        k = (1 if c in matched else 0) - J[w.beta][w.alpha] * w.sign
        if k:
            coef[c] = Fraction(k)
    return FlowCycle(coef)


def lk_parallel(D: Diagram, K: FlowCycle, L: FlowCycle, table: PairingTable | None = None) -> Fraction:
    """Linking number of K with a parallel copy of L."""
    K.check(D)
    L.check(D)
    table = table or PairingTable(D)
    total = Fraction(0)
    for c, k in K.coefficients.items():
        row = table.scaled[table.index[c]]
        acc = Fraction(0)
        for d, g in L.coefficients.items():
            acc += g * int(row[table.index[d]])
        total += k * acc
    return total / table.scale
