"""Surgery quantities computed from the linking form of a Seifert surface.

``L[i][j]`` is the linking number of the positive push-off of the basis curve
``z_i`` with ``z_j``.  Basis curves come in pairs ``(z_{2k}, z_{2k+1})``
(0-based) meeting once positively, so ``L - L^T`` is block diagonal with
blocks ``[[0, 1], [-1, 0]]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .diagram import integer_determinant
from .errors import ParseError, SymplecticViolation


def _partner(i: int) -> int:
    return i ^ 1


def _form(i: int) -> int:
    """Intersection number of z_i with its partner."""
    return 1 if i % 2 == 0 else -1


@dataclass(frozen=True)
class SeifertData:
    linking: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        L = tuple(tuple(int(x) for x in row) for row in self.linking)
        object.__setattr__(self, "linking", L)
        n = len(L)
        if n == 0 or n % 2 or any(len(row) != n for row in L):
            raise SymplecticViolation(f"linking matrix must be square of even size, got {n} rows")
        for i in range(n):
            for j in range(n):
                want = _form(i) if j == _partner(i) else 0
                if L[i][j] - L[j][i] != want:
                    raise SymplecticViolation(
                        f"L - L^T at ({i + 1},{j + 1}) is {L[i][j] - L[j][i]}, expected {want}"
                    )

    @property
    def genus(self) -> int:
        return len(self.linking) // 2


def parse_linking_matrix(text: str) -> SeifertData:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", lineno) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError("rows have different lengths", lineno)
    if not rows:
        raise ParseError("empty linking matrix")
    return SeifertData(rows)


def lambda_prime(S: SeifertData) -> int:
    L = S.linking
    total = 0
    for i in range(S.genus):
        a, b = 2 * i, 2 * i + 1
        for r in range(S.genus):
            c, d = 2 * r, 2 * r + 1
            total += L[b][d] * L[a][c] - L[b][c] * L[a][d]
    return total


def lambda_prime_plus(S: SeifertData) -> int:
    L = S.linking
    n = len(L)
    return sum(
        L[r][i] * L[_partner(i)][_partner(r)] * _form(i) * _form(r)
        for i in range(n)
        for r in range(n)
    )


def twice_lambda_prime_symmetric(S: SeifertData) -> int:
    """The symmetrized double sum equal to twice :func:`lambda_prime`."""
    L = S.linking
    n = len(L)
    return sum(
        L[r][i] * L[_partner(r)][_partner(i)] * _form(i) * _form(r)
        for i in range(n)
        for r in range(n)
    )


@dataclass(frozen=True)
class LaurentPolynomial:
    """Integer Laurent polynomial stored as ``{exponent: coefficient}``."""

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d) -> "LaurentPolynomial":
        return cls(tuple(sorted((int(k), int(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        return sum((c * t**k for k, c in self.coeffs), Fraction(0))

    def derivative(self) -> "LaurentPolynomial":
        return LaurentPolynomial.from_dict({k - 1: c * k for k, c in self.coeffs})

    def inverted(self) -> "LaurentPolynomial":
        """The polynomial in ``1/t``."""
        return LaurentPolynomial.from_dict({-k: c for k, c in self.coeffs})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in sorted(self.coeffs, reverse=True):
            mag = abs(c)
            if k == 0:
                term = str(mag)
            else:
                power = "t" if k == 1 else f"t^{k}"
                term = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+", term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def _interpolate(xs, ys) -> list[Fraction]:
    """Coefficients (lowest degree first) of the polynomial through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for k in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m in range(n):
            if m == k:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xs[m] * basis[d + 1]
            denom *= xs[k] - xs[m]
        scale = Fraction(ys[k]) / denom
        for d, b in enumerate(basis):
            coeffs[d] += scale * b
    return coeffs


def alexander(S: SeifertData) -> LaurentPolynomial:
    """``t^{-g} det(t L - L^T)``, normalized so that it is symmetric with value 1 at 1."""
    L = S.linking
    n = len(L)
    xs = list(range(n + 1))
    ys = [
        integer_determinant([[t * L[r][s] - L[s][r] for s in range(n)] for r in range(n)])
        for t in xs
    ]
    coeffs = _interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("determinant interpolation is not integral")
    poly = LaurentPolynomial.from_dict({d - S.genus: int(c) for d, c in enumerate(coeffs)})
    if poly(1) != 1 or poly != poly.inverted():
        raise ArithmeticError(f"Alexander polynomial {poly} fails its normalization")
    return poly


def delta_second_derivative_at_one(S: SeifertData) -> Fraction:
    """Half the second derivative of the Alexander polynomial at 1."""
    return alexander(S).derivative().derivative()(1) / 2


def casson_surgery_delta(S: SeifertData, n: int) -> int:
    """Change of the Casson-type invariant under 1/n surgery on the knot."""
    if n == 0:
        raise ValueError("surgery coefficient 1/n needs n != 0")
    return n * lambda_prime(S)


def p1_genus_constant(g: int) -> int:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return 4 * g * (g - 1)


def permute_blocks(S: SeifertData, perm) -> SeifertData:
    """Relabel the handle pairs: new pair k is old pair ``perm[k]``."""
    order = [2 * p + e for p in perm for e in (0, 1)]
    L = S.linking
    return SeifertData([[L[a][b] for b in order] for a in order])


def random_seifert(rng: random.Random, genus: int, bound: int = 5) -> SeifertData:
    """Diagonal and upper triangle uniform in ``[-bound, bound]``; the lower
    triangle is forced by the symplectic constraint."""
    n = 2 * genus
    L = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            L[i][j] = rng.randint(-bound, bound)
    for i in range(n):
        for j in range(i + 1, n):
            L[j][i] = L[i][j] - (_form(i) if j == _partner(i) else 0)
    return SeifertData(L)


TREFOIL = SeifertData([[-1, 1], [0, -1]])
FIGURE_EIGHT = SeifertData([[1, 1], [0, -1]])
UNKNOT = SeifertData([[0, 1], [0, 0]])
