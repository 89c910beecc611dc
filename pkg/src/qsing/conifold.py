"""Exact arithmetic in the conifold algebra.

The algebra is generated by X, Y, Z subject to Z^2 = 1, XZ = -ZX, YZ = -ZY
and the commutation of X^2 and Y^2 with everything; it is the Clifford
algebra of the ternary form [[x, z, 0], [z, y, 0], [0, 0, 1]] over the
polynomial ring C[x, y, z] with x = X^2, y = Y^2, z = (XY + YX)/2, and a
free module of rank 8 over it with basis 1, X, Y, Z, XY, XZ, YZ, XYZ.

Elements are stored as maps from the eight basis words to exact polynomial
coefficients.  Words multiply through a six-rule rewrite system oriented by
X < Y < Z; each rule either shortens the word or lowers its inversion count,
so rewriting terminates, and the critical pairs of the system can be checked
by :func:`rewrite_critical_pairs`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import QsingError

Monomial = tuple[int, int, int]  # exponents of x, y, z


@dataclass(frozen=True)
class CenterPoly:
    """Sparse exact-rational polynomial in the commuting variables x, y, z."""

    terms: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def from_dict(cls, data: Mapping[Monomial, object]) -> "CenterPoly":
        cleaned = {}
        for mono, coef in data.items():
            c = Fraction(coef)
            if c:
                cleaned[tuple(int(e) for e in mono)] = c
        return cls(tuple(sorted(cleaned.items())))

    @classmethod
    def constant(cls, value) -> "CenterPoly":
        return cls.from_dict({(0, 0, 0): Fraction(value)})

    @classmethod
    def variable(cls, name: str) -> "CenterPoly":
        idx = {"x": 0, "y": 1, "z": 2}[name]
        mono = tuple(1 if i == idx else 0 for i in range(3))
        return cls.from_dict({mono: 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CenterPoly") -> "CenterPoly":
        data = dict(self.terms)
        for mono, coef in other.terms:
            data[mono] = data.get(mono, Fraction(0)) + coef
        return CenterPoly.from_dict(data)

    def __neg__(self) -> "CenterPoly":
        return CenterPoly(tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "CenterPoly") -> "CenterPoly":
        return self + (-other)

    def __mul__(self, other: "CenterPoly") -> "CenterPoly":
        data: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                data[mono] = data.get(mono, Fraction(0)) + c1 * c2
        return CenterPoly.from_dict(data)

    def scale(self, value) -> "CenterPoly":
        c = Fraction(value)
        return CenterPoly(tuple((m, c * co) for m, co in self.terms)) if c else ZERO

    def evaluate(self, x, y, z) -> Fraction:
        vals = (Fraction(x), Fraction(y), Fraction(z))
        total = Fraction(0)
        for (a, b, c), coef in self.terms:
            total += coef * vals[0] ** a * vals[1] ** b * vals[2] ** c
        return total

    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), coef in self.terms:
            body = "".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip("xyz", (a, b, c))
                if e
            )
            parts.append(f"{coef}" + ("*" + body if body else ""))
        return " + ".join(parts)


ZERO = CenterPoly(())
ONE = CenterPoly.constant(1)
POLY_X = CenterPoly.variable("x")
POLY_Y = CenterPoly.variable("y")
POLY_Z = CenterPoly.variable("z")

# the eight basis words, sorted square-free X-then-Y-then-Z
BASIS: tuple[str, ...] = ("", "X", "Y", "Z", "XY", "XZ", "YZ", "XYZ")

# rewrite rules: left word -> list of (polynomial coefficient, right word)
REWRITE_RULES: dict[str, tuple[tuple[CenterPoly, str], ...]] = {
    "XX": ((POLY_X, ""),),
    "YY": ((POLY_Y, ""),),
    "ZZ": ((ONE, ""),),
    "YX": ((POLY_Z.scale(2), ""), (ONE.scale(-1), "XY")),
    "ZX": ((ONE.scale(-1), "XZ"),),
    "ZY": ((ONE.scale(-1), "YZ"),),
}


def _reduce_word(word: str) -> dict[str, CenterPoly]:
    """Fully rewrite a word in X, Y, Z into the eight-word basis."""
    result: dict[str, CenterPoly] = {}
    pending: list[tuple[CenterPoly, str]] = [(ONE, word)]
    while pending:
        coef, w = pending.pop()
        redex = None
        for pos in range(len(w) - 1):
            if w[pos : pos + 2] in REWRITE_RULES:
                redex = pos
                break
        if redex is None:
            result[w] = result.get(w, ZERO) + coef
            continue
        head, pair, tail = w[:redex], w[redex : redex + 2], w[redex + 2 :]
        for rule_coef, replacement in REWRITE_RULES[pair]:
            pending.append((coef * rule_coef, head + replacement + tail))
    return {w: c for w, c in result.items() if not c.is_zero}


class ConifoldElement:
    """An element in the rank-8 basis with polynomial coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[str, CenterPoly] | None = None):
        data = {}
        for word, poly in (coeffs or {}).items():
            if word not in BASIS:
                raise ValueError(f"{word!r} is not a basis word")
            if not poly.is_zero:
                data[word] = poly
        self.coeffs: dict[str, CenterPoly] = data

    @classmethod
    def from_word(cls, word: str, scalar=1) -> "ConifoldElement":
        if any(ch not in "XYZ" for ch in word):
            raise ValueError("words use letters X, Y, Z only")
        reduced = _reduce_word(word)
        scale = Fraction(scalar)
        return cls({w: p.scale(scale) for w, p in reduced.items()})

    @classmethod
    def from_center(cls, poly: CenterPoly) -> "ConifoldElement":
        return cls({"": poly})

    @classmethod
    def zero(cls) -> "ConifoldElement":
        return cls({})

    @classmethod
    def one(cls) -> "ConifoldElement":
        return cls({"": ONE})

    def coefficient(self, word: str) -> CenterPoly:
        return self.coeffs.get(word, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConifoldElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "ConifoldElement") -> "ConifoldElement":
        data = dict(self.coeffs)
        for word, poly in other.coeffs.items():
            data[word] = data.get(word, ZERO) + poly
        return ConifoldElement(data)

    def __neg__(self) -> "ConifoldElement":
        return ConifoldElement({w: -p for w, p in self.coeffs.items()})

    def __sub__(self, other: "ConifoldElement") -> "ConifoldElement":
        return self + (-other)

    def __mul__(self, other: "ConifoldElement") -> "ConifoldElement":
        return multiply(self, other)

    def scale_poly(self, poly: CenterPoly) -> "ConifoldElement":
        return ConifoldElement({w: p * poly for w, p in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for word in BASIS:
            if word in self.coeffs:
                label = word if word else "1"
                parts.append(f"({self.coeffs[word]})*{label}")
        return " + ".join(parts)

    __repr__ = __str__


X = ConifoldElement.from_word("X")
Y = ConifoldElement.from_word("Y")
Z = ConifoldElement.from_word("Z")

_PRODUCT_TABLE: dict[tuple[str, str], dict[str, CenterPoly]] = {}


def _basis_product(w1: str, w2: str) -> dict[str, CenterPoly]:
    key = (w1, w2)
    if key not in _PRODUCT_TABLE:
        _PRODUCT_TABLE[key] = _reduce_word(w1 + w2)
    return _PRODUCT_TABLE[key]


def multiply(a: ConifoldElement, b: ConifoldElement) -> ConifoldElement:
    """Bilinear extension of the basis product table (coefficients are central)."""
    data: dict[str, CenterPoly] = {}
    for w1, p1 in a.coeffs.items():
        for w2, p2 in b.coeffs.items():
            factor = p1 * p2
            for word, poly in _basis_product(w1, w2).items():
                data[word] = data.get(word, ZERO) + factor * poly
    return ConifoldElement(data)


def word_normal_form(word: str, scalar=1) -> ConifoldElement:
    """Normal form of a scalar multiple of a word in X, Y, Z."""
    return ConifoldElement.from_word(word, scalar)


def commutator_element() -> ConifoldElement:
    """The central element XYZ - YXZ (square 4(z^2 - xy))."""
    return ConifoldElement.from_word("XYZ") - ConifoldElement.from_word("YXZ")


def is_central(a: ConifoldElement) -> bool:
    """Commutation with the generators X, Y, Z suffices since they generate."""
    return all(multiply(a, g) == multiply(g, a) for g in (X, Y, Z))


def rewrite_critical_pairs() -> list[tuple[str, ConifoldElement, ConifoldElement]]:
    """Overlap analysis of the rewrite system; a nonempty result disproves confluence.

    Each three-letter word that can be rewritten at two positions is reduced
    both ways; the list collects the words where the normal forms disagree.
    """
    failures = []
    for left, right in itertools.product(REWRITE_RULES, REWRITE_RULES):
        if left[1] != right[0]:
            continue
        word = left + right[1]
        first = ConifoldElement.zero()
        for coef, repl in REWRITE_RULES[left]:
            first = first + ConifoldElement.from_word(repl + word[2:]).scale_poly(coef)
        second = ConifoldElement.zero()
        for coef, repl in REWRITE_RULES[right]:
            second = second + ConifoldElement.from_word(word[0] + repl).scale_poly(coef)
        if first != second:
            failures.append((word, first, second))
    return failures


# ---------------------------------------------------------------------------
# the ternary form and Clifford identities


@dataclass(frozen=True)
class TernaryForm:
    """The symmetric matrix [[x, z, 0], [z, y, 0], [0, 0, 1]] over C[x, y, z]."""

    matrix: tuple[tuple[CenterPoly, ...], ...] = (
        (POLY_X, POLY_Z, ZERO),
        (POLY_Z, POLY_Y, ZERO),
        (ZERO, ZERO, ONE),
    )

    def pairing(self, v: Sequence[CenterPoly], w: Sequence[CenterPoly]) -> CenterPoly:
        total = ZERO
        for i in range(3):
            for j in range(3):
                total = total + v[i] * self.matrix[i][j] * w[j]
        return total

    def determinant(self) -> CenterPoly:
        m = self.matrix
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )


def _span_coordinates(a: ConifoldElement) -> tuple[CenterPoly, CenterPoly, CenterPoly]:
    if set(a.coeffs) - {"X", "Y", "Z"}:
        raise QsingError("element is not in the span of X, Y, Z")
    return (a.coefficient("X"), a.coefficient("Y"), a.coefficient("Z"))


def clifford_check(v: ConifoldElement, w: ConifoldElement, form: TernaryForm | None = None) -> bool:
    """Verify v*w + w*v = 2 B(v, w) for elements in the span of X, Y, Z."""
    form = form or TernaryForm()
    bv = form.pairing(_span_coordinates(v), _span_coordinates(w))
    lhs = multiply(v, w) + multiply(w, v)
    return lhs == ConifoldElement.from_center(bv.scale(2))


# ---------------------------------------------------------------------------
# two-dimensional trace-zero representations


Trep2Point = tuple[Fraction, ...]  # (x1, x2, x3, y1, y2, y3, z1, z2, z3)


def trep2_residuals(point: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """The three defining equations evaluated at a 9-tuple."""
    x1, x2, x3, y1, y2, y3, z1, z2, z3 = (Fraction(v) for v in point)
    return (
        2 * x1 * z1 + x2 * z3 + x3 * z2,
        2 * y1 * z1 + y2 * z3 + y3 * z2,
        z1 * z1 + z2 * z3 - 1,
    )


def _nonzero_fraction(rng: random.Random, span: int = 4) -> Fraction:
    while True:
        num = rng.randint(-span, span)
        if num:
            return Fraction(num, rng.randint(1, span))


def _any_fraction(rng: random.Random, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def trep2_sample(count: int, seed: int = 0) -> list[Trep2Point]:
    """Random rational points on the trace-zero representation scheme.

    Solvable charts rotate: mostly z1 != 0 (back-solve x1, y1), with z1 = 0
    charts mixed in by solving z2 z3 = 1 and back-solving x3, y3.  Every
    returned point satisfies the equations exactly.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    points: list[Trep2Point] = []
    for n in range(count):
        if n % 5 == 4:
            # z1 = 0 chart: z2 z3 = 1, x3 and y3 solved from the pairings
            z1 = Fraction(0)
            z2 = _nonzero_fraction(rng)
            z3 = 1 / z2
            x1, x2 = _any_fraction(rng), _any_fraction(rng)
            y1, y2 = _any_fraction(rng), _any_fraction(rng)
            x3 = -x2 * z3 / z2
            y3 = -y2 * z3 / z2
        else:
            z1 = _nonzero_fraction(rng)
            z2 = _any_fraction(rng)
            z3 = (1 - z1 * z1) / z2 if z2 else Fraction(0)
            if not z2:
                # keep z1^2 + z2 z3 = 1 with z2 = 0
                z1 = Fraction(rng.choice([-1, 1]))
                z3 = _any_fraction(rng)
            x2, x3 = _any_fraction(rng), _any_fraction(rng)
            y2, y3 = _any_fraction(rng), _any_fraction(rng)
            x1 = -(x2 * z3 + x3 * z2) / (2 * z1)
            y1 = -(y2 * z3 + y3 * z2) / (2 * z1)
        point = (x1, x2, x3, y1, y2, y3, z1, z2, z3)
        assert trep2_residuals(point) == (0, 0, 0)
        points.append(point)
    return points


def trep2_jacobian(point: Sequence) -> list[list[Fraction]]:
    """The 3 x 9 Jacobian of the defining equations at a point."""
    x1, x2, x3, y1, y2, y3, z1, z2, z3 = (Fraction(v) for v in point)
    zero = Fraction(0)
    return [
        [2 * z1, z3, z2, zero, zero, zero, 2 * x1, x3, x2],
        [zero, zero, zero, 2 * z1, z3, z2, 2 * y1, y3, y2],
        [zero, zero, zero, zero, zero, zero, 2 * z1, z3, z2],
    ]


def trep2_jacobian_rank(point: Sequence, tolerance: float = 1e-9) -> int:
    """Exact rank of the Jacobian at a point of the scheme.

    Rational points must satisfy the equations exactly; float points are
    accepted up to ``tolerance`` and then re-checked exactly after Fraction
    conversion of the Jacobian entries.
    """
    residuals = trep2_residuals(point)
    if any(abs(float(r)) > tolerance for r in residuals):
        raise QsingError(f"point is not on the scheme: residuals {residuals}")
    mat = trep2_jacobian(point)
    rank = 0
    for col in range(9):
        pivot_row = next((r for r in range(rank, 3) if mat[r][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        for r in range(3):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col] / mat[rank][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == 3:
            break
    return rank


def trep2_matrices(point: Sequence) -> dict[str, tuple[tuple[Fraction, ...], ...]]:
    """The trace-zero 2x2 images of X, Y, Z at a point of the scheme."""
    x1, x2, x3, y1, y2, y3, z1, z2, z3 = (Fraction(v) for v in point)
    return {
        "X": ((x1, x2), (x3, -x1)),
        "Y": ((y1, y2), (y3, -y1)),
        "Z": ((z1, z2), (z3, -z1)),
    }


def evaluate_at_point(a: ConifoldElement, point: Sequence) -> tuple[tuple[Fraction, ...], ...]:
    """Evaluate an element in the 2-dimensional representation at a point.

    The center values are x = x1^2 + x2 x3, y and z analogously; basis words
    map to the corresponding matrix products.
    """
    mats = trep2_matrices(point)
    x1, x2, x3, y1, y2, y3, z1, z2, z3 = (Fraction(v) for v in point)
    x_val = x1 * x1 + x2 * x3
    y_val = y1 * y1 + y2 * y3
    z_val = x1 * y1 + Fraction(x2 * y3 + x3 * y2, 2)

    def mat_mul2(a2, b2):
        return tuple(
            tuple(sum(a2[i][t] * b2[t][j] for t in range(2)) for j in range(2))
            for i in range(2)
        )

    total = [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]
    for word, poly in a.coeffs.items():
        value = poly.evaluate(x_val, y_val, z_val)
        m = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
        for ch in word:
            m = mat_mul2(m, mats[ch])
        for i in range(2):
            for j in range(2):
                total[i][j] += value * m[i][j]
    return tuple(tuple(row) for row in total)
