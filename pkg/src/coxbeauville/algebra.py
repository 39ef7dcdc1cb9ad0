"""Exact arithmetic over Q and Q(sqrt 5): scalars and small dense matrices.

Matrices store integer numerators for the rational and sqrt(5) parts over one
shared positive denominator, kept in lowest terms.  That keeps products in pure
integer arithmetic, which matters because the exceptional groups convert
hundreds of matrices into root permutations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "ExactScalar",
    "ExactMatrix",
    "scalar_arith",
    "mat_mul",
    "mat_inverse",
    "trace",
    "char_poly",
    "is_diagonal",
]

Rational = int | Fraction


class ExactScalar:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, x: "ExactScalar | Rational") -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")

    def __repr__(self) -> str:
        return f"ExactScalar({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt5"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt5"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, ExactScalar):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.a, -self.b)

    def __add__(self, other: ExactScalar | Rational) -> ExactScalar:
        o = ExactScalar.coerce(other)
        return ExactScalar(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: ExactScalar | Rational) -> ExactScalar:
        o = ExactScalar.coerce(other)
        return ExactScalar(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Rational) -> ExactScalar:
        return ExactScalar.coerce(other) - self

    def __mul__(self, other: ExactScalar | Rational) -> ExactScalar:
        o = ExactScalar.coerce(other)
        return ExactScalar(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> ExactScalar:
        """Galois conjugate ``a - b*sqrt(5)``."""
        return ExactScalar(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> ExactScalar:
        n = self.norm()
        if n == 0:
            # a^2 = 5 b^2 has no rational solution except 0
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        return ExactScalar(self.a / n, -self.b / n)

    def __truediv__(self, other: ExactScalar | Rational) -> ExactScalar:
        return self * ExactScalar.coerce(other).inverse()

    def __rtruediv__(self, other: Rational) -> ExactScalar:
        return ExactScalar.coerce(other) * self.inverse()

    def is_rational(self) -> bool:
        return self.b == 0


def scalar_arith(x: ExactScalar, y: ExactScalar, op: str) -> ExactScalar:
    """Apply one of ``add``, ``sub``, ``mul``, ``div``."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def _normalize(den: int, a: list[list[int]], b: list[list[int]]):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        den = -den
        a = [[-v for v in row] for row in a]
        b = [[-v for v in row] for row in b]
    g = den
    for row in a:
        for v in row:
            if v:
                g = math.gcd(g, v)
                if g == 1:
                    break
        if g == 1:
            break
    if g != 1:
        for row in b:
            for v in row:
                if v:
                    g = math.gcd(g, v)
    if g != 1:
        a = [[v // g for v in row] for row in a]
        b = [[v // g for v in row] for row in b]
        den //= g
    return den, tuple(map(tuple, a)), tuple(map(tuple, b))


class ExactMatrix:
    """Immutable square matrix over Q(sqrt 5).

    Entry ``(i, j)`` equals ``(num_a[i][j] + num_b[i][j]*sqrt5) / den``.
    Group elements act on row vectors, ``v -> v @ M``, so ``M * N`` means
    "apply M, then N".
    """

    __slots__ = ("n", "den", "num_a", "num_b", "_irr", "_hash")

    def __init__(self, den: int, num_a, num_b=None) -> None:
        n = len(num_a)
        if num_b is None:
            num_b = [[0] * n for _ in range(n)]
        if any(len(r) != n for r in num_a) or len(num_b) != n or any(len(r) != n for r in num_b):
            raise ValueError("matrix must be square")
        self.n = n
        self.den, self.num_a, self.num_b = _normalize(den, [list(r) for r in num_a], [list(r) for r in num_b])
        self._irr = any(any(r) for r in self.num_b)
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ExactScalar | Rational]]) -> ExactMatrix:
        ents = [[ExactScalar.coerce(v) for v in row] for row in rows]
        dens = [v.a.denominator for row in ents for v in row] + [v.b.denominator for row in ents for v in row]
        den = reduce(lambda p, q: p * q // math.gcd(p, q), dens, 1)
        a = [[int(v.a * den) for v in row] for row in ents]
        b = [[int(v.b * den) for v in row] for row in ents]
        return cls(den, a, b)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(1, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c: int) -> ExactMatrix:
        return cls(1, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    # -- access -------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> ExactScalar:
        i, j = ij
        return ExactScalar(Fraction(self.num_a[i][j], self.den), Fraction(self.num_b[i][j], self.den))

    def rows(self) -> list[list[ExactScalar]]:
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def is_rational(self) -> bool:
        return not self._irr

    def __repr__(self) -> str:
        return f"ExactMatrix(den={self.den}, a={self.num_a}, b={self.num_b})"

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.den == other.den and self.num_a == other.num_a and self.num_b == other.num_b

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.den, self.num_a, self.num_b))
        return self._hash

    # -- arithmetic ---------------------------------------------------
    def __mul__(self, other: ExactMatrix) -> ExactMatrix:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        n = self.n
        A, B = self.num_a, other.num_a
        colsB = list(zip(*B))
        prod_a = [[sum(x * y for x, y in zip(row, col)) for col in colsB] for row in A]
        prod_b = [[0] * n for _ in range(n)]
        if self._irr or other._irr:
            Ab, Bb = self.num_b, other.num_b
            colsBb = list(zip(*Bb))
            if self._irr and other._irr:
                for i in range(n):
                    for j in range(n):
                        prod_a[i][j] += 5 * sum(x * y for x, y in zip(Ab[i], colsBb[j]))
            for i in range(n):
                for j in range(n):
                    s = 0
                    if other._irr:
                        s += sum(x * y for x, y in zip(A[i], colsBb[j]))
                    if self._irr:
                        s += sum(x * y for x, y in zip(Ab[i], colsB[j]))
                    prod_b[i][j] = s
        return ExactMatrix(self.den * other.den, prod_a, prod_b)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(self.den, [[-v for v in r] for r in self.num_a], [[-v for v in r] for r in self.num_b])

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        d1, d2 = self.den, other.den
        a = [[x * d2 + y * d1 for x, y in zip(r1, r2)] for r1, r2 in zip(self.num_a, other.num_a)]
        b = [[x * d2 + y * d1 for x, y in zip(r1, r2)] for r1, r2 in zip(self.num_b, other.num_b)]
        return ExactMatrix(d1 * d2, a, b)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, c: ExactScalar | Rational) -> ExactMatrix:
        c = ExactScalar.coerce(c)
        return ExactMatrix.from_rows([[c * v for v in row] for row in self.rows()])

    def __pow__(self, k: int) -> ExactMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        if self._irr or self.den != 1:
            return False
        return all(self.num_a[i][j] == (i == j) for i in range(self.n) for j in range(self.n))

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.den, list(zip(*self.num_a)), list(zip(*self.num_b)))

    def inverse(self) -> ExactMatrix:
        """Gauss-Jordan elimination over Q(sqrt 5)."""
        n = self.n
        m = [row + [ExactScalar(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows())]
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[col], m[piv] = m[piv], m[col]
            inv = m[col][col].inverse()
            m[col] = [v * inv for v in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [v - f * w for v, w in zip(m[r], m[col])]
        return ExactMatrix.from_rows([row[n:] for row in m])

    def trace(self) -> ExactScalar:
        return ExactScalar(
            Fraction(sum(self.num_a[i][i] for i in range(self.n)), self.den),
            Fraction(sum(self.num_b[i][i] for i in range(self.n)), self.den),
        )

    def char_poly(self) -> list[ExactScalar]:
        """Coefficients of det(lambda*I - M), leading coefficient first.

        Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(M M_k)/k,
        M_{k+1} = M M_k + c_{n-k} I.
        """
        n = self.n
        coeffs = [ExactScalar(1)]
        mk = ExactMatrix.identity(n)
        for k in range(1, n + 1):
            amk = self * mk
            c = -amk.trace() / k
            coeffs.append(c)
            mk = amk + ExactMatrix.from_rows([[c if i == j else 0 for j in range(n)] for i in range(n)])
        return coeffs

    def is_diagonal(self) -> bool:
        n = self.n
        return all(
            self.num_a[i][j] == 0 and self.num_b[i][j] == 0 for i in range(n) for j in range(n) if i != j
        )

    # -- row-vector action ---------------------------------------------
    def act(self, vec: "Vector") -> "Vector":
        """Image ``vec @ self`` of a normalized row vector."""
        den_v, va, vb = vec
        n = self.n
        if len(va) != n:
            raise ValueError("dimension mismatch")
        A, Bm = self.num_a, self.num_b
        out_a = [sum(va[k] * A[k][j] for k in range(n)) for j in range(n)]
        if self._irr or any(vb):
            out_b = [
                sum(va[k] * Bm[k][j] + vb[k] * A[k][j] for k in range(n)) for j in range(n)
            ]
            if any(vb) and self._irr:
                for j in range(n):
                    out_a[j] += 5 * sum(vb[k] * Bm[k][j] for k in range(n))
        else:
            out_b = [0] * n
        return make_vector(den_v * self.den, out_a, out_b)

    # -- JSON literal ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.n,
            "den": self.den,
            "entries": [[[a, b] for a, b in zip(ra, rb)] for ra, rb in zip(self.num_a, self.num_b)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> ExactMatrix:
        try:
            n = int(doc["dim"])
            den = int(doc["den"])
            entries = doc["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix literal: {exc}") from exc
        if len(entries) != n or any(len(r) != n for r in entries):
            raise ValueError("matrix literal does not match its dim")
        if den <= 0:
            raise ValueError("matrix literal denominator must be positive")
        a = [[int(e[0]) for e in row] for row in entries]
        b = [[int(e[1]) for e in row] for row in entries]
        return cls(den, a, b)


Vector = tuple  # (den, tuple[int, ...], tuple[int, ...]) normalized


def make_vector(den: int, a: Iterable[int], b: Iterable[int] | None = None) -> Vector:
    a = list(a)
    b = [0] * len(a) if b is None else list(b)
    if den < 0:
        den, a, b = -den, [-v for v in a], [-v for v in b]
    g = den
    for v in a:
        g = math.gcd(g, v)
    for v in b:
        g = math.gcd(g, v)
    if g > 1:
        den //= g
        a = [v // g for v in a]
        b = [v // g for v in b]
    return (den, tuple(a), tuple(b))


def vector_neg(vec: Vector) -> Vector:
    den, a, b = vec
    return (den, tuple(-v for v in a), tuple(-v for v in b))


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    return A * B


def mat_inverse(A: ExactMatrix) -> ExactMatrix:
    return A.inverse()


def trace(A: ExactMatrix) -> ExactScalar:
    return A.trace()


def char_poly(A: ExactMatrix) -> list[ExactScalar]:
    return A.char_poly()


def is_diagonal(A: ExactMatrix) -> bool:
    return A.is_diagonal()
