"""Plain and signed permutations in underline cycle notation.

Points are 1-indexed in text and 0-indexed internally.  A signed permutation
sends the basis vector ``e_i`` to ``-e_{p(i)}`` when ``i`` is underlined (its
column carries the -1) and to ``e_{p(i)}`` otherwise.

Products compose left to right: ``p * q`` applies ``p`` first, then ``q``.
This is the convention under which ``x1^2 y1^2`` of the even B_n structure is
the 5-cycle ``(1, n-1, 2, n, n-2)``.

Grammar of the text form (whitespace ignored)::

    expr  := cycle*
    cycle := '(' point (',' point)* ')'
    point := '_'? integer
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .algebra import ExactMatrix

__all__ = [
    "SignedPermutation",
    "parse_signed",
    "format_signed",
    "sp_compose",
    "sp_inverse",
    "sp_order",
    "cycle_type",
    "to_matrix",
    "to_display_matrix",
    "perm_compose",
    "perm_inverse",
    "perm_order",
    "perm_cycles",
    "perm_cycle_type",
]

Perm = tuple  # tuple[int, ...] with p[i] = image of i


# -- plain permutation tuples --------------------------------------------------

def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` then ``q``."""
    return tuple([q[i] for i in p])


def perm_inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = perm_inverse(p), -k
    result = perm_identity(len(p))
    base = p
    while k:
        if k & 1:
            result = perm_compose(result, base)
        base = perm_compose(base, base)
        k >>= 1
    return result


def perm_cycles(p: Perm) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def perm_cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in perm_cycles(p)), reverse=True))


def perm_order(p: Perm) -> int:
    return math.lcm(*(len(c) for c in perm_cycles(p))) if p else 1


def perm_is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


# -- signed permutations -------------------------------------------------------

@dataclass(frozen=True)
class SignedPermutation:
    """Monomial +-1 matrix stored as images plus a sign per source point."""

    images: tuple[int, ...]
    signs: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.signs):
            raise ValueError("images and signs differ in length")
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a permutation")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(tuple(range(n)), (False,) * n)

    @classmethod
    def from_perm(cls, images: Sequence[int], negated: Iterable[int] = ()) -> SignedPermutation:
        neg = set(negated)
        return cls(tuple(images), tuple(i in neg for i in range(len(images))))

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        q, qs = other.images, other.signs
        return SignedPermutation(
            tuple([q[j] for j in self.images]),
            tuple([s != qs[j] for s, j in zip(self.signs, self.images)]),
        )

    def inverse(self) -> SignedPermutation:
        n = self.degree
        img = [0] * n
        sg = [False] * n
        for i, (j, s) in enumerate(zip(self.images, self.signs)):
            img[j] = i
            sg[j] = s
        return SignedPermutation(tuple(img), tuple(sg))

    def __pow__(self, k: int) -> SignedPermutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = SignedPermutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return not any(self.signs) and perm_is_identity(self.images)

    def sign_count(self) -> int:
        return sum(self.signs)

    def is_even_signed(self) -> bool:
        """Membership predicate of W(D_n) inside W(B_n)."""
        return self.sign_count() % 2 == 0

    def is_diagonal(self) -> bool:
        return perm_is_identity(self.images)

    def plain(self) -> Perm:
        """Underlying permutation with the signs forgotten."""
        return self.images

    def signed_points(self) -> Perm:
        """Action on 2n signed points: ``i`` is ``+e_i``, ``n + i`` is ``-e_i``."""
        n = self.degree
        pos = [j + n if s else j for j, s in zip(self.images, self.signs)]
        neg = [j if s else j + n for j, s in zip(self.images, self.signs)]
        return tuple(pos + neg)

    @classmethod
    def from_signed_points(cls, pts: Sequence[int]) -> SignedPermutation:
        n = len(pts) // 2
        images, signs = [], []
        for i in range(n):
            t = pts[i]
            if t >= n:
                images.append(t - n)
                signs.append(True)
            else:
                images.append(t)
                signs.append(False)
            if pts[i + n] != (t - n if t >= n else t + n):
                raise ValueError("point permutation does not commute with negation")
        return cls(tuple(images), tuple(signs))

    def __str__(self) -> str:
        return format_signed(self)


# -- notation ------------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|,|_?\d+")


def _tokens(text: str) -> Iterator[str]:
    s = re.sub(r"\s+", "", text)
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise ValueError(f"unexpected character {s[pos]!r} at {pos} in {text!r}")
        yield m.group()
        pos = m.end()


def parse_cycles(text: str) -> list[list[tuple[int, bool]]]:
    """Cycles as lists of ``(point, underlined)`` with 1-indexed points."""
    cycles: list[list[tuple[int, bool]]] = []
    current: list[tuple[int, bool]] | None = None
    expect_point = False
    for tok in _tokens(text):
        if tok == "(":
            if current is not None:
                raise ValueError(f"nested '(' in {text!r}")
            current, expect_point = [], True
        elif tok == ")":
            if current is None or expect_point:
                raise ValueError(f"malformed cycle in {text!r}")
            cycles.append(current)
            current = None
        elif tok == ",":
            if current is None or expect_point:
                raise ValueError(f"misplaced ',' in {text!r}")
            expect_point = True
        else:
            if current is None or not expect_point:
                raise ValueError(f"misplaced point {tok!r} in {text!r}")
            under = tok.startswith("_")
            current.append((int(tok.lstrip("_")), under))
            expect_point = False
    if current is not None:
        raise ValueError(f"unterminated cycle in {text!r}")
    return cycles


def parse_signed(text: str, degree: int) -> SignedPermutation:
    """Parse underline notation, e.g. ``"(1,_2,3)(_5)"`` with degree 5."""
    images = list(range(degree))
    signs = [False] * degree
    seen: set[int] = set()
    for cyc in parse_cycles(text):
        for pt, _ in cyc:
            if not 1 <= pt <= degree:
                raise ValueError(f"point {pt} outside 1..{degree}")
            if pt in seen:
                raise ValueError(f"point {pt} repeated in {text!r}")
            seen.add(pt)
        for k, (pt, under) in enumerate(cyc):
            nxt = cyc[(k + 1) % len(cyc)][0]
            images[pt - 1] = nxt - 1
            signs[pt - 1] = under
    return SignedPermutation(tuple(images), tuple(signs))


def format_signed(p: SignedPermutation) -> str:
    """Canonical text: cycles ordered by least point, each starting there."""
    parts = []
    for cyc in perm_cycles(p.images):
        if len(cyc) == 1 and not p.signs[cyc[0]]:
            continue
        body = ",".join(("_" if p.signs[i] else "") + str(i + 1) for i in cyc)
        parts.append(f"({body})")
    return "".join(parts)


def sp_compose(p: SignedPermutation, q: SignedPermutation) -> SignedPermutation:
    return p * q


def sp_inverse(p: SignedPermutation) -> SignedPermutation:
    return p.inverse()


def sp_order(p: SignedPermutation) -> int:
    return math.lcm(*(length * (2 if sign < 0 else 1) for length, sign in cycle_type(p)))


def cycle_type(p: SignedPermutation) -> tuple[tuple[int, int], ...]:
    """Signed cycle type: sorted ``(length, +1 | -1)`` pairs.

    A cycle is negative when an odd number of its points carry a sign.  This is
    a complete conjugacy invariant of W(B_n).
    """
    out = []
    for cyc in perm_cycles(p.images):
        neg = sum(p.signs[i] for i in cyc) % 2
        out.append((len(cyc), -1 if neg else 1))
    return tuple(sorted(out, reverse=True))


def to_matrix(p: SignedPermutation) -> ExactMatrix:
    """Row-action monomial matrix: row ``i`` holds the sign at column ``p(i)``.

    This is a homomorphism for the left-to-right product.  The layout printed
    in the literature is its transpose, see :func:`to_display_matrix`.
    """
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i, (j, s) in enumerate(zip(p.images, p.signs)):
        rows[i][j] = -1 if s else 1
    return ExactMatrix(1, rows)


def to_display_matrix(p: SignedPermutation) -> ExactMatrix:
    """Column convention: column ``i`` holds the sign at row ``p(i)``."""
    return to_matrix(p).transpose()
