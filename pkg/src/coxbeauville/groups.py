"""Finite irreducible Coxeter groups in concrete faithful representations.

A/B/D live in the signed permutations, I2(k) is an abstract dihedral group,
E/F use the root-basis (Cartan) representation over Q, and H3/H4 use 4x4
matrices over Q(sqrt 5) whose simple reflections are the catalogued ones.
Each :class:`RealizedGroup` carries a faithful permutation action so the
stabilizer-chain engine can work on every family.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Sequence

from .algebra import ExactMatrix, ExactScalar, Vector, make_vector
from .perms import (
    Perm,
    SignedPermutation,
    format_signed,
    parse_signed,
    perm_compose,
    perm_inverse,
    perm_order,
    to_matrix,
)
from .stabchain import StabilizerChain, conjugacy_class

__all__ = [
    "CoxeterType",
    "DihedralElement",
    "ProductElement",
    "RealizedGroup",
    "NotInGroup",
    "build_coxeter",
    "derive_action",
    "membership_matrix",
    "figure_basis_group",
    "permutation_group",
    "direct_product",
]

ROOT_BOUND = 10_000


class NotInGroup(ValueError):
    """An element does not belong to the group it was checked against."""


# -- types ------------------------------------------------------------------------

_EXCEPTIONAL = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "H3": 120, "H4": 14400}


@dataclass(frozen=True)
class CoxeterType:
    family: str
    rank: int | None = None

    def __post_init__(self) -> None:
        f, r = self.family, self.rank
        if f in _EXCEPTIONAL:
            if r is not None:
                raise ValueError(f"{f} takes no parameter")
            return
        minimum = {"A": 1, "B": 2, "D": 4, "I2": 3}.get(f)
        if minimum is None:
            raise ValueError(f"unknown Coxeter family {f!r}")
        if r is None or r < minimum:
            raise ValueError(f"{f} needs parameter >= {minimum}, got {r}")

    @classmethod
    def parse(cls, text: str) -> CoxeterType:
        s = text.strip().upper().replace(" ", "")
        if s in _EXCEPTIONAL:
            return cls(s)
        m = re.fullmatch(r"I2\((\d+)\)", s)
        if m:
            return cls("I2", int(m.group(1)))
        m = re.fullmatch(r"([ABD])(\d+)", s)
        if m:
            return cls(m.group(1), int(m.group(2)))
        raise ValueError(f"bad type descriptor {text!r}")

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2({self.rank})"
        return self.family + (str(self.rank) if self.rank is not None else "")

    def order(self) -> int:
        f, n = self.family, self.rank
        if f == "A":
            return math.factorial(n + 1)
        if f == "B":
            return 2**n * math.factorial(n)
        if f == "D":
            return 2 ** (n - 1) * math.factorial(n)
        if f == "I2":
            return 2 * n
        return _EXCEPTIONAL[f]

    def abelianization_rank(self) -> int:
        """Dimension of G/G' over F_2 (it is always elementary abelian)."""
        if self.family in ("B", "F4"):
            return 2
        if self.family == "I2":
            return 2 if self.rank % 2 == 0 else 1
        return 1

    def coxeter_matrix(self) -> list[list[int]]:
        """Matrix of m_ij in the generator order used by :func:`build_coxeter`."""
        f, n = self.family, self.rank
        if f == "I2":
            return [[1, n], [n, 1]]
        if f in ("A", "B", "D"):
            r = n
            m = [[1 if i == j else 2 for j in range(r)] for i in range(r)]
            for i in range(r - 1):
                m[i][i + 1] = m[i + 1][i] = 3
            if f == "B":
                m[r - 2][r - 1] = m[r - 1][r - 2] = 4
            if f == "D":
                m[r - 2][r - 1] = m[r - 1][r - 2] = 2
                m[r - 3][r - 1] = m[r - 1][r - 3] = 3
            return m
        edges = {
            "E6": [(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (1, 3, 3)],
            "E7": [(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (1, 3, 3)],
            "E8": [(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3), (1, 3, 3)],
            "F4": [(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            "H3": [(0, 1, 5), (1, 2, 3)],
            "H4": [(0, 1, 5), (1, 2, 3), (2, 3, 3)],
        }[f]
        r = 1 + max(max(a, b) for a, b, _ in edges)
        m = [[1 if i == j else 2 for j in range(r)] for i in range(r)]
        for a, b, w in edges:
            m[a][b] = m[b][a] = w
        return m


# -- non-matrix element types -------------------------------------------------------

@dataclass(frozen=True)
class DihedralElement:
    """The affine map ``x -> sign*x + shift`` of Z/k."""

    k: int
    shift: int
    flip: bool

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        if not isinstance(other, DihedralElement):
            return NotImplemented
        if other.k != self.k:
            raise ValueError("dihedral groups differ")
        s = -1 if other.flip else 1
        return DihedralElement(self.k, (s * self.shift + other.shift) % self.k, self.flip != other.flip)

    def inverse(self) -> DihedralElement:
        if self.flip:
            return self
        return DihedralElement(self.k, -self.shift % self.k, False)

    def __pow__(self, e: int) -> DihedralElement:
        if self.flip:
            return self if e % 2 else DihedralElement(self.k, 0, False)
        return DihedralElement(self.k, self.shift * e % self.k, False)

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.flip

    def __str__(self) -> str:
        return f"x->{'-' if self.flip else ''}x+{self.shift} (mod {self.k})"


@dataclass(frozen=True)
class ProductElement:
    left: Any
    right: Any

    def __mul__(self, other: ProductElement) -> ProductElement:
        return ProductElement(self.left * other.left, self.right * other.right)

    def inverse(self) -> ProductElement:
        return ProductElement(self.left.inverse(), self.right.inverse())

    def __pow__(self, e: int) -> ProductElement:
        return ProductElement(self.left**e, self.right**e)

    def is_identity(self) -> bool:
        return self.left.is_identity() and self.right.is_identity()


# -- actions ------------------------------------------------------------------------

class FiniteAction:
    """Faithful action on points ``0..degree-1``."""

    kind = "abstract"
    degree: int

    def labels(self) -> list[str]:
        return [str(i) for i in range(self.degree)]

    def perm(self, g) -> Perm:
        raise NotImplementedError

    def element(self, p: Perm):
        raise NotImplementedError

    def image(self, g, point: int) -> int:
        return self.perm(g)[point]


class SignedPointAction(FiniteAction):
    kind = "signed-perm"

    def __init__(self, n: int) -> None:
        self.n = n
        self.degree = 2 * n

    def labels(self) -> list[str]:
        return [f"+{i + 1}" for i in range(self.n)] + [f"-{i + 1}" for i in range(self.n)]

    def perm(self, g: SignedPermutation) -> Perm:
        return g.signed_points()

    def element(self, p: Perm) -> SignedPermutation:
        return SignedPermutation.from_signed_points(p)


class PlainPointAction(FiniteAction):
    kind = "perm"

    def __init__(self, n: int) -> None:
        self.degree = n

    def perm(self, g: SignedPermutation) -> Perm:
        if any(g.signs):
            raise NotInGroup("signed element in a plain permutation group")
        return g.images

    def element(self, p: Perm) -> SignedPermutation:
        return SignedPermutation(tuple(p), (False,) * len(p))


class RegularDihedralAction(FiniteAction):
    """Right regular action of I2(k) on its own 2k elements."""

    kind = "dihedral"

    def __init__(self, k: int) -> None:
        self.k = k
        self.degree = 2 * k
        self._points = [DihedralElement(k, s, f) for f in (False, True) for s in range(k)]

    def _index(self, g: DihedralElement) -> int:
        return g.shift + (self.k if g.flip else 0)

    def labels(self) -> list[str]:
        return [str(p) for p in self._points]

    def perm(self, g: DihedralElement) -> Perm:
        return tuple(self._index(p * g) for p in self._points)

    def element(self, p: Perm) -> DihedralElement:
        return self._points[p[0]]


class RootAction(FiniteAction):
    """Row-vector action of a matrix group on a finite set of root vectors."""

    kind = "matrix"

    def __init__(self, roots: list[Vector]) -> None:
        self.roots = roots
        self.index = {r: i for i, r in enumerate(roots)}
        self.degree = len(roots)
        self.dim = len(roots[0][1])
        self._cache: dict[ExactMatrix, Perm] = {}
        self._basis = _independent_rows(roots, self.dim)

    def labels(self) -> list[str]:
        return [_vector_str(r) for r in self.roots]

    def perm(self, g: ExactMatrix) -> Perm:
        p = self._cache.get(g)
        if p is None:
            out = []
            for r in self.roots:
                i = self.index.get(g.act(r))
                if i is None:
                    raise NotInGroup("matrix does not preserve the root set")
                out.append(i)
            p = tuple(out)
            if len(self._cache) > 50_000:
                self._cache.clear()
            self._cache[g] = p
        return p

    def element(self, p: Perm) -> ExactMatrix:
        # M = R^-1 R' for a basis R of roots and their images R'
        idx = self._basis
        R = _vectors_to_matrix([self.roots[i] for i in idx])
        Rp = _vectors_to_matrix([self.roots[p[i]] for i in idx])
        return R.inverse() * Rp


class ProductAction(FiniteAction):
    kind = "product"

    def __init__(self, a: FiniteAction, b: FiniteAction) -> None:
        self.a, self.b = a, b
        self.degree = a.degree + b.degree

    def labels(self) -> list[str]:
        return [f"L{x}" for x in self.a.labels()] + [f"R{x}" for x in self.b.labels()]

    def perm(self, g: ProductElement) -> Perm:
        off = self.a.degree
        return self.a.perm(g.left) + tuple(off + v for v in self.b.perm(g.right))

    def element(self, p: Perm) -> ProductElement:
        off = self.a.degree
        return ProductElement(self.a.element(p[:off]), self.b.element(tuple(v - off for v in p[off:])))


def _vector_str(v: Vector) -> str:
    den, a, b = v
    parts = []
    for x, y in zip(a, b):
        s = str(ExactScalar(Fraction(x, den), Fraction(y, den)))
        parts.append(s)
    return "(" + ",".join(parts) + ")"


def _vectors_to_matrix(vs: Sequence[Vector]) -> ExactMatrix:
    den = math.lcm(*(v[0] for v in vs))
    a = [[x * (den // v[0]) for x in v[1]] for v in vs]
    b = [[x * (den // v[0]) for x in v[2]] for v in vs]
    return ExactMatrix(den, a, b)


def _independent_rows(vs: Sequence[Vector], dim: int) -> list[int]:
    """Indices of ``dim`` linearly independent vectors (greedy elimination)."""
    chosen: list[int] = []
    echelon: list[list[ExactScalar]] = []
    pivots: list[int] = []
    for idx, v in enumerate(vs):
        den, a, b = v
        row = [ExactScalar(Fraction(x, den), Fraction(y, den)) for x, y in zip(a, b)]
        for prow, pc in zip(echelon, pivots):
            if row[pc]:
                f = row[pc] / prow[pc]
                row = [x - f * y for x, y in zip(row, prow)]
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is None:
            continue
        echelon.append(row)
        pivots.append(pc)
        chosen.append(idx)
        if len(chosen) == dim:
            return chosen
    raise ValueError("roots do not span the space; representation is not faithful")


def _proportional(u: Vector, v: Vector) -> bool:
    ua = [ExactScalar(x, y) for x, y in zip(u[1], u[2])]
    va = [ExactScalar(x, y) for x, y in zip(v[1], v[2])]
    i = next(j for j, x in enumerate(ua) if x)
    if not va[i]:
        return False
    return all(ua[j] * va[i] == va[j] * ua[i] for j in range(len(ua)))


def reflection_root(M: ExactMatrix) -> Vector:
    """A spanning vector of the image of ``v -> v(M - I)`` for a reflection."""
    D = M - ExactMatrix.identity(M.n)
    for i in range(M.n):
        if any(D.num_a[i]) or any(D.num_b[i]):
            return make_vector(D.den, D.num_a[i], D.num_b[i])
    raise ValueError("identity matrix has no root")


def root_closure(gens: Sequence[ExactMatrix], seeds: Sequence[Vector], bound: int = ROOT_BOUND) -> list[Vector]:
    """Union of the orbits of ``seeds``, skipping seeds proportional to known roots."""
    roots: list[Vector] = []
    known: set[Vector] = set()
    for seed in seeds:
        if seed in known or any(_proportional(seed, r) for r in roots):
            continue
        known.add(seed)
        roots.append(seed)
        k = len(roots) - 1
        while k < len(roots):
            v = roots[k]
            for g in gens:
                w = g.act(v)
                if w not in known:
                    if len(roots) >= bound:
                        raise ValueError(f"root orbit exceeds {bound}; wrong generator matrix?")
                    known.add(w)
                    roots.append(w)
            k += 1
    return roots


# -- the realized group ---------------------------------------------------------------

class RealizedGroup:
    """A finite group given by generators in a concrete representation.

    ``expected_order`` is a claim, checked the first time the chain is built.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[Any],
        action: FiniteAction,
        expected_order: int,
        identity: Any,
        ctype: CoxeterType | None = None,
        coxeter_matrix: list[list[int]] | None = None,
    ) -> None:
        self.name = name
        self.generators = list(generators)
        self.action = action
        self.expected_order = expected_order
        self.identity = identity
        self.ctype = ctype
        self.coxeter_matrix = coxeter_matrix

    def __repr__(self) -> str:
        return f"RealizedGroup({self.name}, kind={self.kind}, order={self.expected_order})"

    @property
    def kind(self) -> str:
        return self.action.kind

    @property
    def degree(self) -> int:
        return self.action.degree

    # element interface
    def perm(self, g) -> Perm:
        return self.action.perm(g)

    def element(self, p: Perm):
        return self.action.element(p)

    def mul(self, g, h):
        return g * h

    def inv(self, g):
        return g.inverse()

    def pow(self, g, m: int):
        return g**m

    def order_of(self, g) -> int:
        return perm_order(self.perm(g))

    def conj(self, g, h):
        """``h^-1 g h``."""
        return h.inverse() * g * h

    def eq(self, g, h) -> bool:
        return self.perm(g) == self.perm(h)

    @cached_property
    def generator_perms(self) -> list[Perm]:
        return [self.perm(g) for g in self.generators]

    @cached_property
    def chain(self) -> StabilizerChain:
        ch = StabilizerChain(self.degree, self.generator_perms)
        if ch.order() != self.expected_order:
            raise AssertionError(
                f"{self.name}: stabilizer chain order {ch.order()} != expected {self.expected_order}"
            )
        return ch

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g) -> bool:
        try:
            p = self.perm(g)
        except (NotInGroup, ValueError):
            return False
        return self.chain.contains(p)

    def check_coxeter_relations(self) -> bool:
        if self.coxeter_matrix is None:
            raise ValueError(f"{self.name} has no Coxeter matrix")
        ps = self.generator_perms
        for i, p in enumerate(ps):
            for j, q in enumerate(ps):
                if perm_order(perm_compose(p, q)) != self.coxeter_matrix[i][j]:
                    return False
        return True

    # text forms
    def format(self, g) -> str | dict:
        if isinstance(g, SignedPermutation):
            return format_signed(g)
        if isinstance(g, ExactMatrix):
            return g.to_json()
        if isinstance(g, ProductElement):
            a = self.action
            assert isinstance(a, ProductAction)
            return format_signed(PlainPointAction(self.degree).element(self.perm(g)))
        return str(g)

    def parse(self, value):
        """Element from cycle notation or a matrix literal."""
        if isinstance(value, dict):
            return ExactMatrix.from_json(value)
        if isinstance(self.action, (SignedPointAction,)):
            return parse_signed(value, self.action.n)
        if isinstance(self.action, PlainPointAction):
            return parse_signed(value, self.degree)
        if isinstance(self.action, ProductAction):
            p = parse_signed(value, self.degree)
            if any(p.signs):
                raise ValueError("product elements are plain permutations")
            return self.element(p.images)
        raise ValueError(f"cannot parse elements of {self.name}")


def derive_action(G: RealizedGroup) -> FiniteAction:
    return G.action


def membership_matrix(G: RealizedGroup, M: ExactMatrix):
    """Certify ``M`` as a member of ``G`` through its root permutation."""
    if not isinstance(G.action, RootAction):
        raise ValueError(f"{G.name} is not a matrix group")
    if M.n != G.action.dim:
        raise ValueError(f"dimension {M.n} does not match {G.action.dim}")
    p = G.perm(M)
    if not G.chain.contains(p):
        raise NotInGroup("root permutation is not in the group")
    return M


# -- constructors -------------------------------------------------------------------------

def _signed_group(ct: CoxeterType) -> RealizedGroup:
    f, n = ct.family, ct.rank
    if f == "A":
        deg = n + 1
        gens = [parse_signed(f"({i},{i + 1})", deg) for i in range(1, n + 1)]
        action: FiniteAction = PlainPointAction(deg)
    else:
        deg = n
        gens = [parse_signed(f"({i},{i + 1})", deg) for i in range(1, n)]
        gens.append(parse_signed(f"(_{n})", n) if f == "B" else parse_signed(f"(_{n - 1},_{n})", n))
        action = SignedPointAction(n)
    return RealizedGroup(
        str(ct), gens, action, ct.order(), SignedPermutation.identity(deg), ct, ct.coxeter_matrix()
    )


def _simple_roots(family: str) -> list[list[Fraction]]:
    h = Fraction(1, 2)
    if family == "F4":
        return [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
            [h, -h, -h, -h],
        ]
    e8 = [[h, -h, -h, -h, -h, -h, -h, h]]
    e8.append([1, 1, 0, 0, 0, 0, 0, 0])
    for i in range(6):
        v = [0] * 8
        v[i], v[i + 1] = -1, 1
        e8.append(v)
    return e8[: int(family[1])]


def _cartan_group(ct: CoxeterType) -> RealizedGroup:
    roots = [[Fraction(x) for x in r] for r in _simple_roots(ct.family)]
    r = len(roots)
    dot = lambda u, v: sum(x * y for x, y in zip(u, v))
    gens = []
    for i in range(r):
        rows = [[Fraction(int(j == c)) for c in range(r)] for j in range(r)]
        for j in range(r):
            a_ij = 2 * dot(roots[i], roots[j]) / dot(roots[i], roots[i])
            rows[j][i] = Fraction(int(i == j)) - a_ij
        gens.append(ExactMatrix.from_rows(rows))
    seeds = [make_vector(1, [int(i == j) for j in range(r)]) for i in range(r)]
    action = RootAction(root_closure(gens, seeds))
    return RealizedGroup(str(ct), gens, action, ct.order(), ExactMatrix.identity(r), ct, ct.coxeter_matrix())


def h4_simple_reflections() -> list[ExactMatrix]:
    """The catalogued H4 reflections, in 5-3-3 diagram order."""
    from .paperdata import load_exceptional

    mats = [ExactMatrix.from_json(m) for m in load_exceptional("H4")["simple_reflections"]]
    # catalogue order is (3,4), (2,3), (1,2), sqrt5-reflection: a 3-3-5 path
    return mats[::-1]


def fixed_vectors(gens: Sequence[ExactMatrix]) -> list[Vector]:
    """A basis of the row vectors fixed by every matrix in ``gens``."""
    n = gens[0].n
    # equations sum_k v_k (M - I)[k][j] = 0, one per (M, j)
    eqs = []
    for M in gens:
        D = (M - ExactMatrix.identity(n)).rows()
        eqs += [[D[k][j] for k in range(n)] for j in range(n)]
    pivots: list[int] = []
    rows: list[list[ExactScalar]] = []
    for row in eqs:
        for prow, pc in zip(rows, pivots):
            if row[pc]:
                f = row[pc] / prow[pc]
                row = [x - f * y for x, y in zip(row, prow)]
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is not None:
            rows.append(row)
            pivots.append(pc)
    # back substitution to reduced form
    for i in range(len(rows) - 1, -1, -1):
        pc = pivots[i]
        rows[i] = [x / rows[i][pc] for x in rows[i]]
        for k in range(i):
            if rows[k][pc]:
                f = rows[k][pc]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[i])]
    out = []
    for free in (j for j in range(n) if j not in pivots):
        v = [ExactScalar(0)] * n
        v[free] = ExactScalar(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[free]
        den = math.lcm(*(x.a.denominator for x in v), *(x.b.denominator for x in v))
        out.append(make_vector(den, [int(x.a * den) for x in v], [int(x.b * den) for x in v]))
    return out


def _h_group(ct: CoxeterType) -> RealizedGroup:
    gens = h4_simple_reflections()
    if ct.family == "H3":
        gens = gens[:3]
    # a fixed vector completes the roots to a spanning set when the rank is short
    seeds = [reflection_root(g) for g in gens] + fixed_vectors(gens)
    action = RootAction(root_closure(gens, seeds))
    return RealizedGroup(str(ct), gens, action, ct.order(), ExactMatrix.identity(4), ct, ct.coxeter_matrix())


def _dihedral_group(ct: CoxeterType) -> RealizedGroup:
    k = ct.rank
    gens = [DihedralElement(k, 0, True), DihedralElement(k, 1, True)]
    return RealizedGroup(
        str(ct), gens, RegularDihedralAction(k), 2 * k, DihedralElement(k, 0, False), ct, ct.coxeter_matrix()
    )


def build_coxeter(t: CoxeterType | str) -> RealizedGroup:
    ct = CoxeterType.parse(t) if isinstance(t, str) else t
    if ct.family in ("A", "B", "D"):
        return _signed_group(ct)
    if ct.family == "I2":
        return _dihedral_group(ct)
    if ct.family in ("H3", "H4"):
        return _h_group(ct)
    return _cartan_group(ct)


def figure_basis_group(family: str, elements: Sequence[ExactMatrix]) -> RealizedGroup:
    """W(E_n) in the basis of the catalogued structure matrices.

    The catalogued matrices generate a group F acting on the orbit of
    ``e1 - e2``.  Inside F the transposition matrices give an A_{n-1} chain;
    a conjugate of ``(1,2)`` is searched that attaches at the branch node.
    The resulting n reflections satisfy the E_n Coxeter relations and
    generate a group of order |W(E_n)| equal to |F|, so F is W(E_n).
    """
    ct = CoxeterType.parse(family)
    if ct.family not in ("E6", "E7", "E8"):
        raise ValueError("figure basis exists only for E6, E7, E8")
    n = elements[0].n
    seed = make_vector(1, [1, -1] + [0] * (n - 2))
    roots = root_closure(list(elements), [seed])
    action = RootAction(roots)
    fig_chain = StabilizerChain(action.degree, [action.perm(m) for m in elements])
    if fig_chain.order() != ct.order():
        raise AssertionError(f"catalogued matrices generate order {fig_chain.order()}, not {ct.order()}")
    swaps = []
    for j in range(n - 1):
        img = list(range(n))
        img[j], img[j + 1] = j + 1, j
        s = to_matrix(SignedPermutation(tuple(img), (False,) * n))
        if not fig_chain.contains(action.perm(s)):
            raise NotInGroup(f"transposition ({j + 1},{j + 2}) is not in the figure group")
        swaps.append(s)
    s_perm = action.perm(swaps[0])
    fig_perms = [action.perm(m) for m in elements]
    cls = conjugacy_class(s_perm, fig_perms, with_conjugators=True)
    swap_perms = [action.perm(s) for s in swaps]
    for branch in (2, n - 4):
        for refl in cls:
            ok = True
            for j, sp in enumerate(swap_perms):
                want = 3 if j == branch else 2
                if perm_order(perm_compose(refl, sp)) != want:
                    ok = False
                    break
            if not ok:
                continue
            r = action.element(refl)
            gens = [swaps[0], r] + swaps[1:]
            G = RealizedGroup(
                f"{ct} (figure basis)", gens, action, ct.order(), ExactMatrix.identity(n), ct, ct.coxeter_matrix()
            )
            if not G.check_coxeter_relations():
                continue
            G.chain  # order check
            return G
    raise AssertionError("no reflection completes the E_n diagram")


def permutation_group(name: str, gens: Sequence[SignedPermutation], degree: int, expected_order: int) -> RealizedGroup:
    return RealizedGroup(name, gens, PlainPointAction(degree), expected_order, SignedPermutation.identity(degree))


def direct_product(G1: RealizedGroup, G2: RealizedGroup) -> RealizedGroup:
    gens = [ProductElement(g, G2.identity) for g in G1.generators]
    gens += [ProductElement(G1.identity, g) for g in G2.generators]
    return RealizedGroup(
        f"{G1.name}x{G2.name}",
        gens,
        ProductAction(G1.action, G2.action),
        G1.expected_order * G2.expected_order,
        ProductElement(G1.identity, G2.identity),
    )
