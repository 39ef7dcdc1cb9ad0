"""Permutation group machinery on tuples.

Everything here works on plain permutation tuples ``p`` with ``p[i]`` the
image of ``i``, composed left to right.  Group wrappers in :mod:`groups` turn
their elements into such tuples through a faithful action.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .perms import (
    Perm,
    perm_compose,
    perm_cycles,
    perm_identity,
    perm_inverse,
    perm_is_identity,
    perm_order,
    perm_power,
)

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 10**6


class BoundExceeded(RuntimeError):
    """An enumeration or orbit would exceed its configured size bound."""


@dataclass
class _Level:
    point: int
    gens: list[Perm]
    trans: dict[int, Perm]
    trans_inv: dict[int, Perm]
    orbit: list[int]
    done: set[tuple[int, int]] = field(default_factory=set)

    def extend(self, new_gens: Sequence[Perm]) -> None:
        self.gens.extend(new_gens)
        queue = deque(self.orbit)
        while queue:
            gamma = queue.popleft()
            u = self.trans[gamma]
            for s in self.gens:
                delta = s[gamma]
                if delta not in self.trans:
                    w = perm_compose(u, s)
                    self.trans[delta] = w
                    self.trans_inv[delta] = perm_inverse(w)
                    self.orbit.append(delta)
                    queue.append(delta)


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims.

    Base points are chosen as the least point moved by the generator that
    needs one, so the chain depends only on the generator list.

    ``stop_at`` lets callers that already hold an upper bound on the group
    order stop as soon as the partial chain reaches it.  Partial chains bound
    the true order from below, so reaching the bound proves equality.
    """

    def __init__(self, degree: int, gens: Iterable[Perm], stop_at: int | None = None) -> None:
        self.degree = degree
        self.identity = perm_identity(degree)
        uniq: list[Perm] = []
        seen = set()
        for g in gens:
            g = tuple(g)
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a degree-{degree} chain")
            if g not in seen and not perm_is_identity(g):
                seen.add(g)
                uniq.append(g)
        self.gens = uniq
        self.levels: list[_Level] = []
        self.complete = True
        self._build(stop_at)

    # -- construction ------------------------------------------------------
    def _new_level(self, point: int, gens: list[Perm]) -> _Level:
        lvl = _Level(point, [], {point: self.identity}, {point: self.identity}, [point])
        lvl.extend(gens)
        return lvl

    def _build(self, stop_at: int | None) -> None:
        base: list[int] = []
        for g in self.gens:
            if all(g[b] == b for b in base):
                base.append(next(i for i, v in enumerate(g) if v != i))
        for i, b in enumerate(base):
            stab = [g for g in self.gens if all(g[c] == c for c in base[:i])]
            self.levels.append(self._new_level(b, stab))
        if stop_at is not None and self.order() >= stop_at:
            return
        i = len(self.levels) - 1
        while i >= 0:
            added_at = self._process_level(i)
            if added_at is None:
                i -= 1
                continue
            if stop_at is not None and self.order() >= stop_at:
                logger.debug("chain reached target order %d early", stop_at)
                return
            i = added_at

    def _process_level(self, i: int) -> int | None:
        lvl = self.levels[i]
        k = 0
        while k < len(lvl.orbit):
            beta = lvl.orbit[k]
            u = lvl.trans[beta]
            for gi, s in enumerate(lvl.gens):
                if (beta, gi) in lvl.done:
                    continue
                lvl.done.add((beta, gi))
                sg = perm_compose(perm_compose(u, s), lvl.trans_inv[s[beta]])
                h, j = self.sift(sg, i + 1)
                if not perm_is_identity(h):
                    self._add_strong(h, i + 1, j)
                    return j
            k += 1
        return None

    def _add_strong(self, h: Perm, lo: int, j: int) -> None:
        if j == len(self.levels):
            moved = next(p for p, v in enumerate(h) if v != p)
            self.levels.append(self._new_level(moved, []))
        for l in range(lo, j + 1):
            self.levels[l].extend([h])

    # -- queries -----------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    @property
    def strong_generators(self) -> list[Perm]:
        out, seen = [], set()
        for lvl in self.levels:
            for g in lvl.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def order(self) -> int:
        return math.prod(len(lvl.orbit) for lvl in self.levels)

    def transversal_sizes(self) -> list[int]:
        return [len(lvl.orbit) for lvl in self.levels]

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through levels ``start..``; return residue and stop level."""
        for l in range(start, len(self.levels)):
            lvl = self.levels[l]
            beta = g[lvl.point]
            inv = lvl.trans_inv.get(beta)
            if inv is None:
                return g, l
            g = perm_compose(g, inv)
        return g, len(self.levels)

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        h, _ = self.sift(tuple(g))
        return perm_is_identity(h)

    __contains__ = contains

    def base_image_key(self, g: Perm) -> tuple[int, ...]:
        """Images of the base points, which determine a member uniquely."""
        return tuple(g[b] for b in self.base)

    def elements(self) -> Iterator[Perm]:
        """Every member exactly once, as products of transversal elements."""
        levels = self.levels
        if not levels:
            yield self.identity
            return

        def rec(l: int, acc: Perm) -> Iterator[Perm]:
            if l < 0:
                yield acc
                return
            for u in levels[l].trans.values():
                yield from rec(l - 1, perm_compose(acc, u))

        yield from rec(len(levels) - 1, self.identity)


def build_chain(degree: int, gens: Iterable[Perm], stop_at: int | None = None) -> StabilizerChain:
    return StabilizerChain(degree, gens, stop_at=stop_at)


# -- orbits, transitivity, blocks ------------------------------------------------

def orbit(gens: Sequence[Perm], point: int) -> list[int]:
    seen = {point}
    out = [point]
    for p in out:
        for g in gens:
            q = g[p]
            if q not in seen:
                seen.add(q)
                out.append(q)
    return out


def orbits(gens: Sequence[Perm], degree: int) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for p in range(degree):
        if p not in seen:
            orb = orbit(gens, p)
            seen.update(orb)
            out.append(orb)
    return out


def is_transitive(gens: Sequence[Perm], degree: int) -> bool:
    if degree <= 1:
        return True
    return len(orbit(gens, 0)) == degree


def minimal_block(gens: Sequence[Perm], degree: int, alpha: int, beta: int) -> list[int]:
    """Smallest block of imprimitivity containing ``alpha`` and ``beta``."""
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
            queue.append((a, b))

    union(alpha, beta)
    while queue:
        a, b = queue.popleft()
        for g in gens:
            union(g[a], g[b])
    root = find(alpha)
    return [p for p in range(degree) if find(p) == root]


def block_system(gens: Sequence[Perm], degree: int) -> list[int] | None:
    """A nontrivial block through point 0, or ``None`` for a primitive group."""
    for beta in range(1, degree):
        blk = minimal_block(gens, degree, 0, beta)
        if len(blk) < degree:
            return blk
    return None


def is_primitive(gens: Sequence[Perm], degree: int) -> bool:
    if not is_transitive(gens, degree):
        raise ValueError("primitivity is only defined for transitive groups")
    return block_system(gens, degree) is None


# -- Jones generation criterion ---------------------------------------------------

@dataclass(frozen=True)
class ContainsAlt:
    """Proof that a primitive group of degree n contains Alt(n)."""

    degree: int
    cycle_length: int
    word: str
    element: Perm


@dataclass(frozen=True)
class NoCertificate:
    reason: str


def _single_cycle_length(p: Perm) -> int | None:
    moved = [c for c in perm_cycles(p) if len(c) > 1]
    if len(moved) == 1:
        return len(moved[0])
    return None


def jones_certificate(
    gens: Sequence[Perm],
    names: Sequence[str] | None = None,
    max_word: int = 4,
) -> ContainsAlt | NoCertificate:
    """Primitive group containing an m-cycle, 2 <= m <= n-3, contains Alt(n).

    Candidates are powers of words of length up to ``max_word`` in the
    generators and their inverses, which covers witnesses like ``x^2 y^2``.
    A ``NoCertificate`` result is not a disproof.
    """
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    if n < 5:
        raise ValueError("degree must be at least 5")
    names = list(names) if names is not None else [f"g{i + 1}" for i in range(len(gens))]
    if not is_transitive(gens, n):
        return NoCertificate("intransitive")
    if block_system(gens, n) is not None:
        return NoCertificate("imprimitive")
    letters = [(g, nm) for g, nm in zip(gens, names)]
    letters += [(perm_inverse(g), nm + "^-1") for g, nm in zip(gens, names)]
    seen: set[Perm] = set()
    frontier: list[tuple[Perm, str]] = [(perm_identity(n), "")]
    for _ in range(max_word):
        nxt = []
        for w, label in frontier:
            for g, nm in letters:
                p = perm_compose(w, g)
                if p in seen:
                    continue
                seen.add(p)
                word = f"{label}*{nm}" if label else nm
                nxt.append((p, word))
                o = perm_order(p)
                for k in range(1, o):
                    if o % k:
                        continue
                    q = perm_power(p, k)
                    m = _single_cycle_length(q)
                    if m is not None and 2 <= m <= n - 3:
                        return ContainsAlt(n, m, f"({word})^{k}" if k > 1 else word, q)
        frontier = nxt
    return NoCertificate("no short cycle found")


# -- subgroups --------------------------------------------------------------------

def _conj(g: Perm, h: Perm) -> Perm:
    """``h^-1 g h``."""
    return perm_compose(perm_compose(perm_inverse(h), g), h)


def commutator(a: Perm, b: Perm) -> Perm:
    """``[a, b] = a^-1 b^-1 a b``."""
    return perm_compose(perm_compose(perm_inverse(a), perm_inverse(b)), perm_compose(a, b))


def normal_closure(degree: int, group_gens: Sequence[Perm], seeds: Iterable[Perm]) -> StabilizerChain:
    """Chain of the smallest normal subgroup containing ``seeds``."""
    ngens = [tuple(s) for s in seeds if not perm_is_identity(tuple(s))]
    chain = StabilizerChain(degree, ngens)
    queue = deque(chain.gens)
    while queue:
        x = queue.popleft()
        for g in group_gens:
            y = _conj(x, g)
            if not chain.contains(y):
                chain = StabilizerChain(degree, chain.strong_generators + [y])
                queue.append(y)
    return chain


def derived_subgroup(degree: int, gens: Sequence[Perm]) -> StabilizerChain:
    seeds = [commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    return normal_closure(degree, gens, seeds)


@dataclass
class Character2:
    """Homomorphism to {+1, -1}, given by its values on the generators."""

    values: tuple[int, ...]
    kernel: StabilizerChain

    def __call__(self, g: Perm) -> int:
        return 1 if self.kernel.contains(g) else -1


def index2_subgroups(degree: int, gens: Sequence[Perm], group_order: int | None = None) -> list[Character2]:
    """All nontrivial homomorphisms to C2, kernels verified to have index 2.

    The generators' images in the largest elementary abelian 2-quotient
    ``G / G'G^2`` are reduced to a basis; each nonzero functional on that basis
    fixes the sign of every generator.
    """
    if group_order is None:
        group_order = StabilizerChain(degree, gens).order()
    seeds = [commutator(a, b) for a, b in itertools.combinations(gens, 2)]
    seeds += [perm_compose(g, g) for g in gens]
    frattini = normal_closure(degree, gens, seeds)
    basis: list[int] = []
    coords: list[tuple[int, ...]] = []
    for idx, g in enumerate(gens):
        found = None
        for bits in itertools.product((0, 1), repeat=len(basis)):
            h = g
            for b, bit in zip(basis, bits):
                if bit:
                    h = perm_compose(h, gens[b])
            if frattini.contains(h):
                found = bits
                break
        if found is None:
            basis.append(idx)
            # earlier coordinate vectors gain a zero in the new slot
            coords = [c + (0,) for c in coords]
            coords.append(tuple(int(i == len(basis) - 1) for i in range(len(basis))))
        else:
            coords.append(tuple(found))
    r = len(basis)
    chars = []
    for functional in itertools.product((0, 1), repeat=r):
        if not any(functional):
            continue
        values = tuple(-1 if sum(f * c for f, c in zip(functional, co)) % 2 else 1 for co in coords)
        kgens = list(frattini.strong_generators)
        odd = [g for g, v in zip(gens, values) if v == -1]
        kgens += [g for g, v in zip(gens, values) if v == 1]
        kgens += [perm_compose(odd[0], g) for g in odd[1:]]
        kernel = StabilizerChain(degree, kgens)
        if kernel.order() * 2 != group_order:
            raise AssertionError(f"kernel of {values} has order {kernel.order()} in a group of order {group_order}")
        chars.append(Character2(values, kernel))
    return chars


# -- element sets -----------------------------------------------------------------

def conjugacy_class(
    g: Perm, gens: Sequence[Perm], bound: int = DEFAULT_BOUND, with_conjugators: bool = False
):
    """Class of ``g`` as the orbit under conjugation by the generators.

    With ``with_conjugators`` the result maps each member ``c`` to an ``h``
    with ``g^h = c``.
    """
    g = tuple(g)
    inv = [perm_inverse(s) for s in gens]
    members: dict[Perm, Perm | None] = {g: perm_identity(len(g)) if with_conjugators else None}
    queue = deque([g])
    while queue:
        x = queue.popleft()
        for s, si in zip(gens, inv):
            y = perm_compose(perm_compose(si, x), s)
            if y not in members:
                if len(members) >= bound:
                    raise BoundExceeded(f"conjugacy class larger than {bound}")
                members[y] = perm_compose(members[x], s) if with_conjugators else None
                queue.append(y)
    return members if with_conjugators else set(members)


def enumerate_elements(gens: Sequence[Perm], degree: int, bound: int = DEFAULT_BOUND) -> Iterator[Perm]:
    """Breadth-first walk of the Cayley graph; each element exactly once."""
    e = perm_identity(degree)
    seen = {e}
    queue = deque([e])
    yield e
    while queue:
        x = queue.popleft()
        for s in gens:
            y = perm_compose(x, s)
            if y not in seen:
                if len(seen) >= bound:
                    raise BoundExceeded(f"group larger than {bound}")
                seen.add(y)
                queue.append(y)
                yield y


def generates(degree: int, elems: Sequence[Perm], target_order: int) -> tuple[bool, int]:
    """Whether ``elems`` generate a group of order ``target_order``.

    ``target_order`` must be the order of a group known to contain them.
    """
    chain = StabilizerChain(degree, elems, stop_at=target_order)
    order = chain.order()
    return order == target_order, order

