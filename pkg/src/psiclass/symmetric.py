"""Permutations, partitions and transitivity in the symmetric group S(d).

Points are 1-indexed in every public interface; internally a permutation
stores a 0-indexed image tuple.

Product convention
------------------
``compose(p, q)`` is the product ``p q`` read as functions, so ``q`` is
applied first.  A word ``t1 t2 ... tr`` is therefore evaluated with the
rightmost factor acting first.  Under this convention

    (12)(13)(24)(14)(13) = (1243)

holds verbatim.  Reversing the reading order replaces the product by its
inverse, which has the same cycle type, so Hurwitz counts do not depend on
the choice; only the sign of the cyclic order in branching graphs does.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class DegreeMismatchError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(sorted((int(x) for x in parts), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"4,2,1"``; the empty string is the empty partition."""
        text = text.strip()
        if not text:
            return cls(())
        return cls.from_parts(int(x) for x in text.split(","))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def aut_order(self) -> int:
        """|Aut mu|, the order of the stabiliser of the parts vector in S(n)."""
        return math.prod(math.factorial(m) for m in Counter(self.parts).values())

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self):
        return ",".join(map(str, self.parts))


class Permutation:
    """A bijection of {1..d}.  Immutable and hashable."""

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) - 1 for x in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation of 1..{len(img)}: {tuple(images)}")
        self._img = img

    @classmethod
    def _from_zero_based(cls, img: Sequence[int]) -> "Permutation":
        p = cls.__new__(cls)
        p._img = tuple(img)
        return p

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls._from_zero_based(range(d))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int | None = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=0)
        d = top if d is None else d
        if top > d:
            raise ValueError(f"cycle entry {top} exceeds degree {d}")
        img = list(range(d))
        seen: set[int] = set()
        for c in cycles:
            for i, x in enumerate(c):
                if x < 1 or x in seen:
                    raise ValueError(f"bad cycle notation {cycles}")
                seen.add(x)
                img[x - 1] = c[(i + 1) % len(c)] - 1
        return cls._from_zero_based(img)

    @classmethod
    def transposition(cls, i: int, j: int, d: int) -> "Permutation":
        if i == j:
            raise ValueError("a transposition moves two distinct points")
        return cls.from_cycles([(i, j)], d)

    @classmethod
    def parse(cls, text: str, d: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 4 3)"`` or ``"(12)(34)"``.

        Without spaces each character is one point, which covers d <= 9.
        """
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            body = body.strip()
            if not body:
                continue
            if " " in body or "," in body:
                cycles.append([int(x) for x in re.split(r"[ ,]+", body)])
            else:
                cycles.append([int(ch) for ch in body])
        return cls.from_cycles(cycles, d)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-indexed image tuple."""
        return tuple(x + 1 for x in self._img)

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __lt__(self, other):
        return self._img < other._img

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation._from_zero_based(inv)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycles (1-indexed), each starting at its least point, fixed points included."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start]:
                continue
            c = []
            x = start
            while not seen[x]:
                seen[x] = True
                c.append(x + 1)
                x = self._img[x]
            out.append(tuple(c))
        return tuple(out)

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, x in enumerate(self._img) if i != x)

    def is_transposition(self) -> bool:
        return len(self.moved_points()) == 2

    def __str__(self):
        nontrivial = [c for c in self.cycles if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)

    def __repr__(self):
        return f"Permutation.parse({str(self)!r}, d={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product ``p q``: apply ``q`` first, then ``p``."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degrees differ: {p.degree} != {q.degree}")
    pi = p._img
    return Permutation._from_zero_based(tuple(pi[x] for x in q._img))


def product(perms: Sequence[Permutation], d: int | None = None) -> Permutation:
    """Evaluate the word ``perms[0] perms[1] ... perms[-1]``."""
    if not perms:
        if d is None:
            raise ValueError("degree required for the empty product")
        return Permutation.identity(d)
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = compose(p, out)
    return out


def cycle_type(p: Permutation) -> Partition:
    return Partition.from_parts(len(c) for c in p.cycles)


def canonical_permutation(mu: Partition) -> Permutation:
    """The permutation (1 2 .. mu1)(mu1+1 ...)... of cycle type mu."""
    cycles = []
    start = 1
    for part in mu:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(cycles, mu.size)


def conjugacy_class_size(mu: Partition) -> int:
    """d! / prod_k k^{m_k} m_k!"""
    z = 1
    for k, m in Counter(mu.parts).items():
        z *= k**m * math.factorial(m)
    return math.factorial(mu.size) // z


def centralizer_order(mu: Partition) -> int:
    z = 1
    for k, m in Counter(mu.parts).items():
        z *= k**m * math.factorial(m)
    return z


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.blocks = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        self.blocks -= 1
        return True


def orbits(generators: Iterable[Permutation], d: int) -> list[list[int]]:
    """Orbits (1-indexed, sorted) of the group generated on {1..d}."""
    uf = UnionFind(d)
    for g in generators:
        if g.degree != d:
            raise DegreeMismatchError(f"generator of degree {g.degree} on {d} points")
        for i, x in enumerate(g._img):
            uf.union(i, x)
    out: dict[int, list[int]] = {}
    for i in range(d):
        out.setdefault(uf.find(i), []).append(i + 1)
    return sorted(out.values())


def is_transitive(generators: Iterable[Permutation], d: int) -> bool:
    if d <= 1:
        return True
    return len(orbits(generators, d)) == 1


def partitions_of(d: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of d in reverse-lexicographic order."""
    return [Partition(p) for p in _partitions(d, d if max_part is None else max_part)]


def _partitions(d: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in _partitions(d - first, first):
            yield (first,) + rest


def transpositions(d: int) -> list[Permutation]:
    """All transpositions (i j), i < j, in lexicographic order."""
    return [Permutation.transposition(i, j, d) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
