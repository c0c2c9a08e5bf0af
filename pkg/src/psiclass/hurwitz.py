"""Simple Hurwitz numbers Hur_g(mu).

Two independent routes:

* ``hurwitz_brute`` counts transitive factorizations t1 ... tr = s of a fixed
  permutation s of cycle type mu into transpositions, as a memoized walk over
  (partial product, connectivity blocks).
* ``hurwitz_characters`` uses the Frobenius character formula for possibly
  disconnected coverings and strips off the disconnected part by
  inclusion-exclusion over set partitions of the parts of mu.

Both return exact ``Fraction`` values normalised by 1/d!, which gives the
weight 1/2 to the degree-2 covering automatically.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import mpmath

from .characters import character_column, content_sum, dimension
from .symmetric import (
    Partition,
    Permutation,
    canonical_permutation,
    centralizer_order,
    conjugacy_class_size,
    cycle_type,
    is_transitive,
    product,
)

log = logging.getLogger(__name__)

DEFAULT_BRUTE_BUDGET = 20_000_000
AUTO_BRUTE_MAX_DEGREE = 5


class InfeasibleQueryError(ValueError):
    """The Riemann-Hurwitz count of branch points is negative."""


class ResourceBudgetError(RuntimeError):
    pass


def riemann_hurwitz_r(g: int, mu: Partition) -> int:
    """Number of simple branch points, 2g - 2 + |mu| + l(mu)."""
    if g < 0:
        raise InfeasibleQueryError(f"negative genus {g}")
    if len(mu) == 0:
        raise InfeasibleQueryError("mu must be nonempty")
    r = 2 * g - 2 + mu.size + mu.length
    if r < 0:
        raise InfeasibleQueryError(f"r = {r} < 0 for g={g}, mu={mu}")
    return r


@dataclass(frozen=True)
class HurwitzQuery:
    g: int
    mu: Partition

    def __post_init__(self):
        if not isinstance(self.mu, Partition):
            object.__setattr__(self, "mu", Partition.from_parts(self.mu))
        riemann_hurwitz_r(self.g, self.mu)

    @property
    def r(self) -> int:
        return riemann_hurwitz_r(self.g, self.mu)

    @property
    def d(self) -> int:
        return self.mu.size


@dataclass(frozen=True)
class Factorization:
    transpositions: tuple[Permutation, ...]
    target: Permutation

    def __post_init__(self):
        d = self.target.degree
        if any(t.degree != d or not t.is_transposition() for t in self.transpositions):
            raise ValueError("every factor must be a transposition of the target's degree")
        if product(list(self.transpositions), d) != self.target:
            raise ValueError("ordered product of transpositions differs from the target")

    @property
    def degree(self) -> int:
        return self.target.degree

    @property
    def r(self) -> int:
        return len(self.transpositions)

    @property
    def mu(self) -> Partition:
        return cycle_type(self.target)

    @property
    def genus(self) -> int:
        """Genus solved from r = 2g - 2 + |mu| + l(mu)."""
        mu = self.mu
        twice = self.r + 2 - mu.size - mu.length
        if twice % 2:
            raise ValueError("parity violates Riemann-Hurwitz")
        return twice // 2

    def is_transitive(self) -> bool:
        return is_transitive(self.transpositions, self.degree)


def _as_query(q, mu=None) -> HurwitzQuery:
    if isinstance(q, HurwitzQuery):
        return q
    return HurwitzQuery(q, mu if isinstance(mu, Partition) else Partition.from_parts(mu))


# ---------------------------------------------------------------------------
# brute force


def _transposition_pairs(d: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d) for b in range(a + 1, d)]


def _num_cycles(img: Sequence[int]) -> int:
    seen = [False] * len(img)
    c = 0
    for i in range(len(img)):
        if not seen[i]:
            c += 1
            x = i
            while not seen[x]:
                seen[x] = True
                x = img[x]
    return c


def _relabel(blocks: list[int]) -> tuple[int, ...]:
    names: dict[int, int] = {}
    return tuple(names.setdefault(b, len(names)) for b in blocks)


def _count_from(start_perm, start_blocks, steps: int, target: tuple[int, ...], budget: int):
    """Number of ways to extend (perm, blocks) by ``steps`` transpositions to
    reach ``target`` with a single block.  Returns (count, work)."""
    d = len(target)
    pairs = _transposition_pairs(d)
    inv_target = [0] * d
    for i, x in enumerate(target):
        inv_target[x] = i

    def distance(img) -> int:
        # Cayley distance from img to target = d - #cycles(target^-1 img)
        return d - _num_cycles([inv_target[x] for x in img])

    states = {(start_perm, start_blocks): 1}
    work = 0
    for step in range(steps):
        remaining = steps - step - 1
        nxt: dict = {}
        for (img, blocks), cnt in states.items():
            work += len(pairs)
            if work > budget:
                raise ResourceBudgetError(
                    f"brute-force budget of {budget} exceeded; use the character method"
                )
            for a, b in pairs:
                # img o (a b): swap the images of a and b
                new = list(img)
                new[a], new[b] = new[b], new[a]
                if blocks[a] != blocks[b]:
                    ba, bb = blocks[a], blocks[b]
                    nb = _relabel([ba if x == bb else x for x in blocks])
                else:
                    nb = blocks
                if max(nb) > remaining:
                    # more blocks left than transpositions to join them
                    continue
                key = (tuple(new), nb)
                if key in nxt:
                    nxt[key] += cnt
                    continue
                if distance(new) > remaining:
                    continue
                nxt[key] = cnt
        states = nxt
    full = (0,) * d
    return states.get((target, full), 0), work


def _count_worker(args):
    return _count_from(*args)[0]


def count_transitive_factorizations(
    target: Permutation, r: int, budget: int = DEFAULT_BRUTE_BUDGET, jobs: int = 1
) -> int:
    """Number of r-tuples of transpositions with product ``target`` generating a transitive group."""
    d = target.degree
    tgt = target._img
    if d == 1:
        return 1 if r == 0 else 0
    if r == 0:
        return 0
    start = tuple(range(d))
    blocks0 = tuple(range(d))
    if jobs <= 1:
        return _count_from(start, blocks0, r, tgt, budget)[0]
    # split on the first transposition; partial counts are added exactly
    tasks = []
    for a, b in _transposition_pairs(d):
        img = list(start)
        img[a], img[b] = img[b], img[a]
        blocks = _relabel([a if x == b else x for x in blocks0])
        tasks.append((tuple(img), blocks, r - 1, tgt, budget))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_worker, tasks))


def hurwitz_brute(q, mu=None, *, budget: int = DEFAULT_BRUTE_BUDGET, jobs: int = 1) -> Fraction:
    """Hur_g(mu) by enumeration of transitive factorizations.

    Accepts ``hurwitz_brute(HurwitzQuery(...))`` or ``hurwitz_brute(g, mu)``.
    """
    q = _as_query(q, mu)
    s = canonical_permutation(q.mu)
    count = count_transitive_factorizations(s, q.r, budget=budget, jobs=jobs)
    return Fraction(count * conjugacy_class_size(q.mu), math.factorial(q.d))


def iter_factorizations(g: int, mu, target: Permutation | None = None) -> Iterator[Factorization]:
    """All transitive factorizations of ``target`` (default: the canonical
    permutation of type mu) into r transpositions, in lexicographic order."""
    q = _as_query(g, mu)
    s = target if target is not None else canonical_permutation(q.mu)
    if cycle_type(s) != q.mu:
        raise ValueError(f"target {s} is not of cycle type {q.mu}")
    d, r = q.d, q.r
    pairs = _transposition_pairs(d)
    perms = {p: Permutation.transposition(p[0] + 1, p[1] + 1, d) for p in pairs}
    tgt = s._img
    inv_tgt = [0] * d
    for i, x in enumerate(tgt):
        inv_tgt[x] = i
    chosen: list[tuple[int, int]] = []

    def blocks_of(choice) -> int:
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n = d
        for a, b in choice:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                n -= 1
        return n

    def rec(img):
        depth = len(chosen)
        remaining = r - depth
        if d - _num_cycles([inv_tgt[x] for x in img]) > remaining:
            return
        if blocks_of(chosen) - 1 > remaining:
            return
        if remaining == 0:
            yield Factorization(tuple(perms[p] for p in chosen), s)
            return
        for a, b in pairs:
            new = list(img)
            new[a], new[b] = new[b], new[a]
            chosen.append((a, b))
            yield from rec(new)
            chosen.pop()

    if d == 1:
        if r == 0:
            yield Factorization((), s)
        return
    yield from rec(list(range(d)))


# ---------------------------------------------------------------------------
# character method


@lru_cache(maxsize=None)
def disconnected_hurwitz(parts: tuple[int, ...], r: int) -> Fraction:
    """Hurwitz number of possibly disconnected coverings with r simple branch points.

    (1 / (z_mu d!)) * sum_lam dim(lam) * c(lam)^r * chi^lam(mu), where c(lam) is
    the content sum (central character of the class of transpositions).
    """
    if not parts:
        return Fraction(1 if r == 0 else 0)
    mu = Partition.from_parts(parts)
    d = mu.size
    total = 0
    for lam, chi in character_column(mu.parts).items():
        total += dimension(lam) * content_sum(lam) ** r * chi
    return Fraction(total, centralizer_order(mu) * math.factorial(d))


def _min_r(parts: Sequence[int]) -> int:
    return sum(parts) + len(parts) - 2


@lru_cache(maxsize=None)
def _labeled_disconnected(parts: tuple[int, ...], r: int) -> Fraction:
    return Partition.from_parts(parts).aut_order * disconnected_hurwitz(parts, r)


@lru_cache(maxsize=None)
def _labeled_connected(parts: tuple[int, ...], r: int) -> Fraction:
    """|Aut mu| * Hur(mu) for connected coverings with r branch points."""
    if r < _min_r(parts) or (r - _min_r(parts)) % 2:
        return Fraction(0)
    total = _labeled_disconnected(parts, r)
    n = len(parts)
    if n == 1:
        # a single cycle already acts transitively
        return total
    rest_idx = list(range(1, n))
    # Moebius inversion over set partitions, organised by the block holding part 0
    for mask in range(1 << (n - 1)):
        block = [0] + [rest_idx[i] for i in range(n - 1) if mask >> i & 1]
        if len(block) == n:
            continue
        other = [i for i in range(n) if i not in block]
        bparts = tuple(sorted((parts[i] for i in block), reverse=True))
        oparts = tuple(sorted((parts[i] for i in other), reverse=True))
        lo = _min_r(bparts)
        for rb in range(lo, r + 1, 2):
            c = _labeled_connected(bparts, rb)
            if c:
                total -= math.comb(r, rb) * c * _labeled_disconnected(oparts, r - rb)
    return total


def hurwitz_characters(q, mu=None) -> Fraction:
    """Hur_g(mu) from irreducible characters plus inclusion-exclusion."""
    q = _as_query(q, mu)
    parts = q.mu.parts
    return _labeled_connected(parts, q.r) / q.mu.aut_order


def hurwitz(g: int, mu, method: str = "auto", *, brute_max_degree: int = AUTO_BRUTE_MAX_DEGREE,
            jobs: int = 1) -> Fraction:
    q = _as_query(g, mu)
    if method == "auto":
        method = "brute" if q.d <= brute_max_degree else "characters"
    if method == "brute":
        return hurwitz_brute(q, jobs=jobs)
    if method == "characters":
        return hurwitz_characters(q)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# asymptotics


@dataclass(frozen=True)
class AsymptoticCheck:
    N: int
    x: tuple[Fraction, ...]
    ratio: mpmath.mpf


def _limit_function(g: int, x: Sequence[Fraction], tau) -> mpmath.mpf:
    """H_g(x) = (2 pi)^(-n/2) sum_k <tau_k> prod x_i^(k_i - 1/2).

    The unstable cases (0,1) and (0,2) use the standard conventions
    <tau_-2>_0 = 1 and the two-point function 1/(x1 + x2).
    """
    n = len(x)
    xs = [mpmath.mpf(xi.numerator) / xi.denominator for xi in x]
    pref = (2 * mpmath.pi) ** (-mpmath.mpf(n) / 2)
    if (g, n) == (0, 1):
        return pref * xs[0] ** mpmath.mpf(-2.5)
    if (g, n) == (0, 2):
        return pref / (mpmath.sqrt(xs[0] * xs[1]) * (xs[0] + xs[1]))
    if tau is None:
        from .kontsevich import tau_table

        tau = tau_table(g, n)
    total = mpmath.mpf(0)
    for k in tau.kvectors(g, n):
        val = tau.get(g, k)
        term = mpmath.mpf(val.numerator) / val.denominator
        for xi, ki in zip(xs, k):
            term *= xi ** (ki - mpmath.mpf(1) / 2)
        total += term
    return pref * total


def asymptotic_ratio(g: int, x: Sequence, N: int, tau=None, *, digits: int = 50,
                     hurwitz_fn=hurwitz_characters) -> AsymptoticCheck:
    """Finite-N ratio of the two sides of the large-mu Hurwitz asymptotics.

    mu_i = round(N x_i), which must be pairwise distinct.  Tends to 1 as N grows.
    """
    x = tuple(Fraction(xi) for xi in x)
    if any(xi <= 0 for xi in x):
        raise ValueError("limit shape entries must be positive")
    mu_vec = [round(N * xi) for xi in x]
    if len(set(mu_vec)) != len(mu_vec) or min(mu_vec) < 1:
        raise ValueError(f"parts {mu_vec} must be distinct and positive")
    mu = Partition.from_parts(mu_vec)
    q = HurwitzQuery(g, mu)
    n = len(mu_vec)
    with mpmath.workdps(digits):
        hur = hurwitz_fn(q)
        lhs = mpmath.mpf(hur.numerator) / hur.denominator
        lhs /= mpmath.exp(mu.size) * mpmath.factorial(q.r)
        lhs /= mpmath.mpf(N) ** (3 * g - 3 + mpmath.mpf(n) / 2)
        # order x like mu_vec is ordered; H_g is symmetric so the original order is fine
        ratio = lhs / _limit_function(g, x, tau)
    return AsymptoticCheck(N=N, x=x, ratio=ratio)
