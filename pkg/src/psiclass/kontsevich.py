"""Kontsevich's trivalent graph sum and extraction of psi-class intersection numbers.

K_{g,n}(z) = 2^(2g-2+n) sum_G 1/|Aut G| prod_edges 1/(z_i + z_j)

summed over trivalent maps G with n labelled faces, where i and j label the
faces on the two sides of an edge.  The result is a polynomial in 1/z_i,

K_{g,n}(z) = sum_k <tau_k1 ... tau_kn>_g prod (2k_i - 1)!! / z_i^(2k_i + 1),

and the coefficients are recovered by exact evaluation and interpolation.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .linalg import SingularSystemError, solve_exact
from .poly import Polynomial, RationalFunction
from .ribbon import UnstableError, enumerate_trivalent_maps


class ConsistencyError(AssertionError):
    """An identity that must hold exactly failed; points to an enumeration bug."""


def double_factorial(m: int) -> int:
    """m (m-2) ... 1 for odd m >= -1, with (-1)!! = 1."""
    if m < -1 or m % 2 == 0:
        raise ValueError(f"double factorial defined here for odd m >= -1, got {m}")
    return math.prod(range(m, 0, -2))


def compositions(total: int, n: int) -> Iterator[tuple[int, ...]]:
    """Ordered n-tuples of non-negative integers summing to ``total``, lexicographically descending."""
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, n - 1):
            yield (first,) + rest


def dimension(g: int, n: int) -> int:
    """Complex dimension 3g - 3 + n of the moduli space."""
    return 3 * g - 3 + n


@dataclass
class TauTable:
    """Exact values <tau_k1 ... tau_kn>_g keyed by (g, sorted k-vector)."""

    values: dict[tuple[int, tuple[int, ...]], Fraction] = field(default_factory=dict)

    @staticmethod
    def key(g: int, k: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        return g, tuple(sorted(k, reverse=True))

    def set(self, g: int, k: Sequence[int], value) -> None:
        if sum(k) != dimension(g, len(k)):
            raise ValueError(f"sum of {tuple(k)} is not 3g-3+n for g={g}")
        key = self.key(g, k)
        value = Fraction(value)
        if key in self.values and self.values[key] != value:
            raise ConsistencyError(f"conflicting values for {key}: {self.values[key]} vs {value}")
        self.values[key] = value

    def get(self, g: int, k: Sequence[int]) -> Fraction:
        return self.values[self.key(g, k)]

    def __contains__(self, item) -> bool:
        g, k = item
        return self.key(g, k) in self.values

    def __len__(self):
        return len(self.values)

    def items(self):
        return sorted(self.values.items())

    def update(self, other: "TauTable") -> None:
        for (g, k), v in other.values.items():
            self.set(g, k, v)

    @staticmethod
    def kvectors(g: int, n: int) -> list[tuple[int, ...]]:
        return list(compositions(dimension(g, n), n))

    def restrict(self, g: int, n: int) -> "TauTable":
        return TauTable({key: v for key, v in self.values.items() if key[0] == g and len(key[1]) == n})

    def __eq__(self, other):
        return isinstance(other, TauTable) and self.values == other.values


def format_tau(g: int, k: Sequence[int]) -> str:
    return "⟨" + "".join(f"τ_{ki}" for ki in k) + f"⟩_{g}"


def kontsevich_sum(g: int, n: int) -> RationalFunction:
    """Exact graph sum over G^3_{g,n} with factored edge denominators."""
    if not (n >= 1 and 2 * g - 2 + n > 0):
        raise UnstableError(f"(g, n) = ({g}, {n}) is outside the stable range")
    prefactor = Fraction(2) ** (2 * g - 2 + n)
    terms = []
    for graph, aut in enumerate_trivalent_maps(g, n):
        den: dict = {}
        for i, j in graph.edge_face_labels():
            f = (i - 1, j - 1)
            den[f] = den.get(f, 0) + 1
        terms.append((Polynomial.constant(n, prefactor / aut), den))
    return RationalFunction(n, terms)


def tau_generating_function(table: TauTable, g: int, n: int) -> RationalFunction:
    """sum_k <tau_k> prod (2k_i-1)!!/z_i^(2k_i+1), built from a table."""
    out = RationalFunction(n)
    for k in TauTable.kvectors(g, n):
        if (g, k) not in table:
            continue
        c = table.get(g, k) * math.prod(double_factorial(2 * ki - 1) for ki in k)
        out = out + RationalFunction.monomial_inverse(n, c, [2 * ki + 1 for ki in k])
    return out


def _primes(count: int, start: int = 2) -> list[int]:
    out = []
    x = max(2, start)
    while len(out) < count:
        if all(x % p for p in range(2, math.isqrt(x) + 1)):
            out.append(x)
        x += 1
    return out


@dataclass
class Extraction:
    """Coefficients c_k of K in the basis prod z_i^-(2k_i+1), plus the checks that ran."""

    g: int
    n: int
    coefficients: dict[tuple[int, ...], Fraction]
    table: TauTable
    verified_points: int
    exact_identity: bool


def extract_coefficients(K: RationalFunction, g: int, n: int, *, extra_points: int = 4,
                         seed: int = 0, exact_limit: int = 400) -> Extraction:
    """Interpolate K on the admissible monomials and check the interpolant.

    Sample points are tuples of distinct small primes.  The interpolant is
    checked at ``extra_points`` random rational points, and, when K has at most
    ``exact_limit`` terms, also as an exact polynomial identity after
    cross-multiplying.
    """
    D = dimension(g, n)
    kvecs = TauTable.kvectors(g, n)
    m = len(kvecs)
    coeffs = None
    for attempt in range(5):
        primes = _primes(m * n, start=2 + 7 * attempt)
        points = [primes[i * n:(i + 1) * n] for i in range(m)]
        if attempt:
            random.Random(attempt).shuffle(points)
        # row scaled by prod z_i^(2D+1) so the matrix is integral
        matrix = [[math.prod(z ** (2 * (D - ki)) for z, ki in zip(pt, k)) for k in kvecs] for pt in points]
        rhs = [K(pt) * math.prod(z ** (2 * D + 1) for z in pt) for pt in points]
        try:
            sol = solve_exact(matrix, rhs)
        except SingularSystemError:
            continue
        coeffs = dict(zip(kvecs, sol))
        break
    if coeffs is None:
        raise ConsistencyError("could not find a nonsingular sampling grid")
    candidate = RationalFunction(n)
    for k, c in coeffs.items():
        if c:
            candidate = candidate + RationalFunction.monomial_inverse(n, c, [2 * ki + 1 for ki in k])
    rng = random.Random(seed)
    for _ in range(extra_points):
        pt = [Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6)) for _ in range(n)]
        if K(pt) != candidate(pt):
            raise ConsistencyError(f"K_{{{g},{n}}} is not a polynomial in 1/z of the expected shape")
    exact = False
    if len(K.terms) <= exact_limit:
        if not (K == candidate):
            raise ConsistencyError(f"exact identity for K_{{{g},{n}}} failed")
        exact = True
    # symmetry in the face labels
    for k, c in coeffs.items():
        for perm in set(itertools.permutations(k)):
            if coeffs[perm] != c:
                raise ConsistencyError(f"K_{{{g},{n}}} is not symmetric: {k} vs {perm}")
    table = TauTable()
    for k, c in coeffs.items():
        table.set(g, k, c / math.prod(double_factorial(2 * ki - 1) for ki in k))
    return Extraction(g, n, coeffs, table, extra_points, exact)


def expand_and_extract(K: RationalFunction, g: int, n: int) -> TauTable:
    return extract_coefficients(K, g, n).table


@lru_cache(maxsize=None)
def _tau_table_cached(g: int, n: int) -> TauTable:
    return expand_and_extract(kontsevich_sum(g, n), g, n)


def tau_table(g: int, n: int) -> TauTable:
    """Intersection numbers for one (g, n) from the graph sum (memoized)."""
    table = TauTable()
    table.update(_tau_table_cached(g, n))
    return table


def string_equation_check(table: TauTable) -> list[str]:
    """Violations of <tau_0 prod tau_ki>_g = sum_j <tau_(kj - 1) prod_(i != j) tau_ki>_g.

    Checked for every entry with a tau_0 whose lowered terms (in a stable
    range) are all present in the table.
    """
    violations = []
    for (g, k), value in table.items():
        if 0 not in k:
            continue
        rest = list(k)
        rest.remove(0)
        n = len(rest)
        if not (n >= 1 and 2 * g - 2 + n > 0):
            continue
        total = Fraction(0)
        complete = True
        for j in range(n):
            if rest[j] == 0:
                continue
            lowered = rest[:j] + [rest[j] - 1] + rest[j + 1:]
            if (g, lowered) not in table:
                complete = False
                break
            total += table.get(g, lowered)
        if complete and total != value:
            violations.append(f"{format_tau(g, k)} = {value} but lowered sum is {total}")
    return violations
