"""Hurwitz numbers to Hodge integrals through the ELSV formula.

Hur_g(mu) = r!/|Aut mu| prod mu_i^mu_i / mu_i!  *  P_{g,n}(mu)

where P_{g,n} is a polynomial whose coefficient at prod mu_i^k_i, of total
degree 3g-3+n-j, is (-1)^j <lambda_j tau_k1 ... tau_kn>_g.  The polynomial is
recovered here by exact interpolation from Hurwitz numbers alone.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import mpmath

from .hurwitz import HurwitzQuery, hurwitz_brute, hurwitz_characters, riemann_hurwitz_r
from .kontsevich import ConsistencyError, TauTable, compositions, dimension
from .linalg import IncrementalBasis, SingularSystemError, solve_exact
from .poly import Polynomial
from .symmetric import Partition

HurwitzSource = Callable[[int, Partition], Fraction]

BRUTE_BELOW_DEGREE = 6


def default_hurwitz_source(g: int, mu: Partition) -> Fraction:
    """Brute force below degree 6, character method from there on."""
    if mu.size < BRUTE_BELOW_DEGREE:
        return hurwitz_brute(HurwitzQuery(g, mu))
    return hurwitz_characters(HurwitzQuery(g, mu))


def elsv_prefactor(g: int, mu) -> Fraction:
    """r!/|Aut mu| * prod mu_i^mu_i / mu_i!"""
    mu = mu if isinstance(mu, Partition) else Partition.from_parts(mu)
    r = riemann_hurwitz_r(g, mu)
    out = Fraction(math.factorial(r), mu.aut_order)
    for m in mu:
        out *= Fraction(m**m, math.factorial(m))
    return out


def _monomials(n: int, max_degree: int) -> list[tuple[int, ...]]:
    out = []
    for deg in range(max_degree, -1, -1):
        out.extend(compositions(deg, n))
    return out


@dataclass
class ElsvPolynomial:
    g: int
    n: int
    coefficients: dict[tuple[int, ...], Fraction]
    sample_points: list[tuple[int, ...]] = field(default_factory=list)
    heldout_points: list[tuple[int, ...]] = field(default_factory=list)

    def __call__(self, mu: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for k, c in self.coefficients.items():
            total += c * math.prod(m**e for m, e in zip(mu, k))
        return total

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.n, self.coefficients)

    def format(self) -> str:
        return self.as_polynomial().format([f"mu{i + 1}" for i in range(self.n)])


@dataclass
class HodgeTable:
    """<lambda_j tau_k1 ... tau_kn>_g keyed by (g, j, sorted k-vector)."""

    values: dict[tuple[int, int, tuple[int, ...]], Fraction] = field(default_factory=dict)

    def set(self, g: int, j: int, k: Sequence[int], value) -> None:
        if not 0 <= j <= g or sum(k) != dimension(g, len(k)) - j:
            raise ValueError(f"invalid Hodge index g={g} j={j} k={tuple(k)}")
        key = (g, j, tuple(sorted(k, reverse=True)))
        value = Fraction(value)
        if key in self.values and self.values[key] != value:
            raise ConsistencyError(f"conflicting values for {key}")
        self.values[key] = value

    def get(self, g: int, j: int, k: Sequence[int]) -> Fraction:
        return self.values[(g, j, tuple(sorted(k, reverse=True)))]

    def __len__(self):
        return len(self.values)

    def items(self):
        return sorted(self.values.items())


def sample_grid(g: int, n: int, start: int = 1) -> Iterator[tuple[int, ...]]:
    """Ordered vectors with distinct entries >= start, by increasing sum.

    The window widens step by step so the generator never runs dry.
    """
    width = n + g + 3
    seen: set[tuple[int, ...]] = set()
    while True:
        vecs = [v for v in itertools.permutations(range(start, start + width), n) if v not in seen]
        vecs.sort(key=lambda v: (sum(v), v))
        for v in vecs:
            seen.add(v)
            yield v
        width += 2


def _monomial_row(mu: Sequence[int], monomials) -> list[int]:
    return [math.prod(m**e for m, e in zip(mu, k)) for k in monomials]


def elsv_fit(g: int, n: int, hurwitz_source: HurwitzSource | None = None, *,
             start: int = 1, heldout: int = 3) -> ElsvPolynomial:
    """Fit P_{g,n} exactly from Hurwitz numbers.

    Sample points are chosen greedily from ``sample_grid`` so that the
    monomial matrix has full rank.  Degrees outside {3g-3+n-j : 0 <= j <= g}
    must vanish, and the fit must reproduce held-out Hurwitz numbers,
    including one mu with repeated parts.
    """
    if not (n >= 1 and 2 * g - 2 + n > 0):
        raise ValueError(f"(g, n) = ({g}, {n}) is outside the stable range")
    source = hurwitz_source or default_hurwitz_source
    D = dimension(g, n)
    monomials = _monomials(n, D)
    basis = IncrementalBasis(len(monomials))
    chosen: list[tuple[int, ...]] = []
    grid = sample_grid(g, n, start)
    for v in grid:
        if basis.try_add(_monomial_row(v, monomials)):
            chosen.append(v)
            if basis.rank == len(monomials):
                break

    def target(v) -> Fraction:
        mu = Partition.from_parts(v)
        return source(g, mu) / elsv_prefactor(g, mu)

    matrix = [_monomial_row(v, monomials) for v in chosen]
    try:
        sol = solve_exact(matrix, [target(v) for v in chosen])
    except SingularSystemError as exc:  # pragma: no cover - greedy choice guarantees rank
        raise ConsistencyError("sampling grid is singular") from exc
    coeffs = {k: c for k, c in zip(monomials, sol) if c}
    allowed = {D - j for j in range(g + 1)}
    stray = [k for k in coeffs if sum(k) not in allowed]
    if stray:
        raise ConsistencyError(f"nonzero coefficients at forbidden degrees: {stray}")
    poly = ElsvPolynomial(g, n, coeffs, sample_points=chosen)
    checks = list(itertools.islice(grid, heldout))
    checks.append(tuple(start + 1 for _ in range(n)))
    for v in checks:
        if poly(v) != target(v):
            raise ConsistencyError(f"held-out point {v}: fit {poly(v)} != Hurwitz {target(v)}")
    poly.heldout_points = checks
    return poly


def tau_from_elsv(p: ElsvPolynomial) -> TauTable:
    """Top-degree coefficients, which involve psi classes only."""
    D = dimension(p.g, p.n)
    table = TauTable()
    for k in compositions(D, p.n):
        c = p.coefficients.get(k, Fraction(0))
        for perm in set(itertools.permutations(k)):
            if p.coefficients.get(perm, Fraction(0)) != c:
                raise ConsistencyError(f"fitted polynomial is not symmetric at {k}")
        table.set(p.g, k, c)
    return table


def hodge_from_elsv(p: ElsvPolynomial) -> HodgeTable:
    """(-1)^j times the coefficients of degree 3g-3+n-j, for j = 1..g."""
    D = dimension(p.g, p.n)
    table = HodgeTable()
    for j in range(1, p.g + 1):
        if D - j < 0:
            continue
        for k in compositions(D - j, p.n):
            table.set(p.g, j, k, (-1) ** j * p.coefficients.get(k, Fraction(0)))
    return table


def laplace_variable_map(s: Sequence, digits: int = 50) -> list[mpmath.mpf]:
    """z_i = sqrt(2 s_i) in high precision."""
    out = []
    with mpmath.workdps(digits):
        for si in s:
            si = Fraction(si)
            if si <= 0:
                raise ValueError(f"Laplace variables must be positive, got {si}")
            out.append(mpmath.sqrt(2 * mpmath.mpf(si.numerator) / si.denominator))
    return out
