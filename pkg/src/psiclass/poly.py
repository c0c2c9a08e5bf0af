"""Exact multivariate polynomials and rational functions over Q.

Rational functions are kept as formal sums of fractions whose denominators
are products of linear forms z_i + z_j (or a single z_i), stored in factored
form.  Adding the hundreds of graph terms of a Kontsevich sum into a single
fraction blows up badly, so combination happens only on request
(``together``), and equality is decided by cross-multiplication.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]
# a linear factor is the sum of the variables listed (with repetition): (i,) is z_i,
# (i, j) is z_i + z_j and (i, i) is 2 z_i
Factor = tuple[int, ...]


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if c:
                self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, nvars: int, factor: Factor) -> "Polynomial":
        terms: dict = {}
        for i in factor:
            e = [0] * nvars
            e[i] = 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1
        return cls(nvars, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.nvars, {e: v * c for e, v in self.terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def homogeneous_part(self, deg: int) -> "Polynomial":
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"z{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.format()})"


def _factor_value(factor: Factor, point: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(point[i]) for i in factor), Fraction(0))


def _normal_factor(factor: Iterable[int]) -> Factor:
    return tuple(sorted(factor))


class RationalFunction:
    """Sum of numerator / prod(linear factors)^e terms in ``nvars`` variables."""

    def __init__(self, nvars: int, terms: Iterable[tuple[Polynomial, Mapping[Factor, int]]] = ()):
        self.nvars = nvars
        merged: dict[frozenset, tuple[Polynomial, Counter]] = {}
        for num, den in terms:
            den = Counter({_normal_factor(f): k for f, k in den.items() if k})
            key = frozenset(den.items())
            if key in merged:
                merged[key] = (merged[key][0] + num, den)
            else:
                merged[key] = (num, den)
        self.terms: list[tuple[Polynomial, Counter]] = [
            (num, den) for num, den in merged.values() if not num.is_zero()
        ]

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p.nvars, [(p, {})])

    @classmethod
    def monomial_inverse(cls, nvars: int, coeff, exponents: Sequence[int]) -> "RationalFunction":
        """coeff / prod z_i^exponents[i]"""
        den = {(i,): k for i, k in enumerate(exponents) if k}
        return cls(nvars, [(Polynomial.constant(nvars, coeff), den)])

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.nvars, self.terms + other.terms)

    def __mul__(self, c) -> "RationalFunction":
        return RationalFunction(self.nvars, [(num * c, den) for num, den in self.terms])

    __rmul__ = __mul__

    def __call__(self, point: Sequence) -> Fraction:
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for num, den in self.terms:
            d = Fraction(1)
            for f, k in den.items():
                d *= _factor_value(f, point) ** k
            total += num(point) / d
        return total

    def common_denominator(self) -> Counter:
        out: Counter = Counter()
        for _, den in self.terms:
            for f, k in den.items():
                out[f] = max(out[f], k)
        return out

    def together(self) -> tuple[Polynomial, Counter]:
        """Single (numerator, factored denominator) over the least common denominator."""
        lcd = self.common_denominator()
        total = Polynomial(self.nvars)
        for num, den in self.terms:
            mult = num
            for f, k in lcd.items():
                missing = k - den.get(f, 0)
                if missing:
                    mult = mult * Polynomial.linear(self.nvars, f) ** missing
            total = total + mult
        return total, lcd

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        n1, d1 = self.together()
        n2, d2 = other.together()
        return n1 * expand_factors(self.nvars, d2) == n2 * expand_factors(self.nvars, d1)

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"RationalFunction({len(self.terms)} terms in {self.nvars} variables)"


def expand_factors(nvars: int, factors: Mapping[Factor, int]) -> Polynomial:
    out = Polynomial.constant(nvars, 1)
    for f, k in factors.items():
        out = out * Polynomial.linear(nvars, f) ** k
    return out
