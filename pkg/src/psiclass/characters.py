"""Irreducible characters of S(d) by the Murnaghan-Nakayama rule.

Partitions are plain tuples here.  Border strips are handled on beta-sets
(first-column hook lengths): removing a k-strip moves one bead from b to
b - k, and the sign is (-1) to the number of beads it jumps over.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator


def _beta(lam: tuple[int, ...], length: int) -> list[int]:
    lam = tuple(lam) + (0,) * (length - len(lam))
    return [lam[i] + length - 1 - i for i in range(length)]


def _from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    lam = [beta[i] - (n - 1 - i) for i in range(n)]
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def remove_strips(lam: tuple[int, ...], k: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (lam minus a border strip of size k, sign) for every such strip."""
    beta = _beta(lam, len(lam))
    present = set(beta)
    for b in beta:
        c = b - k
        if c < 0 or c in present:
            continue
        jumped = sum(1 for x in beta if c < x < b)
        new = [x for x in beta if x != b] + [c]
        yield _from_beta(new), (-1) ** jumped


def add_strips(lam: tuple[int, ...], k: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (lam plus a border strip of size k, sign) for every such strip."""
    beta = _beta(lam, len(lam) + k)
    present = set(beta)
    for b in beta:
        c = b + k
        if c in present:
            continue
        jumped = sum(1 for x in beta if b < x < c)
        new = [x for x in beta if x != b] + [c]
        yield _from_beta(new), (-1) ** jumped


@lru_cache(maxsize=None)
def character(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    """chi^lam evaluated on the class of cycle type rho (removal recursion)."""
    if sum(lam) != sum(rho):
        raise ValueError(f"{lam} and {rho} are partitions of different integers")
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    return sum(sign * character(mu, rest) for mu, sign in remove_strips(lam, k))


@lru_cache(maxsize=256)
def character_column(rho: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """All nonzero chi^lam(rho), built by adding strips of sizes rho to the empty shape.

    Much cheaper than a full character table when rho has few parts.
    """
    col: dict[tuple[int, ...], int] = {(): 1}
    for k in sorted(rho):
        nxt: dict[tuple[int, ...], int] = {}
        for lam, val in col.items():
            for mu, sign in add_strips(lam, k):
                nxt[mu] = nxt.get(mu, 0) + sign * val
        col = {lam: v for lam, v in nxt.items() if v}
    return col


@lru_cache(maxsize=None)
def dimension(lam: tuple[int, ...]) -> int:
    """Hook length formula."""
    n = sum(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, part in enumerate(lam):
        for j in range(part):
            hooks *= part - j + conj[j] - i - 1
    return math.factorial(n) // hooks


def content_sum(lam: tuple[int, ...]) -> int:
    """Sum of (column - row) over boxes: the central character of the transposition class."""
    return sum(part * (part - 1) // 2 - i * part for i, part in enumerate(lam))
