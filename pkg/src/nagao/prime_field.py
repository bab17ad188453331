"""Prime enumeration and arithmetic over F_p with a cached quadratic-character table.

The character table is the workhorse of every point count: the number of
solutions of y^2 = a over F_p is 1 + chi(a), so affine counts reduce to
batched table lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class NotPrime(ValueError):
    """p failed the deterministic primality test."""


class EvenOrSmall(ValueError):
    """p < 3; the even prime is always treated as a bad prime."""


class OutOfRange(ValueError):
    """Residue argument outside [0, p)."""


class BadRange(ValueError):
    """Prime enumeration called with lo > hi or lo < 2."""


def is_prime(n: int) -> bool:
    """Deterministic primality by trial division; adequate for p <= 10**6."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldCtx:
    """An odd prime p together with the Legendre-symbol lookup table.

    chi_table[a] is 0 for a = 0, +1 for nonzero squares and -1 otherwise.
    Immutable after construction; safe to share across workers.
    """

    p: int
    chi_table: np.ndarray = field(repr=False, compare=False)

    def chi(self, a: int) -> int:
        """Quadratic character of a residue, by table lookup."""
        if not 0 <= a < self.p:
            raise OutOfRange(f"residue {a} not in [0, {self.p})")
        return int(self.chi_table[a])


def make_field(p: int) -> FieldCtx:
    """Build a FieldCtx for an odd prime p.

    The table is built in O(p) by marking the squares {a^2 mod p}.
    """
    if p < 3:
        raise EvenOrSmall(f"p must be an odd prime >= 3, got {p}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    a = np.arange(p, dtype=np.int64)
    squares = (a * a) % p
    table = np.full(p, -1, dtype=np.int8)
    table[squares] = 1
    table[0] = 0
    table.setflags(write=False)
    return FieldCtx(p=p, chi_table=table)


def quadratic_character(ctx: FieldCtx, a: int) -> int:
    """chi(a) in {-1, 0, +1}; constant-time table lookup."""
    return ctx.chi(a)


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], ascending, via a segmented sieve."""
    if lo > hi:
        raise BadRange(f"empty range [{lo}, {hi}]")
    if lo < 2:
        raise BadRange(f"lo must be >= 2, got {lo}")
    if hi < 2:
        return []
    # Base primes up to sqrt(hi) by a plain sieve.
    root = math.isqrt(hi)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for q in range(2, math.isqrt(root) + 1):
        if base[q]:
            base[q * q :: q] = False
    base_primes = np.flatnonzero(base)

    seg = np.ones(hi - lo + 1, dtype=bool)
    for q in base_primes:
        q = int(q)
        start = max(q * q, ((lo + q - 1) // q) * q)
        if start > hi:
            continue
        seg[start - lo :: q] = False
    if lo <= 1:
        seg[: 2 - lo] = False
    out = (np.flatnonzero(seg) + lo).tolist()
    # A base prime can land inside the segment when lo <= sqrt(hi).
    return [int(q) for q in out]


def eval_poly(ctx: FieldCtx, coeffs: list[int] | tuple[int, ...], x: int) -> int:
    """Horner evaluation mod p of a polynomial given by ascending coefficients."""
    if not 0 <= x < ctx.p:
        raise OutOfRange(f"residue {x} not in [0, {ctx.p})")
    acc = 0
    for a in reversed(coeffs):
        acc = (acc * x + a) % ctx.p
    return acc
