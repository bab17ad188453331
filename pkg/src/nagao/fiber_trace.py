"""Per-fiber point counts, component counts and Frobenius traces.

Every trace is recovered from an exact point count through the identity
N = 1 - a + p*m, where m is the number of F_p-rational components of the
fiber.  Fibers whose plane model provably cannot certify m are surfaced as
Unsupported, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fp_poly
from .family_model import (
    BadPrime,
    FamilySpec,
    FiberModel,
    bad_primes,
    fiber_at,
)
from .prime_field import FieldCtx


class DegenerateDegree(ValueError):
    """Leading coefficient vanished; the plane model changes at infinity."""


class UnsupportedFiber(Exception):
    """Raised when a fiber's component count is refused; carries (p, c)."""

    def __init__(self, p: int, c: int | None, why: str):
        super().__init__(f"unsupported fiber at p={p}, c={c}: {why}")
        self.p = p
        self.c = c
        self.why = why


@dataclass(frozen=True)
class Unsupported:
    """Returned (not raised) by component_count for refused fiber classes."""

    p: int
    c: int | None
    why: str


@dataclass(frozen=True)
class FiberTraceRecord:
    """Point count N, rational-component count m, trace a, for one fiber.

    Satisfies N = 1 - a + p*m by construction."""

    c: int | None  # None encodes the fiber over infinity
    N: int
    m: int
    a: int
    singular: bool


def count_affine(ctx: FieldCtx, fiber: FiberModel) -> int:
    """Exact number of affine points of the fiber.

    Single cover: sum over x of 1 + chi(f(x)); two covers: the product
    (1 + chi(f1(x))) * (1 + chi(f2(x))) counts pairs (y, z)."""
    if fiber.at_infinity and not fiber.polys:
        raise ValueError("no affine model for the fiber over infinity")
    p = ctx.p
    total = 0
    if len(fiber.polys) == 1:
        f = fiber.polys[0]
        for x in range(p):
            total += 1 + ctx.chi(fp_poly.eval_at(f, x, p))
    else:
        f1, f2 = fiber.polys
        for x in range(p):
            total += (1 + ctx.chi(fp_poly.eval_at(f1, x, p))) * (
                1 + ctx.chi(fp_poly.eval_at(f2, x, p))
            )
    return total


def points_at_infinity(ctx: FieldCtx, fiber: FiberModel) -> int:
    """Points of the smooth completion lying over x = infinity.

    Odd-degree hyperelliptic: one (ramified) point.  Even degree: two points
    when the leading coefficient is a square, none otherwise.  Multicover
    families declare the constant count nu in their infinity rule."""
    if fiber.kind == "multicover":
        return fiber.nu
    f = fiber.polys[0]
    d = fiber.generic_deg[0]
    if len(f) - 1 < d:
        raise DegenerateDegree(
            f"x-degree dropped from {d} to {len(f) - 1} at c={fiber.c}"
        )
    if d % 2 == 1:
        return 1
    return 1 + ctx.chi(f[-1])


def component_count(ctx: FieldCtx, fiber: FiberModel):
    """Number of F_p-rational components of the fiber, or Unsupported.

    Squarefree full-degree f: smooth, m = 1.  f = s^2 * ftilde with ftilde
    squarefree nonconstant: the plane curve y^2 = f is irreducible, m = 1.
    ftilde constant (f a constant times a square) or a singular multicover
    fiber without a declared rule: refused."""
    p = ctx.p
    if len(fiber.polys) == 2:
        if fiber.rule_kind == "affine_plus":
            # the family's affine_plus rule supplies (nu, m) for every finite fiber
            return fiber.m_declared
        f1, f2 = fiber.polys
        for f in (f1, f2):
            if len(fp_poly.gcd(f, fp_poly.deriv(f, p), p)) > 1:
                return Unsupported(p, fiber.c, "singular multicover fiber")
        if len(fp_poly.gcd(f1, f2, p)) > 1:
            return Unsupported(p, fiber.c, "covers share a root")
        return 1
    f = fiber.polys[0]
    if len(f) - 1 < fiber.generic_deg[0]:
        return Unsupported(p, fiber.c, "x-degree drop")
    g = fp_poly.gcd(f, fp_poly.deriv(f, p), p)
    if len(g) <= 1:
        return 1
    ftilde = fp_poly.odd_multiplicity_part(f, p)
    if len(ftilde) <= 1:
        return Unsupported(p, fiber.c, "fiber polynomial is a constant times a square")
    return 1


def fiber_trace(ctx: FieldCtx, spec: FamilySpec, c) -> FiberTraceRecord | None:
    """Full record for the fiber over c; None for a skipped infinity fiber.

    Raises UnsupportedFiber when component_count refuses the fiber, and
    BadPrime when p lies in the family's bad set."""
    p = ctx.p
    if p in bad_primes(spec):
        raise BadPrime(f"p = {p} lies in the bad set of {spec.name}")
    fiber = fiber_at(spec, ctx, c)

    if fiber.at_infinity and spec.kind != "constant":
        rule = spec.infinity_rule
        if rule.kind == "skip":
            return None
        # trace_zero, and the infinity fiber of an affine_plus family
        return FiberTraceRecord(c=None, N=p + 1, m=1, a=0, singular=True)

    m = component_count(ctx, fiber)
    if isinstance(m, Unsupported):
        raise UnsupportedFiber(m.p, m.c, m.why)
    n_affine = count_affine(ctx, fiber)
    n_inf = points_at_infinity(ctx, fiber)
    N = n_affine + n_inf
    a = 1 + p * m - N
    singular = _is_singular(ctx, fiber)
    return FiberTraceRecord(c=fiber.c, N=N, m=m, a=a, singular=singular)


def _is_singular(ctx: FieldCtx, fiber: FiberModel) -> bool:
    p = ctx.p
    for i, f in enumerate(fiber.polys):
        if len(f) - 1 < fiber.generic_deg[i]:
            return True
        if len(fp_poly.gcd(f, fp_poly.deriv(f, p), p)) > 1:
            return True
    if len(fiber.polys) == 2:
        if len(fp_poly.gcd(fiber.polys[0], fiber.polys[1], p)) > 1:
            return True
    return False


def weil_bound(genus: int, p: int) -> float:
    """|a| <= 2g sqrt(p) for a smooth projective curve of genus g over F_p."""
    return 2 * genus * p ** 0.5
