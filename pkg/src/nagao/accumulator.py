"""Per-prime averaged traces and the two rank estimators built from them.

For each good prime p the average trace A_p is the exact rational
(1/p) * sum over all p+1 fibers of the Frobenius trace; subtracting the
constant-part correction a_p(B) gives the reduced average A*_p.  Two
estimators consume the series: the Cesaro sum
S(T) = (1/T) * sum_{p <= T} -A*_p log p, whose limit is the Mordell-Weil
rank of the varying part, and the truncated Dirichlet residue
(s-1) * sum_{p <= T} -A*_p log(p) / p^s evaluated on a grid of s > 1.

A*_p is kept as an exact Fraction everywhere; floats appear only in the
final log-weighted reduction, accumulated in fixed ascending-p order.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .family_model import (
    FamilySpec,
    bad_primes,
    render_family,
    trace_curve_discriminants,
)
from .kernels import fiber_arrays, univariate_curve_trace
from .prime_field import FieldCtx, make_field, primes_in_range


class SkippedPrime(Exception):
    """The prime contributes no entry; carries the reason string."""

    def __init__(self, p: int, reason: str):
        super().__init__(f"p = {p} skipped: {reason}")
        self.p = p
        self.reason = reason


class BadTracePrime(Exception):
    """p divides the discriminant of a trace curve."""


class DomainError(ValueError):
    """Dirichlet evaluation requested at s <= 1."""


@dataclass(frozen=True)
class SeriesEntry:
    p: int
    A_p: Fraction | None
    a_p_B: int | None
    A_star: Fraction | None
    skipped: bool = False
    reason: str = ""


@dataclass
class NagaoSeries:
    """Ordered per-prime ledger for one family."""

    family_hash: str
    entries: list[SeriesEntry] = field(default_factory=list)

    def append(self, entry: SeriesEntry) -> None:
        if self.entries and entry.p <= self.entries[-1].p:
            raise ValueError("entries must be strictly ascending in p")
        self.entries.append(entry)


def family_hash(spec: FamilySpec) -> str:
    """Hash of the canonical rendering; any semantic change changes it."""
    return hashlib.sha256(render_family(spec).encode()).hexdigest()[:16]


def trace_correction(spec: FamilySpec, ctx: FieldCtx) -> int:
    """a_p(B) = sum of the traces of the declared trace curves; 0 if trivial."""
    total = 0
    for curve, disc in zip(spec.trace.curves, trace_curve_discriminants(spec)):
        if disc % ctx.p == 0 or curve[-1] % ctx.p == 0:
            raise BadTracePrime(f"p = {ctx.p} is bad for a trace curve")
        total += univariate_curve_trace(ctx, curve)
    return total


def average_trace(spec: FamilySpec, ctx: FieldCtx) -> Fraction:
    """A_p = (1/p) * sum over c in P^1(F_p) of the fiber trace at c."""
    p = ctx.p
    arrays = fiber_arrays(spec, ctx)
    if arrays.unsupported:
        u = arrays.unsupported[0]
        raise SkippedPrime(p, f"unsupported fiber at c={u.c}: {u.why}")
    total = int(arrays.a.sum())
    rule = spec.infinity_rule.kind
    if spec.kind == "constant":
        total += int(arrays.a[0])  # the fiber over infinity is the same curve
    elif rule == "skip":
        pass  # omission is reported by the runner; the sum runs over p fibers
    # trace_zero and affine_plus contribute a = 0 at infinity
    return Fraction(total, p)


def reduced_average_trace(spec: FamilySpec, ctx: FieldCtx) -> Fraction:
    """A*_p = A_p - a_p(B)."""
    return average_trace(spec, ctx) - trace_correction(spec, ctx)


def variant_average(spec: FamilySpec, ctx: FieldCtx) -> Fraction:
    """A'_p, the average over the #P^1(F_p) = p + 1 base points."""
    return average_trace(spec, ctx) * Fraction(ctx.p, ctx.p + 1)


def compute_entry(spec: FamilySpec, p: int) -> SeriesEntry:
    """Ledger entry for one good prime; skip reasons become data, not errors."""
    ctx = make_field(p)
    try:
        a_b = trace_correction(spec, ctx)
    except BadTracePrime:
        return SeriesEntry(p, None, None, None, skipped=True, reason="bad trace prime")
    try:
        a_p = average_trace(spec, ctx)
    except SkippedPrime as exc:
        return SeriesEntry(p, None, None, None, skipped=True, reason=exc.reason)
    return SeriesEntry(p, a_p, a_b, a_p - a_b)


def good_primes(spec: FamilySpec, lo: int, hi: int) -> list[int]:
    bad = bad_primes(spec)
    if hi < 2:
        return []
    return [p for p in primes_in_range(2, hi) if p >= lo and p not in bad]


def compute_series(spec: FamilySpec, t_max: int, jobs: int = 1) -> NagaoSeries:
    """All entries for good primes up to t_max, ascending."""
    series = NagaoSeries(family_hash(spec))
    for entry in iter_entries(spec, good_primes(spec, 3, t_max), jobs=jobs):
        series.append(entry)
    return series


def iter_entries(spec: FamilySpec, primes: list[int], jobs: int = 1):
    """Yield entries in ascending-p order, optionally fanning out to workers."""
    if jobs <= 1 or len(primes) < 4:
        for p in primes:
            yield compute_entry(spec, p)
        return
    import multiprocessing as mp

    with mp.Pool(jobs) as pool:
        yield from pool.imap(
            _entry_worker, [(spec, p) for p in primes], chunksize=4
        )


def _entry_worker(args) -> SeriesEntry:
    spec, p = args
    return compute_entry(spec, p)


@dataclass(frozen=True)
class SeriesPoint:
    T: int
    S_T: float
    n_primes: int
    n_skipped: int


def cesaro_series(entries: list[SeriesEntry], checkpoints: list[int]) -> list[SeriesPoint]:
    """S(T_i) = (1/T_i) * sum_{p <= T_i, not skipped} -A*_p log p.

    Skipped primes contribute 0 but T still advances.  Deterministic:
    entries are consumed in ascending p, floats enter only at the final
    multiply-by-log step.
    """
    if any(t < 3 for t in checkpoints):
        raise ValueError("checkpoints must be >= 3")
    if sorted(checkpoints) != list(checkpoints):
        raise ValueError("checkpoints must be ascending")
    out: list[SeriesPoint] = []
    acc = 0.0
    used = 0
    skipped = 0
    idx = 0
    for t in checkpoints:
        while idx < len(entries) and entries[idx].p <= t:
            e = entries[idx]
            if e.skipped:
                skipped += 1
            else:
                acc += float(-e.A_star) * math.log(e.p)
                used += 1
            idx += 1
        out.append(SeriesPoint(t, acc / t, used, skipped))
    return out


def dirichlet_residue(
    entries: list[SeriesEntry], s_list: list[float], T: int
) -> list[tuple[float, float]]:
    """(s, (s-1) * D(s)) with D(s) = sum_{p <= T} -A*_p log(p) / p^s."""
    for s in s_list:
        if s <= 1:
            raise DomainError(f"s must exceed 1, got {s}")
    out = []
    for s in s_list:
        acc = 0.0
        for e in entries:
            if e.p > T:
                break
            if e.skipped:
                continue
            acc += float(-e.A_star) * math.log(e.p) / e.p**s
        out.append((s, (s - 1) * acc))
    return out


DEFAULT_S_GRID = [1 + 2.0**-k for k in range(2, 7)]


def synthetic_entries(a_star: Fraction | int, t_max: int) -> list[SeriesEntry]:
    """Entries with a constant injected A*_p; estimator calibration helper."""
    a_star = Fraction(a_star)
    return [
        SeriesEntry(p, a_star, 0, a_star) for p in primes_in_range(2, t_max)
    ]
