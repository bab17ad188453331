"""Combinatorics of the trivial part of the Neron-Severi group.

The subgroup S is generated by a horizontal class, a fiber class, and the
non-identity components of singular fibers, so its rank is
2 + sum_c (n_c - 1).  Frobenius permutes fiber components, fixing the two
distinguished classes, giving trace 2 + sum_c (m_c(p) - 1); the Galois-fixed
rank replaces components by orbits.  Rank of NS over the ground field splits
as Mordell-Weil rank of the varying part plus the fixed rank of S.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .accumulator import NagaoSeries
from .family_model import FiberConfiguration


def rank_S(config: FiberConfiguration) -> int:
    """2 + sum over singular fibers of (n_c - 1)."""
    return 2 + sum(fd.n - 1 for fd in config.fibers)


def rank_S_Gk(config: FiberConfiguration) -> int:
    """Galois-fixed rank: 2 + sum of (orbit count - 1) per fiber."""
    return 2 + sum(fd.orbits - 1 for fd in config.fibers)


def trace_on_S(config: FiberConfiguration, p: int) -> int:
    """2 + sum of (m_c(p) - 1) using each fiber's declared m-rule."""
    return 2 + sum(fd.m_rule.value(p) - 1 for fd in config.fibers)


def ns_rank(rank_mw: int, config: FiberConfiguration) -> int:
    """rank NS over the ground field = Mordell-Weil rank + fixed rank of S."""
    return rank_mw + rank_S_Gk(config)


@dataclass(frozen=True)
class Form5Report:
    """Per-prime residuals tr(F_p | S) - A*_p, read as the implied b_p/p.

    Diagnostic only: b_p is never computed independently, so there is no
    pass/fail semantics attached."""

    residuals: tuple[tuple[int, Fraction], ...]
    mean_abs: float
    max_abs: float


def form5_diagnostic(series: NagaoSeries, config: FiberConfiguration) -> Form5Report:
    residuals = []
    for entry in series.entries:
        if entry.skipped:
            continue
        r = Fraction(trace_on_S(config, entry.p)) - entry.A_star
        residuals.append((entry.p, r))
    if not residuals:
        return Form5Report((), 0.0, 0.0)
    abs_vals = [abs(float(r)) for _, r in residuals]
    return Form5Report(
        tuple(residuals),
        sum(abs_vals) / len(abs_vals),
        max(abs_vals),
    )
