"""Run orchestration: ledger persistence, checkpointed resume, verification.

Outputs are plain CSV plus a JSON summary.  The per-prime ledger is the unit
of persistence: series and residue files are pure functions of it, so a
resumed run reproduces a fresh run bit for bit.  Partial outputs are written
atomically (write-then-rename); only the append-only ledger is streamed.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import fp_poly
from .accumulator import (
    NagaoSeries,
    SeriesEntry,
    cesaro_series,
    dirichlet_residue,
    family_hash,
    good_primes,
    iter_entries,
)
from .family_model import FamilySpec, bad_primes, discriminant_locus, fiber_at
from .fiber_trace import (
    UnsupportedFiber,
    count_affine,
    fiber_trace,
    weil_bound,
)
from .prime_field import make_field, primes_in_range
from .shioda_tate import form5_diagnostic

LEDGER_FIELDS = ["family_hash", "p", "A_p_num", "A_p_den", "a_p_B", "skipped", "reason"]
SERIES_FIELDS = ["T", "S_T", "n_primes", "n_skipped"]
RESIDUE_FIELDS = ["s", "estimate", "T"]


class LedgerMismatch(Exception):
    """Existing ledger was produced by a different family."""


@dataclass
class RunConfig:
    family_path: str
    t_max: int
    out_dir: str
    jobs: int = 1
    resume: bool = False
    checkpoints: list[int] | None = None
    s_list: list[float] | None = None

    def validate(self) -> None:
        if self.t_max < 3:
            raise ValueError("tmax must be >= 3")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.checkpoints is not None:
            if sorted(self.checkpoints) != self.checkpoints:
                raise ValueError("checkpoints must be ascending")
            if any(t < 3 for t in self.checkpoints):
                raise ValueError("checkpoints must be >= 3")
            if self.checkpoints and self.checkpoints[-1] > self.t_max:
                raise ValueError("checkpoints must not exceed tmax")


def default_checkpoints(t_max: int, n: int = 12) -> list[int]:
    """Roughly log-spaced grid ending at t_max."""
    if t_max <= 10:
        return [t_max]
    out = set()
    import math

    lo, hi = math.log10(10.0), math.log10(float(t_max))
    for k in range(n):
        out.add(int(round(10 ** (lo + (hi - lo) * k / (n - 1)))))
    out.add(t_max)
    return sorted(t for t in out if t >= 3)


def atomic_write(path: Path, data: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(data)
    os.replace(tmp, path)


def entry_row(fam_hash: str, e: SeriesEntry) -> list[str]:
    if e.skipped:
        return [fam_hash, str(e.p), "", "", "", "1", e.reason]
    return [
        fam_hash,
        str(e.p),
        str(e.A_p.numerator),
        str(e.A_p.denominator),
        str(e.a_p_B),
        "0",
        "",
    ]


def row_entry(row: dict[str, str]) -> SeriesEntry:
    p = int(row["p"])
    if row["skipped"] == "1":
        return SeriesEntry(p, None, None, None, skipped=True, reason=row["reason"])
    a_p = Fraction(int(row["A_p_num"]), int(row["A_p_den"]))
    a_b = int(row["a_p_B"])
    return SeriesEntry(p, a_p, a_b, a_p - a_b)


def load_ledger(path: Path) -> tuple[str | None, list[SeriesEntry]]:
    if not path.exists():
        return None, []
    entries = []
    fam_hash = None
    with path.open(newline="") as fh:
        for row in csv.DictReader(fh):
            fam_hash = row["family_hash"]
            entries.append(row_entry(row))
    return fam_hash, entries


@dataclass
class RunResult:
    spec: FamilySpec
    fam_hash: str
    series: NagaoSeries
    out_dir: Path
    skipped: list[SeriesEntry] = field(default_factory=list)


def run_pipeline(spec: FamilySpec, config: RunConfig) -> RunResult:
    """Compute (or extend) the per-prime ledger up to t_max."""
    config.validate()
    fam_hash = family_hash(spec)
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ledger_path = out_dir / "ledger.csv"

    existing: list[SeriesEntry] = []
    if config.resume:
        old_hash, existing = load_ledger(ledger_path)
        if old_hash is not None and old_hash != fam_hash:
            raise LedgerMismatch(
                f"ledger at {ledger_path} was produced for family hash {old_hash}, "
                f"current family hashes to {fam_hash}"
            )

    done = {e.p for e in existing}
    todo = [p for p in good_primes(spec, 3, config.t_max) if p not in done]

    mode = "a" if (config.resume and existing) else "w"
    with ledger_path.open(mode, newline="") as fh:
        writer = csv.writer(fh)
        if mode == "w":
            writer.writerow(LEDGER_FIELDS)
        new_entries = []
        for entry in iter_entries(spec, todo, jobs=config.jobs):
            writer.writerow(entry_row(fam_hash, entry))
            fh.flush()
            new_entries.append(entry)

    series = NagaoSeries(fam_hash)
    for entry in sorted(existing + new_entries, key=lambda e: e.p):
        if entry.p <= config.t_max:
            series.append(entry)
    skipped = [e for e in series.entries if e.skipped]
    return RunResult(spec, fam_hash, series, out_dir, skipped)


def series_csv_text(result: RunResult, checkpoints: list[int]) -> str:
    points = cesaro_series(result.series.entries, checkpoints)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(SERIES_FIELDS)
    for pt in points:
        writer.writerow([pt.T, repr(pt.S_T), pt.n_primes, pt.n_skipped])
    return buf.getvalue()


def residue_csv_text(result: RunResult, s_list: list[float], t_max: int) -> str:
    rows = dirichlet_residue(result.series.entries, s_list, t_max)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(RESIDUE_FIELDS)
    for s, est in rows:
        writer.writerow([repr(s), repr(est), t_max])
    return buf.getvalue()


def summary_dict(result: RunResult, checkpoints: list[int]) -> dict:
    points = cesaro_series(result.series.entries, checkpoints)
    final = points[-1]
    out = {
        "family": result.spec.name,
        "family_hash": result.fam_hash,
        "T": final.T,
        "S_T": final.S_T,
        "nearest_integer": int(round(final.S_T)),
        "n_primes": final.n_primes,
        "n_skipped": final.n_skipped,
        "bad_primes": sorted(bad_primes(result.spec)),
        "skipped": [{"p": e.p, "reason": e.reason} for e in result.skipped],
    }
    if result.spec.fiber_config is not None:
        report = form5_diagnostic(result.series, result.spec.fiber_config)
        out["form5_diagnostic"] = {
            "mean_abs_residual": report.mean_abs,
            "max_abs_residual": report.max_abs,
        }
    return out


# ---------------------------------------------------------------------------
# Verification oracles (exhaustive enumeration at desk scale)
# ---------------------------------------------------------------------------


def brute_force_affine(p: int, polys: tuple[tuple[int, ...], ...]) -> int:
    """Count solutions by direct enumeration of (x, y) or (x, y, z) in F_p."""
    count = 0
    if len(polys) == 1:
        f = polys[0]
        for x in range(p):
            fx = fp_poly.eval_at(f, x, p)
            for y in range(p):
                if (y * y - fx) % p == 0:
                    count += 1
    else:
        f1, f2 = polys
        for x in range(p):
            v1 = fp_poly.eval_at(f1, x, p)
            v2 = fp_poly.eval_at(f2, x, p)
            n1 = sum(1 for y in range(p) if (y * y - v1) % p == 0)
            n2 = sum(1 for z in range(p) if (z * z - v2) % p == 0)
            count += n1 * n2
    return count


@dataclass
class VerifyCheck:
    name: str
    passed: bool
    detail: str = ""


def verify_family(spec: FamilySpec, p_max: int = 23) -> list[VerifyCheck]:
    """Cross-check the counting kernel against enumeration for p <= p_max."""
    checks: list[VerifyCheck] = []
    bad = bad_primes(spec)
    primes = [p for p in primes_in_range(3, p_max) if p not in bad]

    ok = True
    detail = ""
    for p in primes:
        ctx = make_field(p)
        for c in range(p):
            fiber = fiber_at(spec, ctx, c)
            got = count_affine(ctx, fiber)
            want = brute_force_affine(p, fiber.polys)
            if got != want:
                ok = False
                detail = f"p={p}, c={c}: kernel {got} != enumeration {want}"
                break
        if not ok:
            break
    checks.append(VerifyCheck(f"count_affine: exhaustive match (p <= {p_max})", ok, detail))

    ok = True
    detail = ""
    for p in primes:
        ctx = make_field(p)
        for c in list(range(p)) + [None]:
            try:
                rec = fiber_trace(ctx, spec, c)
            except UnsupportedFiber:
                continue
            if rec is None:
                continue
            if rec.N != 1 - rec.a + p * rec.m:
                ok = False
                detail = f"p={p}, c={c}: N = {rec.N} but 1 - a + p m = {1 - rec.a + p * rec.m}"
                break
            if not rec.singular and abs(rec.a) > weil_bound(spec.genus, p):
                ok = False
                detail = f"p={p}, c={c}: |a| = {abs(rec.a)} exceeds 2g sqrt(p)"
                break
        if not ok:
            break
    checks.append(
        VerifyCheck(f"trace identity and Weil bound (p <= {p_max})", ok, detail)
    )

    ok = True
    detail = ""
    for p in primes:
        ctx = make_field(p)
        from .kernels import singular_c_values

        via_resultant = set(int(c) for c in singular_c_values(spec, ctx))
        via_gcd = discriminant_locus(spec, ctx)
        if via_resultant != via_gcd:
            ok = False
            detail = f"p={p}: resultant locus {sorted(via_resultant)} != gcd locus {sorted(via_gcd)}"
            break
    checks.append(
        VerifyCheck(f"discriminant locus: resultant vs gcd (p <= {p_max})", ok, detail)
    )
    return checks
