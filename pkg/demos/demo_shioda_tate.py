"""Rank bookkeeping for the trivial lattice and the per-prime diagnostic.

The subgroup S of the Neron-Severi group is spanned by a horizontal class,
a fiber class, and the non-identity components of singular fibers:
rg(S) = 2 + sum_c (n_c - 1).  Frobenius permutes components, so its trace
on S is 2 + sum_c (m_c(p) - 1) with m_c the rational-component count, and
tr(F_p | S) - A*_p is a consistency residual one can watch per prime.
"""

from nagao import load_shipped_family
from nagao.accumulator import compute_series
from nagao.family_model import FiberConfiguration, FiberDescriptor, parse_m_rule
from nagao.shioda_tate import form5_diagnostic, ns_rank, rank_S, rank_S_Gk, trace_on_S

spec = load_shipped_family("shioda_g1")
config = spec.fiber_config
print(f"{spec.name}: declared singular fibers")
for fd in config.fibers:
    print(f"  {fd.label}: n = {fd.n} components, {fd.orbits} Galois orbit(s)")
print(f"rg(S) = {rank_S(config)}   rg(S^Gk) = {rank_S_Gk(config)}")
print(f"Shioda-Tate: rg(NS) = rank_MW + rg(S^Gk) = 2 + {rank_S_Gk(config)}"
      f" = {ns_rank(2, config)}")

series = compute_series(spec, 500)
report = form5_diagnostic(series, config)
print(f"\nper-prime residuals tr(F_p | S) - A*_p up to T = 500:")
print(f"  mean |r| = {report.mean_abs:.3f}   max |r| = {report.max_abs:.3f}")
for p, r in report.residuals[:8]:
    print(f"  p = {p:3d}   residual = {str(r)}")

print("\na configuration whose component counts depend on p:")
config2 = FiberConfiguration((
    FiberDescriptor("c0", n=2, orbits=1, m_rule=parse_m_rule("2 if chi(-1) == 1 else 1")),
    FiberDescriptor("c1", n=4, orbits=4, m_rule=parse_m_rule("4")),
))
print(f"rg(S) = {rank_S(config2)}, rg(S^Gk) = {rank_S_Gk(config2)}")
for p in (5, 7, 13, 19):
    print(f"  p = {p:2d}: tr(F_p | S) = {trace_on_S(config2, p)}")
