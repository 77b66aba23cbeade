"""
Summability conditions on four model spaces
============================================

Partial sums of the boundedness and summability series, sampled on a
geometric grid and graded by the evidence classifier.  Each built-in example
carries the verdicts known for it; the table below shows what the numerics say.
"""
import math

from symba import conditions, orlicz
from symba.spaces import ExponentSeq, SpaceSpec

# %%
# Built-in examples
# -----------------
for name in conditions.BUILTINS:
    ex = conditions.builtin(name)
    print(f"\n{name}: {ex.description}")
    for label, diag in ex.run().items():
        mark = "ok " if diag.verdict == ex.expected[label] else "!! "
        print(f"  {mark}{label:<22} N={diag.N:<8} last={float(diag.last):<12.6g} {diag.verdict}")

# %%
# The exp(-1/t) example in detail
# -------------------------------
# M(M^-1(1/n)/K) = n^-K, so the orlicz_eq5 series is a p-series.
M = orlicz.exp_reciprocal(extension="formula")
for K, diag in conditions.scan_K("orlicz_eq5", {"M": M}, 1000).items():
    exact = math.fsum(n ** -float(K) for n in range(1, 1001))
    print(f"K={K:<3} s_1000={diag.last:.12f}  direct={exact:.12f}  {diag.verdict}")

# %%
# Leung's function: ratio to zero, sum unbounded
# ----------------------------------------------
L = orlicz.leung()
ratio = conditions.series("leung_ratio", {"M": L, "K": 2}, 1000)
for j, lo, hi in ratio.enclosures[::5]:
    print(f"j={j:<5} M(2^-j/2)/M(2^-j) in [{lo:.6f}, {hi:.6f}]")
total = conditions.series("leung_sum", {"M": L, "K": 2}, 1000)
print("dyadic sum at J=1000:", round(total.last, 3), total.verdict)

# %%
# Nakano exponents p_k = 2 log(log k + 1) + 1
# --------------------------------------------
p = ExponentSeq("loglog")
print("certified bound for the normalized partial sums:", conditions.nakano_cor46_majorant(p))
diag = conditions.series("cor46", {"space": SpaceSpec.nakano(p)}, 120)
print("s_120 =", round(diag.last, 6), diag.verdict)
