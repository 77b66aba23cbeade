"""
Lorentz norms, fundamental functions and the theta functional
=============================================================

A walk through the exact-arithmetic side of the library: norms of finitely
supported vectors in the Lorentz predual and dual, the fundamental functions
lambda and mu, and the level-set functional theta together with the convex
reconstruction of a functional from its approximants.
"""
from fractions import Fraction

from symba import approx, spaces
from symba.finvec import FinVec, ones

# %%
# Norms with harmonic weights
# ---------------------------
# Weights ``w_n = 1/n``.  The dual norm pairs sorted magnitudes with weights,
# the predual norm takes the largest prefix ratio.
w = spaces.WeightSeq.harmonic()
f = FinVec.parse("a=2,b=1")
print("dual norm of", f.to_json(), "=", spaces.lorentz_dual_norm(f, w))
print("predual norm of three ones =", spaces.lorentz_predual_norm(ones(3), w))

# The vector with coordinates w_1, ..., w_n always has predual norm one.
x = FinVec({f"e{k}": Fraction(1, k) for k in range(1, 30)})
print("predual norm of (w_1..w_29) =", spaces.lorentz_predual_norm(x, w))

# %%
# Fundamental functions
# ---------------------
# lambda(n) mu(n) = n, exactly, and mu(n) is the harmonic number.
spec = spaces.SpaceSpec.lorentz_predual(w)
lams, mus = spaces.fundamental_table(spec, 8)
for n in range(1, 9):
    print(f"n={n}  lambda={str(lams[n]):>12}  mu={str(mus[n]):>10}  product={lams[n] * mus[n]}")

# %%
# theta and the range profile
# ---------------------------
# theta(f) sums gap * rho(level set).  With the counting provider it is the
# l1 norm; with the symmetric provider it reproduces the Lorentz dual norm.
g = FinVec.parse("a=3,b=2,c=2,d=1")
prof = approx.range_profile(g)
print("p =", prof.to_json()["p"], " q =", prof.to_json()["q"], " |G| =", prof.G_sizes)
print("theta counting  =", approx.theta_value(g, approx.RhoProvider.counting()))
print("theta symmetric =", approx.theta_value(g, approx.RhoProvider.symmetric()),
      " dual norm =", spaces.lorentz_dual_norm(g, w))

# %%
# Reconstruction from approximants
# --------------------------------
# f is a convex combination of j_{m,n}(f), with explicit weights.
prov = approx.RhoProvider.counting()
weights = approx.convex_weights(g, 1, prov)
print("weights:", {n: str(v) for n, v in weights.items()})
for n in weights:
    print(f"  j_1,{n} =", approx.j(g, 1, n, prov).to_json())
rec, resid = approx.reconstruct(g, 1, prov)
print("reconstruction:", rec.to_json(), " residual:", resid)
