"""
The trees M_alpha and their Cantor-Bendixson levels
===================================================

Nodes are decreasing sequences of ordinals below w^w.  The rank of a node is
read off its last entry, which answers every level-set question without
building the tree.
"""
from symba.ordinals import parse_ordinal, q_of
from symba.trees import (
    TreeNode,
    WedgeNbhd,
    cb_rank,
    children_sample,
    dirac_transport,
    is_isolated_in_levelset,
    scattered_height,
    witness_children,
)

# %%
# Ordinals and q
# --------------
for text in ["7", "w*2+5", "w^2*3+w*4+7"]:
    eta = parse_ordinal(text)
    print(f"q({eta}) = {q_of(eta)}")

# %%
# Ranks and isolation
# -------------------
t = TreeNode.parse(4, "[w*3+1]")
print(t, "has rank", cb_rank(t))
for xi in range(4):
    iso = is_isolated_in_levelset(t, xi)
    extra = "" if iso else "  witnesses " + ", ".join(map(str, witness_children(t, xi)))
    print(f"  level {xi}: isolated={iso}{extra}")
print("children sample:", [str(c) for c in children_sample(t, [2, 0], 2)])

for alpha in ["1", "2", "3", "w"]:
    print(f"scattered height of M_{alpha} = {scattered_height(alpha)}")

# %%
# Dirac transport
# ---------------
# Points t_n = [w, n] sit in disjoint singleton wedges; u = [w] is outside.
u = TreeNode.parse(2, "[w]")
pts = [TreeNode.parse(2, f"[w, {n}]") for n in range(5)]
wedges = [WedgeNbhd(p) for p in pts]
for s in [pts[0], pts[3], TreeNode.parse(2, "[5]")]:
    print(f"S* delta_{s} =", dirac_transport(s, u, pts, wedges).to_json())
