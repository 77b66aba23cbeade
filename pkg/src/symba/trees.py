"""The trees ``M_alpha``, their coarse wedge topology and Cantor-Bendixson levels.

A node of ``M_alpha`` is a finite sequence ``t(0), ..., t(n-1)`` of ordinals
with ``t(0) < w*alpha`` and ``t(i+1) < w*q(t(i))``.  The tree is ordered by
end-extension.  Basic neighbourhoods of ``s`` are the wedges
``U_{s,F} = {s} | {t : s < t, t(|s|) not in F}`` for finite ``F``.

The tree itself is never materialized.  Topological questions are answered
from the rank ``q(t(last))``: ``t`` lies in the derived set of order ``xi``
exactly when ``xi <= q(t(last))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import NumericError, PreconditionError, ValidationError
from .finvec import FinVec
from .ordinals import (
    Ordinal,
    as_ordinal,
    format_ordinal,
    omega_times,
    parse_ordinal,
    q_of,
)


@dataclass(frozen=True)
class Membership:
    ok: bool
    index: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"member": self.ok}
        if not self.ok:
            out["index"] = self.index
            out["reason"] = self.reason
        return out


def is_member(alpha, seq: Sequence) -> Membership:
    """Check the defining constraints of ``M_alpha``; report the first failure."""
    alpha = as_ordinal(alpha)
    seq = [as_ordinal(x) for x in seq]
    if not seq:
        raise PreconditionError("tree nodes are non-empty sequences")
    bound = omega_times(alpha)
    if not seq[0] < bound:
        return Membership(False, 0, f"t(0) = {seq[0]} is not below w*alpha = {bound}")
    for i in range(len(seq) - 1):
        bound = omega_times(q_of(seq[i]))
        if not seq[i + 1] < bound:
            return Membership(False, i + 1,
                              f"t({i + 1}) = {seq[i + 1]} is not below w*q(t({i})) = {bound}")
    return Membership(True)


class TreeNode:
    """A validated element of ``M_alpha``."""

    __slots__ = ("alpha", "seq")

    def __init__(self, alpha, seq: Iterable):
        alpha = as_ordinal(alpha)
        seq = tuple(as_ordinal(x) for x in seq)
        report = is_member(alpha, seq)
        if not report:
            raise ValidationError(f"not a node of M_{alpha}: {report.reason}")
        self.alpha = alpha
        self.seq = seq

    @classmethod
    def parse(cls, alpha, text: str) -> "TreeNode":
        return cls(alpha, parse_node(text))

    def __len__(self):
        return len(self.seq)

    @property
    def last(self) -> Ordinal:
        return self.seq[-1]

    def extend(self, eta) -> "TreeNode":
        return TreeNode(self.alpha, self.seq + (as_ordinal(eta),))

    def is_prefix_of(self, other: "TreeNode") -> bool:
        return len(self.seq) <= len(other.seq) and other.seq[: len(self.seq)] == self.seq

    def __eq__(self, other):
        return isinstance(other, TreeNode) and self.alpha == other.alpha and self.seq == other.seq

    def __hash__(self):
        return hash((self.alpha, self.seq))

    def __str__(self):
        return format_node(self.seq)

    def __repr__(self):
        return f"TreeNode({format_ordinal(self.alpha)!r}, {format_node(self.seq)!r})"


_NODE_RE = re.compile(r"^\[(.*)\]$")


def parse_node(text: str) -> list[Ordinal]:
    m = _NODE_RE.match(text.strip())
    if not m or not m.group(1).strip():
        raise ValidationError(f"malformed node literal {text!r}; expected [ordinal, ...]")
    return [parse_ordinal(part) for part in m.group(1).split(",")]


def format_node(seq: Sequence[Ordinal]) -> str:
    return "[" + ", ".join(format_ordinal(x) for x in seq) + "]"


# ---------------------------------------------------------------------------
# Cantor-Bendixson levels

def cb_rank(t: TreeNode) -> Ordinal:
    """The largest ``xi`` with ``t`` in the ``xi``-th derived set."""
    return q_of(t.last)


def in_levelset(t: TreeNode, xi) -> bool:
    return not cb_rank(t) < as_ordinal(xi)


def is_isolated_in_levelset(t: TreeNode, xi) -> bool:
    """Whether ``t`` is isolated in the ``xi``-th derived set.

    ``t`` is a limit of level-``xi`` points exactly when the children
    ``t + (w*xi + n)`` exist, since a wedge around ``t`` excludes only
    finitely many children.  That is tested by constructing the first
    witness child and checking membership directly.
    """
    xi = as_ordinal(xi)
    if not in_levelset(t, xi):
        raise PreconditionError(f"{t} is not in level set {xi}")
    witness = t.seq + (omega_times(xi),)
    return not is_member(t.alpha, witness)


def witness_children(t: TreeNode, xi, count: int = 3) -> list[TreeNode]:
    """Children ``t + (w*xi + n)``, ``n < count``, that accumulate at ``t``."""
    xi = as_ordinal(xi)
    base = omega_times(xi)
    out = []
    for n in range(count):
        seq = t.seq + (base + n,)
        if not is_member(t.alpha, seq):
            break
        out.append(TreeNode(t.alpha, seq))
    return out


def level_set_nonempty(alpha, xi) -> bool:
    """Whether some node of ``M_alpha`` has rank at least ``xi``.

    Ranks never increase along a branch, so roots suffice and the root
    ``(w*xi)`` is the least candidate.
    """
    return bool(is_member(alpha, [omega_times(as_ordinal(xi))]))


def scattered_height(alpha, budget: int = 64) -> Ordinal:
    """Least ``xi`` with an empty derived set of order ``xi``.

    Level ``alpha`` is shown empty and the levels below it nonempty: all of
    them when ``alpha`` is finite, a cofinal sample otherwise.
    """
    alpha = as_ordinal(alpha)
    if level_set_nonempty(alpha, alpha):
        raise NumericError(f"level {alpha} of M_{alpha} is unexpectedly nonempty")
    if alpha.is_zero():
        return alpha
    if alpha.is_finite():
        below = [Ordinal.of(k) for k in range(alpha.finite_part)]
    elif not alpha.is_limit():
        below = [Ordinal(alpha.terms[:-1])]
        if alpha.finite_part > 1:
            below[0] = below[0] + (alpha.finite_part - 1)
    else:
        # alpha = beta + w^e * c with e >= 1; sample beta + w^e*(c-1) + w^(e-1)*n
        e, c = alpha.terms[-1]
        head = Ordinal(alpha.terms[:-1])
        if c > 1:
            head = head + Ordinal.omega_power(e, c - 1)
        below = [head + Ordinal.omega_power(e - 1, n) if n else head for n in range(budget)]
    for xi in below:
        if not level_set_nonempty(alpha, xi):
            raise NumericError(f"level {xi} of M_{alpha} is unexpectedly empty")
    return alpha


# ---------------------------------------------------------------------------
# K_eta

def k_eta_alpha(eta) -> Ordinal:
    """``K_eta`` sits inside ``M_{q(eta)+1}``."""
    return q_of(as_ordinal(eta)).successor()


def k_eta_root(eta) -> TreeNode:
    eta = as_ordinal(eta)
    return TreeNode(k_eta_alpha(eta), [eta])


def in_k_eta(eta, t: TreeNode) -> bool:
    """``t`` lies in the compact open subtree of nodes starting with ``eta``."""
    return t.seq[0] == as_ordinal(eta)


# ---------------------------------------------------------------------------
# wedges

class WedgeNbhd:
    """The basic open set ``U_{s,F}``."""

    __slots__ = ("base", "excluded")

    def __init__(self, base: TreeNode, excluded: Iterable = ()):
        excluded = frozenset(as_ordinal(x) for x in excluded)
        for x in excluded:
            if not x < base.last:
                raise ValidationError(f"excluded ordinal {x} is not below s(|s|-1) = {base.last}")
        self.base = base
        self.excluded = excluded

    def __eq__(self, other):
        return isinstance(other, WedgeNbhd) and (self.base, self.excluded) == (other.base, other.excluded)

    def __hash__(self):
        return hash((self.base, self.excluded))

    def __repr__(self):
        ex = sorted(self.excluded, reverse=True)
        return f"WedgeNbhd({self.base}, {{{', '.join(map(str, ex))}}})"


def wedge_contains(U: WedgeNbhd, t: TreeNode) -> bool:
    if U.base.alpha != t.alpha:
        raise PreconditionError("wedge and node live in different trees")
    s = U.base
    if t == s:
        return True
    return len(t) > len(s) and s.is_prefix_of(t) and t.seq[len(s)] not in U.excluded


def wedge_intersection(U: WedgeNbhd, V: WedgeNbhd) -> WedgeNbhd:
    """``U_{s,F} & U_{s,G} = U_{s,F|G}`` for wedges with a common base."""
    if U.base != V.base:
        raise PreconditionError("only wedges with a common base intersect to a wedge")
    return WedgeNbhd(U.base, U.excluded | V.excluded)


def wedges_overlap(U: WedgeNbhd, V: WedgeNbhd) -> bool:
    """Two wedges meet iff one base lies in the other wedge.

    If ``t`` is in both, both bases are prefixes of ``t`` and hence
    comparable; the longer base then lies in the shorter base's wedge.
    """
    return wedge_contains(U, V.base) or wedge_contains(V, U.base)


def children_sample(t: TreeNode, betas: Iterable, budget: int) -> list[TreeNode]:
    """Children ``t + (w*beta + m)`` for ``beta`` descending, ``m < budget`` ascending."""
    if budget < 1:
        raise PreconditionError("budget must be a positive integer")
    top = cb_rank(t)
    betas = sorted({as_ordinal(b) for b in betas}, reverse=True)
    for b in betas:
        if not b < top:
            raise PreconditionError(f"beta = {b} is not below q(t(last)) = {top}")
    return [TreeNode(t.alpha, t.seq + (omega_times(b) + m,)) for b in betas for m in range(budget)]


# ---------------------------------------------------------------------------
# Dirac transport

def dirac_transport(s: TreeNode, u: TreeNode, points: Sequence[TreeNode],
                    wedges: Sequence[WedgeNbhd]) -> FinVec:
    """Image of ``delta_s`` under the adjoint transport with indicator bumps.

    ``S* delta_s = delta_s - delta_u - phi_0(s) delta_{t_0}
    + sum_n phi_n(s) (delta_{t_{n-1}} - delta_{t_n})``, where ``phi_n`` is the
    indicator of the clopen wedge ``U_n``.  Labels are node literals.
    """
    if len(points) != len(wedges) or not points:
        raise PreconditionError("need one wedge per point t_0..t_N")
    if s == u:
        raise PreconditionError("s must differ from u")
    if u in points:
        raise PreconditionError("u must differ from every t_n")
    for n, (t, U) in enumerate(zip(points, wedges)):
        if not wedge_contains(U, t):
            raise PreconditionError(f"wedge U_{n} does not contain t_{n}")
        if wedge_contains(U, u):
            raise PreconditionError(f"wedge U_{n} contains u")
    for a in range(len(wedges)):
        for b in range(a + 1, len(wedges)):
            if wedges_overlap(wedges[a], wedges[b]):
                raise PreconditionError(f"wedges U_{a} and U_{b} overlap")

    coef: dict = {}

    def bump(node: TreeNode, c: int):
        key = str(node)
        coef[key] = coef.get(key, 0) + Fraction(c)

    bump(s, 1)
    bump(u, -1)
    for n, U in enumerate(wedges):
        if not wedge_contains(U, s):
            continue
        if n == 0:
            bump(points[0], -1)
        else:
            bump(points[n - 1], 1)
            bump(points[n], -1)
    return FinVec(coef)
