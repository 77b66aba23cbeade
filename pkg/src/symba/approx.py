"""Range profiles, the theta functional and the approximating functionals.

For a finitely supported functional ``f`` with distinct magnitudes
``p_1 > p_2 > ... > p_L > 0`` put ``p_{L+1} = 0``, ``q_k = p_k - p_{k+1}``,
``G_k = {|f| >= p_k}`` and ``H_k = G_k \\ G_{k-1}``.  Then

    theta(f) = sum_k q_k rho(G_k)
    omega_k(f) = sign(f) restricted to G_k
    h_m(f) = sum_{k<=m} q_k omega_k(f)
    g_{m,n}(f) = theta(f - h_m(f)) / rho(G_n) * omega_n(f)
    j_{m,n}(f) = h_m(f) + g_{m,n}(f)

and ``f = sum_n lambda_n j_{m,n}(f)`` for explicit convex weights ``lambda``.
Coordinates are measured against a normalized basis, so ``|f_gamma|`` is the
coordinate norm.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .errors import HorizonError, NumericError, PreconditionError, ValidationError
from .finvec import FinVec, format_scalar, parse_scalar
from .spaces import SpaceSpec, fundamental_functions


@dataclass(frozen=True)
class RhoProvider:
    """A set function ``rho(F)`` depending only on ``|F|``.

    ``symmetric`` uses ``mu(|F|)`` of a 1-symmetric space, ``counting`` uses
    ``|F|`` and ``table`` looks sizes up in an explicit non-decreasing list
    (``values[k-1] = rho`` of a ``k``-set).
    """

    variant: str
    space: Optional[SpaceSpec] = None
    values: tuple = ()

    def __post_init__(self):
        if self.variant not in ("symmetric", "counting", "table"):
            raise ValidationError(f"unknown rho provider {self.variant!r}")
        if self.variant == "symmetric" and self.space is None:
            raise ValidationError("symmetric provider needs a space")
        if self.variant == "table":
            prev = 0
            for v in self.values:
                if v < prev:
                    raise ValidationError("rho table must be non-decreasing and non-negative")
                prev = v

    @classmethod
    def counting(cls) -> "RhoProvider":
        return cls("counting")

    @classmethod
    def symmetric(cls, space: SpaceSpec | None = None) -> "RhoProvider":
        return cls("symmetric", space=space or SpaceSpec.lorentz_predual())

    @classmethod
    def table(cls, values) -> "RhoProvider":
        return cls("table", values=tuple(parse_scalar(v) for v in values))

    @property
    def exact(self) -> bool:
        if self.variant == "symmetric":
            return self.space.exact
        if self.variant == "table":
            return all(isinstance(v, Fraction) for v in self.values)
        return True

    def __call__(self, size: int):
        return rho(self, size)

    def to_json(self) -> dict:
        if self.variant == "symmetric":
            return {"provider": "symmetric", "space": self.space.to_json()}
        if self.variant == "table":
            return {"provider": "table", "values": [format_scalar(v) for v in self.values]}
        return {"provider": "counting"}

    @classmethod
    def from_json(cls, obj) -> "RhoProvider":
        if isinstance(obj, str):
            obj = {"provider": obj}
        kind = obj.get("provider")
        if kind == "counting":
            return cls.counting()
        if kind == "symmetric":
            space = obj.get("space")
            return cls.symmetric(SpaceSpec.from_json(space) if space else None)
        if kind == "table":
            return cls.table(obj.get("values", []))
        raise ValidationError(f"unknown rho provider {kind!r}")


def rho(provider: RhoProvider, size: int):
    """``rho`` of any ``size``-element set; ``rho`` of the empty set is 0."""
    if size < 0:
        raise PreconditionError("set size must be non-negative")
    if size == 0:
        return Fraction(0)
    if provider.variant == "counting":
        return Fraction(size)
    if provider.variant == "table":
        if size > len(provider.values):
            raise HorizonError(f"rho table ends at size {len(provider.values)}")
        return provider.values[size - 1]
    return fundamental_functions(provider.space, size)[1]


@dataclass(frozen=True)
class RangeProfile:
    """Level data of a functional: magnitudes, gaps, level sets and shells."""

    p: tuple
    q: tuple
    G: tuple   # tuple of frozensets, nested
    H: tuple   # tuple of frozensets, disjoint

    @property
    def levels(self) -> int:
        return len(self.p)

    @property
    def G_sizes(self) -> tuple:
        return tuple(len(g) for g in self.G)

    def p_at(self, k: int):
        """``p_k`` with the convention ``p_k = 0`` past the last level."""
        return self.p[k - 1] if 1 <= k <= self.levels else Fraction(0)

    def to_json(self) -> dict:
        return {
            "p": [format_scalar(v) for v in self.p],
            "q": [format_scalar(v) for v in self.q],
            "G_sizes": list(self.G_sizes),
        }


def range_profile(f: FinVec) -> RangeProfile:
    mags: dict = {}
    for label, v in f.items():
        mags.setdefault(abs(v), []).append(label)
    p = sorted(mags, reverse=True)
    q = tuple(a - b for a, b in zip(p, p[1:] + [0]))
    G, H, acc = [], [], set()
    for v in p:
        shell = frozenset(mags[v])
        acc |= shell
        H.append(shell)
        G.append(frozenset(acc))
    return RangeProfile(tuple(p), q, tuple(G), tuple(H))


@dataclass(frozen=True)
class ThetaBreakdown:
    profile: RangeProfile
    rho: tuple
    terms: tuple
    theta: object

    def to_json(self) -> dict:
        out = self.profile.to_json()
        out["rho"] = [format_scalar(v) for v in self.rho]
        out["terms"] = [format_scalar(v) for v in self.terms]
        out["theta"] = format_scalar(self.theta)
        return out


def _zero(f: FinVec, provider: RhoProvider):
    return Fraction(0) if (f.exact and provider.exact) else 0.0


def theta(f: FinVec, provider: RhoProvider) -> ThetaBreakdown:
    prof = range_profile(f)
    rhos = tuple(rho(provider, len(g)) for g in prof.G)
    terms = tuple(q * r for q, r in zip(prof.q, rhos))
    total = sum(terms, _zero(f, provider))
    return ThetaBreakdown(prof, rhos, terms, total)


def theta_value(f: FinVec, provider: RhoProvider):
    return theta(f, provider).theta


def _sign(v):
    return Fraction(1 if v > 0 else -1) if isinstance(v, Fraction) else (1.0 if v > 0 else -1.0)


def omega(f: FinVec, k: int, profile: RangeProfile | None = None) -> FinVec:
    """Sum of ``f_gamma / |f_gamma|`` over ``gamma`` in ``G_k``."""
    prof = profile or range_profile(f)
    if not 1 <= k <= prof.levels:
        raise PreconditionError(f"level {k} out of range 1..{prof.levels}")
    return FinVec({g: _sign(f[g]) for g in prof.G[k - 1]})


def h_definition(f: FinVec, m: int) -> FinVec:
    """``h_m(f) = sum_{k<=m} q_k omega_k(f)`` summed level by level."""
    prof = range_profile(f)
    out = FinVec()
    for k in range(1, min(m, prof.levels) + 1):
        out = out + omega(f, k, prof).scale(prof.q[k - 1])
    return out


def h_clipped(f: FinVec, m: int) -> FinVec:
    """``f`` on ``G_m`` minus ``p_{m+1} omega_m(f)``: coordinates clipped at ``p_{m+1}``."""
    prof = range_profile(f)
    if m >= prof.levels:
        return f
    top = FinVec({g: f[g] for g in prof.G[m - 1]})
    return top - omega(f, m, prof).scale(prof.p[m])


def h(f: FinVec, m: int) -> FinVec:
    """``h_m(f)``; both formulas are evaluated and must agree on exact input."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    a = h_definition(f, m)
    b = h_clipped(f, m)
    if f.exact and a != b:
        raise NumericError(f"h_{m} formulas disagree: {a!r} vs {b!r}")
    return a


def g(f: FinVec, m: int, n: int, provider: RhoProvider) -> FinVec:
    if not 1 <= m < n:
        raise PreconditionError("g_{m,n} needs 1 <= m < n")
    prof = range_profile(f)
    if n > prof.levels:
        return FinVec()
    resid = f - h(f, m)
    coef = theta_value(resid, provider) / rho(provider, len(prof.G[n - 1]))
    return omega(f, n, prof).scale(coef)


def j(f: FinVec, m: int, n: int, provider: RhoProvider) -> FinVec:
    return h(f, m) + g(f, m, n, provider)


def convex_weights(f: FinVec, m: int, provider: RhoProvider) -> dict:
    """Weights ``lambda_n`` (keyed by ``n``) with ``f = sum lambda_n j_{m,n}(f)``."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    prof = range_profile(f)
    if m >= prof.levels:
        return {m + 1: Fraction(1)}
    th = theta_value(f - h(f, m), provider)
    return {
        n: prof.q[n - 1] * rho(provider, len(prof.G[n - 1])) / th
        for n in range(m + 1, prof.levels + 1)
    }


def reconstruct(f: FinVec, m: int, provider: RhoProvider):
    """``(sum lambda_n j_{m,n}(f), l_inf distance to f)``."""
    out = FinVec()
    for n, lam in convex_weights(f, m, provider).items():
        out = out + j(f, m, n, provider).scale(lam)
    return out, (out - f).linf()


def tail_bound(f: FinVec, m: int, provider: RhoProvider):
    """``sum_{k>m} q_k rho(G_k)``, an upper bound for ``||f - h_m(f)||``."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    tb = theta(f, provider)
    return sum(tb.terms[m:], _zero(f, provider))


def weights_to_json(weights: Mapping) -> dict:
    return {str(n): format_scalar(v) for n, v in weights.items()}
