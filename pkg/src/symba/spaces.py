"""Symmetric sequence spaces: weights, exponents, norms, modulars.

Five space variants are supported:

``lorentz_predual``  ``d_*(w,1)``: ``||x|| = max_k (sum of k largest |x|) / (w_1+...+w_k)``
``lorentz_dual``     ``d(w,1)``:  ``||f|| = sum_n w_n f*_n`` (decreasing rearrangement)
``orlicz``           ``h_M``:     Luxemburg norm of ``sum M(|x|/rho) <= 1``
``nakano``           ``h^S_(p_k)``: Luxemburg norm of the symmetrized modular
``counting``         ``c_0``:     ``max |x|``; its dual norm is ``l1``

Lorentz and counting spaces are evaluated exactly on rational input.  Orlicz
and Nakano norms are found by bracketed bisection in binary64.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import orlicz as _orlicz
from .errors import BracketError, HorizonError, PreconditionError, ValidationError
from .finvec import FinVec, format_scalar, ones, parse_scalar
from .orlicz import OrliczFn

VARIANTS = ("lorentz_predual", "lorentz_dual", "orlicz", "nakano", "counting")

DEFAULT_RTOL = 1e-12
MAX_BISECTIONS = 200


# ---------------------------------------------------------------------------
# weights

@dataclass(frozen=True)
class WeightSeq:
    """Non-increasing positive weights, normalized so that ``w_1 = 1``.

    ``kind`` is one of ``harmonic`` (``1/n``), ``power`` (``n**-s``),
    ``constant`` (all ones) or ``explicit`` (a finite prefix; querying past
    it raises :class:`HorizonError`).  Divergence of ``sum w_n`` is taken on
    trust.
    """

    kind: str = "harmonic"
    values: tuple = ()
    s: Optional[Fraction] = None
    scale: Fraction = Fraction(1)   # factor applied to user weights during normalization

    def __post_init__(self):
        if self.kind not in ("harmonic", "power", "constant", "explicit"):
            raise ValidationError(f"unknown weight kind {self.kind!r}")
        if self.kind == "power":
            if self.s is None or self.s < 0:
                raise ValidationError("power weights need an exponent s >= 0")
        if self.kind == "explicit":
            if not self.values:
                raise ValidationError("explicit weights need at least one value")
            if self.values[0] != 1:
                raise ValidationError("explicit weights must be normalized (use WeightSeq.explicit)")
            for a, b in zip(self.values, self.values[1:]):
                if b > a:
                    raise ValidationError("weights must be non-increasing")
            if any(v <= 0 for v in self.values):
                raise ValidationError("weights must be positive")

    @classmethod
    def harmonic(cls) -> "WeightSeq":
        return cls("harmonic")

    @classmethod
    def constant(cls) -> "WeightSeq":
        return cls("constant")

    @classmethod
    def power(cls, s) -> "WeightSeq":
        return cls("power", s=Fraction(s) if not isinstance(s, float) else s)

    @classmethod
    def explicit(cls, values: Sequence) -> "WeightSeq":
        vals = [parse_scalar(v) for v in values]
        if not vals or vals[0] <= 0:
            raise ValidationError("explicit weights need a positive first value")
        first = vals[0]
        return cls("explicit", values=tuple(v / first for v in vals), scale=1 / Fraction(first)
                   if isinstance(first, Fraction) else Fraction(1))

    @property
    def exact(self) -> bool:
        if self.kind == "power":
            return isinstance(self.s, Fraction) and self.s.denominator == 1
        if self.kind == "explicit":
            return all(isinstance(v, Fraction) for v in self.values)
        return True

    @property
    def horizon(self) -> float:
        return len(self.values) if self.kind == "explicit" else math.inf

    def w(self, n: int):
        if n < 1:
            raise PreconditionError("weights are indexed from 1")
        if self.kind == "harmonic":
            return Fraction(1, n)
        if self.kind == "constant":
            return Fraction(1)
        if self.kind == "power":
            if self.exact:
                return Fraction(1, n ** int(self.s))
            return float(n) ** (-float(self.s))
        if n > len(self.values):
            raise HorizonError(f"explicit weights end at n={len(self.values)}")
        return self.values[n - 1]

    def partial_sums(self, n: int) -> list:
        """``[W_0, W_1, ..., W_n]`` with ``W_k = w_1 + ... + w_k``."""
        return _prefix_sums(self, n)

    def mu(self, n: int):
        return self.partial_sums(n)[n]

    def to_json(self) -> dict:
        if self.kind == "power":
            return {"kind": "power", "s": format_scalar(self.s)}
        if self.kind == "explicit":
            return {"kind": "explicit", "values": [format_scalar(v) for v in self.values]}
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, obj) -> "WeightSeq":
        if isinstance(obj, str):
            obj = {"kind": obj}
        kind = obj.get("kind")
        if kind == "harmonic":
            return cls.harmonic()
        if kind == "constant":
            return cls.constant()
        if kind == "power":
            return cls.power(parse_scalar(obj["s"]))
        if kind == "explicit":
            return cls.explicit(obj["values"])
        raise ValidationError(f"unknown weight kind {kind!r}")


_prefix_lock = threading.Lock()
_prefix_cache: dict = {}


def _prefix_sums(w: WeightSeq, n: int) -> list:
    if n > w.horizon:
        raise HorizonError(f"explicit weights end at n={w.horizon}")
    with _prefix_lock:
        sums = _prefix_cache.setdefault(w, [Fraction(0) if w.exact else 0.0])
        total = sums[-1]
        for k in range(len(sums), n + 1):
            total = total + w.w(k)
            sums.append(total)
        return sums[: n + 1] if len(sums) > n + 1 else sums


# ---------------------------------------------------------------------------
# Nakano exponents

@dataclass(frozen=True)
class ExponentSeq:
    """Non-decreasing exponents ``p_1 <= p_2 <= ...`` with ``p_1 >= 1``.

    ``prefix`` overrides the first entries of the closed-form rule.  ``sup``
    is the declared supremum (``inf`` for unbounded rules).
    """

    kind: str = "loglog"
    prefix: tuple = ()
    value: Optional[float] = None
    sup_decl: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("loglog", "linear", "constant", "explicit"):
            raise ValidationError(f"unknown exponent kind {self.kind!r}")
        if self.kind == "constant" and (self.value is None or self.value < 1):
            raise ValidationError("constant exponents need value >= 1")
        if self.kind == "explicit" and not self.prefix:
            raise ValidationError("explicit exponents need a non-empty prefix")
        pre = [float(v) for v in self.prefix]
        if pre and pre[0] < 1:
            raise ValidationError("p_1 must be >= 1")
        if any(b < a for a, b in zip(pre, pre[1:])):
            raise ValidationError("exponents must be non-decreasing")

    @property
    def sup(self) -> float:
        if self.sup_decl is not None:
            return float(self.sup_decl)
        if self.kind == "constant":
            return max([float(self.value)] + [float(v) for v in self.prefix])
        return math.inf

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.sup)

    @property
    def horizon(self) -> float:
        return len(self.prefix) if self.kind == "explicit" else math.inf

    def _rule(self, k: np.ndarray) -> np.ndarray:
        if self.kind == "loglog":
            return 2.0 * np.log(np.log(k) + 1.0) + 1.0
        if self.kind == "linear":
            return k.astype(float)
        if self.kind == "constant":
            return np.full(k.shape, float(self.value))
        raise HorizonError(f"explicit exponents end at k={len(self.prefix)}")

    def exponents(self, n: int) -> np.ndarray:
        """``p_1 .. p_n`` as a float array."""
        if n > self.horizon:
            raise HorizonError(f"explicit exponents end at k={len(self.prefix)}")
        k = np.arange(1, n + 1, dtype=float)
        out = np.empty(n)
        m = min(n, len(self.prefix))
        out[:m] = [float(v) for v in self.prefix[:m]]
        if n > m:
            out[m:] = self._rule(k[m:])
        return out

    def p(self, k: int) -> float:
        return float(self.exponents(k)[-1])

    @property
    def integral(self) -> bool:
        return self.kind == "linear" and all(float(v).is_integer() for v in self.prefix)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "prefix": [format_scalar(parse_scalar(v)) if not isinstance(v, float)
                                             else format_scalar(v) for v in self.prefix]}
        if self.kind == "constant":
            out["value"] = format_scalar(self.value)
        if self.sup_decl is not None:
            out["sup"] = format_scalar(self.sup_decl)
        return out

    @classmethod
    def from_json(cls, obj) -> "ExponentSeq":
        if isinstance(obj, str):
            obj = {"kind": obj}
        prefix = tuple(parse_scalar(v) for v in obj.get("prefix", []))
        value = obj.get("value")
        sup = obj.get("sup")
        return cls(
            kind=obj.get("kind", "loglog"),
            prefix=prefix,
            value=float(parse_scalar(value)) if value is not None else None,
            sup_decl=float(parse_scalar(sup)) if sup is not None else None,
        )


# ---------------------------------------------------------------------------
# space description

@dataclass(frozen=True)
class SpaceSpec:
    """A symmetric sequence space and its numeric mode."""

    variant: str
    weights: Optional[WeightSeq] = None
    M: Optional[OrliczFn] = None
    p: Optional[ExponentSeq] = None
    mode: str = "exact"
    tolerance: float = DEFAULT_RTOL
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValidationError(f"unknown space {self.variant!r}")
        if self.variant.startswith("lorentz") and self.weights is None:
            raise ValidationError("Lorentz spaces need weights")
        if self.variant == "orlicz" and self.M is None:
            raise ValidationError("Orlicz spaces need an Orlicz function M")
        if self.variant == "nakano" and self.p is None:
            raise ValidationError("Nakano spaces need exponents p")
        if self.mode not in ("exact", "float"):
            raise ValidationError(f"unknown numeric mode {self.mode!r}")
        if self.variant in ("orlicz", "nakano") and self.mode == "exact":
            object.__setattr__(self, "mode", "float")

    # constructors
    @classmethod
    def lorentz_predual(cls, weights: WeightSeq | None = None, **kw) -> "SpaceSpec":
        return cls("lorentz_predual", weights=weights or WeightSeq.harmonic(), **kw)

    @classmethod
    def lorentz_dual(cls, weights: WeightSeq | None = None, **kw) -> "SpaceSpec":
        return cls("lorentz_dual", weights=weights or WeightSeq.harmonic(), **kw)

    @classmethod
    def orlicz(cls, M: OrliczFn, **kw) -> "SpaceSpec":
        return cls("orlicz", M=M, mode="float", **kw)

    @classmethod
    def nakano(cls, p: ExponentSeq | None = None, **kw) -> "SpaceSpec":
        return cls("nakano", p=p or ExponentSeq("loglog"), mode="float", **kw)

    @classmethod
    def counting(cls, **kw) -> "SpaceSpec":
        return cls("counting", **kw)

    @property
    def exact(self) -> bool:
        if self.mode != "exact":
            return False
        if self.weights is not None:
            return self.weights.exact
        return self.variant == "counting"

    def to_json(self) -> dict:
        out: dict = {"space": self.variant}
        if self.weights is not None:
            out["weights"] = self.weights.to_json()
        if self.M is not None:
            out["M"] = self.M.to_json()
        if self.p is not None:
            out["p"] = self.p.to_json()
        if self.mode == "float" and self.variant not in ("orlicz", "nakano"):
            out["mode"] = "float"
        if self.tolerance != DEFAULT_RTOL:
            out["tolerance"] = self.tolerance
        return out

    @classmethod
    def from_json(cls, obj) -> "SpaceSpec":
        if not isinstance(obj, dict) or "space" not in obj:
            raise ValidationError('space JSON needs a "space" field')
        variant = obj["space"]
        kw = {}
        if "tolerance" in obj:
            kw["tolerance"] = float(obj["tolerance"])
        mode = obj.get("mode", "exact")
        if variant in ("lorentz_predual", "lorentz_dual"):
            return cls(variant, weights=WeightSeq.from_json(obj.get("weights", "harmonic")),
                       mode=mode, **kw)
        if variant == "orlicz":
            if "M" not in obj:
                raise ValidationError('orlicz space JSON needs "M"')
            return cls.orlicz(_orlicz.from_json(obj["M"]), **kw)
        if variant == "nakano":
            return cls.nakano(ExponentSeq.from_json(obj.get("p", "loglog")), **kw)
        if variant == "counting":
            return cls.counting(mode=mode)
        raise ValidationError(f"unknown space {variant!r}")

    def metadata(self) -> dict:
        """Flags describing modelling choices that affect reported values."""
        out = {}
        if self.M is not None and math.isfinite(self.M.t_max):
            out["orlicz_extension"] = self.M.extension
            out["orlicz_t_max"] = format_scalar(self.M.t_max)
        return out


# ---------------------------------------------------------------------------
# Lorentz norms

def _check_weights(w: WeightSeq):
    if not isinstance(w, WeightSeq):
        raise ValidationError("expected a WeightSeq")


def lorentz_dual_norm(f: FinVec, w: WeightSeq):
    """``sum_n w_n a_n`` where ``a`` is the decreasing rearrangement of ``|f|``."""
    _check_weights(w)
    a = f.sorted_abs()
    total = Fraction(0) if (f.exact and w.exact) else 0.0
    for n, v in enumerate(a, start=1):
        total += w.w(n) * v
    return total


def lorentz_predual_norm(x: FinVec, w: WeightSeq):
    """``max_k (a_1 + ... + a_k) / (w_1 + ... + w_k)`` for the rearrangement ``a``."""
    _check_weights(w)
    a = x.sorted_abs()
    if not a:
        return Fraction(0)
    W = w.partial_sums(len(a))
    best = None
    s = Fraction(0) if (x.exact and w.exact) else 0.0
    for k, v in enumerate(a, start=1):
        s += v
        r = s / W[k]
        if best is None or r > best:
            best = r
    return best


# ---------------------------------------------------------------------------
# modulars and Luxemburg norms

def _ratios(x: FinVec, rho):
    if not rho > 0:
        raise PreconditionError("rho must be positive")
    vals = x.sorted_abs()
    if x.exact and isinstance(rho, Fraction):
        return [v / rho for v in vals], True
    return [float(v) / float(rho) for v in vals], False


def nakano_assignment(ratios: Sequence, exps: np.ndarray) -> np.ndarray:
    """Optimal injective pairing of ratios (all <= 1) with positions 1..m.

    Returns ``perm`` with ratio ``i`` paired with exponent ``exps[perm[i]]``.
    For ratios in ``[0, 1]`` only the first ``m`` positions matter, because
    the exponents are non-decreasing.
    """
    m = len(ratios)
    t = np.asarray([float(r) for r in ratios])
    if m <= 1 or np.all(t == t[0]) or np.all(exps[:m] == exps[0]):
        return np.arange(m)
    with np.errstate(divide="ignore", under="ignore"):
        gain = np.power(t[:, None], exps[None, :m])
    rows, cols = linear_sum_assignment(gain, maximize=True)
    perm = np.empty(m, dtype=int)
    perm[rows] = cols
    return perm


def _nakano_modular_vals(t: list, exact: bool, p: ExponentSeq):
    """Supremum over injective assignments of ``sum t_i ** p_{sigma(i)}``."""
    small = [r for r in t if r <= 1]
    big = [r for r in t if r > 1]
    if big and not p.bounded:
        return math.inf
    total = Fraction(0) if exact else 0.0
    if big:
        # ratios above 1 prefer the largest exponents; infinitely many
        # positions let each approach the supremum simultaneously
        s = p.sup
        total = total + sum(float(r) ** s for r in big)
        exact = False
        total = float(total)
    if not small:
        return total
    exps = p.exponents(len(small))
    perm = nakano_assignment(small, exps)
    if exact and p.integral:
        return total + sum(r ** int(exps[perm[i]]) for i, r in enumerate(small))
    t_small = np.asarray([float(r) for r in small])
    with np.errstate(under="ignore"):
        return float(total) + math.fsum(np.power(t_small, exps[perm]))


def modular_value(x: FinVec, spec: SpaceSpec, rho=1):
    """Orlicz ``sum M(|x_i|/rho)`` or the Nakano assignment supremum.

    ``math.inf`` is a legitimate result (Nakano, unbounded exponents, some
    ratio above 1).
    """
    if spec.variant not in ("orlicz", "nakano"):
        raise PreconditionError("modular_value needs an Orlicz or Nakano space")
    if isinstance(rho, (int, str)):
        rho = parse_scalar(rho)
    t, exact = _ratios(x, rho)
    if not t:
        return Fraction(0) if exact else 0.0
    if spec.variant == "orlicz":
        M = spec.M
        if exact and M.exact_fn is not None and all(r <= M.t_max for r in t):
            return sum((M(r) for r in t), Fraction(0))
        return math.fsum(np.atleast_1d(M(np.asarray([float(r) for r in t]))))
    return _nakano_modular_vals(t, exact, spec.p)


def _modular_float(vals: np.ndarray, spec: SpaceSpec, rho: float) -> float:
    t = vals / rho
    if spec.variant == "orlicz":
        return math.fsum(spec.M(t))
    p = spec.p
    if np.all(t == t[0]) and t[0] <= 1:
        with np.errstate(under="ignore"):
            return math.fsum(np.power(t[0], p.exponents(len(t))))
    return _nakano_modular_vals(list(t), False, p)


def luxemburg_norm(x: FinVec, spec: SpaceSpec, rtol: float | None = None) -> float:
    """``inf{rho > 0 : modular(x / rho) <= 1}`` by bracketed bisection.

    The result ``rho`` satisfies ``modular(x/rho) <= 1`` and lies within
    ``rtol`` (relative) of the infimum.
    """
    if spec.variant not in ("orlicz", "nakano"):
        raise PreconditionError("luxemburg_norm needs an Orlicz or Nakano space")
    rtol = spec.tolerance if rtol is None else rtol
    vals = np.asarray([float(v) for v in x.sorted_abs()])
    if vals.size == 0:
        return 0.0
    return _luxemburg_vals(vals, spec, rtol)


def _luxemburg_vals(vals: np.ndarray, spec: SpaceSpec, rtol: float) -> float:
    phi = lambda rho: _modular_float(vals, spec, rho)
    start = float(vals[0])
    hi = start
    for _ in range(65):
        if phi(hi) <= 1:
            break
        hi *= 2.0
    else:
        raise BracketError("no finite upper bracket within 2**64 scaling; is M degenerate?")
    lo = hi
    for _ in range(65):
        lo *= 0.5
        if phi(lo) > 1:
            break
    else:
        raise BracketError("no lower bracket within 2**-64 scaling")
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= rtol * hi:
            break
        mid = 0.5 * (lo + hi)
        if phi(mid) <= 1:
            hi = mid
        else:
            lo = mid
    return hi


def orlicz_inverse(M: OrliczFn, y) -> float:
    """``t`` with ``M(t) = y``; see :meth:`OrliczFn.inverse`."""
    return M.inverse(y)


# ---------------------------------------------------------------------------
# dispatch

def _in_mode(x: FinVec, spec: SpaceSpec) -> FinVec:
    if spec.mode == "float" and x.exact:
        return FinVec({k: float(v) for k, v in x.items()})
    return x


def norm(x: FinVec, spec: SpaceSpec):
    """Norm of ``x`` in the space described by ``spec``."""
    x = _in_mode(x, spec)
    v = spec.variant
    if v == "lorentz_predual":
        return lorentz_predual_norm(x, spec.weights)
    if v == "lorentz_dual":
        return lorentz_dual_norm(x, spec.weights)
    if v == "counting":
        return x.linf()
    return luxemburg_norm(x, spec)


def dual_norm(f: FinVec, spec: SpaceSpec):
    """Norm of the functional ``f`` in the dual space (Lorentz and counting only)."""
    f = _in_mode(f, spec)
    v = spec.variant
    if v == "lorentz_predual":
        return lorentz_dual_norm(f, spec.weights)
    if v == "lorentz_dual":
        return lorentz_predual_norm(f, spec.weights)
    if v == "counting":
        return f.l1()
    raise PreconditionError(f"dual norms of {v} spaces are not implemented")


def fundamental_functions(spec: SpaceSpec, n: int):
    """``(lambda(n), mu(n))``: norms of ``e_1+...+e_n`` in the space and its dual."""
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    v = spec.variant
    if v in ("counting", "lorentz_predual", "lorentz_dual") and spec.mode == "float":
        lam, mu = fundamental_functions(replace(spec, mode="exact"), n)
        return float(lam), float(mu)
    if v == "counting":
        return Fraction(1), Fraction(n)
    if v == "lorentz_predual":
        mu = spec.weights.mu(n)
        return n / mu, mu
    if v == "lorentz_dual":
        lam = spec.weights.mu(n)
        return lam, n / lam
    if v == "orlicz":
        lam = 1.0 / spec.M.inverse(1.0 / n)
    else:
        lam = luxemburg_norm(ones(n), spec)
    return lam, n / lam


def fundamental_table(spec: SpaceSpec, n_max: int) -> tuple[list, list]:
    """``lambda(k), mu(k)`` for ``k = 0..n_max`` (with ``lambda(0) = mu(0) = 0``)."""
    zero = Fraction(0) if spec.exact else 0.0
    lams, mus = [zero], [zero]
    if spec.variant == "lorentz_predual":
        W = spec.weights.partial_sums(n_max)
        for k in range(1, n_max + 1):
            lams.append(k / W[k])
            mus.append(W[k])
        return lams, mus
    if spec.variant == "nakano":
        for k in range(1, n_max + 1):
            lam = _luxemburg_vals(np.ones(k), spec, spec.tolerance)
            lams.append(lam)
            mus.append(k / lam)
        return lams, mus
    for k in range(1, n_max + 1):
        lam, mu = fundamental_functions(spec, k)
        lams.append(lam)
        mus.append(mu)
    return lams, mus
