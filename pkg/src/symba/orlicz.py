"""Orlicz functions: evaluation, extension past a cut, inversion.

An Orlicz function here is a user-facing evaluator ``M`` on ``[0, t_max]``
plus a rule for ``t > t_max``.  The default rule continues ``M`` affinely,
matching value and slope at ``t_max``; this keeps convexity and
monotonicity.  The alternative ``"formula"`` rule keeps using the evaluator
on the whole half-line.

Built-in kinds:

``power``            ``M(t) = t**p``
``exp_reciprocal``   ``M(t) = exp(-1/t)``, convex on ``(0, 1/2]``
``leung``            piecewise linear with slope ``a_j = prod_{k<=j} 1/log(k+2)``
                     on ``(2**-(j+1), 2**-j)``
``piecewise_linear`` interpolation through user knots
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .errors import NumericError, PreconditionError, ValidationError

LN2 = math.log(2.0)


def _as_array(t):
    return np.asarray(t, dtype=float)


@dataclass(frozen=True, eq=False)
class OrliczFn:
    """A non-degenerate Orlicz function with an explicit domain cut.

    ``func`` must accept numpy arrays.  ``inverse`` and ``derivative`` are
    optional closed forms; ``log_dyadic(j, u)`` optionally returns
    ``log M(u * 2**-j)`` for ``u`` in ``[1, 2]`` without underflow.
    """

    kind: str
    func: Callable
    t_max: float = math.inf
    inverse_fn: Optional[Callable] = None
    derivative: Optional[Callable] = None
    extension: str = "affine"
    params: dict = field(default_factory=dict)
    log_dyadic: Optional[Callable] = None
    exact_fn: Optional[Callable] = None
    sup_value: float = math.inf  # sup of M under the "formula" extension

    def __post_init__(self):
        if self.extension not in ("affine", "formula"):
            raise ValidationError(f"unknown extension rule {self.extension!r}")
        if not self.t_max > 0:
            raise ValidationError("t_max must be positive")

    # -- evaluation -------------------------------------------------------
    @property
    def cut_value(self) -> float:
        if math.isinf(self.t_max):
            return math.inf
        return float(self.func(np.float64(self.t_max)))

    @property
    def cut_slope(self) -> float:
        if math.isinf(self.t_max):
            return math.inf
        if self.derivative is not None:
            return float(self.derivative(self.t_max))
        h = self.t_max * 1e-7
        return (self.cut_value - float(self.func(np.float64(self.t_max - h)))) / h

    def __call__(self, t):
        """Evaluate ``M`` (vectorized).  Exact for rational input when supported."""
        if isinstance(t, Fraction) and self.exact_fn is not None and t <= self.t_max:
            return self.exact_fn(t)
        scalar = np.ndim(t) == 0
        arr = _as_array(t)
        if np.any(arr < 0):
            raise PreconditionError("Orlicz functions are evaluated on t >= 0")
        out = np.zeros_like(arr)
        pos = arr > 0
        inside = pos & (arr <= self.t_max)
        if self.extension == "formula":
            inside = pos
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            if np.any(inside):
                out[inside] = self.func(arr[inside])
            beyond = pos & ~inside
            if np.any(beyond):
                out[beyond] = self.cut_value + self.cut_slope * (arr[beyond] - self.t_max)
        return float(out) if scalar else out

    def log_at_dyadic(self, j: int, u: float = 1.0) -> float:
        """``log M(u * 2**-j)`` with ``1 <= u <= 2``; robust for large ``j``."""
        if self.log_dyadic is not None:
            return self.log_dyadic(j, u)
        try:
            t = math.ldexp(u, -j)
        except OverflowError:  # pragma: no cover - ldexp only underflows here
            t = 0.0
        if t == 0.0:
            return -math.inf
        v = self(t)
        return math.log(v) if v > 0 else -math.inf

    # -- inversion --------------------------------------------------------
    @property
    def reach(self) -> float:
        """Supremum of the values M takes under the declared extension."""
        if self.extension == "formula" or math.isinf(self.t_max):
            return self.sup_value
        return math.inf if self.cut_slope > 0 else self.cut_value

    def inverse(self, y, rtol: float = 1e-14) -> float:
        """Solve ``M(t) = y`` for ``t``.

        Uses the closed form where one was declared, the affine extension
        above the cut, and bisection on ``[0, t_max]`` otherwise.
        """
        y = float(y)
        if not y > 0:
            raise PreconditionError("inverse is defined for y > 0")
        reach = self.reach
        if y > reach:
            raise PreconditionError(f"y={y!r} exceeds the reach {reach!r} of M")
        if self.extension == "formula":
            if y == reach and not math.isinf(reach):
                return math.inf
            if self.inverse_fn is not None:
                return float(self.inverse_fn(y))
            return _bisect_increasing(self, y, 0.0, _grow_bracket(self, y), rtol)
        cut_value = self.cut_value
        if y > cut_value:
            return self.t_max + (y - cut_value) / self.cut_slope
        if self.inverse_fn is not None:
            return float(self.inverse_fn(y))
        return _bisect_increasing(self, y, 0.0, self.t_max, rtol)

    # -- checks -----------------------------------------------------------
    def check_shape(self, grid=None) -> None:
        """Assert M(0)=0, positivity, monotonicity and convexity on a grid."""
        if grid is None:
            top = self.t_max if math.isfinite(self.t_max) else 4.0
            grid = np.linspace(0.0, top, 257)
        vals = self(np.asarray(grid, dtype=float))
        if self(0.0) != 0:
            raise ValidationError("M(0) must be 0")
        if np.any(vals[1:] <= 0):
            raise ValidationError("M must be positive for t > 0 (non-degenerate)")
        d = np.diff(vals)
        scale = max(1.0, float(np.max(np.abs(vals))))
        if np.any(d < -1e-12 * scale):
            raise ValidationError("M must be non-decreasing")
        if np.any(np.diff(d) < -1e-9 * scale):
            raise ValidationError("M must be convex")

    def to_json(self) -> dict:
        out = {"kind": self.kind, **self.params}
        if math.isfinite(self.t_max) and self.kind != "power":
            out["t_max"] = self.t_max
        if self.extension != "affine":
            out["extension"] = self.extension
        return out


def _grow_bracket(M: OrliczFn, y: float) -> float:
    hi = 1.0
    for _ in range(2100):
        if M(hi) >= y:
            return hi
        hi *= 2.0
    raise NumericError(f"no bracket for M(t) = {y!r}")


def _bisect_increasing(M, y, lo, hi, rtol, max_iter=400) -> float:
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if M(mid) < y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# built-in kinds

def power(p) -> OrliczFn:
    """``M(t) = t**p`` for ``p >= 1``; exact on rationals for integer ``p``."""
    p_val = Fraction(p) if not isinstance(p, float) else p
    if p_val < 1:
        raise ValidationError("power Orlicz function needs p >= 1")
    pf = float(p_val)
    integer = isinstance(p_val, Fraction) and p_val.denominator == 1
    return OrliczFn(
        kind="power",
        func=lambda t: np.power(t, pf),
        inverse_fn=lambda y: y ** (1.0 / pf),
        derivative=lambda t: pf * t ** (pf - 1.0),
        params={"p": str(p_val) if isinstance(p_val, Fraction) else pf},
        exact_fn=(lambda t: t ** int(p_val)) if integer else None,
        log_dyadic=lambda j, u: pf * (math.log(u) - j * LN2),
    )


def _exp_recip(t):
    return np.exp(-1.0 / t)


def _exp_recip_log_dyadic(j, u):
    try:
        return -math.ldexp(1.0 / u, j)
    except OverflowError:
        return -math.inf


def exp_reciprocal(t_max=0.5, extension="affine") -> OrliczFn:
    """``M(t) = exp(-1/t)``; convex exactly on ``(0, 1/2]``."""
    t_max = float(t_max)
    if t_max > 0.5:
        raise ValidationError("exp(-1/t) is convex only up to t = 1/2")

    def inv(y):
        if y >= 1.0:
            return math.inf
        return -1.0 / math.log(y)

    return OrliczFn(
        kind="exp_reciprocal",
        func=_exp_recip,
        t_max=t_max,
        inverse_fn=inv,
        derivative=lambda t: math.exp(-1.0 / t) / (t * t),
        extension=extension,
        log_dyadic=_exp_recip_log_dyadic,
        sup_value=1.0,
    )


def piecewise_linear(knots) -> OrliczFn:
    """Linear interpolation through ``knots = [(t0, M0), (t1, M1), ...]``.

    The first knot must be ``(0, 0)``; beyond the last knot the last slope
    continues.
    """
    pts = [(float(Fraction(str(a)) if isinstance(a, str) else a),
            float(Fraction(str(b)) if isinstance(b, str) else b)) for a, b in knots]
    if len(pts) < 2 or pts[0] != (0.0, 0.0):
        raise ValidationError("piecewise_linear knots must start at (0, 0) and have >= 2 points")
    ts = np.array([a for a, _ in pts])
    ms = np.array([b for _, b in pts])
    if np.any(np.diff(ts) <= 0):
        raise ValidationError("knot abscissae must be strictly increasing")
    slopes = np.diff(ms) / np.diff(ts)
    if np.any(slopes <= 0) or np.any(np.diff(slopes) < 0):
        raise ValidationError("knots must describe an increasing convex function")
    last_slope = float(slopes[-1])
    t_max = float(ts[-1])

    def func(t):
        return np.interp(t, ts, ms)

    def deriv(t):
        idx = int(np.searchsorted(ts, t, side="left")) - 1
        return float(slopes[min(max(idx, 0), len(slopes) - 1)])

    return OrliczFn(
        kind="piecewise_linear",
        func=func,
        t_max=t_max,
        derivative=lambda t: last_slope if t >= t_max else deriv(t),
        params={"knots": [[format(a, ".17g"), format(b, ".17g")] for a, b in pts]},
    )


# ---------------------------------------------------------------------------
# the Leung function

@lru_cache(maxsize=None)
def _log_a_table(size: int) -> np.ndarray:
    """``log a_j`` for ``0 <= j < size`` with ``a_j = prod_{k=1}^j 1/log(k+2)``."""
    k = np.arange(1, size, dtype=float)
    out = np.zeros(size)
    out[1:] = -np.cumsum(np.log(np.log(k + 2.0)))
    return out


_S_DEPTH = 64


@lru_cache(maxsize=None)
def _s_tables(size: int):
    """Lower/upper enclosures of ``S_j = M(2**-j) / (2**-(j+1) a_j)``.

    ``S_j = 1 + S_{j+1} / (2 log(j+3))`` and ``1 <= S_j <= 2``; the backward
    recursion is started from both ends of that interval.
    """
    top = size + _S_DEPTH
    lo = np.ones(top + 1)
    hi = np.full(top + 1, 2.0)
    for j in range(top - 1, 0, -1):
        c = 1.0 / (2.0 * math.log(j + 3.0))
        lo[j] = 1.0 + c * lo[j + 1]
        hi[j] = 1.0 + c * hi[j + 1]
    return lo[:size], hi[:size]


def _table_size(j: int) -> int:
    size = 1024
    while size <= j + 1:
        size *= 2
    return size


def leung_log_a(j: int) -> float:
    return float(_log_a_table(_table_size(j))[j])


def leung_S(j: int) -> tuple[float, float]:
    lo, hi = _s_tables(_table_size(j))
    return float(lo[j]), float(hi[j])


def leung_log_M_dyadic(j: int, u: float = 1.0, bound: str = "mid") -> float:
    """``log M(u * 2**-j)`` for ``j >= 2``, ``1 <= u <= 2``.

    With ``i = j - 1`` the point lies in ``[2**-(i+1), 2**-i]`` where
    ``M(u 2**-(i+1)) = 2**-(i+1) a_i (S_i + u - 2)``.
    """
    if j < 2 or not 1.0 <= u <= 2.0:
        raise PreconditionError("dyadic form needs j >= 2 and 1 <= u <= 2")
    i = j - 1
    lo, hi = leung_S(i)
    s = {"lo": lo, "hi": hi, "mid": 0.5 * (lo + hi)}[bound]
    return -(i + 1) * LN2 + leung_log_a(i) + math.log(s + u - 2.0)


def _leung_func(t):
    t = np.asarray(t, dtype=float)
    mant, expo = np.frexp(t)          # t = mant * 2**expo, mant in [0.5, 1)
    u = 2.0 * mant                    # t = u * 2**(expo-1), u in [1, 2)
    i = (-expo).astype(int)           # t in [2**-(i+1), 2**-i)
    top = i < 1                       # only t = 1/2 reaches here: write it as 2 * 2**-2
    u = np.where(top, 4.0 * t, u)
    i = np.where(top, 1, i)
    size = _table_size(int(i.max()) if i.size else 0)
    lo, hi = _s_tables(size)
    s = 0.5 * (lo[i] + hi[i])
    log_a = _log_a_table(size)[i]
    with np.errstate(under="ignore"):
        return np.ldexp(np.exp(log_a) * (s + u - 2.0), -(i + 1))


def leung(t_max=0.5) -> OrliczFn:
    """The Orlicz function with ``M'(t) = a_j`` on ``(2**-(j+1), 2**-j)``.

    It satisfies ``lim M(t/K)/M(t) = 0`` but the summability condition on
    ``M(M^{-1}(1/n)/K)`` fails for every ``K``.
    """
    if float(t_max) != 0.5:
        raise ValidationError("the Leung function is defined on (0, 1/2]")
    a1 = 1.0 / math.log(3.0)

    def log_dyadic(j, u):
        if j >= 2:
            return leung_log_M_dyadic(j, u)
        return math.log(float(M(math.ldexp(u, -j))))

    M = OrliczFn(
        kind="leung",
        func=_leung_func,
        t_max=0.5,
        derivative=lambda t: a1,
        log_dyadic=log_dyadic,
    )
    return M


def leung_M(j: int, L: int) -> tuple[float, float]:
    """Truncated ``M(2**-j) = sum_{l>=j} 2**-(l+1) a_l``.

    Returns ``(value, tail_bound)`` where ``value`` sums ``l = j..L`` and
    ``tail_bound = a_L 2**-L`` dominates the omitted terms.
    """
    if j < 1:
        raise PreconditionError("j must be a positive integer")
    if L <= j:
        raise PreconditionError("truncation L must exceed j")
    log_a = _log_a_table(_table_size(L))
    terms = [math.ldexp(math.exp(log_a[l]), -(l + 1)) for l in range(j, L + 1)]
    value = math.fsum(terms)
    tail = math.ldexp(math.exp(log_a[L]), -L)
    return value, tail


def leung_a(j: int) -> float:
    return math.exp(leung_log_a(j))


# ---------------------------------------------------------------------------
# JSON

def from_json(obj) -> OrliczFn:
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind")
    extension = obj.get("extension", "affine")
    if kind == "power":
        p = obj.get("p", 2)
        M = power(Fraction(p) if isinstance(p, (int, str)) else p)
    elif kind == "exp_reciprocal":
        M = exp_reciprocal(obj.get("t_max", 0.5), extension=extension)
    elif kind == "leung":
        M = leung(obj.get("t_max", 0.5))
    elif kind == "piecewise_linear":
        M = piecewise_linear(obj["knots"])
    else:
        raise ValidationError(f"unknown Orlicz kind {kind!r}")
    return M
