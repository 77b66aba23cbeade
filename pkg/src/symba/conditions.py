"""Numerical diagnostics for the summability conditions on symmetric spaces.

Each series kind produces partial sums (or, for the ratio kinds, sequence
values) on a geometric grid ``n = ceil(1.3**i)``.  A policy-driven
classifier then grades the evidence.  It never claims convergence, only
``bounded-likely``, ``diverging-likely`` or ``inconclusive``.

Kinds
-----
thm44             ``|| sum_{k<=n} (mu(k) - mu(k-1)) e_k ||``
cor46             ``|| sum_{k<=n} e_k / lambda(k) ||``
lambda_bounded    ``lambda(n)``
orlicz_eq5        ``sum_{k<=n} M(M^{-1}(1/k) / K)``
leung_sum         ``sum_{j<=n} M(2**-j / K) / M(2**-j)``
leung_ratio       ``M(2**-j / K) / M(2**-j)``; the reciprocal is classified,
                  so ``diverging-likely`` reads "the ratio tends to 0"
nakano_prop       ``sum_{k<=n} k**-1 rho**-p_k``
nakano_log_ratio  ``log(n) / p_n``
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import orlicz as _orlicz
from .errors import PreconditionError, ValidationError
from .finvec import format_scalar, parse_scalar
from .orlicz import OrliczFn, leung_M, leung_a  # noqa: F401  (re-exported)
from .spaces import (
    ExponentSeq,
    SpaceSpec,
    WeightSeq,
    _luxemburg_vals,
    fundamental_table,
    lorentz_dual_norm,
    lorentz_predual_norm,
)
from .finvec import from_sequence

KINDS = (
    "thm44",
    "cor46",
    "lambda_bounded",
    "orlicz_eq5",
    "leung_sum",
    "leung_ratio",
    "nakano_prop",
    "nakano_log_ratio",
)
RATIO_KINDS = ("leung_ratio", "nakano_log_ratio")
VERDICTS = ("bounded-likely", "diverging-likely", "inconclusive")
DEFAULT_K_SCAN = (2, 4, 8, 16)


# ---------------------------------------------------------------------------
# grid and classifier

def geometric_grid(N: int, base: float = 1.3) -> list[int]:
    """``ceil(base**i)`` for ``i = 0, 1, ...`` up to ``N``, deduplicated, with ``N``."""
    if N < 1:
        raise PreconditionError("N must be positive")
    out, i = [], 0
    while True:
        n = math.ceil(base ** i)
        if n > N:
            break
        if not out or n != out[-1]:
            out.append(n)
        i += 1
    if out[-1] != N:
        out.append(N)
    return out


@dataclass(frozen=True)
class Policy:
    """Thresholds of the evidence classifier.

    flat_tol    relative spread of the last quartile below which samples
                count as settled
    decay_tol   the growth rate ``ds/dlog n`` must decay at least like
                ``n**-decay_tol`` for the tail extrapolation to apply
    tail_tol    extrapolated remaining growth, relative to the last sample,
                accepted as bounded
    slope_tol   least-squares slope against ``log n`` or ``log log n`` above
                which monotone samples count as diverging
    majorant    optional certified upper bound for the whole sequence
    """

    flat_tol: float = 1e-6
    decay_tol: float = 0.5
    tail_tol: float = 0.05
    slope_tol: float = 0.05
    majorant: Optional[float] = None

    def to_json(self) -> dict:
        out = {
            "flat_tol": format_scalar(self.flat_tol),
            "decay_tol": format_scalar(self.decay_tol),
            "tail_tol": format_scalar(self.tail_tol),
            "slope_tol": format_scalar(self.slope_tol),
        }
        if self.majorant is not None:
            out["majorant"] = format_scalar(self.majorant)
        return out


def _lsq_slope(x: np.ndarray, y: np.ndarray) -> float:
    if len(x) < 2 or np.ptp(x) == 0:
        return 0.0
    return float(np.polyfit(x, y, 1)[0])


def growth_slopes(ns: Sequence[int], s: Sequence[float]) -> tuple[float, float]:
    """Least-squares slopes of the last half of ``s`` against ``log n`` and ``log log n``."""
    ns = np.asarray(ns, dtype=float)
    s = np.asarray(s, dtype=float)
    half = slice(len(ns) // 2, None)
    x, y = ns[half], s[half]
    keep = x >= 3
    slope_log = _lsq_slope(np.log(x), y)
    slope_loglog = _lsq_slope(np.log(np.log(x[keep])), y[keep]) if keep.sum() >= 2 else 0.0
    return slope_log, slope_loglog


def _tail_extrapolation(ns: np.ndarray, s: np.ndarray, policy: Policy) -> bool:
    """Power-law fit of the growth rate ``ds/dlog n`` on the last half."""
    half = len(ns) // 2
    x, y = np.log(ns[half:]), s[half:]
    dx, dy = np.diff(x), np.diff(y)
    rate = dy / dx
    mid = 0.5 * (x[1:] + x[:-1])
    keep = rate > 0
    if keep.sum() < 3 or np.any(rate < 0):
        return False
    beta, c = np.polyfit(mid[keep], np.log(rate[keep]), 1)
    if beta >= -policy.decay_tol:
        return False
    # remaining growth: integral of exp(c) n**beta dlog n from N to infinity
    remaining = math.exp(c + beta * x[-1]) / -beta
    scale = abs(y[-1]) if y[-1] != 0 else 1.0
    return remaining / scale < policy.tail_tol


def classify(samples, policy: Policy | None = None) -> str:
    """Grade samples ``[(n, s_n), ...]`` as bounded, diverging or inconclusive.

    Rules, in order: a settled last quartile, a certified majorant, and a
    decaying growth rate with small extrapolated tail give ``bounded-likely``;
    monotone growth with slope above ``slope_tol`` against ``log n`` or
    ``log log n`` gives ``diverging-likely``.
    """
    policy = policy or Policy()
    if len(samples) < 8:
        raise PreconditionError("classification needs at least 8 samples")
    ns = np.asarray([float(n) for n, _ in samples])
    s = np.asarray([float(v) for _, v in samples])
    if not np.all(np.diff(ns) > 0):
        raise PreconditionError("sample grid must be strictly increasing")
    if not np.all(np.isfinite(s)):
        return "diverging-likely" if np.isposinf(s[-1]) else "inconclusive"

    quart = s[-max(2, math.ceil(len(s) / 4)):]
    spread = float(quart.max() - quart.min())
    scale = max(abs(float(quart.max())), abs(float(quart.min())))
    if spread <= policy.flat_tol * scale or spread == 0:
        return "bounded-likely"
    if policy.majorant is not None and np.all(s <= policy.majorant):
        return "bounded-likely"
    if _tail_extrapolation(ns, s, policy):
        return "bounded-likely"
    increasing = bool(np.all(np.diff(s) >= 0)) and s[-1] > s[0]
    slope_log, slope_loglog = growth_slopes(ns, s)
    if increasing and max(slope_log, slope_loglog) > policy.slope_tol:
        return "diverging-likely"
    return "inconclusive"


# ---------------------------------------------------------------------------
# diagnostics

@dataclass(frozen=True)
class SeriesDiagnostic:
    kind: str
    N: int
    samples: tuple          # ((n, value), ...)
    monotone: bool
    slope_log: float
    slope_loglog: float
    verdict: str
    policy: Policy
    params: dict = field(default_factory=dict)
    enclosures: Optional[tuple] = None   # ((n, lower, upper), ...)

    def value_at(self, n: int):
        for k, v in self.samples:
            if k == n:
                return v
        raise KeyError(n)

    @property
    def last(self):
        return self.samples[-1][1]

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "N": self.N,
            "params": self.params,
            "samples": [[n, format_scalar(v)] for n, v in self.samples],
            "monotone": self.monotone,
            "slope_log": format_scalar(self.slope_log),
            "slope_loglog": format_scalar(self.slope_loglog),
            "verdict": self.verdict,
            "policy": self.policy.to_json(),
        }
        if self.enclosures is not None:
            out["enclosures"] = [[n, format_scalar(lo), format_scalar(hi)]
                                 for n, lo, hi in self.enclosures]
        return out

    def csv_rows(self) -> list[list[str]]:
        enc = {n: (lo, hi) for n, lo, hi in (self.enclosures or ())}
        rows = [["n", "s_n", "lower", "upper"]]
        for n, v in self.samples:
            lo, hi = enc.get(n, (None, None))
            rows.append([str(n), format_scalar(v),
                         "" if lo is None else format_scalar(lo),
                         "" if hi is None else format_scalar(hi)])
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(self.csv_rows())
        return buf.getvalue()


def _diagnose(kind, N, grid, values, policy, params, enclosures=None) -> SeriesDiagnostic:
    samples = tuple(zip(grid, values))
    fl = [float(v) for v in values]
    if kind == "leung_ratio":
        monotone = all(b <= a for a, b in zip(fl, fl[1:]))
        target = [(n, 1.0 / v if v > 0 else math.inf) for n, v in samples]
    else:
        monotone = all(b >= a for a, b in zip(fl, fl[1:]))
        target = samples
    slope_log, slope_loglog = growth_slopes([n for n, _ in target], [float(v) for _, v in target])
    verdict = classify(target, policy) if len(target) >= 8 else "inconclusive"
    return SeriesDiagnostic(kind, N, samples, monotone, slope_log, slope_loglog, verdict,
                            policy, params, enclosures)


# ---------------------------------------------------------------------------
# norm-based series (thm44, cor46, lambda_bounded)

def _coefficient_norms(coefs: list, spec: SpaceSpec, grid: list[int]) -> list:
    """``|| sum_{k<=n} coefs[k-1] e_k ||`` for each ``n`` in ``grid``."""
    v = spec.variant
    nonincreasing = all(b <= a for a, b in zip(coefs, coefs[1:]))
    out = []
    if v in ("lorentz_predual", "lorentz_dual", "counting") and nonincreasing:
        targets = set(grid)
        zero = Fraction(0) if spec.exact else 0.0
        run, best = zero, None
        W = spec.weights.partial_sums(grid[-1]) if v == "lorentz_predual" else None
        for k, c in enumerate(coefs[: grid[-1]], start=1):
            if v == "lorentz_predual":
                run += c
                r = run / W[k]
                best = r if best is None or r > best else best
            elif v == "lorentz_dual":
                run += spec.weights.w(k) * c
                best = run
            else:
                best = coefs[0]
            if k in targets:
                out.append(best)
        return out
    for n in grid:
        x = from_sequence(coefs[:n])
        if v == "lorentz_predual":
            out.append(lorentz_predual_norm(x, spec.weights))
        elif v == "lorentz_dual":
            out.append(lorentz_dual_norm(x, spec.weights))
        elif v == "counting":
            out.append(x.linf())
        else:
            vals = np.sort(np.asarray([float(c) for c in coefs[:n]]))[::-1]
            out.append(_luxemburg_vals(vals, spec, spec.tolerance))
    return out


def _as_mode(values: list, spec: SpaceSpec) -> list:
    return values if spec.exact else [float(v) for v in values]


def _series_thm44(spec: SpaceSpec, grid):
    _, mus = fundamental_table(spec, grid[-1])
    mus = _as_mode(mus, spec)
    coefs = [mus[k] - mus[k - 1] for k in range(1, grid[-1] + 1)]
    return _coefficient_norms(coefs, spec, grid)


def _series_cor46(spec: SpaceSpec, grid):
    lams, _ = fundamental_table(spec, grid[-1])
    lams = _as_mode(lams, spec)
    coefs = [1 / lams[k] for k in range(1, grid[-1] + 1)]
    return _coefficient_norms(coefs, spec, grid)


def _series_lambda(spec: SpaceSpec, grid):
    lams, _ = fundamental_table(spec, grid[-1])
    lams = _as_mode(lams, spec)
    return [lams[n] for n in grid]


# ---------------------------------------------------------------------------
# Orlicz series

def _orlicz_eq5_terms(M: OrliczFn, K: float, N: int) -> np.ndarray:
    terms = np.empty(N)
    for k in range(1, N + 1):
        t = M.inverse(1.0 / k)
        terms[k - 1] = float(M(t / K)) if math.isfinite(t) else M.sup_value
    return terms


def _dyadic_split(K: float) -> tuple[int, float]:
    """``K = 2**m * c`` with ``1 <= c < 2``."""
    mant, expo = math.frexp(K)
    return expo - 1, 2.0 * mant


def leung_log_ratio(M: OrliczFn, K: float, j: int, bound: str = "mid") -> float:
    """``log(M(2**-j / K) / M(2**-j))``.

    ``bound`` selects the enclosure side for the Leung function (``lo``
    gives a lower bound of the ratio, ``hi`` an upper bound).
    """
    m, c = _dyadic_split(K)
    # 2**-j / K = (2/c) * 2**-(j+m+1), with 2/c in (1, 2]
    jn, un = j + m + 1, 2.0 / c
    if M.kind == "leung" and j >= 2 and bound != "mid":
        other = {"lo": "hi", "hi": "lo"}[bound]
        return (_orlicz.leung_log_M_dyadic(jn, un, bound)
                - _orlicz.leung_log_M_dyadic(j, 1.0, other))
    return M.log_at_dyadic(jn, un) - M.log_at_dyadic(j, 1.0)


def _leung_terms(M: OrliczFn, K: float, J: int, bound: str = "mid") -> np.ndarray:
    return np.exp([leung_log_ratio(M, K, j, bound) for j in range(1, J + 1)])


# ---------------------------------------------------------------------------
# Nakano series

def nakano_prop_majorant(p: ExponentSeq, rho: float) -> Optional[float]:
    """Certified bound of ``sum_k k**-1 rho**-p_k`` for the ``loglog`` rule.

    With ``rho = e**c`` and ``p_k = 2 log(log k + 1) + 1`` each term is
    ``e**-c k**-1 (log k + 1)**(-2c)``; comparing with the integral gives
    ``e**-c (1 + 1/(2c - 1))`` whenever ``2c > 1``.
    """
    c = math.log(rho)
    if p.kind != "loglog" or p.prefix or 2 * c <= 1:
        return None
    return math.exp(-c) * (1 + 1 / (2 * c - 1))


def nakano_cor46_majorant(p: ExponentSeq) -> Optional[float]:
    """Certified bound of ``|| sum_{k<=n} e_k / lambda(k) ||`` for the ``loglog`` rule.

    Put ``t_k = 1/(lambda(k) rho)`` and ``a_i = i**-1 rho**-p_i``.  Since
    ``lambda`` and ``p`` are non-decreasing and ``lambda(i)**-p_i <= 1/i``,
    any assignment term ``t_k**p_j`` is at most ``a_min(k, j)``, and each
    index is the minimum for at most two pairs.  So the modular at ``rho``
    is at most ``2 sum a_i`` and the norm is at most any ``rho`` making that
    bound ``<= 1``.  The smallest such ``rho = e**c`` is found by bisection.
    """
    if p.kind != "loglog" or p.prefix:
        return None
    excess = lambda c: 2 * nakano_prop_majorant(p, math.exp(c)) - 1
    lo, hi = 0.6, 10.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if excess(mid) <= 0 else (mid, hi)
    return math.exp(hi)


def _nakano_prop_tail(p: ExponentSeq, rho: float, n: int) -> Optional[float]:
    c = math.log(rho)
    if p.kind != "loglog" or p.prefix or 2 * c <= 1:
        return None
    return math.exp(-c) * (math.log(n) + 1) ** (1 - 2 * c) / (2 * c - 1)


def nakano_lambda_check(spec: SpaceSpec, N: int) -> list[tuple[int, float, float, bool]]:
    """``(n, lambda(n)**-p_n, 1/n, holds)`` for ``n = 1..N``."""
    if spec.variant != "nakano":
        raise PreconditionError("the inequality concerns Nakano spaces")
    lams, _ = fundamental_table(spec, N)
    ps = spec.p.exponents(N)
    out = []
    for n in range(1, N + 1):
        lhs = float(lams[n]) ** (-float(ps[n - 1]))
        out.append((n, lhs, 1.0 / n, lhs <= 1.0 / n))
    return out


# ---------------------------------------------------------------------------
# dispatcher

def _need(params: dict, key: str, kind: str):
    if params.get(key) is None:
        raise ValidationError(f"series kind {kind!r} needs parameter {key!r}")
    return params[key]


def _space_of(params: dict, kind: str) -> SpaceSpec:
    spec = _need(params, "space", kind)
    if isinstance(spec, dict):
        spec = SpaceSpec.from_json(spec)
    return spec


def _M_of(params: dict, kind: str) -> OrliczFn:
    M = params.get("M")
    if M is None and params.get("space") is not None:
        M = _space_of(params, kind).M
    if M is None:
        raise ValidationError(f"series kind {kind!r} needs an Orlicz function M")
    if isinstance(M, dict):
        M = _orlicz.from_json(M)
    return M


def _K_of(params: dict) -> float:
    K = float(parse_scalar(params.get("K", 2)))
    if not K > 1:
        raise ValidationError("K must exceed 1")
    return K


def series(kind: str, params: dict, N: int, policy: Policy | None = None) -> SeriesDiagnostic:
    """Evaluate series ``kind`` up to horizon ``N`` and classify it."""
    if kind not in KINDS:
        raise ValidationError(f"unknown series kind {kind!r}")
    if N < 8:
        raise PreconditionError("horizon N must be at least 8")
    policy = policy or Policy()
    grid = geometric_grid(N)
    enclosures = None
    echo: dict = {}

    if kind in ("thm44", "cor46", "lambda_bounded"):
        spec = _space_of(params, kind)
        echo["space"] = spec.to_json()
        fn = {"thm44": _series_thm44, "cor46": _series_cor46, "lambda_bounded": _series_lambda}[kind]
        values = fn(spec, grid)
        if kind == "cor46" and spec.variant == "nakano" and policy.majorant is None:
            maj = nakano_cor46_majorant(spec.p)
            if maj is not None:
                policy = replace(policy, majorant=maj)
    elif kind == "orlicz_eq5":
        M, K = _M_of(params, kind), _K_of(params)
        echo.update(M=M.to_json(), K=format_scalar(parse_scalar(params.get("K", 2))))
        csum = np.cumsum(_orlicz_eq5_terms(M, K, N))
        values = [float(csum[n - 1]) for n in grid]
    elif kind in ("leung_sum", "leung_ratio"):
        M, K = _M_of(params, kind), _K_of(params)
        echo.update(M=M.to_json(), K=format_scalar(parse_scalar(params.get("K", 2))))
        if kind == "leung_sum":
            terms = _leung_terms(M, K, N)
            csum = np.cumsum(terms)
            values = [float(csum[n - 1]) for n in grid]
            if M.kind == "leung":
                lo = np.cumsum(np.concatenate([terms[:1], _leung_terms(M, K, N, "lo")[1:]]))
                hi = np.cumsum(np.concatenate([terms[:1], _leung_terms(M, K, N, "hi")[1:]]))
                enclosures = tuple((n, float(lo[n - 1]), float(hi[n - 1])) for n in grid)
        else:
            values = [math.exp(leung_log_ratio(M, K, j)) for j in grid]
            if M.kind == "leung":
                enclosures = tuple(
                    (j, math.exp(leung_log_ratio(M, K, j, "lo")), math.exp(leung_log_ratio(M, K, j, "hi")))
                    if j >= 2 else (j, v, v)
                    for j, v in zip(grid, values)
                )
    elif kind == "nakano_prop":
        p = params.get("p") or ExponentSeq("loglog")
        if isinstance(p, dict):
            p = ExponentSeq.from_json(p)
        rho = float(parse_scalar(params.get("rho", math.e))) if not isinstance(params.get("rho"), float) \
            else params["rho"]
        if not rho > 1:
            raise ValidationError("rho must exceed 1")
        echo.update(p=p.to_json(), rho=format_scalar(rho))
        k = np.arange(1, N + 1, dtype=float)
        terms = np.exp(-p.exponents(N) * math.log(rho)) / k
        csum = np.cumsum(terms)
        values = [float(csum[n - 1]) for n in grid]
        maj = nakano_prop_majorant(p, rho)
        if maj is not None:
            if policy.majorant is None:
                policy = replace(policy, majorant=maj)
            enclosures = tuple((n, v, v + _nakano_prop_tail(p, rho, n)) for n, v in zip(grid, values))
    else:  # nakano_log_ratio
        p = params.get("p") or ExponentSeq("loglog")
        if isinstance(p, dict):
            p = ExponentSeq.from_json(p)
        echo["p"] = p.to_json()
        ps = p.exponents(N)
        values = [math.log(n) / float(ps[n - 1]) for n in grid]

    return _diagnose(kind, N, grid, values, policy, echo, enclosures)


def scan_K(kind: str, params: dict, N: int, Ks: Sequence = DEFAULT_K_SCAN,
           policy: Policy | None = None) -> dict:
    """Run ``kind`` for each ``K`` and return ``{K: diagnostic}``."""
    return {K: series(kind, {**params, "K": K}, N, policy) for K in Ks}


# ---------------------------------------------------------------------------
# builtin examples

@dataclass(frozen=True)
class Check:
    kind: str
    params: dict
    N: int
    expected: str


@dataclass(frozen=True)
class BuiltinExample:
    name: str
    description: str
    params: dict
    checks: dict   # label -> Check

    @property
    def expected(self) -> dict:
        return {label: c.expected for label, c in self.checks.items()}

    def run(self, scale: float = 1.0) -> dict:
        """Evaluate every check; ``scale`` multiplies the default horizons."""
        out = {}
        for label, c in self.checks.items():
            N = max(8, int(c.N * scale))
            out[label] = series(c.kind, c.params, N)
        return out


def lorentz_harmonic_space() -> SpaceSpec:
    return SpaceSpec.lorentz_predual(WeightSeq.harmonic())


def nakano_loglog_space() -> SpaceSpec:
    return SpaceSpec.nakano(ExponentSeq("loglog"))


def builtin(name: str) -> BuiltinExample:
    if name == "lorentz_harmonic":
        sp = lorentz_harmonic_space()
        p = {"space": sp}
        return BuiltinExample(
            name, "Lorentz predual with weights 1/n", p,
            {
                "thm44": Check("thm44", p, 1000, "bounded-likely"),
                "cor46": Check("cor46", p, 1000, "diverging-likely"),
                "lambda_bounded": Check("lambda_bounded", p, 1000, "diverging-likely"),
            },
        )
    if name == "nakano_loglog":
        sp = nakano_loglog_space()
        p = {"space": sp, "p": sp.p}
        return BuiltinExample(
            name, "Nakano space with p_k = 2 log(log k + 1) + 1", p,
            {
                "cor46": Check("cor46", p, 200, "bounded-likely"),
                "nakano_prop": Check("nakano_prop", {"p": sp.p, "rho": math.e}, 10_000, "bounded-likely"),
                "nakano_log_ratio": Check("nakano_log_ratio", {"p": sp.p}, 10 ** 6, "diverging-likely"),
            },
        )
    if name == "orlicz_exp_reciprocal":
        M = _orlicz.exp_reciprocal(extension="formula")
        p = {"M": M, "space": SpaceSpec.orlicz(_orlicz.exp_reciprocal())}
        checks = {f"orlicz_eq5[K={K}]": Check("orlicz_eq5", {"M": M, "K": K}, 1000, "bounded-likely")
                  for K in DEFAULT_K_SCAN}
        checks["leung_sum[K=2]"] = Check("leung_sum", {"M": M, "K": 2}, 64, "bounded-likely")
        return BuiltinExample(name, "Orlicz function exp(-1/t)", p, checks)
    if name == "leung_counterexample":
        M = _orlicz.leung()
        p = {"M": M}
        checks = {"leung_ratio[K=2]": Check("leung_ratio", {"M": M, "K": 2}, 1000, "diverging-likely")}
        checks["leung_sum[K=2]"] = Check("leung_sum", {"M": M, "K": 2}, 1000, "diverging-likely")
        checks["leung_sum[K=4]"] = Check("leung_sum", {"M": M, "K": 4}, 10_000, "diverging-likely")
        return BuiltinExample(name, "Orlicz function with M'(t) = a_j on (2^-(j+1), 2^-j)", p, checks)
    raise ValidationError(f"unknown builtin {name!r}")


BUILTINS = ("lorentz_harmonic", "nakano_loglog", "orlicz_exp_reciprocal", "leung_counterexample")
