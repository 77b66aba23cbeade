"""Command-line interface: ``symba <subcommand> ...``.

Every report is a JSON object with sorted keys.  Scalars print as strings:
``p/q`` for exact rationals, 17 significant digits for floats.  A ``manifest``
block echoes the subcommand, its parameters, the numeric mode, the library
version and the wall time.  Exit codes: 0 success, 2 validation error,
3 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from . import approx as ap
from . import conditions as cl
from . import orlicz as orl
from . import spaces as sp
from . import trees as tr
from .errors import NumericError, ValidationError
from .finvec import FinVec, format_scalar, parse_scalar
from .ordinals import format_ordinal, parse_ordinal, q_of

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERIC = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


# ---------------------------------------------------------------------------
# argument decoding

def _list_source(text: str) -> list:
    """Values from ``explicit:<file>``: a JSON list or comma/whitespace separated text.

    If no such file exists the text itself is read as a comma-separated list.
    """
    path = Path(text)
    raw = path.read_text() if path.is_file() else text
    raw = raw.strip()
    if raw.startswith("["):
        try:
            return [str(v) for v in json.loads(raw)]
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON list in {text!r}: {exc}") from None
    return [v for v in raw.replace(",", " ").split() if v]


def _weights(text: str) -> sp.WeightSeq:
    kind, _, arg = text.partition(":")
    if kind == "harmonic":
        return sp.WeightSeq.harmonic()
    if kind == "constant":
        return sp.WeightSeq.constant()
    if kind == "power":
        return sp.WeightSeq.power(parse_scalar(arg))
    if kind == "explicit":
        return sp.WeightSeq.explicit(_list_source(arg))
    raise ValidationError(f"unknown weights {text!r}")


def _orlicz_fn(text: str, t_max, extension: str | None) -> orl.OrliczFn:
    kind, _, arg = text.partition(":")
    if kind == "file":
        try:
            obj = json.loads(Path(arg).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read Orlicz function from {arg!r}: {exc}") from None
        return orl.from_json(obj)
    if kind == "power":
        return orl.power(parse_scalar(arg))
    if kind == "exp_reciprocal":
        return orl.exp_reciprocal(t_max=float(parse_scalar(t_max)) if t_max else 0.5,
                                  extension=extension or "affine")
    if kind == "leung":
        return orl.leung()
    raise ValidationError(f"unknown Orlicz function {text!r}")


def _exponents(text: str) -> sp.ExponentSeq:
    kind, _, arg = text.partition(":")
    if kind in ("loglog", "linear"):
        return sp.ExponentSeq(kind)
    if kind == "constant":
        return sp.ExponentSeq("constant", value=float(parse_scalar(arg)))
    if kind == "explicit":
        return sp.ExponentSeq("explicit", prefix=tuple(parse_scalar(v) for v in _list_source(arg)))
    raise ValidationError(f"unknown exponent rule {text!r}")


def _space(args, required: bool = True) -> sp.SpaceSpec | None:
    spec = _build_space(args, required)
    if spec is not None:
        args.effective_mode = spec.mode
    return spec


def _build_space(args, required: bool) -> sp.SpaceSpec | None:
    name = args.space
    if name is None:
        if required:
            raise ValidationError("--space is required")
        return None
    if name.startswith("file:"):
        try:
            obj = json.loads(Path(name[5:]).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read space from {name[5:]!r}: {exc}") from None
        return sp.SpaceSpec.from_json(obj)
    mode = args.mode or "exact"
    if name in ("lorentz_predual", "lorentz_dual"):
        return sp.SpaceSpec(name, weights=_weights(args.weights or "harmonic"), mode=mode)
    if name == "counting":
        return sp.SpaceSpec.counting(mode=mode)
    if name == "orlicz":
        if not args.M:
            raise ValidationError("--space orlicz needs --M")
        return sp.SpaceSpec.orlicz(_orlicz_fn(args.M, args.t_max, args.extension))
    if name == "nakano":
        return sp.SpaceSpec.nakano(_exponents(args.p or "loglog"))
    raise ValidationError(f"unknown space {name!r}")


def _vec(args) -> FinVec:
    if args.vec is None:
        raise ValidationError("--vec is required")
    return FinVec.parse(args.vec)


def _provider(args) -> ap.RhoProvider:
    text = args.provider or "counting"
    kind, _, arg = text.partition(":")
    if kind == "counting":
        return ap.RhoProvider.counting()
    if kind == "symmetric":
        space = _space(args, required=False) or sp.SpaceSpec.lorentz_predual(
            _weights(args.weights or "harmonic"))
        return ap.RhoProvider.symmetric(space)
    if kind == "table":
        return ap.RhoProvider.table(_list_source(arg))
    raise ValidationError(f"unknown provider {text!r}")


def _int(value, name: str, minimum: int = 1) -> int:
    if value is None:
        raise ValidationError(f"--{name} is required")
    if value < minimum:
        raise ValidationError(f"--{name} must be at least {minimum}")
    return value


def _nodes(alpha, text: str) -> list[tr.TreeNode]:
    return [tr.TreeNode.parse(alpha, part) for part in text.split(";") if part.strip()]


def _ordinals(text: str | None) -> list:
    if not text:
        return []
    return [parse_ordinal(p) for p in text.replace(";", ",").split(",") if p.strip()]


# ---------------------------------------------------------------------------
# subcommands

def cmd_norm(args) -> dict:
    spec = _space(args)
    out: dict = {"space": spec.to_json()}
    meta = spec.metadata()
    if meta:
        out["metadata"] = meta
    if args.inverse is not None:
        if spec.M is None:
            raise ValidationError("--inverse needs an Orlicz space")
        out["inverse"] = format_scalar(sp.orlicz_inverse(spec.M, float(parse_scalar(args.inverse))))
        return out
    x = _vec(args)
    out["vec"] = x.to_json()
    if args.modular_at is not None:
        out["modular"] = format_scalar(sp.modular_value(x, spec, parse_scalar(args.modular_at)))
        return out
    out["value"] = format_scalar(sp.dual_norm(x, spec) if args.dual else sp.norm(x, spec))
    if args.dual:
        out["dual"] = True
    return out


def cmd_mu_lambda(args) -> dict:
    spec = _space(args)
    n = _int(args.n, "n")
    lam, mu = sp.fundamental_functions(spec, n)
    return {"space": spec.to_json(), "n": n, "lambda": format_scalar(lam),
            "mu": format_scalar(mu), "product": format_scalar(lam * mu)}


def cmd_profile(args) -> dict:
    prof = ap.range_profile(_vec(args))
    out = prof.to_json()
    out["G"] = [sorted(map(str, g)) for g in prof.G]
    out["H"] = [sorted(map(str, h)) for h in prof.H]
    return out


def cmd_theta(args) -> dict:
    prov = _provider(args)
    out = ap.theta(_vec(args), prov).to_json()
    out["provider"] = prov.to_json()
    return out


def cmd_approx(args) -> dict:
    f = _vec(args)
    prov = _provider(args)
    op = args.op
    out: dict = {"op": op, "provider": prov.to_json()}
    if op == "omega":
        k = _int(args.k if args.k is not None else args.m, "k")
        out["result"] = ap.omega(f, k).to_json()
        return out
    m = _int(args.m, "m")
    if op == "h":
        out["result"] = ap.h(f, m).to_json()
    elif op in ("g", "j"):
        n = _int(args.n, "n")
        fn = ap.g if op == "g" else ap.j
        out["result"] = fn(f, m, n, prov).to_json()
    elif op == "weights":
        out["weights"] = ap.weights_to_json(ap.convex_weights(f, m, prov))
    elif op == "reconstruct":
        rec, resid = ap.reconstruct(f, m, prov)
        out["reconstruction"] = rec.to_json()
        out["residual"] = format_scalar(resid)
    elif op == "tail":
        out["tail_bound"] = format_scalar(ap.tail_bound(f, m, prov))
    return out


def _policy(args) -> cl.Policy:
    kw = {}
    for name in ("flat_tol", "decay_tol", "tail_tol", "slope_tol", "majorant"):
        v = getattr(args, name)
        if v is not None:
            kw[name] = float(parse_scalar(v))
    return cl.Policy(**kw)


def _series_params(args, kind: str) -> dict:
    params: dict = {}
    args.effective_mode = "float"
    if kind in ("thm44", "cor46", "lambda_bounded"):
        params["space"] = _space(args)
    elif kind in ("orlicz_eq5", "leung_sum", "leung_ratio"):
        if not args.M:
            raise ValidationError(f"check {kind} needs --M")
        params["M"] = _orlicz_fn(args.M, args.t_max, args.extension)
        params["K"] = parse_scalar(args.K) if args.K else 2
    else:
        params["p"] = _exponents(args.p or "loglog")
        if kind == "nakano_prop":
            params["rho"] = float(parse_scalar(args.rho)) if args.rho else math.e
    return params


def cmd_check(args) -> dict:
    args.effective_mode = "float"
    if args.builtin:
        ex = cl.builtin(args.builtin)
        checks = {}
        for label, c in ex.checks.items():
            N = args.N or c.N
            d = cl.series(c.kind, c.params, N, _policy(args))
            checks[label] = {"expected": c.expected, "verdict": d.verdict,
                             "agrees": d.verdict == c.expected, "series": d.to_json()}
        return {"builtin": ex.name, "description": ex.description, "checks": checks}
    kind = args.kind
    if kind is None:
        raise ValidationError("check needs a series kind or --builtin")
    if kind == "leung_M":
        jj, L = _int(args.j, "j"), _int(args.L, "L")
        value, tail = cl.leung_M(jj, L)
        return {"j": jj, "L": L, "value": format_scalar(value), "tail_bound": format_scalar(tail),
                "a_j": format_scalar(cl.leung_a(jj))}
    if kind == "nakano_lambda":
        spec = sp.SpaceSpec.nakano(_exponents(args.p or "loglog"))
        rows = cl.nakano_lambda_check(spec, _int(args.N, "N"))
        return {"rows": [[n, format_scalar(l), format_scalar(r), ok] for n, l, r, ok in rows],
                "holds": all(ok for *_, ok in rows)}
    if kind not in cl.KINDS:
        raise ValidationError(f"unknown series kind {kind!r}")
    N = _int(args.N, "N", 8)
    params = _series_params(args, kind)
    if args.scan_K:
        if "K" not in params:
            raise ValidationError(f"--scan-K applies to Orlicz kinds, not {kind!r}")
        scan = cl.scan_K(kind, params, N, policy=_policy(args))
        return {"scan": {format_scalar(parse_scalar(K)): d.to_json() for K, d in scan.items()}}
    return {"series": cl.series(kind, params, N, _policy(args)).to_json()}


def cmd_tree(args) -> dict:
    op = args.op
    if op == "q":
        if args.eta is None:
            raise ValidationError("tree q needs --eta")
        return {"eta": format_ordinal(parse_ordinal(args.eta)), "q": format_ordinal(q_of(parse_ordinal(args.eta)))}
    if args.alpha is None:
        raise ValidationError(f"tree {op} needs --alpha")
    alpha = parse_ordinal(args.alpha)
    out: dict = {"alpha": format_ordinal(alpha)}
    if op == "height":
        out["height"] = format_ordinal(tr.scattered_height(alpha))
        return out
    if op == "member":
        if args.node is None:
            raise ValidationError("tree member needs --node")
        seq = tr.parse_node(args.node)
        out["node"] = tr.format_node(seq)
        out.update(tr.is_member(alpha, seq).to_json())
        return out
    if op == "transport":
        if not (args.s and args.u and args.points):
            raise ValidationError("tree transport needs --s, --u and --points")
        points = _nodes(alpha, args.points)
        bases = _nodes(alpha, args.wedge_bases) if args.wedge_bases else points
        wedges = [tr.WedgeNbhd(b) for b in bases]
        combo = tr.dirac_transport(tr.TreeNode.parse(alpha, args.s), tr.TreeNode.parse(alpha, args.u),
                                   points, wedges)
        out["combo"] = combo.to_json()
        out["support"] = len(combo)
        out["sum"] = format_scalar(sum(combo.values(), parse_scalar(0)))
        return out
    if op == "wedge":
        if not (args.base and args.node):
            raise ValidationError("tree wedge needs --base and --node")
        U = tr.WedgeNbhd(tr.TreeNode.parse(alpha, args.base), _ordinals(args.exclude))
        t = tr.TreeNode.parse(alpha, args.node)
        out.update(base=str(U.base), node=str(t),
                   exclude=[format_ordinal(x) for x in sorted(U.excluded, reverse=True)],
                   contains=tr.wedge_contains(U, t))
        return out
    if args.node is None:
        raise ValidationError(f"tree {op} needs --node")
    t = tr.TreeNode.parse(alpha, args.node)
    out["node"] = str(t)
    if op == "rank":
        out["rank"] = format_ordinal(tr.cb_rank(t))
    elif op == "isolated":
        if args.xi is None:
            raise ValidationError("tree isolated needs --xi")
        xi = parse_ordinal(args.xi)
        iso = tr.is_isolated_in_levelset(t, xi)
        out.update(xi=format_ordinal(xi), isolated=iso)
        if not iso:
            out["witnesses"] = [str(c) for c in tr.witness_children(t, xi, 3)]
    elif op == "children":
        kids = tr.children_sample(t, _ordinals(args.betas), _int(args.budget, "budget"))
        out["children"] = [str(c) for c in kids]
    return out


COMMANDS = {
    "norm": cmd_norm,
    "mu-lambda": cmd_mu_lambda,
    "profile": cmd_profile,
    "theta": cmd_theta,
    "approx": cmd_approx,
    "check": cmd_check,
    "tree": cmd_tree,
}


# ---------------------------------------------------------------------------
# parser

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--mode", choices=("exact", "float"))


def _add_space(p: argparse.ArgumentParser):
    p.add_argument("--space", help="lorentz_predual|lorentz_dual|orlicz|nakano|counting|file:<path>")
    p.add_argument("--weights", help="harmonic|constant|power:<s>|explicit:<file>")
    p.add_argument("--M", help="power:<p>|exp_reciprocal|leung|file:<path>")
    p.add_argument("--t-max", dest="t_max")
    p.add_argument("--extension", choices=("affine", "formula"))
    p.add_argument("--p", help="loglog|linear|constant:<v>|explicit:<file>")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="symba", description="Norms, theta machinery, summability diagnostics "
                                                 "and scattered trees.")
    parser.add_argument("--version", action="version", version=f"symba {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("norm", help="norm, dual norm, modular or Orlicz inverse")
    _add_space(p)
    p.add_argument("--vec")
    p.add_argument("--dual", action="store_true", help="norm in the dual space")
    p.add_argument("--modular-at", dest="modular_at", help="modular value at this rho")
    p.add_argument("--inverse", help="M^{-1}(y) for an Orlicz space")
    _add_common(p)

    p = sub.add_parser("mu-lambda", help="fundamental functions lambda(n), mu(n)")
    _add_space(p)
    p.add_argument("--n", type=int)
    _add_common(p)

    p = sub.add_parser("profile", help="range profile p, q, G, H")
    p.add_argument("--vec")
    _add_common(p)

    for name, help_ in (("theta", "theta with its level breakdown"),
                        ("approx", "approximating functionals")):
        p = sub.add_parser(name, help=help_)
        if name == "approx":
            p.add_argument("op", choices=("h", "g", "j", "omega", "weights", "reconstruct", "tail"))
            p.add_argument("--m", type=int)
            p.add_argument("--n", type=int)
            p.add_argument("--k", type=int)
        _add_space(p)
        p.add_argument("--vec")
        p.add_argument("--provider", help="counting|symmetric|table:<file>")
        _add_common(p)

    p = sub.add_parser("check", help="summability diagnostics")
    p.add_argument("kind", nargs="?", choices=cl.KINDS + ("leung_M", "nakano_lambda"))
    p.add_argument("--builtin", choices=cl.BUILTINS)
    _add_space(p)
    p.add_argument("--N", type=int)
    p.add_argument("--K")
    p.add_argument("--scan-K", dest="scan_K", action="store_true",
                   help="scan K over " + ",".join(map(str, cl.DEFAULT_K_SCAN)))
    p.add_argument("--rho")
    p.add_argument("--j", type=int)
    p.add_argument("--L", type=int)
    for name in ("flat-tol", "decay-tol", "tail-tol", "slope-tol", "majorant"):
        p.add_argument(f"--{name}", dest=name.replace("-", "_"))
    _add_common(p)

    p = sub.add_parser("tree", help="ordinals and the trees M_alpha")
    p.add_argument("op", choices=("q", "member", "rank", "isolated", "wedge", "children",
                                  "transport", "height"))
    p.add_argument("--alpha")
    p.add_argument("--node")
    p.add_argument("--eta")
    p.add_argument("--xi")
    p.add_argument("--base")
    p.add_argument("--exclude", help="comma-separated ordinals")
    p.add_argument("--betas", help="comma-separated ordinals")
    p.add_argument("--budget", type=int)
    p.add_argument("--s")
    p.add_argument("--u")
    p.add_argument("--points", help="semicolon-separated node literals t_0;t_1;...")
    p.add_argument("--wedge-bases", dest="wedge_bases",
                   help="semicolon-separated wedge bases (default: the points)")
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# rendering

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _series_of(report: dict) -> dict | None:
    return report.get("series")


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def _flatten(obj, prefix="") -> list[list[str]]:
    rows = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(not isinstance(v, (dict, list)) for v in obj):
        rows.append([prefix, "; ".join(map(str, obj))])
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}[{i}]")
    else:
        rows.append([prefix, json.dumps(obj) if not isinstance(obj, str) else obj])
    return rows


def _series_rows(series: dict) -> list[list[str]]:
    enc = {n: (lo, hi) for n, lo, hi in series.get("enclosures", [])}
    rows = [["n", "s_n", "lower", "upper"]]
    for n, v in series["samples"]:
        lo, hi = enc.get(n, ("", ""))
        rows.append([str(n), v, lo, hi])
    return rows


def render(report: dict, fmt: str) -> str:
    """Render a report as ``json``, ``csv`` (series only) or an aligned ``table``."""
    if fmt == "json":
        return _dump(report)
    series = _series_of(report)
    if fmt == "csv":
        if series is None:
            raise ValidationError("csv output is only available for single series reports")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(_series_rows(series))
        return buf.getvalue()
    body = {k: v for k, v in report.items() if k != "manifest"}
    if series is not None:
        text = _table(_series_rows(series))
        return text + f"verdict: {series['verdict']}\n"
    if "terms" in body and "rho" in body:
        rows = [["level", "q_k", "rho(G_k)"]]
        rows += [[str(k), q, r] for k, (q, r) in enumerate(zip(body["q"], body["rho"]), start=1)]
        return _table(rows) + f"theta: {body['theta']}\n"
    return _table([["key", "value"]] + _flatten(body))


def _manifest(args, argv_params: dict, elapsed: float) -> dict:
    return {
        "subcommand": args.command,
        "params": argv_params,
        "mode": getattr(args, "effective_mode", None) or args.mode or "exact",
        "version": __version__,
        "wall_time": f"{elapsed:.6f}",
    }


def _params(args) -> dict:
    skip = {"command", "format", "out", "effective_mode"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None and v is not False}


def run(argv: list[str] | None = None, stdout=None) -> int:
    """Execute one command; returns the exit code."""
    stdout = stdout or sys.stdout
    start = time.perf_counter()
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise ValidationError("a subcommand is required: " + ", ".join(COMMANDS))
        fmt = args.format
        report = COMMANDS[args.command](args)
        report["manifest"] = _manifest(args, _params(args), time.perf_counter() - start)
        text = render(report, fmt)
    except ValidationError as exc:
        stdout.write(_dump({"error": {"type": type(exc).__name__, "message": str(exc),
                                      "exit_code": EXIT_VALIDATION}}))
        return EXIT_VALIDATION
    except (NumericError, ArithmeticError, FloatingPointError) as exc:
        stdout.write(_dump({"error": {"type": type(exc).__name__, "message": str(exc),
                                      "exit_code": EXIT_NUMERIC}}))
        return EXIT_NUMERIC
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
