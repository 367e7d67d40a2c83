"""Command-line front end.

    ahmedquad list
    ahmedquad eval <name> [--abs A] [--rel R] [--max-evals N] [--json]
    ahmedquad verify {f1,f2,power} --g EXPR [--n N] [--alpha X|inf] [--json]
    ahmedquad chain [--json] [--tol-4d T]

Exit status: 0 every check passed, 1 a check failed or was inconclusive,
2 usage or parse error, 3 evaluation error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Optional, Sequence

from ahmedquad import chain, registry
from ahmedquad.cubature import Box, default_tolerance, integrate_nd, product_integrand
from ahmedquad.expr import CompiledExpr, ExprSyntaxError
from ahmedquad.quad1d import EvaluationError, Interval, ParameterError, QuadResult, Tolerance, integrate_1d
from ahmedquad.reduction import PowerSpec, power_integrand, reduce_f1, reduce_f2, verify_identity

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3

EXPR_HELP = """\
integrand grammar: numbers, x, pi, e, + - * / ^ (right associative),
unary minus (binds looser than ^, so -x^2 = -(x^2)), parentheses and
sin cos exp sqrt atan abs log. Example: "exp(-x^2)".
"""

VERIFY_ANCHORS = {
    "f1": "particularly its formulae (F1), where α is a positive number",
    "f2": "where Σ is the sum of all the functions",
    "power": "with the help of formula (F2)",
}


class UsageError(Exception):
    pass


def fmt(v: float) -> str:
    return format(v, ".17g")


def row(rid, dim, computed, reference, residual, neval, converged, anchor, **extra) -> dict:
    out = {
        "id": rid,
        "dim": dim,
        "computed": computed,
        "reference": reference,
        "residual": residual,
        "neval": neval,
        "converged": converged,
        "anchor": anchor,
    }
    out.update(extra)
    return out


def make_report(command: str, params: dict, steps: list, all_pass: bool, started: float, **extra) -> dict:
    report = {"command": command, "params": params, "steps": steps, "all_pass": all_pass}
    report.update(extra)
    report["wall_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    return report


def cmd_list() -> str:
    lines = []
    for name in registry.names():
        e = registry.REGISTRY[name]
        lines.append(f"{name}\n    {e.definition}\n    closed form: {e.closed_form} = {fmt(e.value)}")
    return "\n".join(lines)


def _tolerance(args, dim: int, abs_default: Optional[float] = None) -> Tolerance:
    base = default_tolerance(dim)
    a = args.abs if args.abs is not None else (abs_default if abs_default is not None else base.abs)
    r = args.rel if args.rel is not None else base.rel
    try:
        return Tolerance(a, r)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc


def cmd_eval(name: str, tol: Optional[Tolerance] = None, max_evals: Optional[int] = None) -> dict:
    started = time.perf_counter()
    if name not in registry.REGISTRY:
        raise UsageError(f"unknown integral {name!r}; valid names: {', '.join(registry.names())}")
    e = registry.REGISTRY[name]
    tol = tol or default_tolerance(e.dim)
    r = e.evaluate(tol, max_evals)
    residual = abs(r.value - e.value)
    step = row(name, e.dim, r.value, e.value, residual, r.neval, r.converged, e.anchor,
               err_est=r.err_est)
    params = {"name": name, "abs": tol.abs, "rel": tol.rel, "max_evals": max_evals,
              "check_tol": e.check_tol}
    return make_report("eval", params, [step], r.converged and residual <= e.check_tol, started)


def _parse_alpha(text) -> float:
    if isinstance(text, (int, float)):
        return float(text)
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    try:
        a = float(text)
    except ValueError:
        raise UsageError(f"alpha must be a positive number or 'inf', got {text!r}") from None
    if not a > 0 or math.isnan(a):
        raise UsageError(f"alpha must be positive, got {text!r}")
    return a


def cmd_verify(
    kind: str,
    g_src: str,
    n: Optional[int] = None,
    alpha="1",
    tol: Optional[Tolerance] = None,
    check_tol: Optional[float] = None,
    max_evals: Optional[int] = None,
) -> dict:
    """Check one reduction identity with f built from the user expression g.

    f1: f(x, y) = g(x) g(y); f2: f(x_1..x_n) = prod g(x_i); power: (int g)^n.
    """
    started = time.perf_counter()
    if kind not in VERIFY_ANCHORS:
        raise UsageError(f"kind must be one of f1, f2, power; got {kind!r}")
    g = CompiledExpr(g_src)
    alpha = _parse_alpha(alpha)
    if n is None:
        n = 2 if kind == "f1" else 3
    if kind == "f1" and n != 2:
        raise UsageError("f1 is the two-dimensional case; use --n 2 or kind f2")
    if not 2 <= n <= (6 if kind == "f2" else 18):
        raise UsageError(f"n out of range for {kind}: {n}")
    if kind == "power" and n > 6:
        raise UsageError("power: n > 6 exceeds the cubature dimension limit")
    if math.isinf(alpha) and kind != "power":
        raise UsageError("alpha = inf is only supported for kind power")

    if check_tol is None:
        check_tol = registry.CHECK_TOL.get(n, 1e-5)
    if tol is None:
        tol = Tolerance(check_tol / 100, default_tolerance(n).rel)

    if kind == "power":
        d = integrate_1d(g, Interval(0.0, alpha), default_tolerance(1), vectorized=True)
        direct = QuadResult(d.value**n, n * abs(d.value) ** (n - 1) * d.err_est, d.neval,
                            d.n_panels, d.converged)
        reduced = power_integrand(PowerSpec(g, n, alpha, vectorized=True))
    else:
        f = product_integrand(g, n, vectorized=True)
        direct = integrate_nd(f, Box.cube(n, 0.0, alpha), tol, max_evals=max_evals)
        reduced = reduce_f1(f, alpha) if kind == "f1" else reduce_f2(f, n, alpha)

    rep = verify_identity(direct, reduced, check_tol, tol)
    step = row(
        f"{kind}[n={n}]", n, rep.reduced, rep.direct, rep.residual,
        rep.neval_direct + rep.neval_reduced, rep.status != "inconclusive",
        VERIFY_ANCHORS[kind], multiplier=rep.multiplier, err_est=rep.err_est, status=rep.status,
    )
    params = {"kind": kind, "g": g_src, "n": n, "alpha": "inf" if math.isinf(alpha) else alpha,
              "abs": tol.abs, "rel": tol.rel, "check_tol": check_tol, "max_evals": max_evals}
    return make_report("verify", params, [step], rep.passed, started)


def cmd_chain(tol_4d: Optional[float] = None, tol_profile: Optional[dict] = None) -> dict:
    started = time.perf_counter()
    rep = chain.run_chain(tol_profile, tol_4d=tol_4d)
    steps = [
        row(s.id, s.dimension, s.computed, s.reference, s.residual, s.neval, s.converged,
            s.anchor, tol=s.tol, err_est=s.err_est, description=s.description)
        for s in rep.steps
    ]
    checks = [
        {"id": c.id, "description": c.description, "lhs": c.lhs, "rhs": c.rhs,
         "residual": c.residual, "bound": c.bound, "pass": c.passed}
        for c in rep.checks
    ]
    params = {"tol_4d": tol_4d if tol_4d is not None else chain.QUAD_TOL[4].abs,
              "tolerances": rep.tolerances}
    return make_report("chain", params, steps, rep.all_pass, started, cross_checks=checks)


def render_text(report: dict) -> str:
    lines = [f"{report['command']}  " + " ".join(f"{k}={v}" for k, v in report["params"].items()
                                                 if not isinstance(v, dict))]
    header = f"{'id':<16}{'dim':>4}  {'computed':<24}{'reference':<24}{'residual':<12}{'neval':>10}  ok  anchor"
    lines.append(header)
    for s in report["steps"]:
        lines.append(
            f"{s['id']:<16}{s['dim']:>4}  {fmt(s['computed']):<24}{fmt(s['reference']):<24}"
            f"{s['residual']:<12.3e}{s['neval']:>10}  {'y' if s['converged'] else 'n':<2}  {s['anchor']}"
        )
    for c in report.get("cross_checks", []):
        lines.append(f"  check {c['id']:<10} residual {c['residual']:.3e} <= {c['bound']:.3e}  "
                     f"{'pass' if c['pass'] else 'FAIL'}")
    lines.append(f"{'PASS' if report['all_pass'] else 'FAIL'}  ({report['wall_ms']:.0f} ms)")
    return "\n".join(lines)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ahmedquad",
        description="Adaptive quadrature checks of the Gaussian-to-Ahmed integral identities.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EXPR_HELP,
    )
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="show the named integrals and their closed forms")

    def tol_flags(sp):
        sp.add_argument("--abs", type=float, default=None, help="absolute quadrature tolerance")
        sp.add_argument("--rel", type=float, default=None, help="relative quadrature tolerance")
        sp.add_argument("--max-evals", type=int, default=None, help="cap on integrand evaluations")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    ev = sub.add_parser("eval", help="evaluate a named integral against its closed form")
    ev.add_argument("name")
    tol_flags(ev)

    ve = sub.add_parser("verify", help="check a reduction identity for a user integrand",
                        epilog=EXPR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    ve.add_argument("kind", choices=["f1", "f2", "power"])
    ve.add_argument("--g", required=True, help="integrand g(x), see grammar below")
    ve.add_argument("--n", type=int, default=None, help="dimension / power (default 2 for f1, else 3)")
    ve.add_argument("--alpha", default="1", help="upper limit, a positive number or 'inf'")
    ve.add_argument("--check-tol", type=float, default=None, help="residual bound for pass/fail")
    tol_flags(ve)

    ch = sub.add_parser("chain", help="replay the derivation steps S0..S5")
    ch.add_argument("--json", action="store_true", help="emit a JSON report")
    ch.add_argument("--tol-4d", type=float, default=None, help="absolute tolerance of the 4-D step")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            print(cmd_list())
            return EXIT_PASS
        if args.command == "eval":
            dim = registry.REGISTRY[args.name].dim if args.name in registry.REGISTRY else 1
            report = cmd_eval(args.name, _tolerance(args, dim), args.max_evals)
        elif args.command == "verify":
            n = args.n if args.n is not None else (2 if args.kind == "f1" else 3)
            tol = None
            if args.abs is not None or args.rel is not None:
                tol = _tolerance(args, n)
            report = cmd_verify(args.kind, args.g, args.n, args.alpha, tol, args.check_tol,
                                args.max_evals)
        else:
            if args.tol_4d is not None and not args.tol_4d > 0:
                raise UsageError("--tol-4d must be positive")
            report = cmd_chain(args.tol_4d)
    except (UsageError, ExprSyntaxError, ParameterError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvaluationError as exc:
        print(f"{parser.prog}: evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL

    print(dumps(report) if args.json else render_text(report))
    return EXIT_PASS if report["all_pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
