"""Command-line front end: ``fraccalc <subcommand> ...``.

Usage errors exit with status 2 (argparse), domain errors with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from . import catalog
from .axioms import run_all
from .circuits import ElementKind, FracElement, bode_data, impedance, step_response
from .differint import compare_rl_gl, gl_differint, gl_differint_fast, rl_derivative, rl_integral
from .errors import FracCalcError
from .fde import load_problem, solve_frac_difference, solve_linear_fde
from .grid import Grid, SampledSignal
from .special import gamma
from .transforms import laplace_numeric, verify_laplace_differint_rule, z_transform_truncated


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _table(columns: dict, fmt: str) -> str:
    """Render equal-length columns as CSV or a JSON object of lists."""
    if fmt == "json":
        return json.dumps({k: [float(v) if not isinstance(v, str) else v for v in col]
                           for k, col in columns.items()}) + "\n"
    keys = list(columns)
    lines = [",".join(keys)]
    for row in zip(*columns.values()):
        lines.append(",".join(_fmt(v) if not isinstance(v, (str, int)) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _signal_text(sig: SampledSignal, fmt: str) -> str:
    if fmt == "csv":
        return sig.to_csv()
    return _table({"x": sig.nodes, "value": sig.values}, "json")


def _load_signal(args) -> SampledSignal:
    if args.input:
        return SampledSignal.from_csv(args.input)
    return catalog.sample(args.fn, Grid(args.a, args.b, args.n))


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_signal_args(p: argparse.ArgumentParser, default_b: float = 1.0) -> None:
    p.add_argument("--fn", choices=catalog.NAMES, default="linear", help="catalog function")
    p.add_argument("--input", help="CSV signal (x,value) instead of --fn")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=default_b)
    p.add_argument("--n", type=int, default=1024, help="number of grid intervals")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def cmd_gamma(args) -> int:
    val = gamma(args.z.real if args.z.imag == 0 else args.z)
    if isinstance(val, complex):
        text = f"{_fmt(val.real)}{'+' if val.imag >= 0 else '-'}{_fmt(abs(val.imag))}j"
    else:
        text = _fmt(val)
    if args.format == "json":
        text = json.dumps({"re": val.real, "im": val.imag if isinstance(val, complex) else 0.0})
    _emit(text + "\n", args.output)
    return 0


def cmd_differint(args) -> int:
    f = _load_signal(args)
    v = args.order
    if args.method == "gl":
        g = gl_differint(f, v)
    elif args.method == "gl-fast":
        g = gl_differint_fast(f, v)
    elif v > 0:
        g = rl_derivative(f, v)
    else:
        g = rl_integral(f, -v)
    _emit(_signal_text(g, args.format), args.output)
    return 0


def cmd_compare(args) -> int:
    rep = compare_rl_gl(catalog.get(args.fn), args.order, args.resolutions, a=args.a, b=args.b)
    if args.format == "csv":
        text = rep.to_csv()
    else:
        text = json.dumps({"v": rep.v, "n": list(rep.resolutions), "h": list(rep.steps),
                           "gap": list(rep.gaps), "order": list(rep.orders)}) + "\n"
    _emit(text, args.output)
    return 0


def cmd_laplace(args) -> int:
    f = _load_signal(args)
    if args.rule is not None:
        rep = verify_laplace_differint_rule(f, args.rule, args.s)
        if args.format == "csv":
            text = rep.to_csv()
        else:
            text = _table({"s_re": [r.s.real for r in rep.rows], "s_im": [r.s.imag for r in rep.rows],
                           "abs_gap": list(rep.gaps), "budget": [r.budget for r in rep.rows]}, "json")
        _emit(text, args.output)
        return 0
    evals = [laplace_numeric(f, s) for s in args.s]
    cols = {
        "s_re": [e.s.real for e in evals],
        "s_im": [e.s.imag for e in evals],
        "value_re": [e.value.real for e in evals],
        "value_im": [e.value.imag for e in evals],
        "tail_bound": [e.tail_bound for e in evals],
    }
    _emit(_table(cols, args.format), args.output)
    return 0


def _sequence(spec: str, length: int) -> np.ndarray:
    if spec == "step":
        return np.ones(length)
    if spec == "impulse":
        out = np.zeros(length)
        out[0] = 1.0
        return out
    if spec.startswith("geometric:"):
        return float(spec.split(":", 1)[1]) ** np.arange(length)
    return np.array([float(t) for t in spec.split(",")])


def cmd_ztransform(args) -> int:
    x = _sequence(args.seq, args.terms + 1)
    ev = z_transform_truncated(x, args.z)
    cols = {"z_re": [ev.z.real], "z_im": [ev.z.imag], "terms": [ev.terms],
            "value_re": [ev.value.real], "value_im": [ev.value.imag],
            "truncation_bound": [ev.truncation_bound]}
    _emit(_table(cols, args.format), args.output)
    return 0


def cmd_solve(args) -> int:
    cfg = json.loads(Path(args.config).read_text())
    if args.kind == "fde":
        sol = solve_linear_fde(load_problem(cfg))
        _emit(_signal_text(sol.y, args.format), args.output)
        print(f"residual_norm={sol.residual_norm:.3e}", file=sys.stderr)
        return 0
    problem = load_problem(cfg)
    y = solve_frac_difference(problem.v, problem.a_coeff, problem.forcing.values, problem.y0)
    n = len(y) - 1
    sig = SampledSignal(Grid(0.0, float(n), n), y)
    _emit(_signal_text(sig, args.format), args.output)
    return 0


def cmd_circuit(args) -> int:
    el = FracElement(ElementKind(args.kind), args.K, args.order)
    if args.what == "impedance":
        zs = [impedance(el, s) for s in args.s]
        cols = {"s_re": [s.real for s in args.s], "s_im": [s.imag for s in args.s],
                "z_re": [z.real for z in zs], "z_im": [z.imag for z in zs]}
        _emit(_table(cols, args.format), args.output)
    elif args.what == "step":
        resp = step_response(el, Grid(0.0, args.T, args.n))
        _emit(_signal_text(resp.signal, args.format), args.output)
        print(f"gl_gap={resp.gl_gap:.3e}", file=sys.stderr)
    else:
        omega = np.logspace(args.log_omega_min, args.log_omega_max, args.points)
        table = bode_data(el, omega)
        if args.format == "csv":
            _emit(table.to_csv(), args.output)
        else:
            _emit(_table({"omega": table.omega, "mag_db": table.mag_db,
                          "phase_deg": table.phase_deg}, "json"), args.output)
    return 0


def cmd_axioms(args) -> int:
    start = time.perf_counter()
    results = run_all()
    width = max(len(r.title) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else ("FAIL" if r.gating else "WARN")
        lines.append(f"[{status}] {r.key:>3}  {r.title:<{width}}  {r.detail}")
    failed = [r for r in results if r.gating and not r.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed "
                 f"in {time.perf_counter() - start:.1f}s")
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraccalc", description="Numerical fractional calculus")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", help="evaluate the Gamma function")
    p.add_argument("z", type=_parse_complex)
    _add_output_args(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("differint", help="RL or GL differintegral of a sampled function")
    p.add_argument("--method", choices=("rl", "gl", "gl-fast"), default="gl")
    p.add_argument("--order", type=float, required=True,
                   help="positive differentiates, negative integrates")
    _add_signal_args(p)
    _add_output_args(p)
    p.set_defaults(func=cmd_differint)

    p = sub.add_parser("compare", help="RL vs GL gap over several resolutions")
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--fn", choices=catalog.NAMES, default="square")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--resolutions", type=_parse_ints, default=[256, 512, 1024])
    _add_output_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("laplace", help="finite-horizon Laplace transform")
    p.add_argument("--s", type=_parse_complex, nargs="+", required=True)
    p.add_argument("--horizon", type=float, default=20.0, dest="b")
    p.add_argument("--rule", type=float, metavar="V",
                   help="instead report the J^V operational-rule discrepancy")
    p.add_argument("--fn", choices=catalog.NAMES, default="const")
    p.add_argument("--input")
    p.add_argument("--n", type=int, default=4000)
    p.set_defaults(a=0.0)
    _add_output_args(p)
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("ztransform", help="truncated unilateral Z-transform")
    p.add_argument("--z", type=_parse_complex, required=True)
    p.add_argument("--terms", type=int, default=60, help="highest power N")
    p.add_argument("--seq", default="step",
                   help="step | impulse | geometric:r | comma-separated values")
    _add_output_args(p)
    p.set_defaults(func=cmd_ztransform)

    p = sub.add_parser("solve", help="solve a fractional differential or difference equation")
    p.add_argument("kind", choices=("fde", "fdiff"))
    p.add_argument("--config", required=True, help="JSON problem {v, a, y0, T, n, forcing}")
    _add_output_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("circuit", help="fractional circuit element responses")
    p.add_argument("what", choices=("impedance", "step", "bode"))
    p.add_argument("--kind", choices=[k.value for k in ElementKind], default="resistoductor")
    p.add_argument("--K", type=float, default=1.0)
    p.add_argument("--order", type=float, default=0.5)
    p.add_argument("--s", type=_parse_complex, nargs="+", default=[1j])
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2048)
    p.add_argument("--log-omega-min", type=float, default=-2.0)
    p.add_argument("--log-omega-max", type=float, default=2.0)
    p.add_argument("--points", type=int, default=5)
    _add_output_args(p)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("axioms", help="run the operator axiom and accuracy suite")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_axioms)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FracCalcError, ValueError, OverflowError) as exc:
        print(f"fraccalc {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
