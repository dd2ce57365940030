"""Command-line front end.

Subcommands: linear, quartic, osc2d (benchmark runs emitting CSV), elements
(operator table dumps) and matrix (plain-text matrix dumps).  Exit code 0
means every requested state converged, 2 flags partial convergence, 1 is
reserved for usage or runtime errors.  Set PERTURBA_TABLE_CACHE to a
directory to reuse the numerically integrated element tables across calls.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .experiments import (
    ProblemInstance,
    RunResult,
    build_instance_matrix,
    run_instance,
    write_results_csv,
)
from .hamiltonians import SyntheticSpec, build_synthetic, default_quartic_a2
from .linalg import write_matrix_text
from .oscillator import (
    ElementTable,
    build_element_table,
    cached_element_table,
    write_table_csv,
)

OP_TAGS = {
    "xi": "xi",
    "xi2": "xi2",
    "xi3": "xi3",
    "xi4": "xi4",
    "lxi": "lambda_xi",
    "lxi3": "lambda_xi3",
}


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self._exit_with(message))

    @staticmethod
    def _exit_with(message: str) -> int:
        print(f"error: {message}", file=sys.stderr)
        return 1


def _beta_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad beta list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty beta list")
    return values


def table_for(tag: str, max_n: int) -> ElementTable:
    """Element table honoring the PERTURBA_TABLE_CACHE directory."""
    cache_dir = os.environ.get("PERTURBA_TABLE_CACHE")
    if not cache_dir:
        return cached_element_table(tag, max_n)
    path = Path(cache_dir) / f"{tag}-{max_n}.npy"
    if path.exists():
        values = np.load(path)
        values.setflags(write=False)
        return ElementTable(tag=tag, max_n=max_n, values=values)
    table = build_element_table(tag, max_n)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.save(path, table.values)
    return table


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _parse_transform(args, problem: str, beta: float) -> SyntheticSpec | None:
    if problem == "linear":
        raw = args.synthetic_a
        if raw == "off":
            return None
        return SyntheticSpec(problem="linear", beta=beta, a=float(raw))
    if problem == "quartic":
        raw = args.a2
        if raw == "off":
            return None
        if raw == "auto":
            return SyntheticSpec(problem="quartic", beta=beta, a2=default_quartic_a2(beta))
        return SyntheticSpec(problem="quartic", beta=beta, a2=float(raw))
    if args.synthetic == "on":
        return SyntheticSpec(problem="osc2d", beta=beta, a=0.5 * beta)
    return None


def _run_rows(args, problem: str) -> tuple[list[RunResult], int]:
    results = []
    for beta in args.beta:
        transform = _parse_transform(args, problem, beta)
        dim = args.nmax if problem == "osc2d" else args.dim
        instance = ProblemInstance(
            problem=problem,
            beta=beta,
            dim=dim,
            method=args.method,
            transform=transform,
        )
        results.append(run_instance(instance))
    failed = any(not r.all_converged for r in results)
    return results, (2 if failed else 0)


def _cmd_bench(args) -> int:
    problem = args.command
    # quartic synthetic runs want the element table cache warmed first
    if problem == "quartic" and args.a2 != "off":
        table_for("lambda_xi3", args.dim - 1)
    results, code = _run_rows(args, problem)
    stream, owned = _open_out(args.out)
    try:
        write_results_csv(results, stream, include_exact_2d=(problem == "osc2d"))
    finally:
        if owned:
            stream.close()
    return code


def _cmd_elements(args) -> int:
    tag = OP_TAGS[args.op]
    table = table_for(tag, args.max_n)
    stream, owned = _open_out(args.out)
    try:
        write_table_csv(table, stream)
    finally:
        if owned:
            stream.close()
    return 0


def _cmd_matrix(args) -> int:
    beta = args.beta[0] if isinstance(args.beta, list) else args.beta
    problem = args.problem
    transform = _parse_transform(args, problem, beta)
    dim = args.nmax if problem == "osc2d" else args.dim
    if problem == "quartic" and transform is not None:
        table_for("lambda_xi3", dim - 1)
    if transform is None:
        instance = ProblemInstance(
            problem=problem, beta=beta, dim=dim, method="oracle", transform=None
        )
        h = build_instance_matrix(instance)
    else:
        h = build_synthetic(transform, dim)
    stream, owned = _open_out(args.out)
    try:
        write_matrix_text(h, stream)
    finally:
        if owned:
            stream.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="perturba", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--beta", type=_beta_list, required=True,
                       help="comma-separated coupling strengths")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p_lin = sub.add_parser("linear", help="displaced-oscillator benchmark")
    add_common(p_lin)
    p_lin.add_argument("--dim", type=int, default=30)
    p_lin.add_argument("--method", choices=["rspt", "iter", "oracle"], default="iter")
    p_lin.add_argument("--synthetic-a", dest="synthetic_a", default="off",
                       help="transform coefficient, or 'off' for the true matrix")
    p_lin.set_defaults(func=_cmd_bench)

    p_qua = sub.add_parser("quartic", help="quartic-perturbation benchmark")
    add_common(p_qua)
    p_qua.add_argument("--dim", type=int, default=100)
    p_qua.add_argument("--method", choices=["rspt", "iter", "oracle"], default="iter")
    p_qua.add_argument("--a2", default="off",
                       help="'off' (true matrix), 'auto' (benchmark rule) or a number")
    p_qua.set_defaults(func=_cmd_bench)

    p_2d = sub.add_parser("osc2d", help="coupled-oscillator benchmark")
    add_common(p_2d)
    p_2d.add_argument("--nmax", type=int, default=39,
                      help="triangular cut on total quanta (at most 39)")
    p_2d.add_argument("--method", choices=["iter"], default="iter")
    p_2d.add_argument("--synthetic", choices=["on", "off"], default="on",
                      help="'on' applies the coupling transform with a = beta/2")
    p_2d.set_defaults(func=_cmd_bench)

    p_el = sub.add_parser("elements", help="dump an operator element table")
    p_el.add_argument("--op", choices=sorted(OP_TAGS), required=True)
    p_el.add_argument("--max-n", dest="max_n", type=int, required=True)
    p_el.add_argument("--out", default=None)
    p_el.set_defaults(func=_cmd_elements)

    p_mat = sub.add_parser("matrix", help="dump a benchmark matrix as text")
    p_mat.add_argument("--problem", choices=["linear", "quartic", "osc2d"],
                       required=True)
    p_mat.add_argument("--beta", type=float, required=True)
    p_mat.add_argument("--dim", type=int, default=30)
    p_mat.add_argument("--nmax", type=int, default=10)
    p_mat.add_argument("--synthetic-a", dest="synthetic_a", default="off")
    p_mat.add_argument("--a2", default="off")
    p_mat.add_argument("--synthetic", choices=["on", "off"], default="off")
    p_mat.add_argument("--out", default=None)
    p_mat.set_defaults(func=_cmd_matrix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # surface runtime failures as exit 1
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
